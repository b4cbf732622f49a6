pub mod graph;
pub mod spectral;
pub mod invariants;
pub mod bounds;
pub mod enumerate;
pub mod experiments;
