//! Degree-based edge weights, the ABC matrix and the scalar indices built on it.

use thiserror::Error;

use crate::graph::Graph;
use crate::spectral::{self, SpectralError, SpectralResult, SymMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("degrees must be positive, got ({0}, {1})")]
    ZeroDegree(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// `√((x + y − 2) / (xy))`, the ABC weight of an edge joining degrees `x` and `y`.
pub fn abc_weight(x: usize, y: usize) -> Result<f64, InvariantError> {
    if x == 0 || y == 0 {
        return Err(InvariantError::ZeroDegree(x, y));
    }
    Ok(weight(x, y))
}

fn weight(x: usize, y: usize) -> f64 {
    ((x + y - 2) as f64 / (x * y) as f64).sqrt()
}

/// ABC matrix of a graph together with its row sums.
#[derive(Debug, Clone, PartialEq)]
pub struct AbcWeights {
    pub graph: Graph,
    pub matrix: SymMatrix,
    pub row_sums: Vec<f64>,
}

/// Edges of a simple graph never touch a degree-zero vertex, so this is total.
pub fn abc_matrix(g: &Graph) -> AbcWeights {
    let mut matrix = SymMatrix::zeros(g.order());
    for (u, v) in g.edges() {
        matrix.set(u, v, weight(g.degree(u), g.degree(v)));
    }
    let row_sums = matrix.row_sums();
    AbcWeights { graph: g.clone(), matrix, row_sums }
}

/// Sum of the ABC weights over the edges.
pub fn abc_index(g: &Graph) -> f64 {
    g.edges().map(|(u, v)| weight(g.degree(u), g.degree(v))).sum()
}

/// Σ over edges of `1 / (d_u d_v)`.
pub fn randic_minus_one(g: &Graph) -> f64 {
    g.edges().map(|(u, v)| 1.0 / (g.degree(u) * g.degree(v)) as f64).sum()
}

/// ABC spectral radius with its Perron vector. `K₁` and `K₂` give 0.
pub fn abc_spectral_radius(g: &Graph) -> Result<SpectralResult, InvariantError> {
    if !g.is_connected() {
        return Err(InvariantError::Disconnected);
    }
    Ok(spectral::spectral_radius(&abc_matrix(g).matrix)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstradaBounds {
    /// `(2/n)·ABC(G)`.
    pub lower: f64,
    /// Largest row sum of the ABC matrix.
    pub upper: f64,
}

pub fn estrada_bounds(g: &Graph) -> Result<EstradaBounds, InvariantError> {
    if !g.is_connected() {
        return Err(InvariantError::Disconnected);
    }
    let w = abc_matrix(g);
    let upper = w.row_sums.iter().copied().fold(0.0, f64::max);
    Ok(EstradaBounds { lower: 2.0 / g.order() as f64 * abc_index(g), upper })
}

/// True when all row sums agree within `tol`.
pub fn row_sums_equal(w: &AbcWeights, tol: f64) -> bool {
    let max = w.row_sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = w.row_sums.iter().copied().fold(f64::INFINITY, f64::min);
    max - min <= tol
}
