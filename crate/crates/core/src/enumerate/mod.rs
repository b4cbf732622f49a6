//! Isomorphism-free generation of the graph classes the experiments sweep.

mod connected;
mod trees;

pub use trees::FreeTrees;

use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::graph6::{self, Graph6Error};
use crate::graph::Graph;

pub const MIN_TREE_ORDER: usize = 3;
pub const MAX_TREE_ORDER: usize = 16;
pub const MIN_CONNECTED_ORDER: usize = 2;
pub const MAX_CONNECTED_ORDER: usize = connected::MAX_ORDER;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("{class} generator supports n in {min}..={max}, got {n}")]
    OrderOutOfRange { class: &'static str, n: usize, min: usize, max: usize },
    #[error("size m = {m} is outside {lo}..={hi} for n = {n}")]
    SizeOutOfRange { n: usize, m: usize, lo: usize, hi: usize },
    #[error("max degree {delta} is outside 1..={max} for n = {n}")]
    DegreeOutOfRange { n: usize, delta: usize, max: usize },
    #[error("c = {c} gives more than n(n-1)/2 edges for n = {n}")]
    TooCyclic { n: usize, c: usize },
    #[error("unknown graph class `{0}` (expected trees, connected, unicyclic, c-cyclic or trees-max-degree)")]
    UnknownClass(String),
    #[error("invalid order range `{0}` (expected N or A..B)")]
    BadRange(String),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
}

/// Which family of graphs a class quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClassKind {
    Trees,
    /// Connected graphs, optionally restricted to `m` edges.
    Connected { m: Option<usize> },
    Unicyclic,
    CCyclic { c: usize },
    TreesMaxDegree { delta: usize },
}

impl ClassKind {
    pub fn name(&self) -> &'static str {
        match self {
            ClassKind::Trees => "trees",
            ClassKind::Connected { .. } => "connected",
            ClassKind::Unicyclic => "unicyclic",
            ClassKind::CCyclic { .. } => "c-cyclic",
            ClassKind::TreesMaxDegree { .. } => "trees-max-degree",
        }
    }
}

/// A class of connected graphs of one order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GraphClassSpec {
    pub kind: ClassKind,
    pub n: usize,
}

impl GraphClassSpec {
    pub fn trees(n: usize) -> Self {
        GraphClassSpec { kind: ClassKind::Trees, n }
    }

    pub fn connected(n: usize) -> Self {
        GraphClassSpec { kind: ClassKind::Connected { m: None }, n }
    }

    pub fn connected_with_size(n: usize, m: usize) -> Self {
        GraphClassSpec { kind: ClassKind::Connected { m: Some(m) }, n }
    }

    pub fn unicyclic(n: usize) -> Self {
        GraphClassSpec { kind: ClassKind::Unicyclic, n }
    }

    pub fn c_cyclic(n: usize, c: usize) -> Self {
        GraphClassSpec { kind: ClassKind::CCyclic { c }, n }
    }

    pub fn trees_with_max_degree(n: usize, delta: usize) -> Self {
        GraphClassSpec { kind: ClassKind::TreesMaxDegree { delta }, n }
    }

    /// Edge count fixed by the class, if any.
    pub fn size(&self) -> Option<usize> {
        match self.kind {
            ClassKind::Trees | ClassKind::TreesMaxDegree { .. } => Some(self.n - 1),
            ClassKind::Connected { m } => m,
            ClassKind::Unicyclic => Some(self.n),
            ClassKind::CCyclic { c } => Some(self.n - 1 + c),
        }
    }

    pub fn is_tree_class(&self) -> bool {
        matches!(self.kind, ClassKind::Trees | ClassKind::TreesMaxDegree { .. })
            || self.kind == ClassKind::CCyclic { c: 0 }
    }

    /// Checks the generator caps and parameter ranges.
    pub fn validate(&self) -> Result<(), EnumerateError> {
        let n = self.n;
        let range = |class, min, max| {
            if (min..=max).contains(&n) {
                Ok(())
            } else {
                Err(EnumerateError::OrderOutOfRange { class, n, min, max })
            }
        };
        match self.kind {
            ClassKind::Trees => range("trees", MIN_TREE_ORDER, MAX_TREE_ORDER),
            ClassKind::TreesMaxDegree { delta } => {
                range("trees-max-degree", MIN_TREE_ORDER, MAX_TREE_ORDER)?;
                if delta < 1 || delta > n - 1 {
                    return Err(EnumerateError::DegreeOutOfRange { n, delta, max: n - 1 });
                }
                Ok(())
            }
            ClassKind::Connected { m } => {
                range("connected", MIN_CONNECTED_ORDER, MAX_CONNECTED_ORDER)?;
                if let Some(m) = m {
                    let (lo, hi) = (n - 1, n * (n - 1) / 2);
                    if m < lo || m > hi {
                        return Err(EnumerateError::SizeOutOfRange { n, m, lo, hi });
                    }
                }
                Ok(())
            }
            ClassKind::Unicyclic => range("unicyclic", 3, MAX_CONNECTED_ORDER),
            ClassKind::CCyclic { c } => {
                range("c-cyclic", MIN_CONNECTED_ORDER, MAX_CONNECTED_ORDER)?;
                if n - 1 + c > n * (n - 1) / 2 {
                    return Err(EnumerateError::TooCyclic { n, c });
                }
                Ok(())
            }
        }
    }

    /// Class membership, checked from scratch on the graph.
    pub fn matches(&self, g: &Graph) -> bool {
        if g.order() != self.n || !g.is_connected() {
            return false;
        }
        if self.size().is_some_and(|m| g.size() != m) {
            return false;
        }
        match self.kind {
            ClassKind::TreesMaxDegree { delta } => g.max_degree() == delta,
            _ => true,
        }
    }
}

impl fmt::Display for GraphClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.kind.name(), self.n)?;
        match self.kind {
            ClassKind::Connected { m: Some(m) } => write!(f, " m={m}"),
            ClassKind::CCyclic { c } => write!(f, " c={c}"),
            ClassKind::TreesMaxDegree { delta } => write!(f, " delta={delta}"),
            _ => Ok(()),
        }
    }
}

/// Class names as accepted on the command line, before parameters are attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassName {
    Trees,
    Connected,
    Unicyclic,
    CCyclic,
    TreesMaxDegree,
}

impl FromStr for ClassName {
    type Err = EnumerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "trees" | "tree" => ClassName::Trees,
            "connected" => ClassName::Connected,
            "unicyclic" => ClassName::Unicyclic,
            "c-cyclic" => ClassName::CCyclic,
            "trees-max-degree" => ClassName::TreesMaxDegree,
            other => return Err(EnumerateError::UnknownClass(other.to_string())),
        })
    }
}

/// Inclusive range of orders, written `N`, `A..B` or `A..=B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderRange {
    pub start: usize,
    pub end: usize,
}

impl OrderRange {
    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl FromStr for OrderRange {
    type Err = EnumerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EnumerateError::BadRange(s.to_string());
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(bad());
        }
        Ok(OrderRange { start, end })
    }
}

/// Free trees on `n` vertices (3..=16) in canonical level-sequence order.
pub fn enumerate_trees(n: usize) -> Result<FreeTrees, EnumerateError> {
    GraphClassSpec::trees(n).validate()?;
    Ok(FreeTrees::new(n))
}

/// Connected graphs on `n` vertices (2..=8), optionally with `m` edges, one
/// per isomorphism class in canonical-key order.
pub fn enumerate_connected(n: usize, m: Option<usize>) -> Result<Vec<Graph>, EnumerateError> {
    GraphClassSpec { kind: ClassKind::Connected { m }, n }.validate()?;
    Ok(connected::classes(n)
        .iter()
        .filter(|(_, g)| m.is_none_or(|m| g.size() == m))
        .map(|(_, g)| g.clone())
        .collect())
}

/// Dispatches to the generator appropriate for the class.
pub fn enumerate_class(spec: &GraphClassSpec) -> Result<Vec<Graph>, EnumerateError> {
    spec.validate()?;
    let graphs = match spec.kind {
        ClassKind::Trees | ClassKind::TreesMaxDegree { .. } => {
            FreeTrees::new(spec.n).filter(|g| spec.matches(g)).collect()
        }
        _ => enumerate_connected(spec.n, spec.size())?,
    };
    debug_assert!(graphs.iter().all(|g| spec.matches(g)));
    Ok(graphs)
}

/// A record of an ingested file that is not in the declared class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassMismatch {
    pub line: usize,
    pub graph6: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IngestedClass {
    pub graphs: Vec<Graph>,
    pub mismatches: Vec<ClassMismatch>,
}

/// Reads a newline-delimited graph6 catalog as a class, keeping the records
/// that satisfy the class predicate and reporting the rest by line.
pub fn read_class<R: BufRead>(reader: R, spec: &GraphClassSpec) -> Result<IngestedClass, EnumerateError> {
    let records = graph6::read_records(reader)?;
    let mut graphs = Vec::new();
    let mut mismatches = Vec::new();
    for (line, g) in records {
        if spec.matches(&g) {
            graphs.push(g);
            continue;
        }
        let reason = if g.order() != spec.n {
            format!("order {} != {}", g.order(), spec.n)
        } else if !g.is_connected() {
            "disconnected".to_string()
        } else if let Some(m) = spec.size().filter(|&m| m != g.size()) {
            format!("size {} != {m}", g.size())
        } else {
            format!("max degree {} does not match", g.max_degree())
        };
        let graph6 = graph6::encode(&g).unwrap_or_default();
        mismatches.push(ClassMismatch { line, graph6, reason });
    }
    Ok(IngestedClass { graphs, mismatches })
}
