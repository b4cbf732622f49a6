use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{Graph, GraphError, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family `{0}`")]
    Unknown(String),
    #[error("family `{family}` expects {expected} parameter(s), got {got}")]
    Arity { family: &'static str, expected: usize, got: usize },
    #[error("invalid parameter `{0}`: expected a non-negative integer")]
    BadParameter(String),
    #[error("{family}: {reason}")]
    OutOfRange { family: &'static str, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A named graph family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Star(usize),
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// Two adjacent centers carrying `a` and `b` pendant leaves.
    DoubleStar(usize, usize),
    /// Star plus one edge between two leaves.
    StarPlusEdge(usize),
    /// The three trees of order `n` whose maximum degree is `n - 3`.
    DeltaNMinus3Trees(usize),
    Petersen,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Star(_) => "star",
            Family::Path(_) => "path",
            Family::Cycle(_) => "cycle",
            Family::Complete(_) => "complete",
            Family::DoubleStar(..) => "double_star",
            Family::StarPlusEdge(_) => "star_plus_edge",
            Family::DeltaNMinus3Trees(_) => "delta_n_minus_3_trees",
            Family::Petersen => "petersen",
        }
    }

    /// Builds the graphs of this family. Every family yields one graph
    /// except [`Family::DeltaNMinus3Trees`], which yields three.
    pub fn graphs(&self) -> Result<Vec<Graph>, FamilyError> {
        let name = self.name();
        let need = |ok: bool, reason: &str| {
            if ok {
                Ok(())
            } else {
                Err(FamilyError::OutOfRange { family: name, reason: reason.to_string() })
            }
        };
        let cap = |n: usize| need(n <= MAX_ORDER, &format!("order must be at most {MAX_ORDER}"));
        match *self {
            Family::Star(n) => {
                need(n >= 2, "requires n >= 2")?;
                cap(n)?;
                let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
                Ok(vec![Graph::new(n, &edges)?])
            }
            Family::Path(n) => {
                need(n >= 1, "requires n >= 1")?;
                cap(n)?;
                let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
                Ok(vec![Graph::new(n, &edges)?])
            }
            Family::Cycle(n) => {
                need(n >= 3, "requires n >= 3")?;
                cap(n)?;
                let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
                Ok(vec![Graph::new(n, &edges)?])
            }
            Family::Complete(n) => {
                need(n >= 1, "requires n >= 1")?;
                cap(n)?;
                let edges: Vec<_> =
                    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                Ok(vec![Graph::new(n, &edges)?])
            }
            Family::DoubleStar(a, b) => {
                need(a >= b && b >= 1, "requires a >= b >= 1")?;
                let n = a.checked_add(b).and_then(|s| s.checked_add(2)).unwrap_or(usize::MAX);
                cap(n)?;
                let mut edges = vec![(0, 1)];
                edges.extend((0..a).map(|i| (0, 2 + i)));
                edges.extend((0..b).map(|i| (1, 2 + a + i)));
                Ok(vec![Graph::new(n, &edges)?])
            }
            Family::StarPlusEdge(n) => {
                need(n >= 3, "requires n >= 3")?;
                cap(n)?;
                let mut edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
                edges.push((1, 2));
                Ok(vec![Graph::new(n, &edges)?])
            }
            Family::DeltaNMinus3Trees(n) => {
                need(n >= 6, "requires n >= 6")?;
                cap(n)?;
                Ok(delta_n_minus_3_trees(n).to_vec())
            }
            Family::Petersen => {
                let mut edges = Vec::with_capacity(15);
                for i in 0..5 {
                    edges.push((i, (i + 1) % 5));
                    edges.push((i, i + 5));
                    edges.push((5 + i, 5 + (i + 2) % 5));
                }
                Ok(vec![Graph::new(10, &edges)?])
            }
        }
    }

    /// Builds a single-graph family. Panics on the three-tree family or on
    /// out-of-range parameters; meant for fixed parameters in code.
    pub fn build(&self) -> Graph {
        let mut gs = self.graphs().unwrap_or_else(|e| panic!("{e}"));
        assert_eq!(gs.len(), 1, "{} yields {} graphs", self.name(), gs.len());
        gs.pop().unwrap()
    }
}

/// The three trees of order `n >= 6` with a vertex of degree `n - 3`, the
/// center being vertex 0:
///
/// 1. `n - 4` leaves plus a pendant path of length 3,
/// 2. `n - 5` leaves plus two pendant paths of length 2,
/// 3. `n - 4` leaves plus one neighbour carrying two leaves.
///
/// Panics when `n < 6` or `n > 64`.
pub fn delta_n_minus_3_trees(n: usize) -> [Graph; 3] {
    assert!((6..=MAX_ORDER).contains(&n), "delta_n_minus_3_trees requires 6 <= n <= 64");
    let leaves = |from: usize| (from..n).map(|v| (0, v));

    let mut long_arm = vec![(0, 1), (1, 2), (2, 3)];
    long_arm.extend(leaves(4));

    let mut two_arms = vec![(0, 1), (1, 2), (0, 3), (3, 4)];
    two_arms.extend(leaves(5));

    let mut forked = vec![(0, 1), (1, 2), (1, 3)];
    forked.extend(leaves(4));

    [long_arm, two_arms, forked].map(|e| Graph::new(n, &e).expect("valid tree"))
}

impl FromStr for Family {
    type Err = FamilyError;

    /// Parses `name:p1,p2,...` (e.g. `cycle:8`, `double_star:3,1`).
    fn from_str(s: &str) -> Result<Family, FamilyError> {
        let (name, params) = match s.split_once(':') {
            Some((name, params)) => (name.trim(), params.trim()),
            None => (s.trim(), ""),
        };
        let values = if params.is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| FamilyError::BadParameter(p.to_string())))
                .collect::<Result<Vec<_>, _>>()?
        };
        let arity = |family: &'static str, expected: usize| {
            if values.len() == expected {
                Ok(())
            } else {
                Err(FamilyError::Arity { family, expected, got: values.len() })
            }
        };
        let family = match name {
            "star" => {
                arity("star", 1)?;
                Family::Star(values[0])
            }
            "path" => {
                arity("path", 1)?;
                Family::Path(values[0])
            }
            "cycle" => {
                arity("cycle", 1)?;
                Family::Cycle(values[0])
            }
            "complete" => {
                arity("complete", 1)?;
                Family::Complete(values[0])
            }
            "double_star" => {
                arity("double_star", 2)?;
                Family::DoubleStar(values[0], values[1])
            }
            "star_plus_edge" => {
                arity("star_plus_edge", 1)?;
                Family::StarPlusEdge(values[0])
            }
            "delta_n_minus_3_trees" => {
                arity("delta_n_minus_3_trees", 1)?;
                Family::DeltaNMinus3Trees(values[0])
            }
            "petersen" => {
                arity("petersen", 0)?;
                Family::Petersen
            }
            other => return Err(FamilyError::Unknown(other.to_string())),
        };
        Ok(family)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Star(n)
            | Family::Path(n)
            | Family::Cycle(n)
            | Family::Complete(n)
            | Family::StarPlusEdge(n)
            | Family::DeltaNMinus3Trees(n) => write!(f, "{}:{n}", self.name()),
            Family::DoubleStar(a, b) => write!(f, "double_star:{a},{b}"),
            Family::Petersen => f.write_str("petersen"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_key;

    fn sorted_degrees(g: &Graph) -> Vec<usize> {
        let mut d = g.degrees().to_vec();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    #[test]
    fn double_star_one_one_is_p4() {
        let ds = Family::DoubleStar(1, 1).build();
        let p4 = Family::Path(4).build();
        assert_eq!(canonical_key(&ds).unwrap(), canonical_key(&p4).unwrap());
    }

    #[test]
    fn double_star_degree_sequence() {
        for n in 5..20 {
            let g = Family::DoubleStar(n - 3, 1).build();
            let mut expected = vec![n - 2, 2];
            expected.extend(std::iter::repeat_n(1, n - 2));
            assert_eq!(sorted_degrees(&g), expected);
        }
    }

    #[test]
    fn delta_trees_are_distinct_with_right_max_degree() {
        for n in 6..=16 {
            let trees = delta_n_minus_3_trees(n);
            let keys: std::collections::BTreeSet<_> =
                trees.iter().map(|t| canonical_key(t).unwrap()).collect();
            assert_eq!(keys.len(), 3);
            for t in &trees {
                assert!(t.is_tree());
                assert_eq!(t.max_degree(), n - 3);
            }
        }
    }

    #[test]
    fn families_are_connected_with_handshake() {
        let fams = [
            Family::Star(7),
            Family::Path(7),
            Family::Cycle(7),
            Family::Complete(7),
            Family::DoubleStar(4, 2),
            Family::StarPlusEdge(7),
            Family::DeltaNMinus3Trees(9),
            Family::Petersen,
        ];
        for f in fams {
            for g in f.graphs().unwrap() {
                assert!(g.is_connected(), "{f}");
                assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.size());
            }
        }
    }

    #[test]
    fn out_of_range_parameters_are_rejected() {
        assert!(Family::Star(1).graphs().is_err());
        assert!(Family::Cycle(2).graphs().is_err());
        assert!(Family::DoubleStar(1, 2).graphs().is_err());
        assert!(Family::DoubleStar(3, 0).graphs().is_err());
        assert!(Family::StarPlusEdge(2).graphs().is_err());
        assert!(Family::DeltaNMinus3Trees(5).graphs().is_err());
        assert!(Family::Complete(65).graphs().is_err());
        assert!(Family::DoubleStar(usize::MAX, 1).graphs().is_err());
    }

    #[test]
    fn parses_family_specs() {
        assert_eq!("cycle:8".parse::<Family>().unwrap(), Family::Cycle(8));
        assert_eq!("double_star: 3, 1".parse::<Family>().unwrap(), Family::DoubleStar(3, 1));
        assert_eq!("petersen".parse::<Family>().unwrap(), Family::Petersen);
        assert!(matches!("wheel:5".parse::<Family>(), Err(FamilyError::Unknown(_))));
        assert!(matches!("star:5,6".parse::<Family>(), Err(FamilyError::Arity { .. })));
        assert!(matches!("star:x".parse::<Family>(), Err(FamilyError::BadParameter(_))));
        for f in ["star:4", "double_star:3,1", "delta_n_minus_3_trees:7", "petersen"] {
            assert_eq!(f.parse::<Family>().unwrap().to_string(), f);
        }
    }
}
