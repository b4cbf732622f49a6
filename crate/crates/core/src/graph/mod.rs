//! Simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` bit row per vertex, which keeps
//! relabeling, canonical search and automorphism search cheap at the
//! orders the experiments run on.

mod canon;
mod family;
pub mod graph6;
mod orbits;

pub use canon::{canonical_form, canonical_key, CanonicalKey, MAX_GENERAL_CANON, MAX_TREE_CANON};
pub use family::{delta_n_minus_3_trees, Family, FamilyError};
pub use orbits::{automorphism_orbits, MAX_ORBIT_ORDER};

use std::fmt;

use thiserror::Error;

/// Largest order a [`Graph`] can hold.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("order {n} exceeds the supported maximum of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) listed more than once")]
    DuplicateEdge { u: usize, v: usize },
    #[error("{what} supports order at most {limit}, got {n}")]
    Limit { what: &'static str, n: usize, limit: usize },
}

/// Immutable simple graph with cached degree data.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    degrees: Vec<usize>,
    m: usize,
    connected: bool,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, repeats and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u] >> v & 1 == 1 {
                return Err(GraphError::DuplicateEdge { u, v });
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph::from_rows(adj))
    }

    /// Builds a graph from symmetric adjacency rows. Callers guarantee
    /// symmetry and an empty diagonal.
    pub(crate) fn from_rows(adj: Vec<u64>) -> Graph {
        debug_assert!(!adj.is_empty() && adj.len() <= MAX_ORDER);
        debug_assert!((0..adj.len()).all(|v| adj[v] >> v & 1 == 0));
        debug_assert!((0..adj.len())
            .all(|u| (0..adj.len()).all(|v| (adj[u] >> v & 1) == (adj[v] >> u & 1))));
        let degrees: Vec<usize> = adj.iter().map(|r| r.count_ones() as usize).collect();
        let m = degrees.iter().sum::<usize>() / 2;
        let connected = reaches_all(&adj);
        Graph { n: adj.len(), adj, degrees, m, connected }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn is_tree(&self) -> bool {
        self.connected && self.m + 1 == self.n
    }

    /// `m - n + 1`, or `None` for a disconnected graph.
    pub fn cyclomatic_number(&self) -> Option<usize> {
        self.connected.then(|| self.m + 1 - self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Bit row of the neighbourhood of `v`.
    pub fn neighbor_bits(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.adj[v])
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| BitIter(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    /// Returns the graph whose vertex `perm[v]` plays the role of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal the order");
        let mut adj = vec![0u64; self.n];
        for (u, v) in self.edges() {
            let (a, b) = (perm[u], perm[v]);
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Graph::from_rows(adj)
    }

    pub fn is_regular(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

pub(crate) fn check_order(n: usize) -> Result<(), GraphError> {
    match n {
        0 => Err(GraphError::Empty),
        n if n > MAX_ORDER => Err(GraphError::TooLarge { n, max: MAX_ORDER }),
        _ => Ok(()),
    }
}

pub(crate) fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

fn reaches_all(adj: &[u64]) -> bool {
    let all = low_mask(adj.len());
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        for v in BitIter(frontier) {
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen & all == all
}

/// Iterates the set bit positions of a word, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub(crate) u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_on_three_vertices() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.degrees(), &[1, 2, 1]);
        assert_eq!(g.size(), 2);
        assert_eq!(g.max_degree(), 2);
        assert!(g.is_connected());
        assert!(g.is_tree());
        assert_eq!(g.cyclomatic_number(), Some(0));
    }

    #[test]
    fn single_vertex() {
        let g = Graph::new(1, &[]).unwrap();
        assert_eq!(g.size(), 0);
        assert_eq!(g.max_degree(), 0);
        assert!(g.is_connected());
    }

    #[test]
    fn two_disjoint_edges_are_disconnected() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.cyclomatic_number(), None);
    }

    #[test]
    fn rejects_bad_edge_lists() {
        assert_eq!(Graph::new(0, &[]), Err(GraphError::Empty));
        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(GraphError::OutOfRange { u: 0, v: 3, n: 3 })
        );
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { u: 1, v: 0 })
        );
        assert!(matches!(Graph::new(65, &[]), Err(GraphError::TooLarge { .. })));
    }

    #[test]
    fn order_64_uses_the_top_bit() {
        let edges: Vec<_> = (0..63).map(|v| (v, v + 1)).collect();
        let g = Graph::new(64, &edges).unwrap();
        assert!(g.is_connected());
        assert_eq!(g.edges().count(), 63);
        assert!(g.has_edge(62, 63));
    }

    #[test]
    fn relabel_preserves_degree_multiset() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let h = g.relabel(&[3, 2, 1, 0]);
        assert_eq!(h.degree(3), 3);
        assert_eq!(h.size(), 3);
    }
}
