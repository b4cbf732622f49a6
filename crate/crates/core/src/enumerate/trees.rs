//! Free trees in canonical level-sequence order.
//!
//! Each tree is a preorder level sequence of the tree rooted at its
//! center. The successor step and the validity repair follow Wright,
//! Richmond, Odlyzko and McKay, starting from the path and ending at the
//! star.

use crate::graph::Graph;

/// Iterator over one representative of each free tree on `n` vertices.
pub struct FreeTrees {
    layout: Option<Vec<usize>>,
    primed: bool,
}

impl FreeTrees {
    /// Requires `n >= 2`; callers validate the supported range.
    pub(crate) fn new(n: usize) -> FreeTrees {
        debug_assert!(n >= 2);
        // path rooted at its center
        let mut layout: Vec<usize> = (0..=n / 2).collect();
        layout.extend(1..n.div_ceil(2));
        FreeTrees { layout: Some(layout), primed: false }
    }
}

impl Iterator for FreeTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let current = self.layout.take()?;
        let candidate = if self.primed { next_rooted_tree(&current, None) } else { Some(current) };
        self.primed = true;
        let tree = candidate.and_then(next_free_tree)?;
        let graph = layout_to_graph(&tree);
        self.layout = Some(tree);
        Some(graph)
    }
}

/// Successor of a rooted level sequence, replicating the subtree at `q`
/// from position `p` on.
fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Splits a level sequence into the first subtree of the root (levels
/// shifted down by one) and the rest of the tree.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let second_child = layout.iter().enumerate().skip(1).filter(|&(_, &l)| l == 1).nth(1);
    let cut = second_child.map_or(layout.len(), |(i, _)| i);
    let left = layout[1..cut].iter().map(|l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[cut..]);
    (left, rest)
}

/// Returns `candidate` if it is the canonical rooting of a free tree,
/// otherwise the next sequence that is.
fn next_free_tree(candidate: Vec<usize>) -> Option<Vec<usize>> {
    let (left, rest) = split_tree(&candidate);
    let left_height = left.iter().copied().max().unwrap_or(0);
    let rest_height = rest.iter().copied().max().unwrap_or(0);
    let mut valid = rest_height >= left_height;
    if valid && rest_height == left_height
        && (left.len() > rest.len() || (left.len() == rest.len() && left > rest)) {
            valid = false;
        }
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut next = next_rooted_tree(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let new_left_height = new_left.iter().copied().max().unwrap_or(0);
        let len = next.len();
        for (slot, level) in next[len - new_left_height - 1..].iter_mut().zip(1..) {
            *slot = level;
        }
    }
    Some(next)
}

fn layout_to_graph(layout: &[usize]) -> Graph {
    let n = layout.len();
    let mut adj = vec![0u64; n];
    // last vertex seen at each level
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    for (v, &level) in layout.iter().enumerate() {
        stack.truncate(level);
        if let Some(&parent) = stack.last() {
            adj[parent] |= 1 << v;
            adj[v] |= 1 << parent;
        }
        stack.push(v);
    }
    Graph::from_rows(adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (3..=16).map(|n| FreeTrees::new(n).count()).collect();
        assert_eq!(
            counts,
            vec![1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320]
        );
    }

    #[test]
    fn six_vertex_sequences_in_order() {
        let got: Vec<Vec<usize>> = {
            let mut it = FreeTrees::new(6);
            let mut out = Vec::new();
            while it.next().is_some() {
                out.push(it.layout.clone().unwrap());
            }
            out
        };
        assert_eq!(
            got,
            vec![
                vec![0, 1, 2, 3, 1, 2],
                vec![0, 1, 2, 2, 1, 2],
                vec![0, 1, 2, 2, 1, 1],
                vec![0, 1, 2, 1, 2, 1],
                vec![0, 1, 2, 1, 1, 1],
                vec![0, 1, 1, 1, 1, 1],
            ]
        );
    }

    #[test]
    fn first_is_path_last_is_star() {
        for n in 3..=12 {
            let trees: Vec<Graph> = FreeTrees::new(n).collect();
            assert_eq!(trees[0].max_degree(), 2);
            assert_eq!(trees.last().unwrap().max_degree(), n - 1);
            assert!(trees.iter().all(|t| t.is_tree() && t.order() == n));
        }
    }
}
