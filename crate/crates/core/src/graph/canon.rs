//! Exact canonical forms.
//!
//! General graphs: the lexicographically smallest upper-triangle bit string
//! (graph6 column order) over all vertex orderings that respect the colour
//! classes of an isomorphism-invariant colour refinement. Restricting to
//! those orderings keeps the minimum exact while skipping most of the `n!`
//! search. Trees: the sorted parenthesis encoding rooted at the center.

use std::fmt;

use super::{graph6, BitIter, Graph, GraphError};

/// Largest order accepted by the general (permutation search) path.
pub const MAX_GENERAL_CANON: usize = 10;
/// Largest order accepted by the tree encoding.
pub const MAX_TREE_CANON: usize = 16;

/// Byte string equal for two graphs exactly when they are isomorphic.
///
/// Keys are printable ASCII: `T` followed by a parenthesis encoding for
/// trees, `G` followed by the graph6 record of the canonical labeling for
/// everything else.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("canonical keys are ASCII")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.as_str())
    }
}

pub fn canonical_key(g: &Graph) -> Result<CanonicalKey, GraphError> {
    if g.is_tree() {
        if g.order() > MAX_TREE_CANON {
            return Err(GraphError::Limit {
                what: "tree canonical key",
                n: g.order(),
                limit: MAX_TREE_CANON,
            });
        }
        let mut key = vec![b'T'];
        key.extend(tree_code(g));
        return Ok(CanonicalKey(key));
    }
    let perm = canonical_permutation(g)?;
    Ok(general_key(&g.relabel(&perm)))
}

/// Canonical relabeling of `g` (order at most [`MAX_GENERAL_CANON`]).
///
/// Returns the key together with the relabeled graph; isomorphic inputs
/// give identical labeled outputs.
pub fn canonical_form(g: &Graph) -> Result<(CanonicalKey, Graph), GraphError> {
    let perm = canonical_permutation(g)?;
    let canon = g.relabel(&perm);
    let key = if g.is_tree() && g.order() <= MAX_TREE_CANON {
        let mut key = vec![b'T'];
        key.extend(tree_code(g));
        CanonicalKey(key)
    } else {
        general_key(&canon)
    };
    Ok((key, canon))
}

fn general_key(canon: &Graph) -> CanonicalKey {
    let mut key = vec![b'G'];
    key.extend(graph6::encode(canon).expect("order within graph6 range").into_bytes());
    CanonicalKey(key)
}

/// Isomorphism-invariant vertex colouring by iterated degree refinement.
/// Colours are dense ranks `0..k`.
pub(crate) fn refine_colors(g: &Graph) -> Vec<u32> {
    let n = g.order();
    let mut colors: Vec<u32> = g.degrees().iter().map(|&d| d as u32).collect();
    let mut classes = rank_in_place(&mut colors);
    loop {
        let mut sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() == classes {
            return colors;
        }
        classes = sorted.len();
        for (v, sig) in sigs.drain(..).enumerate() {
            colors[v] = sorted.binary_search(&sig).expect("present") as u32;
        }
    }
}

fn rank_in_place(colors: &mut [u32]) -> usize {
    let mut distinct = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for c in colors.iter_mut() {
        *c = distinct.binary_search(c).expect("present") as u32;
    }
    distinct.len()
}

/// Returns `perm` with `g.relabel(&perm)` canonical.
fn canonical_permutation(g: &Graph) -> Result<Vec<usize>, GraphError> {
    let n = g.order();
    if n > MAX_GENERAL_CANON {
        return Err(GraphError::Limit { what: "canonical labeling", n, limit: MAX_GENERAL_CANON });
    }
    let colors = refine_colors(g);
    // position_cell[p] is the colour class that position p draws from
    let mut by_color: Vec<usize> = (0..n).collect();
    by_color.sort_by_key(|&v| colors[v]);
    let mut cell_masks = vec![0u64; n];
    for &v in &by_color {
        cell_masks[colors[v] as usize] |= 1 << v;
    }
    let position_cell: Vec<u64> = by_color.iter().map(|&v| cell_masks[colors[v] as usize]).collect();

    let mut search = Search {
        g,
        position_cell,
        order: Vec::with_capacity(n),
        cols: Vec::with_capacity(n),
        best_cols: Vec::new(),
        best_order: Vec::new(),
    };
    search.descend(0, 0, false);
    let mut perm = vec![0; n];
    for (pos, &v) in search.best_order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok(perm)
}

struct Search<'a> {
    g: &'a Graph,
    position_cell: Vec<u64>,
    order: Vec<usize>,
    cols: Vec<u64>,
    best_cols: Vec<u64>,
    best_order: Vec<usize>,
}

impl Search<'_> {
    /// `less` records whether the current prefix is already smaller than the
    /// best prefix. Returns true when the best was replaced below this node.
    fn descend(&mut self, pos: usize, used: u64, mut less: bool) -> bool {
        let n = self.g.order();
        if pos == n {
            if less || self.best_order.is_empty() {
                self.best_cols.clone_from(&self.cols);
                self.best_order.clone_from(&self.order);
                return true;
            }
            return false;
        }
        let mut replaced = false;
        for v in BitIter(self.position_cell[pos] & !used) {
            let row = self.g.neighbor_bits(v);
            let mut col = 0u64;
            for (i, &u) in self.order.iter().enumerate() {
                if row >> u & 1 == 1 {
                    col |= 1 << (pos - 1 - i);
                }
            }
            let child_less = if less || self.best_order.is_empty() {
                less
            } else {
                match col.cmp(&self.best_cols[pos]) {
                    std::cmp::Ordering::Greater => continue,
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Equal => false,
                }
            };
            self.order.push(v);
            self.cols.push(col);
            if self.descend(pos + 1, used | 1 << v, child_less) {
                replaced = true;
                // the new best shares this node's prefix
                less = false;
            }
            self.order.pop();
            self.cols.pop();
        }
        replaced
    }
}

/// Parenthesis code of the tree rooted at its center; for a bicentral tree
/// the smaller of the two rootings.
fn tree_code(g: &Graph) -> Vec<u8> {
    let centers = tree_centers(g);
    centers
        .iter()
        .map(|&c| rooted_code(g, c, usize::MAX))
        .min()
        .expect("a tree has a center")
}

fn rooted_code(g: &Graph, v: usize, parent: usize) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> =
        g.neighbors(v).filter(|&u| u != parent).map(|u| rooted_code(g, u, v)).collect();
    children.sort_unstable();
    let mut out = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
    out.push(b'(');
    for c in children {
        out.extend(c);
    }
    out.push(b')');
    out
}

pub(crate) fn tree_centers(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree = g.degrees().to_vec();
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= leaves.len();
        let mut next = Vec::new();
        for &leaf in &leaves {
            degree[leaf] = 0;
            for u in g.neighbors(leaf) {
                if degree[u] > 0 {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        leaves = next;
    }
    leaves.sort_unstable();
    leaves
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Minimum bit string over every permutation, no refinement.
    fn brute_force_key(g: &Graph) -> Vec<bool> {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<bool>> = None;
        permute(&mut perm, 0, &mut |p| {
            // p[pos] = vertex placed at position pos
            let mut bits = Vec::new();
            for j in 1..n {
                for i in 0..j {
                    bits.push(g.has_edge(p[i], p[j]));
                }
            }
            if best.as_ref().is_none_or(|b| bits < *b) {
                best = Some(bits);
            }
        });
        best.unwrap()
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    fn random_relabel(rng: &mut impl Rng, g: &Graph) -> Graph {
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(rng);
        g.relabel(&perm)
    }

    #[test]
    fn isomorphic_families_share_keys() {
        let p4 = canonical_key(&Family::Path(4).build()).unwrap();
        assert_eq!(p4, canonical_key(&Family::DoubleStar(1, 1).build()).unwrap());
        assert_ne!(p4, canonical_key(&Family::Star(4).build()).unwrap());
    }

    #[test]
    fn all_relabelings_of_c4_share_one_key() {
        let c4 = Family::Cycle(4).build();
        let mut perm: Vec<usize> = (0..4).collect();
        let mut keys = std::collections::BTreeSet::new();
        permute(&mut perm, 0, &mut |p| {
            keys.insert(canonical_key(&c4.relabel(p)).unwrap());
        });
        assert_eq!(keys.len(), 1);
    }

    #[test]
    fn key_agrees_with_brute_force_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            let a = random_graph(&mut rng, n, 0.45);
            let b = if rng.gen_bool(0.5) {
                random_relabel(&mut rng, &a)
            } else {
                random_graph(&mut rng, n, 0.45)
            };
            let same_brute = brute_force_key(&a) == brute_force_key(&b);
            let same_key = canonical_key(&a).unwrap() == canonical_key(&b).unwrap();
            assert_eq!(same_brute, same_key, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn canonical_form_is_labeling_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(2..=10);
            let g = random_graph(&mut rng, n, 0.5);
            let (k1, c1) = canonical_form(&g).unwrap();
            let (k2, c2) = canonical_form(&random_relabel(&mut rng, &g)).unwrap();
            assert_eq!(k1, k2);
            assert_eq!(c1, c2);
        }
    }

    #[test]
    fn key_is_stable_over_many_relabelings() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [5, 8] {
            let g = random_graph(&mut rng, n, 0.5);
            let key = canonical_key(&g).unwrap();
            for _ in 0..1000 {
                assert_eq!(canonical_key(&random_relabel(&mut rng, &g)).unwrap(), key);
            }
        }
    }

    #[test]
    fn regular_graphs_with_one_refinement_class() {
        // the two 3-regular graphs on 6 vertices: prism and K_{3,3}
        let prism = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
        let k33 = Graph::new(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        assert_ne!(canonical_key(&prism).unwrap(), canonical_key(&k33).unwrap());
        let petersen = Family::Petersen.build();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let key = canonical_key(&petersen).unwrap();
        for _ in 0..20 {
            assert_eq!(canonical_key(&random_relabel(&mut rng, &petersen)).unwrap(), key);
        }
    }

    #[test]
    fn tree_keys_handle_bicentral_trees_up_to_16() {
        let p16 = Family::Path(16).build();
        let reversed: Vec<usize> = (0..16).rev().collect();
        assert_eq!(canonical_key(&p16).unwrap(), canonical_key(&p16.relabel(&reversed)).unwrap());
        assert_eq!(tree_centers(&p16), vec![7, 8]);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let ds = Family::DoubleStar(8, 6).build();
        let key = canonical_key(&ds).unwrap();
        for _ in 0..50 {
            assert_eq!(canonical_key(&random_relabel(&mut rng, &ds)).unwrap(), key);
        }
        assert_ne!(key, canonical_key(&Family::DoubleStar(7, 7).build()).unwrap());
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(
            canonical_key(&Family::Cycle(11).build()),
            Err(GraphError::Limit { limit: MAX_GENERAL_CANON, .. })
        ));
        assert!(matches!(
            canonical_key(&Family::Path(17).build()),
            Err(GraphError::Limit { limit: MAX_TREE_CANON, .. })
        ));
        assert!(canonical_key(&Family::Path(16).build()).is_ok());
    }
}
