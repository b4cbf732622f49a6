//! Brute-force oracles shared by the integration tests. Each one is
//! deliberately naive and independent of the generators it checks.

#![allow(dead_code)]

use std::collections::BTreeSet;

use abc_spectra::graph::{canonical_key, CanonicalKey, Graph};

/// Free trees by decoding every Prüfer sequence and deduplicating.
pub fn prufer_tree_classes(n: usize) -> BTreeSet<CanonicalKey> {
    assert!(n >= 3);
    let len = n - 2;
    let total = (n as u64).pow(len as u32);
    let mut seq = vec![0usize; len];
    let mut classes = BTreeSet::new();
    for code in 0..total {
        let mut c = code;
        for s in seq.iter_mut() {
            *s = (c % n as u64) as usize;
            c /= n as u64;
        }
        classes.insert(canonical_key(&prufer_decode(n, &seq)).unwrap());
    }
    classes
}

pub fn prufer_decode(n: usize, seq: &[usize]) -> Graph {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, &edges).unwrap()
}

/// Free trees by attaching a leaf to every vertex of every smaller tree.
pub fn leaf_augmented_tree_classes(n: usize) -> BTreeSet<CanonicalKey> {
    let mut level: Vec<Graph> = vec![Graph::new(2, &[(0, 1)]).unwrap()];
    for order in 3..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            let mut edges: Vec<(usize, usize)> = t.edges().collect();
            for v in 0..order - 1 {
                edges.push((v, order - 1));
                let g = Graph::new(order, &edges).unwrap();
                if seen.insert(canonical_key(&g).unwrap()) {
                    next.push(g);
                }
                edges.pop();
            }
        }
        level = next;
    }
    level.iter().map(|g| canonical_key(g).unwrap()).collect()
}

/// Number of free trees on `n` vertices from Otter's formula.
pub fn otter_tree_count(n: usize) -> u64 {
    // rooted trees by the Euler transform recurrence
    let mut r = vec![0u64; n + 1];
    r[1] = 1;
    for m in 1..n {
        let mut sum = 0u64;
        for k in 1..=m {
            let s: u64 = (1..=k).filter(|d| k % d == 0).map(|d| d as u64 * r[d]).sum();
            sum += s * r[m - k + 1];
        }
        r[m + 1] = sum / m as u64;
    }
    let mut pairs = 0u64;
    for i in 1..n {
        pairs += r[i] * r[n - i];
    }
    let mut twice = 2 * r[n] - pairs;
    if n.is_multiple_of(2) {
        twice += r[n / 2];
    }
    twice / 2
}

/// Connected classes by testing every edge subset of `Kₙ`.
pub fn edge_subset_connected_classes(n: usize, m: Option<usize>) -> BTreeSet<CanonicalKey> {
    let all: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let mut classes = BTreeSet::new();
    for mask in 0u64..1 << all.len() {
        let size = mask.count_ones() as usize;
        if size + 1 < n || m.is_some_and(|m| m != size) {
            continue;
        }
        let edges: Vec<(usize, usize)> = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::new(n, &edges).unwrap();
        if g.is_connected() {
            classes.insert(canonical_key(&g).unwrap());
        }
    }
    classes
}

/// Automorphism orbits by testing all `n!` permutations.
pub fn brute_force_orbits(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    loop {
        if g.edges().all(|(u, v)| g.has_edge(perm[u], perm[v])) {
            for v in 0..n {
                let (a, b) = (find(&mut parent, v), find(&mut parent, perm[v]));
                parent[a.max(b)] = a.min(b);
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_of = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if root_of[r] == usize::MAX {
            root_of[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[root_of[r]].push(v);
    }
    blocks
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
