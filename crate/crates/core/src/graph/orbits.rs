use super::canon::refine_colors;
use super::{BitIter, Graph, GraphError};

/// Largest order accepted by [`automorphism_orbits`].
pub const MAX_ORBIT_ORDER: usize = 10;

/// Partition of the vertices into automorphism orbits.
///
/// Blocks are sorted internally and listed by smallest member. Every
/// automorphism is found by backtracking over colour-preserving partial
/// maps, so the result is exact.
pub fn automorphism_orbits(g: &Graph) -> Result<Vec<Vec<usize>>, GraphError> {
    let n = g.order();
    if n > MAX_ORBIT_ORDER {
        return Err(GraphError::Limit { what: "automorphism orbits", n, limit: MAX_ORBIT_ORDER });
    }
    let colors = refine_colors(g);
    let mut parent: Vec<usize> = (0..n).collect();
    let mut image = vec![usize::MAX; n];
    extend(g, &colors, 0, 0, &mut image, &mut parent);

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of_root = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if block_of_root[r] == usize::MAX {
            block_of_root[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of_root[r]].push(v);
    }
    Ok(blocks)
}

fn extend(
    g: &Graph,
    colors: &[u32],
    v: usize,
    used: u64,
    image: &mut [usize],
    parent: &mut [usize],
) {
    let n = g.order();
    if v == n {
        for u in 0..n {
            union(parent, u, image[u]);
        }
        return;
    }
    for w in BitIter(!used & super::low_mask(n)) {
        if colors[w] != colors[v] {
            continue;
        }
        let consistent = (0..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u], w));
        if !consistent {
            continue;
        }
        image[v] = w;
        extend(g, colors, v + 1, used | 1 << w, image, parent);
    }
    image[v] = usize::MAX;
}

fn find(parent: &mut [usize], v: usize) -> usize {
    let mut r = v;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = v;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}
