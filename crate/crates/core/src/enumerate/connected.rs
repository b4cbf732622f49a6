//! Connected graphs up to isomorphism by vertex augmentation.
//!
//! Every connected graph on `n` vertices has a vertex whose removal leaves
//! it connected, so adding a vertex with every nonempty neighbourhood to
//! every class on `n − 1` vertices reaches every class on `n`. Candidates
//! are merged by canonical key.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::graph::{canonical_form, CanonicalKey, Graph};

pub(crate) const MAX_ORDER: usize = 8;

static CLASSES: [OnceLock<Vec<(CanonicalKey, Graph)>>; MAX_ORDER + 1] =
    [const { OnceLock::new() }; MAX_ORDER + 1];

/// All connected classes of order `n` (1..=8), canonically labeled, in key order.
pub(crate) fn classes(n: usize) -> &'static [(CanonicalKey, Graph)] {
    assert!((1..=MAX_ORDER).contains(&n));
    CLASSES[n].get_or_init(|| build(n))
}

fn build(n: usize) -> Vec<(CanonicalKey, Graph)> {
    if n == 1 {
        let k1 = Graph::new(1, &[]).expect("K1");
        return vec![canonical_form(&k1).expect("small order")];
    }
    let parents = classes(n - 1);
    let new_vertex = n - 1;
    let found: Vec<(CanonicalKey, Graph)> = parents
        .par_iter()
        .flat_map_iter(|(_, parent)| {
            (1u64..1 << (n - 1)).map(move |neighbourhood| {
                let mut rows: Vec<u64> = (0..new_vertex).map(|v| parent.neighbor_bits(v)).collect();
                for (v, row) in rows.iter_mut().enumerate() {
                    if neighbourhood >> v & 1 == 1 {
                        *row |= 1 << new_vertex;
                    }
                }
                rows.push(neighbourhood);
                canonical_form(&Graph::from_rows(rows)).expect("small order")
            })
        })
        .collect();
    let unique: BTreeMap<CanonicalKey, Graph> = found.into_iter().collect();
    unique.into_iter().collect()
}
