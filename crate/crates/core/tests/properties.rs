mod common;

use abc_spectra::enumerate::{enumerate_connected, enumerate_trees};
use abc_spectra::graph::{automorphism_orbits, Family, Graph};
use abc_spectra::invariants::{abc_matrix, abc_spectral_radius, estrada_bounds};
use abc_spectra::spectral::full_spectrum;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn orbits_match_permutation_oracle() {
    for n in 2..=6 {
        for g in enumerate_connected(n, None).unwrap() {
            assert_eq!(automorphism_orbits(&g).unwrap(), common::brute_force_orbits(&g), "{:?}", g.edges().collect::<Vec<_>>());
        }
    }
    for g in enumerate_trees(8).unwrap() {
        assert_eq!(automorphism_orbits(&g).unwrap(), common::brute_force_orbits(&g));
    }
}

#[test]
fn orbits_refine_degrees_and_carry_equal_perron_entries() {
    for n in 2..=7 {
        for g in enumerate_connected(n, None).unwrap() {
            let perron = abc_spectral_radius(&g).unwrap().perron;
            for block in automorphism_orbits(&g).unwrap() {
                let d = g.degree(block[0]);
                assert!(block.iter().all(|&v| g.degree(v) == d));
                let x = perron[block[0]];
                assert!(block.iter().all(|&v| (perron[v] - x).abs() <= 1e-9));
            }
        }
    }
}

#[test]
fn double_star_has_four_distinct_perron_entries() {
    for n in 6..=10 {
        let g = Family::DoubleStar(n - 3, 1).build();
        let orbits = automorphism_orbits(&g).unwrap();
        assert_eq!(orbits.len(), 4);
        let perron = abc_spectral_radius(&g).unwrap().perron;
        let mut values: Vec<f64> = orbits.iter().map(|b| perron[b[0]]).collect();
        values.sort_by(f64::total_cmp);
        assert!(values.windows(2).all(|w| w[1] - w[0] > 1e-9), "n={n}: {values:?}");
    }
}

#[test]
fn power_iteration_agrees_with_jacobi() {
    for n in 2..=7 {
        for g in enumerate_connected(n, None).unwrap() {
            let w = abc_matrix(&g);
            let power = abc_spectral_radius(&g).unwrap();
            let top = full_spectrum(&w.matrix).unwrap()[0];
            assert!((power.radius - top).abs() <= 1e-10, "{} vs {top}", power.radius);
            assert!(power.residual < 1e-9);
            assert!(power.perron.iter().all(|&x| x > 0.0));
        }
    }
}

#[test]
fn regular_graphs_have_closed_form_radius() {
    for n in 3..=8 {
        for g in enumerate_connected(n, None).unwrap().into_iter().filter(Graph::is_regular) {
            let r = g.max_degree() as f64;
            let rho = abc_spectral_radius(&g).unwrap().radius;
            assert!((rho - (2.0 * r - 2.0).sqrt()).abs() <= 1e-10);
        }
    }
    let petersen = abc_spectral_radius(&Family::Petersen.build()).unwrap().radius;
    assert!((petersen - 2.0).abs() <= 1e-10);
}

#[test]
fn radius_and_estrada_bounds_are_relabeling_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in enumerate_connected(6, None).unwrap().iter().step_by(7) {
        let rho = abc_spectral_radius(g).unwrap().radius;
        let bounds = estrada_bounds(g).unwrap();
        for _ in 0..5 {
            let mut perm: Vec<usize> = (0..g.order()).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm);
            assert!((abc_spectral_radius(&h).unwrap().radius - rho).abs() <= 1e-12);
            let hb = estrada_bounds(&h).unwrap();
            assert!((hb.lower - bounds.lower).abs() <= 1e-12 && (hb.upper - bounds.upper).abs() <= 1e-12);
        }
    }
}
