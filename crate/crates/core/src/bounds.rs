//! Closed-form upper bounds on the ABC spectral radius in terms of
//! `(n, m, Δ)`, the class thresholds they are compared against, and the
//! tabulation of `θ′` against `Δ`.
//!
//! Throughout, `D = 2m − n + 1`.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::invariants::{estrada_bounds, InvariantError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("order n = {0} is below the minimum {1}")]
    OrderTooSmall(usize, usize),
    #[error("size m = {m} is outside {lo}..={hi} for n = {n}")]
    SizeOutOfRange { n: usize, m: usize, lo: usize, hi: usize },
    #[error("max degree {delta} is outside 1..={max} for n = {n}")]
    DegreeOutOfRange { n: usize, delta: usize, max: usize },
    #[error("radicand {0} is negative")]
    NegativeRadicand(f64),
    #[error("eta requires positive arguments, got x = {x}, D = {d}")]
    NonPositive { x: f64, d: f64 },
    #[error("cyclomatic number c = {c} exceeds (n - 1)/2 for n = {n}")]
    TooCyclic { n: usize, c: usize },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// `2m − n + 1` after validating `(n, m, Δ)`.
fn checked_d(n: usize, m: usize, delta: usize) -> Result<usize, BoundError> {
    if n < 2 {
        return Err(BoundError::OrderTooSmall(n, 2));
    }
    let hi = n * (n - 1) / 2;
    if m < n - 1 || m > hi {
        return Err(BoundError::SizeOutOfRange { n, m, lo: n - 1, hi });
    }
    if delta < 1 || delta > n - 1 {
        return Err(BoundError::DegreeOutOfRange { n, delta, max: n - 1 });
    }
    Ok(2 * m + 1 - n)
}

/// `√(Δ + D/Δ − 2)`.
pub fn theta(n: usize, m: usize, delta: usize) -> Result<f64, BoundError> {
    let d = checked_d(n, m, delta)? as f64;
    let delta = delta as f64;
    let radicand = delta + d / delta - 2.0;
    if radicand < 0.0 {
        return Err(BoundError::NegativeRadicand(radicand));
    }
    Ok(radicand.sqrt())
}

/// `⌈D/Δ⌉`.
pub fn ceiling_ratio(n: usize, m: usize, delta: usize) -> Result<usize, BoundError> {
    Ok(checked_d(n, m, delta)?.div_ceil(delta))
}

/// `√(Δ + ⌈D/Δ⌉ − 2)`.
pub fn theta_prime(n: usize, m: usize, delta: usize) -> Result<f64, BoundError> {
    let k = ceiling_ratio(n, m, delta)?;
    // Δ ≥ 1 and k ≥ 1, so the radicand is nonnegative
    Ok(((delta + k - 2) as f64).sqrt())
}

/// `x + D/x − 2`: decreasing on `(0, √D]`, increasing after, so its maximum
/// on a closed interval sits at an endpoint.
pub fn eta(x: f64, d: f64) -> Result<f64, BoundError> {
    if !(x > 0.0 && d > 0.0) {
        return Err(BoundError::NonPositive { x, d });
    }
    Ok(x + d / x - 2.0)
}

/// `√(n − 2 + 2c/(n − 1))`, valid for `c ≤ (n − 1)/2`.
pub fn c_cyclic_bound(n: usize, c: usize) -> Result<f64, BoundError> {
    if n < 3 {
        return Err(BoundError::OrderTooSmall(n, 3));
    }
    if 2 * c > n - 1 {
        return Err(BoundError::TooCyclic { n, c });
    }
    Ok((n as f64 - 2.0 + 2.0 * c as f64 / (n as f64 - 1.0)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NamedThresholds {
    /// `√2·cos(π/(n+1))`, the radius of the path.
    pub path_lower: f64,
    /// `√(n − 2)`, the radius of the star.
    pub tree_upper: f64,
    /// `√(2n − 4)`, the radius of the complete graph.
    pub complete_cap: f64,
    /// `√(n − 3.5)`, separating the double star from trees of smaller max degree.
    pub double_star_threshold: f64,
}

pub fn named_thresholds(n: usize) -> Result<NamedThresholds, BoundError> {
    if n < 3 {
        return Err(BoundError::OrderTooSmall(n, 3));
    }
    let nf = n as f64;
    Ok(NamedThresholds {
        path_lower: std::f64::consts::SQRT_2 * (std::f64::consts::PI / (nf + 1.0)).cos(),
        tree_upper: (nf - 2.0).sqrt(),
        complete_cap: (2.0 * nf - 4.0).sqrt(),
        double_star_threshold: (nf - 3.5).sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassBound {
    CCyclic,
    TreeUpper,
    PathLower,
    CompleteCap,
    DoubleStarThreshold,
}

impl ClassBound {
    pub fn label(&self) -> &'static str {
        match self {
            ClassBound::CCyclic => "c-cyclic",
            ClassBound::TreeUpper => "tree-upper",
            ClassBound::PathLower => "path-lower",
            ClassBound::CompleteCap => "complete-cap",
            ClassBound::DoubleStarThreshold => "double-star-threshold",
        }
    }
}

/// Every bound that applies to one connected graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub d: usize,
    pub theta: f64,
    pub theta_prime: f64,
    pub k: usize,
    pub estrada_lower: f64,
    pub estrada_upper: f64,
    pub class_bounds: Vec<(ClassBound, f64)>,
}

impl BoundReport {
    /// Requires a connected graph with at least two vertices.
    pub fn for_graph(g: &Graph) -> Result<BoundReport, BoundError> {
        let (n, m, delta) = (g.order(), g.size(), g.max_degree());
        let estrada = estrada_bounds(g)?;
        let d = checked_d(n, m, delta)?;
        let mut class_bounds = Vec::new();
        if n >= 3 {
            let c = m + 1 - n;
            if let Ok(b) = c_cyclic_bound(n, c) {
                class_bounds.push((ClassBound::CCyclic, b));
            }
            let t = named_thresholds(n)?;
            if g.is_tree() {
                class_bounds.push((ClassBound::TreeUpper, t.tree_upper));
            }
            class_bounds.push((ClassBound::PathLower, t.path_lower));
            class_bounds.push((ClassBound::CompleteCap, t.complete_cap));
            if g.is_tree() && n >= 4 {
                class_bounds.push((ClassBound::DoubleStarThreshold, t.double_star_threshold));
            }
        }
        Ok(BoundReport {
            n,
            m,
            delta,
            d,
            theta: theta(n, m, delta)?,
            theta_prime: theta_prime(n, m, delta)?,
            k: ceiling_ratio(n, m, delta)?,
            estrada_lower: estrada.lower,
            estrada_upper: estrada.upper,
            class_bounds,
        })
    }

    pub fn class_bound(&self, which: ClassBound) -> Option<f64> {
        self.class_bounds.iter().find(|(b, _)| *b == which).map(|&(_, v)| v)
    }
}

/// How `θ′` moves from `Δ` to `Δ + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    Increasing,
    Equal,
    Decreasing,
}

/// Where `Δ` and `Δ + 1` sit relative to the plateaus of `⌈D/Δ⌉`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlateauRelation {
    /// Same ceiling value.
    Same,
    /// The ceiling drops by exactly one.
    Adjacent,
    /// The ceiling drops by two or more.
    Skipping,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneRow {
    pub delta: usize,
    pub k: usize,
    /// `Δ + k − 2`, the integer under the root.
    pub radicand: usize,
    pub theta_prime: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonePair {
    pub lower_delta: usize,
    pub upper_delta: usize,
    pub lower_k: usize,
    pub upper_k: usize,
    pub trend: Trend,
    pub relation: PlateauRelation,
    /// `D/(k − 1) − 1 = Δ₂` holds exactly, with `k = ⌈D/Δ₂⌉`.
    pub exact_boundary: bool,
    /// `Δ₂ < D/(k − 1) ≤ Δ₂ + 1`: the plateau boundary falls between the two degrees.
    pub boundary_between: bool,
}

impl MonotonePair {
    /// Not strictly increasing in `Δ`.
    pub fn is_non_strict(&self) -> bool {
        self.trend != Trend::Increasing
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneTable {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub rows: Vec<MonotoneRow>,
    pub pairs: Vec<MonotonePair>,
}

impl MonotoneTable {
    pub fn non_strict(&self) -> impl Iterator<Item = &MonotonePair> {
        self.pairs.iter().filter(|p| p.is_non_strict())
    }

    /// Row with the largest `θ′`, the largest `Δ` on ties.
    pub fn argmax(&self) -> Option<&MonotoneRow> {
        self.rows.iter().max_by_key(|r| (r.radicand, r.delta))
    }
}

/// Tabulates `θ′(n, m, Δ)` for `Δ` from `max(1, ⌈2m/n⌉)` (no smaller maximum
/// degree fits `m` edges) to `n − 1`, and classifies each adjacent pair.
pub fn theta_prime_monotone_check(n: usize, m: usize) -> Result<MonotoneTable, BoundError> {
    let d = checked_d(n, m, 1)?;
    let lo = (2 * m).div_ceil(n).max(1);
    let rows: Vec<MonotoneRow> = (lo..n)
        .map(|delta| {
            let k = d.div_ceil(delta);
            let radicand = delta + k - 2;
            MonotoneRow { delta, k, radicand, theta_prime: (radicand as f64).sqrt() }
        })
        .collect();
    let pairs = rows
        .windows(2)
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            let trend = match b.radicand.cmp(&a.radicand) {
                std::cmp::Ordering::Greater => Trend::Increasing,
                std::cmp::Ordering::Equal => Trend::Equal,
                std::cmp::Ordering::Less => Trend::Decreasing,
            };
            let relation = match a.k - b.k {
                0 => PlateauRelation::Same,
                1 => PlateauRelation::Adjacent,
                _ => PlateauRelation::Skipping,
            };
            let (exact_boundary, boundary_between) = if a.k >= 2 {
                let q = a.k - 1;
                (d % q == 0 && d / q == a.delta + 1, d > a.delta * q && d <= (a.delta + 1) * q)
            } else {
                (false, false)
            };
            MonotonePair {
                lower_delta: a.delta,
                upper_delta: b.delta,
                lower_k: a.k,
                upper_k: b.k,
                trend,
                relation,
                exact_boundary,
                boundary_between,
            }
        })
        .collect();
    Ok(MonotoneTable { n, m, d, rows, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    const EPS: f64 = 1e-12;

    #[test]
    fn theta_at_star_and_complete_parameters() {
        for n in 3..=20 {
            assert!((theta(n, n - 1, n - 1).unwrap() - ((n - 2) as f64).sqrt()).abs() < EPS);
            let full = n * (n - 1) / 2;
            let cap = ((2 * n - 4) as f64).sqrt();
            assert!((theta(n, full, n - 1).unwrap() - cap).abs() < EPS);
            assert!((theta_prime(n, full, n - 1).unwrap() - cap).abs() < EPS);
        }
        assert!((theta(5, 4, 4).unwrap() - 3f64.sqrt()).abs() < EPS);
        assert_eq!(theta(2, 1, 1).unwrap(), 0.0);
    }

    #[test]
    fn theta_prime_for_trees_of_max_degree_n_minus_4() {
        for n in 7..=40 {
            let v = theta_prime(n, n - 1, n - 4).unwrap();
            assert!((v - ((n - 4) as f64).sqrt()).abs() < EPS, "n = {n}");
        }
    }

    #[test]
    fn theta_never_exceeds_theta_prime() {
        for n in 2..=12 {
            for m in n - 1..=n * (n - 1) / 2 {
                for delta in 1..n {
                    let k = ceiling_ratio(n, m, delta).unwrap();
                    let d = 2 * m + 1 - n;
                    assert!(k * delta >= d && (k - 1) * delta < d);
                    if let Ok(t) = theta(n, m, delta) {
                        assert!(t <= theta_prime(n, m, delta).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn parameter_validation() {
        assert_eq!(theta(1, 0, 1), Err(BoundError::OrderTooSmall(1, 2)));
        assert!(matches!(theta(5, 3, 2), Err(BoundError::SizeOutOfRange { .. })));
        assert!(matches!(theta(5, 11, 4), Err(BoundError::SizeOutOfRange { .. })));
        assert!(matches!(theta(5, 4, 5), Err(BoundError::DegreeOutOfRange { .. })));
        assert!(matches!(theta(5, 4, 0), Err(BoundError::DegreeOutOfRange { .. })));
    }

    #[test]
    fn eta_values() {
        for d in [1.0, 2.0, 7.0, 30.0] {
            let min = eta(f64::sqrt(d), d).unwrap();
            assert!((min - (2.0 * d.sqrt() - 2.0)).abs() < EPS);
        }
        assert_eq!(eta(1.0, 1.0).unwrap(), 0.0);
        assert!(eta(0.0, 1.0).is_err());
        assert!(eta(1.0, -1.0).is_err());
        assert!(eta(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn eta_peaks_at_the_top_endpoint() {
        for delta in 1..=30usize {
            for d in 1..=delta * delta {
                let (df, lo) = (d as f64, d as f64 / delta as f64);
                let top = eta(delta as f64, df).unwrap();
                let bottom = eta(lo, df).unwrap();
                assert!((top.max(bottom) - (delta as f64 + lo - 2.0)).abs() < 1e-9);
                for i in 0..=50 {
                    let x = lo + (delta as f64 - lo) * i as f64 / 50.0;
                    assert!(eta(x, df).unwrap() <= top + 1e-12);
                }
            }
        }
    }

    #[test]
    fn c_cyclic_values() {
        for n in 3..=20 {
            assert!((c_cyclic_bound(n, 0).unwrap() - ((n - 2) as f64).sqrt()).abs() < EPS);
            let uni = (n as f64 - 2.0 + 2.0 / (n as f64 - 1.0)).sqrt();
            assert!((c_cyclic_bound(n, 1).unwrap() - uni).abs() < EPS);
            for c in 0..=(n - 1) / 2 {
                let m = n - 1 + c;
                assert!(m <= n * (n - 1) / 2);
                let at_two = theta(n, m, 2).unwrap();
                assert!((at_two - ((n - 1) as f64 / 2.0 + c as f64).sqrt()).abs() < EPS);
                assert!(at_two <= c_cyclic_bound(n, c).unwrap() + EPS);
                assert!((theta(n, m, n - 1).unwrap() - c_cyclic_bound(n, c).unwrap()).abs() < EPS);
            }
        }
        assert_eq!(c_cyclic_bound(8, 4), Err(BoundError::TooCyclic { n: 8, c: 4 }));
        assert!(c_cyclic_bound(2, 0).is_err());
    }

    #[test]
    fn named_threshold_values() {
        assert!((named_thresholds(3).unwrap().path_lower - 1.0).abs() < EPS);
        assert!((named_thresholds(4).unwrap().double_star_threshold - 0.5f64.sqrt()).abs() < EPS);
        assert!((named_thresholds(6).unwrap().complete_cap - 8f64.sqrt()).abs() < EPS);
        assert!(named_thresholds(2).is_err());
    }

    #[test]
    fn report_for_star_lists_tree_bounds() {
        let r = BoundReport::for_graph(&Family::Star(6).build()).unwrap();
        assert_eq!((r.n, r.m, r.delta, r.d, r.k), (6, 5, 5, 5, 1));
        assert!((r.theta - 2.0).abs() < EPS);
        assert_eq!(r.class_bound(ClassBound::TreeUpper), Some(2.0));
        assert!(r.class_bound(ClassBound::DoubleStarThreshold).is_some());
        let k5 = BoundReport::for_graph(&Family::Complete(5).build()).unwrap();
        assert!(k5.class_bound(ClassBound::TreeUpper).is_none());
        // c = 6 > 2
        assert!(k5.class_bound(ClassBound::CCyclic).is_none());
    }

    #[test]
    fn monotone_table_classification() {
        for n in 2..=12 {
            for m in n - 1..=n * (n - 1) / 2 {
                let t = theta_prime_monotone_check(n, m).unwrap();
                for p in &t.pairs {
                    let expected = match p.relation {
                        PlateauRelation::Same => Trend::Increasing,
                        PlateauRelation::Adjacent => Trend::Equal,
                        PlateauRelation::Skipping => Trend::Decreasing,
                    };
                    assert_eq!(p.trend, expected);
                    if p.is_non_strict() {
                        assert!(p.boundary_between);
                    }
                    if p.exact_boundary {
                        assert_eq!(p.trend, Trend::Equal);
                    }
                }
            }
        }
    }

    #[test]
    fn exact_boundary_misses_some_equal_pairs() {
        // C4 and S4 + e: D = 5, θ′ = √3 at both Δ = 2 and Δ = 3, yet 5/2 − 1 ≠ 2
        let t = theta_prime_monotone_check(4, 4).unwrap();
        let p = &t.pairs[0];
        assert_eq!((p.lower_delta, p.trend), (2, Trend::Equal));
        assert!(!p.exact_boundary && p.boundary_between);
    }

    #[test]
    fn trees_peak_at_the_star() {
        for n in 7..=12 {
            let t = theta_prime_monotone_check(n, n - 1).unwrap();
            let top = t.argmax().unwrap();
            assert_eq!(top.delta, n - 1);
            assert!((top.theta_prime - ((n - 2) as f64).sqrt()).abs() < EPS);
            assert!(t.rows.iter().all(|r| r.radicand <= n - 2));
        }
    }
}
