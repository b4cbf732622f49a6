//! Exploratory sweeps for open questions. These report findings and assert
//! only what is already proved.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{check_tol, evaluate, report_key, Catalog, Evaluation, ExperimentError, ExperimentReport};
use crate::enumerate::ClassKind;
use crate::graph::Family;

/// Graphs with `|ρ − θ(n, m, Δ)| ≤ tol`. Asserts that the star and the
/// complete graph attain whenever the class contains them, and that a
/// regular graph attains only when it is complete.
pub fn find_attainers(cat: &Catalog, tol: f64) -> Result<ExperimentReport, ExperimentError> {
    check_tol(tol)?;
    let evals = evaluate(&cat.graphs)?;
    let values: Vec<Option<f64>> = evals.iter().map(|e| Some(e.bounds.theta)).collect();
    let mut report = ExperimentReport::assemble("find-attainers", &cat.label, Some("theta"), tol, &evals, &values);
    report.check("no violations", report.summary.violations == 0, format!("{} violations", report.summary.violations));

    let n_values: Vec<usize> = {
        let mut ns: Vec<usize> = evals.iter().map(|e| e.graph.order()).collect();
        ns.sort_unstable();
        ns.dedup();
        ns
    };
    let present = |key: &str| evals.iter().any(|e| e.key == key);
    for n in n_values {
        let star = Family::Star(n).build();
        let complete = Family::Complete(n).build();
        for (name, g, expected) in [
            ("star", &star, expects_star(cat, n)),
            ("complete graph", &complete, expects_complete(cat, n)),
        ] {
            let key = report_key(g)?;
            if expected || present(&key) {
                let found = report.summary.attainers.contains(&key);
                report.check(format!("{name} of order {n} attains"), found, key);
            }
        }
    }

    let regular: Vec<&Evaluation> = evals.iter().filter(|e| e.graph.is_regular()).collect();
    if !regular.is_empty() {
        let wrong: Vec<&str> = regular
            .iter()
            .filter(|e| {
                let n = e.graph.order();
                let attains = report.summary.attainers.contains(&e.key);
                attains != (e.graph.max_degree() == n - 1)
            })
            .map(|e| e.key.as_str())
            .collect();
        report.check(
            "regular graphs attain iff complete",
            wrong.is_empty(),
            format!("{} regular graphs; disagreeing: {wrong:?}", regular.len()),
        );
    }

    for e in &evals {
        let g = &e.graph;
        let n = g.order();
        let named = (g.is_tree() && g.max_degree() == n - 1) || g.size() == n * (n - 1) / 2;
        if report.summary.attainers.contains(&e.key) && !named {
            report.summary.findings.push(format!(
                "additional attainer {} (n={}, m={}, delta={}, rho={})",
                e.graph6,
                n,
                g.size(),
                g.max_degree(),
                e.rho()
            ));
        }
    }
    Ok(report)
}

fn expects_star(cat: &Catalog, n: usize) -> bool {
    cat.spec.is_some_and(|s| {
        s.n == n
            && match s.kind {
                ClassKind::Trees => true,
                ClassKind::Connected { m } => m.is_none_or(|m| m == n - 1),
                ClassKind::TreesMaxDegree { delta } => delta == n - 1,
                ClassKind::CCyclic { c } => c == 0,
                ClassKind::Unicyclic => false,
            }
    })
}

fn expects_complete(cat: &Catalog, n: usize) -> bool {
    cat.spec.is_some_and(|s| {
        let full = n * (n - 1) / 2;
        s.n == n
            && match s.kind {
                ClassKind::Connected { m } => m.is_none_or(|m| m == full),
                ClassKind::CCyclic { c } => n - 1 + c == full,
                ClassKind::Unicyclic => n == 3,
                ClassKind::Trees | ClassKind::TreesMaxDegree { .. } => n == 2,
            }
    })
}

/// Full ranking by `ρ`. Numerically tied neighbours with different keys are
/// reported as findings rather than resolved.
pub fn order_class(cat: &Catalog, tol: f64) -> Result<ExperimentReport, ExperimentError> {
    check_tol(tol)?;
    let evals = evaluate(&cat.graphs)?;
    let mut report = ExperimentReport::assemble("order-class", &cat.label, None, tol, &evals, &vec![None; evals.len()]);
    let mut keys: Vec<&str> = report.rows.iter().map(|r| r.key.as_str()).collect();
    keys.sort_unstable();
    keys.dedup();
    let conserved = report.rows.len() == cat.graphs.len() && keys.len() == cat.graphs.len();
    report.check(
        "ranking is a permutation of the class",
        conserved,
        format!("{} graphs, {} rows, {} distinct keys", cat.graphs.len(), report.rows.len(), keys.len()),
    );
    let ties: Vec<String> = report
        .rows
        .windows(2)
        .filter(|w| w[0].rho - w[1].rho <= tol)
        .map(|w| format!("tie within tol: {} and {} at rho={}", w[0].graph6, w[1].graph6, w[0].rho))
        .collect();
    report.summary.findings.extend(ties);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelSummary {
    pub delta: usize,
    pub count: usize,
    pub min_rho: f64,
    pub max_rho: f64,
}

/// `min ρ` on the upper level minus `max ρ` on the lower level; the
/// implication `Δ₁ > Δ₂ ⇒ ρ₁ > ρ₂` holds between the two levels iff the
/// margin exceeds the tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelMargin {
    pub upper_delta: usize,
    pub lower_delta: usize,
    pub margin: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub upper_graph6: String,
    pub upper_delta: usize,
    pub upper_rho: f64,
    pub lower_graph6: String,
    pub lower_delta: usize,
    pub lower_rho: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeResult {
    pub n: usize,
    pub m: usize,
    /// Least `l` such that every pair with `Δ₁ > Δ₂ ≥ l` has `ρ₁ > ρ₂ + tol`.
    /// When no pair fails this is the smallest degree present.
    pub l: usize,
    /// The pair blocking `l − 1`, if any.
    pub witness: Option<Witness>,
    pub levels: Vec<LevelSummary>,
    pub margins: Vec<LevelMargin>,
    /// `⌈2n/3 − 1⌉`, shown for comparison only.
    pub context_threshold: usize,
}

/// Tabulates, for each `(n, m)` group of the class, the least degree above
/// which a larger maximum degree forces a larger radius.
pub fn probe_delta_monotonicity(cat: &Catalog, tol: f64) -> Result<ExperimentReport, ExperimentError> {
    check_tol(tol)?;
    let evals = evaluate(&cat.graphs)?;
    let mut report = ExperimentReport::assemble("probe-delta-monotonicity", &cat.label, None, tol, &evals, &vec![None; evals.len()]);
    let mut groups: BTreeMap<(usize, usize), Vec<&Evaluation>> = BTreeMap::new();
    for e in &evals {
        groups.entry((e.graph.order(), e.graph.size())).or_default().push(e);
    }
    for ((n, m), members) in groups {
        let probe = probe_group(n, m, &members, tol);
        let line = match &probe.witness {
            Some(w) => format!(
                "n={n} m={m}: l={} (context {}), blocked by {} (delta {}, rho {}) vs {} (delta {}, rho {})",
                probe.l, probe.context_threshold, w.upper_graph6, w.upper_delta, w.upper_rho, w.lower_graph6, w.lower_delta, w.lower_rho
            ),
            None => format!("n={n} m={m}: l={} (context {}), no failing pair", probe.l, probe.context_threshold),
        };
        report.summary.findings.push(line);
        report.summary.probes.push(probe);
    }
    Ok(report)
}

fn probe_group(n: usize, m: usize, members: &[&Evaluation], tol: f64) -> ProbeResult {
    // members arrive in rank order, so the first of a level is its maximum
    let mut by_level: BTreeMap<usize, (&Evaluation, &Evaluation, usize)> = BTreeMap::new();
    for e in members {
        let slot = by_level.entry(e.graph.max_degree()).or_insert((e, e, 0));
        slot.1 = e;
        slot.2 += 1;
    }
    let levels: Vec<LevelSummary> = by_level
        .iter()
        .map(|(&delta, (top, bottom, count))| LevelSummary { delta, count: *count, min_rho: bottom.rho(), max_rho: top.rho() })
        .collect();

    let mut margins = Vec::new();
    let mut blocking: Option<(usize, f64, Witness)> = None;
    for (&lower_delta, (lower_top, _, _)) in &by_level {
        for (&upper_delta, (_, upper_bottom, _)) in by_level.range(lower_delta + 1..) {
            let margin = upper_bottom.rho() - lower_top.rho();
            let holds = margin > tol;
            margins.push(LevelMargin { upper_delta, lower_delta, margin, holds });
            let worse = blocking.as_ref().is_none_or(|(d, mg, _)| lower_delta > *d || (lower_delta == *d && margin < *mg));
            if !holds && worse {
                let witness = Witness {
                    upper_graph6: upper_bottom.graph6.clone(),
                    upper_delta,
                    upper_rho: upper_bottom.rho(),
                    lower_graph6: lower_top.graph6.clone(),
                    lower_delta,
                    lower_rho: lower_top.rho(),
                };
                blocking = Some((lower_delta, margin, witness));
            }
        }
    }
    let smallest = levels.first().map_or(0, |l| l.delta);
    let (l, witness) = match blocking {
        Some((d, _, w)) => (d + 1, Some(w)),
        None => (smallest, None),
    };
    ProbeResult { n, m, l, witness, levels, margins, context_threshold: (2 * n).saturating_sub(1) / 3 }
}
