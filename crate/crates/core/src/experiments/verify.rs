//! Verification of proved bounds and extremal characterizations.

use std::ops::RangeInclusive;

use super::{
    check_order, check_tol, evaluate, evaluate_one, report_key, BoundSelector, Catalog, Evaluation,
    ExperimentError, ExperimentReport, CLOSED_FORM_TOL,
};
use crate::bounds::named_thresholds;
use crate::enumerate::GraphClassSpec;
use crate::graph::{Family, Graph};
use crate::invariants::{abc_matrix, row_sums_equal};

/// Row sums closer than this count as equal for the Estrada equality test.
pub const EQUAL_ROW_SUM_TOL: f64 = 1e-12;

fn is_star(g: &Graph) -> bool {
    g.order() >= 2 && g.is_tree() && g.max_degree() == g.order() - 1
}

fn is_complete(g: &Graph) -> bool {
    let n = g.order();
    g.size() == n * (n - 1) / 2
}

/// Compares every graph of the catalog against one upper bound. Violations
/// are rows with `slack < −tol`; attainers have `|slack| ≤ tol`.
pub fn verify_upper_bound(cat: &Catalog, bound: BoundSelector, tol: f64) -> Result<ExperimentReport, ExperimentError> {
    check_tol(tol)?;
    let evals = evaluate(&cat.graphs)?;
    let values = evals.iter().map(|e| bound.value(e).map(Some)).collect::<Result<Vec<_>, _>>()?;
    let mut report = ExperimentReport::assemble("verify-upper-bound", &cat.label, Some(bound.label()), tol, &evals, &values);
    report.check(
        "no violations",
        report.summary.violations == 0,
        format!("{} of {} rows below -tol", report.summary.violations, report.rows.len()),
    );
    let attains = |e: &Evaluation, v: f64| (v - e.rho()).abs() <= tol;
    let sharp = |expected: &dyn Fn(&Graph) -> bool| {
        evals.iter().zip(&values).filter(|(e, v)| attains(e, v.unwrap()) != expected(&e.graph)).count()
    };
    match bound {
        BoundSelector::CompleteCap => {
            let off = sharp(&is_complete);
            report.check("equality exactly at complete graphs", off == 0, format!("{off} rows disagree"));
        }
        BoundSelector::TreeUpper => {
            let off = sharp(&is_star);
            report.check("equality exactly at stars", off == 0, format!("{off} rows disagree"));
        }
        BoundSelector::Theta | BoundSelector::ThetaPrime => {
            let missed: Vec<&str> = evals
                .iter()
                .zip(&values)
                .filter(|(e, v)| (is_star(&e.graph) || is_complete(&e.graph)) && !attains(e, v.unwrap()))
                .map(|(e, _)| e.key.as_str())
                .collect();
            report.check("stars and complete graphs attain", missed.is_empty(), format!("missed: {missed:?}"));
        }
        BoundSelector::CCyclic | BoundSelector::EstradaUpper => {}
    }
    Ok(report)
}

/// `(2/n)·ABC ≤ ρ ≤ max row sum`, with both equalities exactly when the row
/// sums are mutually equal.
pub fn verify_estrada_sandwich(cat: &Catalog, tol: f64) -> Result<ExperimentReport, ExperimentError> {
    check_tol(tol)?;
    let evals = evaluate(&cat.graphs)?;
    let values: Vec<Option<f64>> = evals.iter().map(|e| Some(e.bounds.estrada_upper)).collect();
    let mut report = ExperimentReport::assemble("verify-estrada", &cat.label, Some("estrada-upper"), tol, &evals, &values);
    let below = evals.iter().filter(|e| e.rho() - e.bounds.estrada_lower < -tol).count();
    let mut mismatched = Vec::new();
    let mut equal_rows = 0;
    for e in &evals {
        let equal = row_sums_equal(&abc_matrix(&e.graph), EQUAL_ROW_SUM_TOL);
        equal_rows += usize::from(equal);
        let lower_eq = (e.rho() - e.bounds.estrada_lower).abs() <= tol;
        let upper_eq = (e.bounds.estrada_upper - e.rho()).abs() <= tol;
        if lower_eq != equal || upper_eq != equal {
            mismatched.push(e.key.clone());
        }
    }
    report.check("upper bound holds", report.summary.violations == 0, format!("{} violations", report.summary.violations));
    report.check("lower bound holds", below == 0, format!("{below} violations"));
    report.check(
        "equality iff equal row sums",
        mismatched.is_empty(),
        format!("{equal_rows} graphs with equal row sums; mismatched: {mismatched:?}"),
    );
    Ok(report)
}

struct Extremes<'a> {
    experiment: &'static str,
    catalog: Catalog,
    bound_label: &'a str,
    bound: f64,
    min_name: &'a str,
    min_graph: Graph,
    min_value: Option<f64>,
    max_name: &'a str,
    max_graph: Graph,
    max_value: Option<f64>,
}

/// Unique minimum and maximum of `ρ` over a class at the expected graphs,
/// with closed-form values where known.
fn verify_extremes(x: Extremes<'_>, tol: f64) -> Result<ExperimentReport, ExperimentError> {
    check_tol(tol)?;
    let evals = evaluate(&x.catalog.graphs)?;
    let values = vec![Some(x.bound); evals.len()];
    let mut report = ExperimentReport::assemble(x.experiment, &x.catalog.label, Some(x.bound_label), tol, &evals, &values);
    let min_key = report_key(&x.min_graph)?;
    let max_key = report_key(&x.max_graph)?;
    report.check("no violations", report.summary.violations == 0, format!("{} violations", report.summary.violations));

    let first = &evals[0];
    let last = &evals[evals.len() - 1];
    let max_gap = evals.get(1).map(|e| first.rho() - e.rho());
    let min_gap = evals.len().checked_sub(2).map(|i| evals[i].rho() - last.rho());
    report.check(
        format!("maximum uniquely at {}", x.max_name),
        first.key == max_key && max_gap.is_none_or(|g| g > tol),
        format!("top {} rho {} gap {:?}", first.graph6, first.rho(), max_gap),
    );
    report.check(
        format!("minimum uniquely at {}", x.min_name),
        last.key == min_key && min_gap.is_none_or(|g| g > tol),
        format!("bottom {} rho {} gap {:?}", last.graph6, last.rho(), min_gap),
    );
    for (name, e, value) in [(x.max_name, first, x.max_value), (x.min_name, last, x.min_value)] {
        if let Some(v) = value {
            let err = (e.rho() - v).abs();
            report.check(format!("{name} has the closed-form radius"), err <= CLOSED_FORM_TOL, format!("|rho - {v}| = {err}"));
        }
    }
    Ok(report)
}

/// Trees: `√2·cos(π/(n+1)) ≤ ρ ≤ √(n − 2)`, equality only at the path and the star.
pub fn verify_tree_extremes(n: usize, tol: f64) -> Result<ExperimentReport, ExperimentError> {
    check_order("tree extremes", n, 3, 16)?;
    let t = named_thresholds(n)?;
    verify_extremes(
        Extremes {
            experiment: "verify-tree-extremes",
            catalog: Catalog::from_spec(GraphClassSpec::trees(n))?,
            bound_label: "tree-upper",
            bound: t.tree_upper,
            min_name: "the path",
            min_graph: Family::Path(n).build(),
            min_value: Some(t.path_lower),
            max_name: "the star",
            max_graph: Family::Star(n).build(),
            max_value: Some(t.tree_upper),
        },
        tol,
    )
}

/// Connected graphs: `√2·cos(π/(n+1)) ≤ ρ ≤ √(2n − 4)`, equality only at the
/// path and the complete graph.
pub fn verify_connected_extremes(n: usize, tol: f64) -> Result<ExperimentReport, ExperimentError> {
    check_order("connected extremes", n, 3, 8)?;
    let t = named_thresholds(n)?;
    verify_extremes(
        Extremes {
            experiment: "verify-connected-extremes",
            catalog: Catalog::from_spec(GraphClassSpec::connected(n))?,
            bound_label: "complete-cap",
            bound: t.complete_cap,
            min_name: "the path",
            min_graph: Family::Path(n).build(),
            min_value: Some(t.path_lower),
            max_name: "the complete graph",
            max_graph: Family::Complete(n).build(),
            max_value: Some(t.complete_cap),
        },
        tol,
    )
}

/// Unicyclic graphs: `√2 = ρ(Cₙ) ≤ ρ ≤ ρ(Sₙ + e)`, each equality unique.
pub fn verify_unicyclic_extremes(n: usize, tol: f64) -> Result<ExperimentReport, ExperimentError> {
    check_order("unicyclic extremes", n, 4, 8)?;
    let top = Family::StarPlusEdge(n).build();
    let top_rho = evaluate_one(&top)?.rho();
    verify_extremes(
        Extremes {
            experiment: "verify-unicyclic-extremes",
            catalog: Catalog::from_spec(GraphClassSpec::unicyclic(n))?,
            bound_label: "star-plus-edge",
            bound: top_rho,
            min_name: "the cycle",
            min_graph: Family::Cycle(n).build(),
            min_value: Some(std::f64::consts::SQRT_2),
            max_name: "the star plus an edge",
            max_graph: top,
            max_value: None,
        },
        tol,
    )
}

/// Ranks all trees of order `n` (4..=12): the star first, the double star
/// `S_{n−3,1}` strictly second, the path last at its closed-form radius.
pub fn verify_tree_ordering(n: usize, tol: f64) -> Result<ExperimentReport, ExperimentError> {
    check_tol(tol)?;
    check_order("tree ordering", n, 4, 12)?;
    let cat = Catalog::from_spec(GraphClassSpec::trees(n))?;
    let evals = evaluate(&cat.graphs)?;
    let mut report = ExperimentReport::assemble("verify-tree-ordering", &cat.label, None, tol, &evals, &vec![None; evals.len()]);
    let star = report_key(&Family::Star(n).build())?;
    let double_star = report_key(&Family::DoubleStar(n - 3, 1).build())?;
    let path = report_key(&Family::Path(n).build())?;
    let rho = |i: usize| evals[i].rho();
    let last = evals.len() - 1;

    report.check("rank 1 is the star", evals[0].key == star, evals[0].graph6.clone());
    report.check("rank 2 is the double star", evals[1].key == double_star, evals[1].graph6.clone());
    let gap12 = rho(0) - rho(1);
    report.check("gap between ranks 1 and 2", gap12 > tol, format!("{gap12}"));
    if evals.len() >= 3 {
        let gap23 = rho(1) - rho(2);
        report.check("gap between ranks 2 and 3", gap23 > tol, format!("{gap23}"));
        report.summary.findings.push(format!("n={n}: rank-2 to rank-3 gap {gap23}"));
        let gap_bottom = rho(last - 1) - rho(last);
        report.check("path strictly last", gap_bottom > tol, format!("{gap_bottom}"));
    }
    report.check("rank last is the path", evals[last].key == path, evals[last].graph6.clone());
    let closed = named_thresholds(n)?.path_lower;
    let err = (rho(last) - closed).abs();
    report.check("path has the closed-form radius", err <= CLOSED_FORM_TOL, format!("|rho - {closed}| = {err}"));
    Ok(report)
}

/// For each `n` in the range: `ρ(S_{n−3,1}) > √(n − 3.5)` together with
/// `ρ² > (n−3)²/(n−2) + 1/2` (n ≥ 4), and every tree with `Δ = n − 3` below
/// `√(n − 3.5)` (n ≥ 6).
pub fn verify_double_star_lemmas(orders: RangeInclusive<usize>, tol: f64) -> Result<ExperimentReport, ExperimentError> {
    check_tol(tol)?;
    check_order("double-star lemmas", *orders.start(), 4, 62)?;
    check_order("double-star lemmas", *orders.end(), *orders.start(), 62)?;
    let threshold = |n: usize| named_thresholds(n).expect("n >= 4").double_star_threshold;
    let mut graphs = Vec::new();
    for n in orders.clone() {
        graphs.push(Family::DoubleStar(n - 3, 1).build());
        if n >= 6 {
            graphs.extend(Family::DeltaNMinus3Trees(n).graphs().expect("n >= 6"));
        }
    }
    let evals = evaluate(&graphs)?;
    let values: Vec<Option<f64>> = evals
        .iter()
        .map(|e| {
            let n = e.graph.order();
            (n >= 6 && e.graph.max_degree() == n - 3).then(|| threshold(n))
        })
        .collect();
    let label = format!("double stars and max-degree n-3 trees, n={}..{}", orders.start(), orders.end());
    let mut report = ExperimentReport::assemble("verify-double-star-lemmas", &label, Some("double-star-threshold"), tol, &evals, &values);

    let mut worst_above: Option<(usize, f64)> = None;
    let mut worst_square: Option<(usize, f64)> = None;
    for e in evals.iter().filter(|e| e.graph.max_degree() == e.graph.order() - 2) {
        let n = e.graph.order();
        let nf = n as f64;
        let above = e.rho() - threshold(n);
        let square = e.rho() * e.rho() - ((nf - 3.0).powi(2) / (nf - 2.0) + 0.5);
        if worst_above.is_none_or(|(_, m)| above < m) {
            worst_above = Some((n, above));
        }
        if worst_square.is_none_or(|(_, m)| square < m) {
            worst_square = Some((n, square));
        }
    }
    let (n_above, above) = worst_above.expect("range is nonempty");
    let (n_square, square) = worst_square.expect("range is nonempty");
    report.check("double star above threshold", above > tol, format!("smallest margin {above} at n={n_above}"));
    report.check("intermediate squared inequality", square > tol, format!("smallest margin {square} at n={n_square}"));
    let below: Vec<(usize, f64)> = report
        .rows
        .iter()
        .filter_map(|r| r.slack.map(|s| (r.n, s)))
        .collect();
    if !below.is_empty() {
        let (n_below, margin) = below.iter().copied().min_by(|a, b| a.1.total_cmp(&b.1)).expect("nonempty");
        report.check(
            "max-degree n-3 trees below threshold",
            margin > tol,
            format!("{} trees, smallest margin {margin} at n={n_below}", below.len()),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::DEFAULT_TOL;

    #[test]
    fn theta_holds_on_small_connected_classes() {
        for n in 2..=6 {
            let cat = Catalog::from_spec(GraphClassSpec::connected(n)).unwrap();
            for bound in [BoundSelector::Theta, BoundSelector::ThetaPrime, BoundSelector::CompleteCap] {
                let r = verify_upper_bound(&cat, bound, DEFAULT_TOL).unwrap();
                assert!(r.passed(), "n={n} {bound:?} {:?}", r.summary.checks);
            }
        }
    }

    #[test]
    fn complete_cap_equality_only_at_kn() {
        let cat = Catalog::from_spec(GraphClassSpec::connected(5)).unwrap();
        let r = verify_upper_bound(&cat, BoundSelector::CompleteCap, DEFAULT_TOL).unwrap();
        assert_eq!(r.summary.attainers, vec![report_key(&Family::Complete(5).build()).unwrap()]);
    }

    #[test]
    fn tree_bound_equality_only_at_star() {
        let cat = Catalog::from_spec(GraphClassSpec::trees(9)).unwrap();
        let r = verify_upper_bound(&cat, BoundSelector::TreeUpper, DEFAULT_TOL).unwrap();
        assert!(r.passed());
        assert_eq!(r.summary.attainers, vec![report_key(&Family::Star(9).build()).unwrap()]);
    }

    #[test]
    fn estrada_on_unicyclic_graphs() {
        let cat = Catalog::from_spec(GraphClassSpec::unicyclic(6)).unwrap();
        let r = verify_estrada_sandwich(&cat, DEFAULT_TOL).unwrap();
        assert!(r.passed(), "{:?}", r.summary.checks);
        // only the cycle has equal row sums among unicyclic graphs
        assert_eq!(r.summary.attainers, vec![report_key(&Family::Cycle(6).build()).unwrap()]);
    }

    #[test]
    fn extremes_and_ordering() {
        assert!(verify_tree_extremes(7, DEFAULT_TOL).unwrap().passed());
        assert!(verify_connected_extremes(5, DEFAULT_TOL).unwrap().passed());
        assert!(verify_unicyclic_extremes(4, DEFAULT_TOL).unwrap().passed());
        let r = verify_tree_ordering(6, DEFAULT_TOL).unwrap();
        assert!(r.passed(), "{:?}", r.summary.checks);
        assert_eq!(r.rows.len(), 6);
        let r4 = verify_tree_ordering(4, DEFAULT_TOL).unwrap();
        assert!(r4.passed(), "{:?}", r4.summary.checks);
        assert!(verify_tree_ordering(13, DEFAULT_TOL).is_err());
        assert!(verify_unicyclic_extremes(3, DEFAULT_TOL).is_err());
    }

    #[test]
    fn double_star_lemmas_small_range() {
        let r = verify_double_star_lemmas(4..=10, DEFAULT_TOL).unwrap();
        assert!(r.passed(), "{:?}", r.summary.checks);
        assert_eq!(r.rows.len(), 7 + 5 * 3);
        assert!(verify_double_star_lemmas(3..=5, DEFAULT_TOL).is_err());
    }
}
