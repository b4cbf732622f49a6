//! Exhaustive verification runs and exploratory sweeps over graph classes,
//! emitted as deterministic reports.

mod explore;
mod verify;

pub use explore::{find_attainers, order_class, probe_delta_monotonicity, LevelMargin, LevelSummary, ProbeResult, Witness};
pub use verify::{
    verify_connected_extremes, verify_double_star_lemmas, verify_estrada_sandwich, verify_tree_extremes,
    verify_tree_ordering, verify_unicyclic_extremes, verify_upper_bound, EQUAL_ROW_SUM_TOL,
};

use std::cmp::Ordering;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{self, BoundError, BoundReport};
use crate::enumerate::{self, EnumerateError, GraphClassSpec};
use crate::graph::graph6::{self, Graph6Error};
use crate::graph::{canonical_key, Graph, GraphError, MAX_GENERAL_CANON, MAX_TREE_CANON};
use crate::invariants::{self, abc_spectral_radius, InvariantError};
use crate::spectral::SpectralResult;

/// Default tolerance for inequality and equality checks.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Tolerance for agreement with closed-form radii.
pub const CLOSED_FORM_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("{experiment} supports n in {min}..={max}, got {n}")]
    OrderOutOfRange { experiment: &'static str, n: usize, min: usize, max: usize },
    #[error("bound `{bound}` does not apply to {graph6}: {reason}")]
    BoundNotApplicable { bound: &'static str, graph6: String, reason: String },
    #[error("class is empty")]
    EmptyClass,
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error("report output failed: {0}")]
    Output(String),
}

impl From<csv::Error> for ExperimentError {
    fn from(e: csv::Error) -> Self {
        ExperimentError::Output(e.to_string())
    }
}

impl From<std::io::Error> for ExperimentError {
    fn from(e: std::io::Error) -> Self {
        ExperimentError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for ExperimentError {
    fn from(e: serde_json::Error) -> Self {
        ExperimentError::Output(e.to_string())
    }
}

/// The graphs an experiment runs over, with a description for the report.
#[derive(Debug, Clone, PartialEq)]
pub struct Catalog {
    pub label: String,
    pub spec: Option<GraphClassSpec>,
    pub graphs: Vec<Graph>,
}

impl Catalog {
    pub fn from_spec(spec: GraphClassSpec) -> Result<Catalog, ExperimentError> {
        let graphs = enumerate::enumerate_class(&spec)?;
        Ok(Catalog { label: spec.to_string(), spec: Some(spec), graphs })
    }

    pub fn from_graphs(label: impl Into<String>, graphs: Vec<Graph>) -> Catalog {
        Catalog { label: label.into(), spec: None, graphs }
    }
}

/// Which upper bound a verification run compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSelector {
    /// `√(Δ + D/Δ − 2)`.
    Theta,
    /// `√(Δ + ⌈D/Δ⌉ − 2)`.
    ThetaPrime,
    /// `√(n − 2 + 2c/(n − 1))`.
    CCyclic,
    /// `√(2n − 4)`.
    CompleteCap,
    /// `√(n − 2)` on trees.
    TreeUpper,
    /// Largest row sum.
    EstradaUpper,
}

impl BoundSelector {
    pub fn label(&self) -> &'static str {
        match self {
            BoundSelector::Theta => "theta",
            BoundSelector::ThetaPrime => "theta-prime",
            BoundSelector::CCyclic => "c-cyclic",
            BoundSelector::CompleteCap => "complete-cap",
            BoundSelector::TreeUpper => "tree-upper",
            BoundSelector::EstradaUpper => "estrada-upper",
        }
    }

    fn value(&self, e: &Evaluation) -> Result<f64, ExperimentError> {
        let g = &e.graph;
        let n = g.order();
        let not_applicable = |reason: String| ExperimentError::BoundNotApplicable {
            bound: self.label(),
            graph6: e.graph6.clone(),
            reason,
        };
        Ok(match self {
            BoundSelector::Theta => e.bounds.theta,
            BoundSelector::ThetaPrime => e.bounds.theta_prime,
            BoundSelector::CCyclic => {
                let c = g.size() + 1 - n;
                bounds::c_cyclic_bound(n, c).map_err(|err| not_applicable(err.to_string()))?
            }
            BoundSelector::CompleteCap => (2.0 * n as f64 - 4.0).max(0.0).sqrt(),
            BoundSelector::TreeUpper => {
                if !g.is_tree() {
                    return Err(not_applicable("not a tree".to_string()));
                }
                (n as f64 - 2.0).max(0.0).sqrt()
            }
            BoundSelector::EstradaUpper => e.bounds.estrada_upper,
        })
    }
}

/// Everything computed for one graph of a catalog.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub graph: Graph,
    pub key: String,
    pub graph6: String,
    pub spectral: SpectralResult,
    pub bounds: BoundReport,
}

impl Evaluation {
    pub fn rho(&self) -> f64 {
        self.spectral.radius
    }
}

/// Report key: the canonical key when the graph is within canonical-form
/// limits, otherwise `L` followed by the graph6 of the labeled input.
pub fn report_key(g: &Graph) -> Result<String, ExperimentError> {
    let within = if g.is_tree() { g.order() <= MAX_TREE_CANON } else { g.order() <= MAX_GENERAL_CANON };
    if within {
        Ok(canonical_key(g)?.as_str().to_string())
    } else {
        Ok(format!("L{}", graph6::encode(g)?))
    }
}

pub fn evaluate_one(g: &Graph) -> Result<Evaluation, ExperimentError> {
    Ok(Evaluation {
        graph: g.clone(),
        key: report_key(g)?,
        graph6: graph6::encode(g)?,
        spectral: abc_spectral_radius(g)?,
        bounds: BoundReport::for_graph(g)?,
    })
}

/// Evaluates every graph on the worker pool, then sorts by descending `ρ`
/// with ties broken by key.
pub fn evaluate(graphs: &[Graph]) -> Result<Vec<Evaluation>, ExperimentError> {
    if graphs.is_empty() {
        return Err(ExperimentError::EmptyClass);
    }
    let mut evals = graphs.par_iter().map(evaluate_one).collect::<Result<Vec<_>, _>>()?;
    evals.sort_by(rank_order);
    Ok(evals)
}

fn rank_order(a: &Evaluation, b: &Evaluation) -> Ordering {
    b.rho().total_cmp(&a.rho()).then_with(|| a.key.cmp(&b.key))
}

fn check_tol(tol: f64) -> Result<(), ExperimentError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(ExperimentError::BadTolerance(tol))
    }
}

fn check_order(experiment: &'static str, n: usize, min: usize, max: usize) -> Result<(), ExperimentError> {
    if (min..=max).contains(&n) {
        Ok(())
    } else {
        Err(ExperimentError::OrderOutOfRange { experiment, n, min, max })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub key: String,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub rho: f64,
    pub bound: Option<f64>,
    /// `bound − ρ`.
    pub slack: Option<f64>,
}

impl ReportRow {
    fn new(e: &Evaluation, bound: Option<f64>) -> ReportRow {
        ReportRow {
            key: e.key.clone(),
            graph6: e.graph6.clone(),
            n: e.graph.order(),
            m: e.graph.size(),
            delta: e.graph.max_degree(),
            rho: e.rho(),
            bound,
            slack: bound.map(|b| b - e.rho()),
        }
    }
}

/// A named pass/fail assertion with the numbers behind it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub graphs: usize,
    /// Rows with `slack < −tol`.
    pub violations: usize,
    /// Keys of rows with `|slack| ≤ tol`.
    pub attainers: Vec<String>,
    pub checks: Vec<Check>,
    pub findings: Vec<String>,
    pub probes: Vec<ProbeResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub class: String,
    pub bound: Option<String>,
    pub tolerance: f64,
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

pub const CSV_HEADER: [&str; 8] = ["key", "graph6", "n", "m", "delta", "rho", "bound", "slack"];

impl ExperimentReport {
    /// Builds rows from evaluations already in rank order.
    fn assemble(
        experiment: &str,
        class: &str,
        bound: Option<&str>,
        tol: f64,
        evals: &[Evaluation],
        bound_values: &[Option<f64>],
    ) -> ExperimentReport {
        let rows: Vec<ReportRow> =
            evals.iter().zip(bound_values).map(|(e, &b)| ReportRow::new(e, b)).collect();
        let violations = rows.iter().filter(|r| r.slack.is_some_and(|s| s < -tol)).count();
        let attainers =
            rows.iter().filter(|r| r.slack.is_some_and(|s| s.abs() <= tol)).map(|r| r.key.clone()).collect();
        ExperimentReport {
            experiment: experiment.to_string(),
            class: class.to_string(),
            bound: bound.map(str::to_string),
            tolerance: tol,
            summary: Summary {
                graphs: rows.len(),
                violations,
                attainers,
                checks: Vec::new(),
                findings: Vec::new(),
                probes: Vec::new(),
            },
            rows,
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.summary.checks.push(Check::new(name, passed, detail));
    }

    /// True when there are no violations and every check passed.
    pub fn passed(&self) -> bool {
        self.summary.violations == 0 && self.summary.checks.iter().all(|c| c.passed)
    }

    /// Concatenates reports of one experiment, re-sorting the rows.
    pub fn merge(reports: Vec<ExperimentReport>) -> Option<ExperimentReport> {
        let mut iter = reports.into_iter();
        let mut out = iter.next()?;
        let mut classes = vec![out.class.clone()];
        for r in iter {
            classes.push(r.class);
            out.rows.extend(r.rows);
            let s = r.summary;
            out.summary.graphs += s.graphs;
            out.summary.violations += s.violations;
            out.summary.attainers.extend(s.attainers);
            out.summary.checks.extend(s.checks);
            out.summary.findings.extend(s.findings);
            out.summary.probes.extend(s.probes);
        }
        out.rows.sort_by(|a, b| b.rho.total_cmp(&a.rho).then_with(|| a.key.cmp(&b.key)));
        out.class = classes.join("; ");
        Some(out)
    }

    /// One row per graph under the fixed header; empty cells for absent bounds.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), ExperimentError> {
        let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
        out.write_record(CSV_HEADER)?;
        for r in &self.rows {
            out.serialize(r)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String, ExperimentError> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is ascii"))
    }

    pub fn to_json(&self) -> Result<String, ExperimentError> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Per-graph invariants for the compute workflow. Disconnected graphs keep
/// their degree-based indices and carry an error instead of spectral data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantRow {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub c: Option<usize>,
    pub abc: f64,
    pub randic: f64,
    pub rho: Option<f64>,
    pub estrada_lower: Option<f64>,
    pub estrada_upper: Option<f64>,
    pub theta: Option<f64>,
    pub theta_prime: Option<f64>,
    pub perron: Option<Vec<f64>>,
    pub error: Option<String>,
}

/// Invariants for each graph, in input order.
pub fn compute_invariants(graphs: &[Graph], with_perron: bool) -> Vec<InvariantRow> {
    graphs.par_iter().map(|g| invariant_row(g, with_perron)).collect()
}

fn invariant_row(g: &Graph, with_perron: bool) -> InvariantRow {
    let mut row = InvariantRow {
        graph6: graph6::encode(g).unwrap_or_default(),
        n: g.order(),
        m: g.size(),
        delta: g.max_degree(),
        c: g.cyclomatic_number(),
        abc: invariants::abc_index(g),
        randic: invariants::randic_minus_one(g),
        rho: None,
        estrada_lower: None,
        estrada_upper: None,
        theta: None,
        theta_prime: None,
        perron: None,
        error: None,
    };
    let spectral = match abc_spectral_radius(g) {
        Ok(s) => s,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.rho = Some(spectral.radius);
    if with_perron {
        row.perron = Some(spectral.perron);
    }
    match invariants::estrada_bounds(g) {
        Ok(b) => {
            row.estrada_lower = Some(b.lower);
            row.estrada_upper = Some(b.upper);
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    // θ and θ′ need n ≥ 2
    if g.order() >= 2 {
        match (bounds::theta(g.order(), g.size(), g.max_degree()), bounds::theta_prime(g.order(), g.size(), g.max_degree())) {
            (Ok(t), Ok(tp)) => {
                row.theta = Some(t);
                row.theta_prime = Some(tp);
            }
            (Err(e), _) | (_, Err(e)) => row.error = Some(e.to_string()),
        }
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn rows_are_ranked_and_csv_has_fixed_header() {
        let cat = Catalog::from_spec(GraphClassSpec::connected(4)).unwrap();
        let report = verify_upper_bound(&cat, BoundSelector::Theta, DEFAULT_TOL).unwrap();
        assert!(report.rows.windows(2).all(|w| w[0].rho >= w[1].rho));
        let csv = report.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("key,graph6,n,m,delta,rho,bound,slack"));
        assert_eq!(lines.count(), 6);
        let json: serde_json::Value = serde_json::from_str(&report.to_json().unwrap()).unwrap();
        assert_eq!(json["rows"].as_array().unwrap().len(), 6);
        assert_eq!(json["summary"]["violations"], 0);
    }

    #[test]
    fn empty_bounds_are_blank_cells() {
        let cat = Catalog::from_spec(GraphClassSpec::trees(5)).unwrap();
        let csv = order_class(&cat, DEFAULT_TOL).unwrap().to_csv().unwrap();
        assert!(csv.lines().skip(1).all(|l| l.ends_with(",,")));
    }

    #[test]
    fn violation_count_follows_slack() {
        let cat = Catalog::from_graphs("k4", vec![Family::Complete(4).build()]);
        let mut report = verify_upper_bound(&cat, BoundSelector::Theta, DEFAULT_TOL).unwrap();
        assert_eq!(report.summary.violations, 0);
        assert_eq!(report.summary.attainers.len(), 1);
        report.rows[0].slack = Some(-1.0);
        report.summary.violations = 1;
        assert!(!report.passed());
    }

    #[test]
    fn tolerance_must_be_positive() {
        let cat = Catalog::from_graphs("p3", vec![Family::Path(3).build()]);
        for tol in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                verify_upper_bound(&cat, BoundSelector::Theta, tol),
                Err(ExperimentError::BadTolerance(_))
            ));
        }
    }

    #[test]
    fn c_cyclic_bound_rejects_dense_graphs() {
        let cat = Catalog::from_graphs("k5", vec![Family::Complete(5).build()]);
        let err = verify_upper_bound(&cat, BoundSelector::CCyclic, DEFAULT_TOL).unwrap_err();
        assert!(matches!(err, ExperimentError::BoundNotApplicable { bound: "c-cyclic", .. }));
        let cat = Catalog::from_graphs("c5", vec![Family::Cycle(5).build()]);
        assert!(matches!(
            verify_upper_bound(&cat, BoundSelector::TreeUpper, DEFAULT_TOL),
            Err(ExperimentError::BoundNotApplicable { .. })
        ));
    }

    #[test]
    fn keys_fall_back_to_labeled_graph6() {
        let big = Family::Cycle(12).build();
        assert!(report_key(&big).unwrap().starts_with('L'));
        assert!(report_key(&Family::Star(16).build()).unwrap().starts_with('T'));
        assert!(report_key(&Family::Cycle(10).build()).unwrap().starts_with('G'));
    }

    #[test]
    fn invariant_rows_flag_disconnected_graphs() {
        let split = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let rows = compute_invariants(&[Family::Cycle(8).build(), split], true);
        assert!((rows[0].rho.unwrap() - std::f64::consts::SQRT_2).abs() < CLOSED_FORM_TOL);
        assert_eq!(rows[0].perron.as_ref().unwrap().len(), 8);
        assert_eq!(rows[1].rho, None);
        assert_eq!(rows[1].error.as_deref(), Some("graph is disconnected"));
        assert_eq!(rows[1].randic, 2.0);
    }

    #[test]
    fn merge_sums_and_resorts() {
        let reports: Vec<_> = (4..=6)
            .map(|n| {
                let cat = Catalog::from_spec(GraphClassSpec::trees(n)).unwrap();
                verify_upper_bound(&cat, BoundSelector::TreeUpper, DEFAULT_TOL).unwrap()
            })
            .collect();
        let merged = ExperimentReport::merge(reports).unwrap();
        assert_eq!(merged.summary.graphs, 2 + 3 + 6);
        assert_eq!(merged.rows.len(), 11);
        assert!(merged.rows.windows(2).all(|w| w[0].rho >= w[1].rho));
        assert_eq!(merged.summary.attainers.len(), 3);
    }
}
