use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use abc_spectra::experiments::ExperimentReport;

/// Rounds to 10 significant digits for human tables.
pub fn sig10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (9 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(sig10).unwrap_or_default()
}

/// Left-aligned columns separated by two spaces.
pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Table {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&self.headers).chain(&self.rows) {
            let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

pub fn report_table(report: &ExperimentReport) -> String {
    let mut table = Table::new(&["key", "graph6", "n", "m", "delta", "rho", "bound", "slack"]);
    for r in &report.rows {
        table.push(vec![
            r.key.clone(),
            r.graph6.clone(),
            r.n.to_string(),
            r.m.to_string(),
            r.delta.to_string(),
            sig10(r.rho),
            opt(r.bound),
            opt(r.slack),
        ]);
    }
    let s = &report.summary;
    let mut out = format!("experiment: {}\nclass: {}\n", report.experiment, report.class);
    if let Some(b) = &report.bound {
        out.push_str(&format!("bound: {b}\n"));
    }
    out.push_str(&format!("tolerance: {}\n\n", report.tolerance));
    out.push_str(&table.render());
    out.push_str(&format!("\ngraphs: {}\nviolations: {}\n", s.graphs, s.violations));
    if !s.attainers.is_empty() {
        out.push_str(&format!("attainers: {}\n", s.attainers.join(" ")));
    }
    for c in &s.checks {
        out.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    for f in &s.findings {
        out.push_str(&format!("finding: {f}\n"));
    }
    for p in &s.probes {
        let mut margins = Table::new(&["upper delta", "lower delta", "margin", "holds"]);
        for mg in &p.margins {
            margins.push(vec![mg.upper_delta.to_string(), mg.lower_delta.to_string(), sig10(mg.margin), mg.holds.to_string()]);
        }
        out.push_str(&format!("\nprobe n={} m={}: l={} context={}\n", p.n, p.m, p.l, p.context_threshold));
        out.push_str(&margins.render());
    }
    out
}

/// Writes to the named file, or stdout when none is given.
pub fn emit(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            w.write_all(text.as_bytes())?;
            w.flush()
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(sig10(std::f64::consts::SQRT_2), "1.414213562");
        assert_eq!(sig10(8f64.sqrt()), "2.828427125");
        assert_eq!(sig10(2.0), "2");
        assert_eq!(sig10(0.0), "0");
        assert_eq!(sig10(-1.25e-12), "-0.00000000000125");
        assert_eq!(sig10(12345678901.5), "12345678902");
    }

    #[test]
    fn table_alignment() {
        let mut t = Table::new(&["a", "bb"]);
        t.push(vec!["xyz".into(), "1".into()]);
        assert_eq!(t.render(), "a    bb\nxyz  1\n");
    }
}
