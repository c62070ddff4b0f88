//! The four subcommands, each producing the text of its output file.

use std::path::Path;
use std::time::Instant;

use deltaspec::bounds::{certify as certify_measures, Certificate};
use deltaspec::measures::{cantor_level, discretize_continuous, MeasureSpec};
use deltaspec::pointsolver::{scan, EigenvalueRecord, SearchOptions, SearchReport};
use deltaspec::{LineOperator, PointMeasure};
use serde::Serialize;

use crate::format::{atoms_table, result_table, ResultRow};
use crate::problem::{Domain, Operator, ProblemFile};
use crate::CliError;

/// Default `reproduce square-well` rows.
pub const SQUARE_WELL_ROWS: [u32; 12] = [1, 2, 3, 4, 5, 10, 25, 50, 75, 100, 1000, 10_000];
/// Default `reproduce cantor` rows (row `N` is level `N − 1`).
pub const CANTOR_ROWS: [u32; 8] = [1, 2, 3, 4, 5, 10, 15, 20];
/// Largest square-well `N` run without `--allow-long`.
pub const SQUARE_WELL_SHORT_LIMIT: u32 = 10_000;
/// Largest Cantor row run without `--allow-long`.
pub const CANTOR_SHORT_LIMIT: u32 = 20;

/// Options shared by every subcommand.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunOptions {
    /// Overrides the file's solver tolerance.
    pub tol: Option<f64>,
    /// Overrides the file's grid size.
    pub grid: Option<usize>,
    pub allow_long: bool,
    /// Write `runtime_ms = 0` so repeated runs are byte-identical.
    pub no_timing: bool,
}

/// Built-in problems of `reproduce`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    SquareWell,
    Cantor,
}

fn elapsed_ms(start: Instant, opts: &RunOptions) -> f64 {
    if opts.no_timing {
        0.0
    } else {
        start.elapsed().as_secs_f64() * 1e3
    }
}

fn report_warnings(report: &SearchReport) {
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
}

fn run_scan(op: &Operator, opts: SearchOptions) -> Result<Vec<EigenvalueRecord>, CliError> {
    let report = match op {
        Operator::Line(op) => scan(op, opts),
        Operator::HalfLine(op) => scan(op, opts),
    }
    .map_err(|e| CliError::Rejected(e.to_string()))?;
    report_warnings(&report);
    Ok(report.eigenvalues)
}

fn row(n: u32, rec: &EigenvalueRecord, runtime_ms: f64) -> ResultRow {
    ResultRow {
        n,
        lambda: rec.lambda,
        bracket_lo: rec.bracket.0,
        bracket_hi: rec.bracket.1,
        residual: rec.residual,
        runtime_ms,
    }
}

/// All negative eigenvalues of the discretized problem, one CSV row each.
pub fn solve(input: &Path, opts: &RunOptions) -> Result<String, CliError> {
    let problem = ProblemFile::read(input)?;
    let search = problem.search_options(opts.tol, opts.grid)?;
    let start = Instant::now();
    let op = problem.operator(problem.discretized()?)?;
    let eigs = run_scan(&op, search)?;
    let ms = elapsed_ms(start, opts);
    let rows: Vec<ResultRow> = eigs.iter().map(|e| row(problem.n(), e, ms)).collect();
    Ok(result_table(&rows))
}

/// Atoms of the discretized measure.
pub fn discretize(input: &Path) -> Result<String, CliError> {
    let problem = ProblemFile::read(input)?;
    Ok(atoms_table(&problem.discretized()?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowJson {
    #[serde(rename = "E")]
    pub e: f64,
    pub lo: f64,
    pub hi: f64,
    pub isolation_lo: f64,
    pub isolation_hi: f64,
}

/// Certificate document written by `certify`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateJson {
    #[serde(rename = "M")]
    pub m: f64,
    pub c: f64,
    pub s: f64,
    pub delta: f64,
    pub windows: Vec<WindowJson>,
    pub caveats: Vec<String>,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            m: c.budget.m_cap,
            c: c.budget.c,
            s: c.budget.s,
            delta: c.budget.delta,
            windows: c
                .windows
                .iter()
                .map(|w| WindowJson {
                    e: w.center,
                    lo: w.lo,
                    hi: w.hi,
                    isolation_lo: w.isolation_lo,
                    isolation_hi: w.isolation_hi,
                })
                .collect(),
            caveats: c.caveats.clone(),
        }
    }
}

/// Windows for the eigenvalues of `target` around those of the discretized
/// `approx`. The target measure is used as written, continuous parts
/// included.
pub fn certify(target: &Path, approx: &Path, opts: &RunOptions) -> Result<String, CliError> {
    let t = ProblemFile::read(target)?;
    let a = ProblemFile::read(approx)?;
    if t.domain != a.domain {
        return Err(CliError::Validation(format!(
            "target domain {:?} and approximation domain {:?} differ",
            t.domain, a.domain
        )));
    }
    if t.domain == Domain::Halfline {
        return Err(CliError::Validation(
            "certify supports line problems only".into(),
        ));
    }
    let target_measure = t.measure()?;
    let approx_atoms = a.discretized()?;
    let eigs = run_scan(
        &a.operator(approx_atoms.clone())?,
        a.search_options(opts.tol, opts.grid)?,
    )?;
    let cert_opts = if t.certify.is_some() {
        t.certify_options()
    } else {
        a.certify_options()
    };
    let approx_measure: MeasureSpec = approx_atoms.into();
    let cert = certify_measures(&target_measure, &approx_measure, &eigs, &cert_opts).map_err(|e| {
        match e {
            deltaspec::Error::FormDistanceTooLarge(s) => CliError::Rejected(format!(
                "form distance s = {s} violates the small form-perturbation hypothesis s < 1; refine the approximation"
            )),
            other => other.into(),
        }
    })?;
    let mut text = serde_json::to_string_pretty(&CertificateJson::from(&cert))
        .map_err(|e| CliError::Validation(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn table_point_measure(table: Table, n: u32) -> Result<PointMeasure, CliError> {
    Ok(match table {
        Table::SquareWell => discretize_continuous(&MeasureSpec::square_well(), 1, n)?,
        Table::Cantor => cantor_level(n - 1)?.transformed(1.0, 0.0, -1.0)?,
    })
}

/// Ground-state eigenvalue of the built-in problem for each `N`.
pub fn reproduce(table: Table, ns: &[u32], opts: &RunOptions) -> Result<String, CliError> {
    let (defaults, limit): (&[u32], u32) = match table {
        Table::SquareWell => (&SQUARE_WELL_ROWS, SQUARE_WELL_SHORT_LIMIT),
        Table::Cantor => (&CANTOR_ROWS, CANTOR_SHORT_LIMIT),
    };
    let ns = if ns.is_empty() { defaults } else { ns };
    for &n in ns {
        if n == 0 {
            return Err(CliError::Validation("table rows start at N = 1".into()));
        }
        if n > limit && !opts.allow_long {
            return Err(CliError::Validation(format!(
                "N = {n} exceeds {limit}; pass --allow-long to run it"
            )));
        }
    }
    let search = SearchOptions::new(
        opts.grid
            .unwrap_or(deltaspec::pointsolver::DEFAULT_GRID_POINTS),
        opts.tol.unwrap_or(deltaspec::pointsolver::DEFAULT_TOL),
    )?;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let start = Instant::now();
        let op = Operator::Line(LineOperator::new(table_point_measure(table, n)?));
        let eigs = run_scan(&op, search)?;
        let ground = eigs.first().ok_or_else(|| {
            CliError::Rejected(format!("no negative eigenvalue found at N = {n}"))
        })?;
        rows.push(row(n, ground, elapsed_ms(start, opts)));
    }
    Ok(result_table(&rows))
}
