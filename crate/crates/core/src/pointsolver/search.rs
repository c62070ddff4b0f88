use super::{HalfLineOperator, LineOperator, PointInteraction, ShotOutcome};
use crate::error::{Error, Result};
use crate::par::map_indices;

pub const DEFAULT_GRID_POINTS: usize = 4096;
pub const DEFAULT_TOL: f64 = 1e-12;

/// Cells holding several eigenvalues are split this many ways per level.
const SPLIT_FACTOR: usize = 16;
const MAX_SPLIT_DEPTH: u32 = 8;
const MAX_BISECTIONS: u32 = 200;
/// Grid residuals below this magnitude without a sign change are reported.
const NEAR_ZERO: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub grid_points: usize,
    pub tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            grid_points: DEFAULT_GRID_POINTS,
            tol: DEFAULT_TOL,
        }
    }
}

impl SearchOptions {
    pub fn new(grid_points: usize, tol: f64) -> Result<Self> {
        if grid_points < 2 {
            return Err(Error::InvalidInput("grid_points must be at least 2".into()));
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidInput(format!("tol = {tol} must be positive")));
        }
        Ok(SearchOptions { grid_points, tol })
    }
}

/// A computed eigenvalue with the bisection bracket that encloses it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenvalueRecord {
    pub lambda: f64,
    pub bracket: (f64, f64),
    pub residual: f64,
    pub iterations: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchWarning {
    /// `|r|` nearly vanished at a grid point without a sign change nearby;
    /// a tangency or a pair of nearly coincident eigenvalues.
    NearZeroWithoutSignChange { lambda: f64, residual: f64 },
    /// Subdivision could not separate the eigenvalues in this interval.
    UnresolvedCluster { lo: f64, hi: f64, count: usize },
    /// The node count and the residual signs disagree on this cell.
    InconsistentCell { lo: f64, hi: f64 },
    /// Eigenvalues found below the analytic lower bound (should not happen).
    BelowLowerBound { count: usize },
}

impl std::fmt::Display for SearchWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SearchWarning::NearZeroWithoutSignChange { lambda, residual } => write!(
                f,
                "residual {residual:e} nearly vanishes at lambda = {lambda} without a sign change"
            ),
            SearchWarning::UnresolvedCluster { lo, hi, count } => {
                write!(
                    f,
                    "{count} eigenvalues in [{lo}, {hi}] could not be separated"
                )
            }
            SearchWarning::InconsistentCell { lo, hi } => {
                write!(f, "node counts and residual signs disagree on [{lo}, {hi}]")
            }
            SearchWarning::BelowLowerBound { count } => {
                write!(
                    f,
                    "{count} eigenvalues found below the analytic lower bound"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub eigenvalues: Vec<EigenvalueRecord>,
    pub warnings: Vec<SearchWarning>,
    pub lower_bound: f64,
    pub ceiling: f64,
}

#[derive(Clone, Copy)]
struct Sample {
    lambda: f64,
    residual: f64,
    nodes: usize,
}

impl Sample {
    fn negative(&self) -> bool {
        self.residual < 0.0
    }
}

fn sample<O: PointInteraction + ?Sized>(op: &O, lambda: f64) -> Sample {
    let shot: ShotOutcome = op.shoot(lambda).expect("lambda < 0 on the search grid");
    Sample {
        lambda,
        residual: shot.residual(),
        nodes: shot.nodes,
    }
}

fn grid<O: PointInteraction + ?Sized>(op: &O, lo: f64, hi: f64, points: usize) -> Vec<Sample> {
    let step = (hi - lo) / (points - 1) as f64;
    map_indices(points, |i| {
        let lambda = if i + 1 == points {
            hi
        } else {
            lo + step * i as f64
        };
        sample(op, lambda)
    })
}

/// Uniform λ-grid scan of `[lower_search_bound, −tol]`, followed by bisection
/// on every sign change. Cells whose node counts differ by more than one are
/// subdivided until each piece holds at most one eigenvalue.
pub fn scan<O: PointInteraction + ?Sized>(op: &O, opts: SearchOptions) -> Result<SearchReport> {
    let opts = SearchOptions::new(opts.grid_points, opts.tol)?;
    let lower_bound = op.lower_search_bound();
    let ceiling = -opts.tol;
    let mut report = SearchReport {
        eigenvalues: Vec::new(),
        warnings: Vec::new(),
        lower_bound,
        ceiling,
    };
    if op.atoms().is_empty() && op.initial(1.0).is_none() {
        return Ok(report);
    }
    if lower_bound >= ceiling {
        return Ok(report);
    }
    let samples = grid(op, lower_bound, ceiling, opts.grid_points);
    if samples[0].nodes > 0 {
        report.warnings.push(SearchWarning::BelowLowerBound {
            count: samples[0].nodes,
        });
    }
    let mut brackets = Vec::new();
    collect_brackets(op, &samples, 0, &mut brackets, &mut report.warnings);
    near_zero_warnings(&samples, &mut report.warnings);

    let tol = opts.tol;
    let mut records = map_indices(brackets.len(), |i| bisect(op, brackets[i], tol));
    records.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    report.eigenvalues = records;
    Ok(report)
}

fn collect_brackets<O: PointInteraction + ?Sized>(
    op: &O,
    samples: &[Sample],
    depth: u32,
    out: &mut Vec<(Sample, Sample)>,
    warnings: &mut Vec<SearchWarning>,
) {
    for pair in samples.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let count = b.nodes.saturating_sub(a.nodes);
        let sign_change = a.negative() != b.negative();
        if count <= 1 {
            if sign_change {
                out.push((a, b));
            }
            if (count == 1) != sign_change {
                warnings.push(SearchWarning::InconsistentCell {
                    lo: a.lambda,
                    hi: b.lambda,
                });
            }
            continue;
        }
        let width = b.lambda - a.lambda;
        if depth >= MAX_SPLIT_DEPTH || width <= f64::EPSILON * a.lambda.abs() * 64.0 {
            warnings.push(SearchWarning::UnresolvedCluster {
                lo: a.lambda,
                hi: b.lambda,
                count,
            });
            if sign_change {
                out.push((a, b));
            }
            continue;
        }
        let mut sub = grid(op, a.lambda, b.lambda, SPLIT_FACTOR + 1);
        sub[0] = a;
        sub[SPLIT_FACTOR] = b;
        collect_brackets(op, &sub, depth + 1, out, warnings);
    }
}

fn near_zero_warnings(samples: &[Sample], warnings: &mut Vec<SearchWarning>) {
    for (i, s) in samples.iter().enumerate() {
        if s.residual.abs() >= NEAR_ZERO || s.residual == 0.0 {
            continue;
        }
        let same = |j: Option<usize>| j.is_none_or(|j| samples[j].negative() == s.negative());
        if same(i.checked_sub(1)) && same((i + 1 < samples.len()).then_some(i + 1)) {
            warnings.push(SearchWarning::NearZeroWithoutSignChange {
                lambda: s.lambda,
                residual: s.residual,
            });
        }
    }
}

fn bisect<O: PointInteraction + ?Sized>(
    op: &O,
    bracket: (Sample, Sample),
    tol: f64,
) -> EigenvalueRecord {
    let (mut lo, mut hi) = (bracket.0.lambda, bracket.1.lambda);
    let lo_negative = bracket.0.negative();
    let mut iterations = 0;
    while hi - lo > tol && iterations < MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r = sample(op, mid).residual;
        if (r < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let lambda = 0.5 * (lo + hi);
    EigenvalueRecord {
        lambda,
        bracket: (lo, hi),
        residual: sample(op, lambda).residual,
        iterations,
    }
}

/// All negative eigenvalues of `op`, ascending.
pub fn find_eigenvalues(op: &LineOperator, grid_points: usize, tol: f64) -> Vec<EigenvalueRecord> {
    scan(op, SearchOptions { grid_points, tol })
        .map(|r| r.eigenvalues)
        .unwrap_or_default()
}

/// All negative eigenvalues of the half-line operator, ascending.
pub fn find_eigenvalues_halfline(
    op: &HalfLineOperator,
    grid_points: usize,
    tol: f64,
) -> Vec<EigenvalueRecord> {
    scan(op, SearchOptions { grid_points, tol })
        .map(|r| r.eigenvalues)
        .unwrap_or_default()
}
