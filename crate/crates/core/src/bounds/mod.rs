//! Certified error chain from a measure approximation to eigenvalue windows.
//!
//! For measures with total variation at most `M` the forms `a_μ` share the
//! lower bound `c = −M²/2`; with the shift `α = 1 − c` the distance of two
//! such forms over the shifted unit ball is bounded by
//! `s = (4/√π)(∫ |μ̂ − ν̂|²/(1 + t²) dt)^{1/2}`. For `s < 1` the resolvents at
//! `−α` differ by at most `δ = s/√(1 − s)` in norm, which in turn localizes
//! every isolated eigenvalue in an explicit window.

mod counting;
mod form;
mod kernel;

use crate::error::{Error, Result};
use crate::measures::MeasureSpec;
use crate::pointsolver::EigenvalueRecord;

pub use counting::{
    existence_report, exists_exp, exists_gap, exists_mass, n0_upper, n0_upper_density,
    n0_upper_point, ExistenceReport, N0Bound, N0_CANTOR_LEVEL,
};
pub use form::{
    form_distance, form_distance_exact, split_integral_bound, truncation_form_error, FormDistance,
    FormMethod, QuadratureOptions, FORM_CONSTANT, MIN_QUAD_POINTS,
};

/// Stopping rule of the iterated ground-state bound.
const GROUND_STATE_ROUNDS: usize = 100;
const GROUND_STATE_TOL: f64 = 1e-12;

/// `−M²/2`: a lower bound of `a_μ` for every `μ` with `|μ|(ℝ) ≤ M`.
///
/// From `‖g‖∞² ≤ ‖g‖‖g'‖ ≤ (ε/2)‖g'‖² + (1/2ε)‖g‖²` with `ε = 1/M`,
/// `a_μ[g] ≥ ½‖g'‖² − (M²/2)‖g‖²`; the same estimate gives
/// `a_μ[g] + (1 − c)‖g‖² ≥ ½‖g‖²_{H¹}`.
pub fn common_lower_bound(m_cap: f64) -> f64 {
    -0.5 * m_cap * m_cap
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBudget {
    pub m_cap: f64,
    pub c: f64,
    pub s: f64,
    pub delta: f64,
    pub alpha_shift: f64,
}

impl ErrorBudget {
    pub fn new(m_cap: f64, s: f64) -> Result<Self> {
        if !(m_cap >= 0.0 && m_cap.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "total variation cap M = {m_cap} is invalid"
            )));
        }
        let c = common_lower_bound(m_cap);
        Ok(ErrorBudget {
            m_cap,
            c,
            s,
            delta: resolvent_bound(s)?,
            alpha_shift: 1.0 - c,
        })
    }
}

/// `s/√(1 − s)`.
pub fn resolvent_bound(s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "form distance s = {s} must be nonnegative"
        )));
    }
    if s >= 1.0 {
        return Err(Error::FormDistanceTooLarge(s));
    }
    Ok(s / (1.0 - s).sqrt())
}

/// Enclosure of the eigenvalues of the perturbed operator near `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub center: f64,
    pub lo: f64,
    pub hi: f64,
    pub isolation_lo: f64,
    pub isolation_hi: f64,
    pub multiplicity: u32,
}

impl Window {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

fn window_edges(e: f64, delta: f64, alpha: f64) -> Result<(f64, f64)> {
    let d = delta * (e + alpha);
    if 1.0 - d <= 0.0 {
        return Err(Error::WindowPrecondition(format!(
            "1 − δ(E + α) = {} is not positive",
            1.0 - d
        )));
    }
    Ok(((e - alpha * d) / (1.0 + d), (e + alpha * d) / (1.0 - d)))
}

/// If `[isolation_lo, isolation_hi]` meets the spectrum of the reference
/// operator only in the eigenvalue `e` (of the given multiplicity) and the
/// resolvents at `−α` differ by less than `delta`, the other operator has
/// exactly `multiplicity` eigenvalues in `(lo, hi)`.
pub fn eigenvalue_window(
    e: f64,
    delta: f64,
    alpha_shift: f64,
    multiplicity: u32,
) -> Result<Window> {
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::WindowPrecondition(format!(
            "δ = {delta} must be finite and nonnegative"
        )));
    }
    if !(alpha_shift >= 1.0 && alpha_shift.is_finite()) {
        return Err(Error::WindowPrecondition(format!(
            "α = {alpha_shift} must be at least 1"
        )));
    }
    if multiplicity == 0 {
        return Err(Error::WindowPrecondition(
            "multiplicity must be positive".into(),
        ));
    }
    if delta >= 0.5 / alpha_shift {
        return Err(Error::WindowPrecondition(format!(
            "δ = {delta} must be below 1/(2α) = {}",
            0.5 / alpha_shift
        )));
    }
    if !(e + alpha_shift >= 1.0) {
        return Err(Error::WindowPrecondition(format!(
            "E = {e} lies below 1 − α = {}",
            1.0 - alpha_shift
        )));
    }
    let (lo, hi) = window_edges(e, delta, alpha_shift)?;
    let (isolation_lo, isolation_hi) = window_edges(e, 2.0 * delta, alpha_shift)?;
    Ok(Window {
        center: e,
        lo,
        hi,
        isolation_lo,
        isolation_hi,
        multiplicity,
    })
}

fn check_ground_state(e1a: f64, shift: f64, s: f64) -> Result<()> {
    if !(e1a < 0.0 && e1a.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "E₁(A) = {e1a} must be negative"
        )));
    }
    if !(s >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "form distance s = {s} must be nonnegative"
        )));
    }
    if s >= 1.0 {
        return Err(Error::FormDistanceTooLarge(s));
    }
    if !(e1a + shift >= 0.0) {
        return Err(Error::Hypothesis(format!(
            "shift {shift} does not make E₁(A) + shift nonnegative"
        )));
    }
    Ok(())
}

/// `E₁(B) ≤ E₁(A) + (E₁(A) + shift)·s`, where both forms are bounded below
/// by `1 − shift`. With `iterate`, the shift is repeatedly lowered to
/// `1 − min(E₁(A), L)` with `L` the lower bound obtained by exchanging the
/// roles of `A` and `B`.
pub fn ground_state_upper(e1a: f64, shift: f64, s: f64, iterate: bool) -> Result<f64> {
    check_ground_state(e1a, shift, s)?;
    let upper = |c: f64| e1a + (e1a + c) * s;
    if !iterate {
        return Ok(upper(shift));
    }
    let mut c = shift;
    for _ in 0..GROUND_STATE_ROUNDS {
        let lower = ground_state_lower_raw(e1a, c, s);
        let next = c.min(1.0 - e1a.min(lower));
        let done = (c - next).abs() < GROUND_STATE_TOL;
        c = next;
        if done {
            break;
        }
    }
    Ok(upper(c))
}

fn ground_state_lower_raw(e1a: f64, shift: f64, s: f64) -> f64 {
    (e1a - shift * s) / (1.0 + s)
}

/// `E₁(B) ≥ (E₁(A) − shift·s)/(1 + s)`, the same estimate with `A` and `B`
/// exchanged.
pub fn ground_state_lower(e1a: f64, shift: f64, s: f64) -> Result<f64> {
    check_ground_state(e1a, shift, s)?;
    Ok(ground_state_lower_raw(e1a, shift, s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FormRoute {
    /// Closed form when both measures allow it, quadrature otherwise.
    #[default]
    Auto,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CertifyOptions {
    pub quadrature: QuadratureOptions,
    pub route: FormRoute,
}

pub const ISOLATION_CAVEAT: &str =
    "isolation hypothesis assumed, not verified: each isolation interval must meet the target spectrum only in its eigenvalue";

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub budget: ErrorBudget,
    pub form: FormDistance,
    pub windows: Vec<Window>,
    pub caveats: Vec<String>,
}

/// Windows for the target eigenvalues around each eigenvalue `E` of the
/// approximating operator.
pub fn certify(
    target: &MeasureSpec,
    approx: &MeasureSpec,
    eigs: &[EigenvalueRecord],
    opts: &CertifyOptions,
) -> Result<Certificate> {
    let m_cap = target.total_variation().max(approx.total_variation());
    let exact = match opts.route {
        FormRoute::Auto => form_distance_exact(target, approx),
        FormRoute::Quadrature => None,
    };
    let form = match exact {
        Some(f) => f,
        None => form_distance(target, approx, opts.quadrature)?,
    };
    let budget = ErrorBudget::new(m_cap, form.s)?;
    let mut caveats = vec![ISOLATION_CAVEAT.to_string()];
    let mut windows = Vec::with_capacity(eigs.len());
    for rec in eigs {
        let w = eigenvalue_window(rec.lambda, budget.delta, budget.alpha_shift, 1)?;
        if w.isolation_hi >= 0.0 {
            caveats.push(format!(
                "isolation interval of E = {} reaches the essential spectrum [0, ∞); the window is not certified",
                rec.lambda
            ));
        }
        windows.push(w);
    }
    if form.method == FormMethod::Quadrature
        && form.error > 0.01 * form.central.max(f64::MIN_POSITIVE)
    {
        caveats.push(format!(
            "quadrature error estimate {:e} is large relative to the central integral; increase quad_points",
            form.error
        ));
    }
    Ok(Certificate {
        budget,
        form,
        windows,
        caveats,
    })
}
