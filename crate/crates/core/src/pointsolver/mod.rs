//! Negative eigenvalues of point-interaction operators.
//!
//! Both `−Δ + Σ αⱼ δ_{xⱼ}` on the line and `−Δ_α + Σ βⱼ δ_{xⱼ}` on the
//! half-line with Robin boundary condition `cos α f(0) + sin α f'(0) = 0` are
//! handled by the same shooting recursion. For `λ = −κ² < 0` the solution
//! that satisfies the left condition (decay at `−∞`, or the boundary
//! condition at `0`) is carried across every gap and every derivative jump;
//! `λ` is an eigenvalue exactly when the coefficient of `e^{κx}` after the
//! last atom vanishes.
//!
//! The recursion runs on `(f, f')` rather than on the exponential
//! coefficients, divides out `e^{κL}` on each gap and renormalizes by powers
//! of two, so it never overflows. The number of sign changes of the shot
//! solution counts the eigenvalues below `λ`, which lets the scan detect and
//! split grid cells holding more than one eigenvalue.

mod eigenfunction;
mod search;
mod shoot;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::measures::{Atom, PointMeasure};

pub use eigenfunction::{
    eigenfunction, eigenfunction_halfline, EigenPiece, PiecewiseEigenfunction, DEFAULT_ACCEPT_TOL,
};
pub use search::{
    find_eigenvalues, find_eigenvalues_halfline, scan, EigenvalueRecord, SearchOptions,
    SearchReport, SearchWarning, DEFAULT_GRID_POINTS, DEFAULT_TOL,
};
pub use shoot::{ShootState, ShotOutcome};

use shoot::{kappa_for, shoot_with};

/// Slack added below the analytic lower bound of the spectrum.
const LOWER_BOUND_SLACK: f64 = 1e-6;

/// Common interface of the two shooting problems.
pub trait PointInteraction: Sync {
    fn atoms(&self) -> &[Atom];

    /// Starting point and initial `(f, f')` for a given `κ`, or `None` when
    /// there is nothing to shoot through.
    fn initial(&self, kappa: f64) -> Option<(f64, ShootState)>;

    /// A number strictly below every eigenvalue.
    fn lower_search_bound(&self) -> f64;

    fn shoot(&self, lambda: f64) -> Result<ShotOutcome> {
        self.shoot_raw(lambda, true)
    }

    #[doc(hidden)]
    fn shoot_raw(&self, lambda: f64, renormalize: bool) -> Result<ShotOutcome> {
        let kappa = kappa_for(lambda)?;
        let (start, init) = self
            .initial(kappa)
            .ok_or_else(|| Error::InvalidInput("operator has no point interactions".into()))?;
        Ok(shoot_with(
            kappa,
            start,
            init,
            self.atoms(),
            renormalize,
            |_, _, _| {},
        ))
    }

    /// Number of eigenvalues strictly below `lambda`.
    fn count_below(&self, lambda: f64) -> Result<usize> {
        match self.shoot(lambda) {
            Err(Error::InvalidInput(_)) => Ok(0),
            other => Ok(other?.nodes),
        }
    }
}

/// `−Δ + Σ αⱼ δ_{xⱼ}` on `L²(ℝ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineOperator {
    potential: PointMeasure,
}

impl LineOperator {
    pub fn new(potential: PointMeasure) -> Self {
        LineOperator { potential }
    }

    pub fn potential(&self) -> &PointMeasure {
        &self.potential
    }

    /// `Σ max(0, −αⱼ)`.
    pub fn attractive_strength(&self) -> f64 {
        attractive_strength(&self.potential)
    }
}

fn attractive_strength(pm: &PointMeasure) -> f64 {
    pm.atoms().iter().map(|a| (-a.weight).max(0.0)).sum()
}

impl PointInteraction for LineOperator {
    fn atoms(&self) -> &[Atom] {
        self.potential.atoms()
    }

    fn initial(&self, kappa: f64) -> Option<(f64, ShootState)> {
        // e^{κx} coming from −∞, rescaled to 1 at x₁
        let first = self.potential.atoms().first()?;
        Some((first.position, ShootState::new(1.0, kappa)))
    }

    /// `−4A² − 10⁻⁶` with `A = Σ max(0, −αⱼ)`. From `‖f‖∞² ≤ ε‖f'‖² + (4/ε)‖f‖²`
    /// with `ε = 1/A` the form is bounded below by `−4A²‖f‖²`.
    fn lower_search_bound(&self) -> f64 {
        let a = self.attractive_strength();
        -4.0 * a * a - LOWER_BOUND_SLACK
    }
}

/// `−Δ_α + Σ βⱼ δ_{xⱼ}` on `L²([0, ∞))` with `cos α f(0) + sin α f'(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfLineOperator {
    alpha: f64,
    potential: PointMeasure,
}

impl HalfLineOperator {
    pub fn new(alpha: f64, potential: PointMeasure) -> Result<Self> {
        if !(0.0..PI).contains(&alpha) {
            return Err(Error::InvalidInput(format!(
                "Robin parameter alpha = {alpha} must lie in [0, π)"
            )));
        }
        if let Some(a) = potential.atoms().first() {
            if a.position <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "half-line atoms must have positive positions, got {}",
                    a.position
                )));
            }
        }
        Ok(HalfLineOperator { alpha, potential })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn potential(&self) -> &PointMeasure {
        &self.potential
    }

    /// Strength of the attractive boundary term `−cot α |f(0)|²` (zero for
    /// Dirichlet and for repulsive Robin conditions).
    pub fn boundary_strength(&self) -> f64 {
        if self.alpha > 0.0 && self.alpha < PI / 2.0 {
            1.0 / self.alpha.tan()
        } else {
            0.0
        }
    }
}

impl PointInteraction for HalfLineOperator {
    fn atoms(&self) -> &[Atom] {
        self.potential.atoms()
    }

    fn initial(&self, _kappa: f64) -> Option<(f64, ShootState)> {
        let (s, c) = self.alpha.sin_cos();
        Some((0.0, ShootState::new(s, -c)))
    }

    /// `−max(4A², (cot⁺α + A)² + 1) − 10⁻⁶`. On the half-line
    /// `‖f‖∞² ≤ 2‖f‖‖f'‖`, so the form is bounded below by `−(cot⁺α + A)²‖f‖²`.
    fn lower_search_bound(&self) -> f64 {
        let a = attractive_strength(&self.potential);
        let b = self.boundary_strength() + a;
        -(4.0 * a * a).max(b * b + 1.0) - LOWER_BOUND_SLACK
    }
}

/// Shooting residual `r(λ)` for the line operator; same sign as the
/// coefficient `a_k(λ)` of `e^{κx}` after the last atom.
pub fn residual(op: &LineOperator, lambda: f64) -> Result<f64> {
    Ok(op.shoot(lambda)?.residual())
}

/// Shooting residual for the half-line operator.
pub fn residual_halfline(op: &HalfLineOperator, lambda: f64) -> Result<f64> {
    Ok(op.shoot(lambda)?.residual())
}

pub fn lower_search_bound(op: &LineOperator) -> f64 {
    op.lower_search_bound()
}
