use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::measures::Atom;

/// Solution value `u = f` and derivative `v = f'` at the current point,
/// divided by the positive factor `exp(log_scale + κ·(x − x_start))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootState {
    pub u: f64,
    pub v: f64,
    pub log_scale: f64,
}

impl ShootState {
    pub fn new(u: f64, v: f64) -> Self {
        ShootState {
            u,
            v,
            log_scale: 0.0,
        }
    }

    /// Coefficient of `e^{κs}` in `f(x + s) = g e^{κs} + d e^{-κs}`.
    pub fn growing(&self, kappa: f64) -> f64 {
        (kappa * self.u + self.v) / (2.0 * kappa)
    }

    /// Coefficient of `e^{-κs}`.
    pub fn decaying(&self, kappa: f64) -> f64 {
        (kappa * self.u - self.v) / (2.0 * kappa)
    }

    /// Free propagation over a gap of length `gap`, including the `e^{-κ·gap}` factor.
    pub(crate) fn propagate(&mut self, kappa: f64, gap: f64) {
        if gap <= 0.0 {
            return;
        }
        // with e = e^{-2κL}: cosh(κL)e^{-κL} = 1 - sh, sinh(κL)e^{-κL} = sh
        let sh = -0.5 * (-2.0 * kappa * gap).exp_m1();
        let ch = 1.0 - sh;
        let u = self.u * ch + self.v * (sh / kappa);
        let v = self.u * kappa * sh + self.v * ch;
        if u == 0.0 && v == 0.0 {
            // pure decaying mode underflowed; keep it in the log scale
            let d = self.decaying(kappa);
            self.log_scale += d.abs().ln() - 2.0 * kappa * gap;
            self.u = d.signum();
            self.v = -kappa * d.signum();
        } else {
            self.u = u;
            self.v = v;
        }
    }

    /// Derivative jump `f'(x+) − f'(x−) = weight·f(x)`.
    pub(crate) fn kick(&mut self, weight: f64) {
        self.v += weight * self.u;
    }

    /// Divides by a power of two so that `max(|u|, |v|) ∈ [1/2, 1)` whenever
    /// it left `[1/2, 2]`.
    pub(crate) fn renormalize(&mut self) {
        let m = self.u.abs().max(self.v.abs());
        if (0.5..=2.0).contains(&m) || m == 0.0 || !m.is_finite() {
            return;
        }
        let e = m.log2().floor() as i32 + 1;
        let factor = 2.0_f64.powi(-e);
        self.u *= factor;
        self.v *= factor;
        self.log_scale += e as f64 * LN_2;
    }

    /// Sign of `f` just to the right of the current point.
    fn sign_right(&self) -> i8 {
        sign_or(self.u, self.v)
    }

    /// Sign of `f` just to the left of the current point.
    fn sign_left(&self) -> i8 {
        sign_or(self.u, -self.v)
    }
}

fn sign_or(primary: f64, fallback: f64) -> i8 {
    if primary > 0.0 {
        1
    } else if primary < 0.0 {
        -1
    } else if fallback > 0.0 {
        1
    } else if fallback < 0.0 {
        -1
    } else {
        0
    }
}

/// Outcome of one shot at a fixed spectral parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShotOutcome {
    pub kappa: f64,
    /// State just after the last atom.
    pub state: ShootState,
    /// Zeros of the shot solution on the open domain; equals the number of
    /// eigenvalues strictly below `λ`.
    pub nodes: usize,
}

impl ShotOutcome {
    /// `(κu + v)/(2κ)`: vanishes exactly at eigenvalues.
    pub fn residual(&self) -> f64 {
        self.state.growing(self.kappa)
    }
}

pub(crate) fn kappa_for(lambda: f64) -> Result<f64> {
    if !(lambda < 0.0) || !lambda.is_finite() {
        return Err(Error::NonNegativeLambda(lambda));
    }
    Ok((-lambda).sqrt())
}

/// Runs the stabilized recursion from `(start, init)` through `atoms`.
/// `visit` sees the state just before and after each kick.
pub(crate) fn shoot_with<F>(
    kappa: f64,
    start: f64,
    init: ShootState,
    atoms: &[Atom],
    renormalize: bool,
    mut visit: F,
) -> ShotOutcome
where
    F: FnMut(usize, &ShootState, &ShootState),
{
    let mut state = init;
    let mut pos = start;
    let mut nodes = 0usize;
    let mut right = state.sign_right();
    for (j, atom) in atoms.iter().enumerate() {
        state.propagate(kappa, atom.position - pos);
        pos = atom.position;
        let left = state.sign_left();
        if left != right {
            nodes += 1;
        }
        let before = state;
        state.kick(atom.weight);
        let after_right = state.sign_right();
        if state.u == 0.0 && after_right != left {
            nodes += 1;
        }
        right = after_right;
        if renormalize {
            state.renormalize();
        }
        visit(j, &before, &state);
    }
    // tail: f(x_k + s) = g e^{κs} + d e^{-κs} has one zero iff the signs of
    // f just right of x_k and of g differ
    let g = state.growing(kappa);
    if g != 0.0 && (g > 0.0) != (right > 0) {
        nodes += 1;
    }
    ShotOutcome {
        kappa,
        state,
        nodes,
    }
}
