use super::shoot::{kappa_for, shoot_with, ShootState};
use super::{HalfLineOperator, LineOperator, PointInteraction};
use crate::error::{Error, Result};

/// Largest accepted `decay_residual` of a computed eigenfunction.
pub const DEFAULT_ACCEPT_TOL: f64 = 1e-6;

/// `f(x) = e^{log_scale} (a e^{κ(x − anchor)} + b e^{−κ(x − anchor)})` on `(start, end)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPiece {
    pub start: f64,
    pub end: f64,
    pub anchor: f64,
    pub a: f64,
    pub b: f64,
    pub log_scale: f64,
}

impl EigenPiece {
    fn from_state(
        start: f64,
        end: f64,
        anchor: f64,
        s: &ShootState,
        kappa: f64,
        shift: f64,
    ) -> Self {
        EigenPiece {
            start,
            end,
            anchor,
            a: s.growing(kappa),
            b: s.decaying(kappa),
            log_scale: s.log_scale + shift,
        }
    }

    /// `(f, f')` at `x` relative to `e^{log_scale}`.
    fn local(&self, x: f64, kappa: f64) -> (f64, f64) {
        let s = kappa * (x - self.anchor);
        let term = |c: f64, e: f64| if c == 0.0 { 0.0 } else { c * e.exp() };
        let (g, d) = (term(self.a, s), term(self.b, -s));
        (g + d, kappa * (g - d))
    }

    fn contains(&self, x: f64) -> bool {
        self.start <= x && x <= self.end
    }
}

/// Eigenfunction of a point-interaction operator, one exponential pair per
/// interval between consecutive atoms, each with its own anchor and log
/// scale so coefficients stay representable on long chains. It is assembled
/// from a sweep from the left and a sweep from the right, joined at the atom
/// where the two agree best; a single forward sweep would amplify the
/// eigenvalue error by `e^{2κ·length}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseEigenfunction {
    pub lambda: f64,
    pub kappa: f64,
    pub pieces: Vec<EigenPiece>,
    weights: Vec<f64>,
    mismatch: f64,
}

impl PiecewiseEigenfunction {
    fn piece_at(&self, x: f64) -> Option<&EigenPiece> {
        // pieces are sorted, so take the last one starting at or before x
        let idx = self.pieces.partition_point(|p| p.start <= x);
        let p = self.pieces.get(idx.checked_sub(1)?)?;
        p.contains(x).then_some(p)
    }

    /// `f(x)`; `None` outside the domain.
    pub fn value(&self, x: f64) -> Option<f64> {
        let p = self.piece_at(x)?;
        Some(p.log_scale.exp() * p.local(x, self.kappa).0)
    }

    /// `f` at each of `xs`, scaled so the largest magnitude is one and that
    /// value is positive. Points outside the domain give zero. Scaling is done
    /// in log space, so long chains do not overflow.
    pub fn normalized_values(&self, xs: &[f64]) -> Vec<f64> {
        let raw: Vec<Option<(f64, f64)>> = xs
            .iter()
            .map(|&x| {
                let p = self.piece_at(x)?;
                Some((p.log_scale, p.local(x, self.kappa).0))
            })
            .collect();
        let (log_max, sign) = raw
            .iter()
            .flatten()
            .filter(|(_, v)| *v != 0.0)
            .map(|&(l, v)| (l + v.abs().ln(), v.signum()))
            .fold((f64::NEG_INFINITY, 1.0), |best, c| {
                if c.0 > best.0 {
                    c
                } else {
                    best
                }
            });
        raw.into_iter()
            .map(|r| r.map_or(0.0, |(l, v)| sign * v * (l - log_max).exp()))
            .collect()
    }

    /// `f'(x)` (the right derivative at atoms).
    pub fn derivative(&self, x: f64) -> Option<f64> {
        let p = self.piece_at(x)?;
        Some(p.log_scale.exp() * p.local(x, self.kappa).1)
    }

    /// Sine of the angle between the `(κf, f')` limits of the left and the
    /// right solution at the matching atom; zero for an exact eigenvalue. The
    /// last piece decays by construction. Without atoms, the relative weight
    /// `|a|/(|a| + |b|)` of the growing mode.
    pub fn decay_residual(&self) -> f64 {
        self.mismatch
    }

    /// Largest relative violation of continuity and of the derivative jump
    /// `f'(xⱼ+) − f'(xⱼ−) = αⱼ f(xⱼ)` over all atoms.
    pub fn interface_violation(&self) -> f64 {
        let kappa = self.kappa;
        let mut worst: f64 = 0.0;
        for (pair, weight) in self.pieces.windows(2).zip(&self.weights) {
            let (left, right) = (&pair[0], &pair[1]);
            let x = right.start;
            let (fl, dl) = left.local(x, kappa);
            let (fr, dr) = right.local(x, kappa);
            let rel = (right.log_scale - left.log_scale).exp();
            let (fr, dr) = (fr * rel, dr * rel);
            let scale = fl.abs().max(dl.abs() / kappa).max(f64::MIN_POSITIVE);
            worst = worst.max((fl - fr).abs() / scale);
            let jump_scale = (scale * kappa).max(weight.abs() * fl.abs());
            worst = worst.max(((dr - dl) - weight * fl).abs() / jump_scale);
        }
        worst
    }

    /// Coefficients in the global form `aⱼ e^{κx} + bⱼ e^{−κx}`, scaled so the
    /// first interval has `|a₀| + |b₀| = 1`. May over- or underflow when `κ|x|`
    /// is large.
    pub fn global_coefficients(&self) -> Vec<(f64, f64)> {
        let first = &self.pieces[0];
        let norm = first.a.abs() + first.b.abs();
        self.pieces
            .iter()
            .map(|p| {
                let s = p.log_scale - first.log_scale;
                (
                    p.a / norm * (s - self.kappa * p.anchor).exp(),
                    p.b / norm * (s + self.kappa * p.anchor).exp(),
                )
            })
            .collect()
    }
}

/// One-sided limits `(κf, f')` at an atom together with their log scale.
#[derive(Clone, Copy)]
struct Limit {
    kf: f64,
    df: f64,
    log_scale: f64,
}

fn build<O: PointInteraction>(
    op: &O,
    lambda: f64,
    accept_tol: f64,
    leading_piece: impl FnOnce(f64, f64, &ShootState) -> EigenPiece,
) -> Result<PiecewiseEigenfunction> {
    let kappa = kappa_for(lambda)?;
    let (start, init) = op
        .initial(kappa)
        .ok_or_else(|| Error::InvalidInput("operator has no point interactions".into()))?;
    let atoms = op.atoms();
    let k = atoms.len();
    let weights: Vec<f64> = atoms.iter().map(|a| a.weight).collect();

    // sweep from the left: pieces[j] lives on (x_{j-1}, x_j)
    let mut left = Vec::with_capacity(k + 1);
    left.push(leading_piece(kappa, start, &init));
    let mut left_limits = Vec::with_capacity(k);
    shoot_with(kappa, start, init, atoms, true, |j, _before, after| {
        let x = atoms[j].position;
        let end = atoms.get(j + 1).map_or(f64::INFINITY, |a| a.position);
        let shift = kappa * (x - start);
        left.push(EigenPiece::from_state(x, end, x, after, kappa, shift));
        left_limits.push(Limit {
            kf: kappa * after.u,
            df: after.v,
            log_scale: after.log_scale + shift,
        });
    });

    if k == 0 {
        let only = &left[0];
        let mismatch = only.a.abs() / (only.a.abs() + only.b.abs());
        let f = PiecewiseEigenfunction {
            lambda,
            kappa,
            pieces: left,
            weights,
            mismatch,
        };
        return accept(f, mismatch, accept_tol);
    }

    // sweep from the right on the mirrored chain, decaying at +∞
    let last_x = atoms[k - 1].position;
    let mirrored: Vec<_> = atoms
        .iter()
        .rev()
        .map(|a| crate::measures::Atom::new(-a.position, a.weight))
        .collect();
    let mut right: Vec<Option<EigenPiece>> = vec![None; k + 1];
    right[k] = Some(EigenPiece {
        start: last_x,
        end: f64::INFINITY,
        anchor: last_x,
        a: 0.0,
        b: 1.0,
        log_scale: 0.0,
    });
    let mut right_limits: Vec<Option<Limit>> = vec![None; k];
    shoot_with(
        kappa,
        -last_x,
        ShootState::new(1.0, kappa),
        &mirrored,
        true,
        |i, before, after| {
            let j = k - 1 - i;
            let x = atoms[j].position;
            let shift = kappa * (last_x - x);
            // mirrored (u, v) at x⁻ is (f, −f') of the original
            let piece_start = if j == 0 {
                left[0].start
            } else {
                atoms[j - 1].position
            };
            right[j] = Some(EigenPiece {
                start: piece_start,
                end: x,
                anchor: x,
                a: after.decaying(kappa),
                b: after.growing(kappa),
                log_scale: after.log_scale + shift,
            });
            right_limits[j] = Some(Limit {
                kf: kappa * before.u,
                df: -before.v,
                log_scale: before.log_scale + shift,
            });
        },
    );

    // match where the two one-sided solutions agree best
    let mut best = (f64::INFINITY, 0usize, 0.0f64);
    for (j, (l, r)) in left_limits.iter().zip(&right_limits).enumerate() {
        let r = r.expect("every atom visited");
        let (pn, qn) = (l.kf.hypot(l.df), r.kf.hypot(r.df));
        let sine = (l.kf * r.df - l.df * r.kf).abs() / (pn * qn);
        if sine < best.0 {
            let dot = l.kf * r.kf + l.df * r.df;
            best = (sine, j, dot / (qn * qn));
        }
    }
    let (mismatch, m, ratio) = best;
    let lm = left_limits[m];
    let rm = right_limits[m].expect("every atom visited");
    let log_factor = lm.log_scale - rm.log_scale;

    let mut pieces = left;
    pieces.truncate(m + 1);
    for p in right.into_iter().skip(m + 1) {
        let mut p = p.expect("every interval covered");
        p.a *= ratio;
        p.b *= ratio;
        p.log_scale += log_factor;
        pieces.push(p);
    }
    let f = PiecewiseEigenfunction {
        lambda,
        kappa,
        pieces,
        weights,
        mismatch,
    };
    accept(f, mismatch, accept_tol)
}

fn accept(
    f: PiecewiseEigenfunction,
    residual: f64,
    accept_tol: f64,
) -> Result<PiecewiseEigenfunction> {
    if !(residual <= accept_tol) {
        return Err(Error::NotAnEigenvalue {
            lambda: f.lambda,
            residual,
        });
    }
    Ok(f)
}

/// Eigenfunction of the line operator at a computed eigenvalue `lambda`,
/// normalized to `a₀ = 1, b₀ = 0` on `(−∞, x₁)`.
pub fn eigenfunction(
    op: &LineOperator,
    lambda: f64,
    accept_tol: f64,
) -> Result<PiecewiseEigenfunction> {
    build(op, lambda, accept_tol, |kappa, start, init| {
        EigenPiece::from_state(f64::NEG_INFINITY, start, start, init, kappa, 0.0)
    })
}

/// Eigenfunction of the half-line operator; the first piece starts at `0`.
pub fn eigenfunction_halfline(
    op: &HalfLineOperator,
    lambda: f64,
    accept_tol: f64,
) -> Result<PiecewiseEigenfunction> {
    let first_atom = op.atoms().first().map_or(f64::INFINITY, |a| a.position);
    build(op, lambda, accept_tol, |kappa, start, init| {
        EigenPiece::from_state(start, first_atom, start, init, kappa, 0.0)
    })
}
