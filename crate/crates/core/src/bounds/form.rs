use std::f64::consts::PI;

use super::kernel::{Kernel, Primitives};
use crate::error::{Error, Result};
use crate::measures::{Atom, MeasureSpec, PointMeasure};
use crate::par::map_indices;

/// `4/√π`: converts the Fourier-weighted integral into a form distance.
pub const FORM_CONSTANT: f64 = 2.256_758_334_191_025;

pub const MIN_QUAD_POINTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub tmax: f64,
    /// Simpson panels on `[0, tmax]`; rounded up to an even number.
    pub points: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            tmax: 200.0,
            points: 4000,
        }
    }
}

impl QuadratureOptions {
    pub fn new(tmax: f64, points: usize) -> Result<Self> {
        if !(tmax > 0.0 && tmax.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "quad_tmax = {tmax} must be positive"
            )));
        }
        if points < MIN_QUAD_POINTS {
            return Err(Error::InvalidInput(format!(
                "quad_points = {points} must be at least {MIN_QUAD_POINTS}"
            )));
        }
        Ok(QuadratureOptions { tmax, points })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormMethod {
    /// Simpson on `[−T, T]` plus the certified tail.
    Quadrature,
    /// Closed form `π ∬ e^{−|x−y|} dρ dρ` (atoms and densities only).
    Exact,
}

/// The bound `s = (4/√π) I^{1/2}` with the pieces of `I` that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormDistance {
    pub s: f64,
    pub method: FormMethod,
    /// Integral over `[−T, T]` (quadrature) or the whole line (exact).
    pub central: f64,
    /// Certified bound for `|t| > T`; zero for the exact method.
    pub tail: f64,
    /// Richardson estimate of the quadrature error, or the rounding bound of
    /// the closed form. Added to `I` before taking the root.
    pub error: f64,
}

impl FormDistance {
    fn from_parts(method: FormMethod, central: f64, tail: f64, error: f64) -> Self {
        let integral = central.max(0.0) + tail + error.abs();
        FormDistance {
            s: FORM_CONSTANT * integral.sqrt(),
            method,
            central,
            tail,
            error: error.abs(),
        }
    }
}

/// `(4/√π)(∫ |m̂ − n̂|²/(1 + t²) dt)^{1/2}` with the central part by composite
/// Simpson on `[0, T]` (the integrand is even) and the tail bounded by
/// `(2M)²·2·arctan(1/T)`, `M = max(|m|(ℝ), |n|(ℝ))`.
pub fn form_distance(
    m: &MeasureSpec,
    n: &MeasureSpec,
    opts: QuadratureOptions,
) -> Result<FormDistance> {
    let opts = QuadratureOptions::new(opts.tmax, opts.points)?;
    let panels = opts.points + opts.points % 2;
    let h = opts.tmax / panels as f64;
    let values = map_indices(panels + 1, |i| {
        let t = if i == panels { opts.tmax } else { h * i as f64 };
        (m.fourier(t) - n.fourier(t)).norm_sqr() / (1.0 + t * t)
    });
    let fine = 2.0 * simpson(&values, h);
    let coarse_values: Vec<f64> = values.iter().step_by(2).copied().collect();
    let coarse = if coarse_values.len() % 2 == 1 && coarse_values.len() >= 3 {
        2.0 * simpson(&coarse_values, 2.0 * h)
    } else {
        fine
    };
    let cap = m.total_variation().max(n.total_variation());
    let tail = 4.0 * cap * cap * 2.0 * (1.0 / opts.tmax).atan();
    Ok(FormDistance::from_parts(
        FormMethod::Quadrature,
        fine,
        tail,
        (fine - coarse) / 15.0,
    ))
}

fn simpson(values: &[f64], h: f64) -> f64 {
    let last = values.len() - 1;
    let inner: f64 = values[1..last]
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { 4.0 * v } else { 2.0 * v })
        .sum();
    h / 3.0 * (values[0] + inner + values[last])
}

fn primitives(m: &MeasureSpec, sign: f64, out: &mut Primitives) -> bool {
    if m.cdf.is_some() || m.cantor.is_some() {
        return false;
    }
    out.atoms.extend(
        m.point
            .atoms()
            .iter()
            .map(|a| Atom::new(a.position, sign * a.weight)),
    );
    out.pieces.extend(m.density.pieces().iter().map(|p| {
        let mut q = *p;
        q.value *= sign;
        q
    }));
    true
}

/// The same bound computed from `∫ e^{its}/(1 + t²) dt = π e^{−|s|}`, i.e.
/// `I = π ∬ e^{−|x−y|} dρ(x) dρ(y)` with `ρ = m − n`. Returns `None` when a
/// measure has a CDF or Cantor part.
pub fn form_distance_exact(m: &MeasureSpec, n: &MeasureSpec) -> Option<FormDistance> {
    let mut prim = Primitives::default();
    if !primitives(m, 1.0, &mut prim) || !primitives(n, -1.0, &mut prim) {
        return None;
    }
    // merging cancels coincident atoms and pieces exactly
    let merged = PointMeasure::new(prim.atoms).ok()?;
    prim.atoms = merged.atoms().to_vec();
    prim.pieces
        .sort_by(|p, q| p.start.total_cmp(&q.start).then(p.end.total_cmp(&q.end)));
    prim.pieces.dedup_by(|q, p| {
        let same = p.start == q.start && p.end == q.end;
        if same {
            p.value += q.value;
        }
        same
    });
    prim.pieces.retain(|p| p.value != 0.0);
    let k = prim.double_integral(Kernel::Laplace);
    Some(FormDistance::from_parts(
        FormMethod::Exact,
        PI * k.value,
        0.0,
        PI * k.rounding,
    ))
}

/// `ε²π + 8M² arctan(1/t_max)`: bounds `∫ |μ̂ − ν̂|²/(1 + t²) dt` when
/// `|μ̂ − ν̂| ≤ ε` on `[−t_max, t_max]` and `|ν|(ℝ) ≤ |μ|(ℝ) ≤ M`.
pub fn split_integral_bound(eps: f64, t_max: f64, m_cap: f64) -> Result<f64> {
    if !(eps >= 0.0) || !(t_max > 0.0) || !(m_cap >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "split_integral_bound needs eps ≥ 0, t_max > 0, M ≥ 0 (got {eps}, {t_max}, {m_cap})"
        )));
    }
    Ok(eps * eps * PI + 8.0 * m_cap * m_cap * (1.0 / t_max).atan())
}

/// `2|μ|(ℝ \ [a, b])`: form error per unit `H¹` norm of replacing `μ` by
/// `χ_{[a,b]} μ`.
pub fn truncation_form_error(m: &MeasureSpec, a: f64, b: f64) -> Result<f64> {
    if !(a < b) {
        return Err(Error::InvalidInput(format!(
            "truncation window [{a}, {b}] is empty"
        )));
    }
    if let Ok((_, tail)) = m.truncate(a, b) {
        return Ok(2.0 * tail);
    }
    // a CDF part straddling the window: bound its outside mass from the CDFs
    let mut inner = m.clone();
    let cdf = inner.cdf.take();
    let cantor = inner.cantor.take();
    let (_, mut tail) = inner.truncate(a, b)?;
    if let Some(c) = cdf {
        let k = c.support() as f64;
        let (lo, hi) = (a.max(-k), b.min(k));
        let total = c.plus_total() + c.minus_total();
        let inside = if lo < hi { c.abs_mass(lo, hi) } else { 0.0 };
        tail += (total - inside).max(0.0);
    }
    if let Some(c) = cantor {
        let (lo, hi) = (a.max(0.0), b.min(1.0));
        let inside = if lo < hi {
            crate::measures::cantor_function(hi) - crate::measures::cantor_function(lo)
        } else {
            0.0
        };
        tail += c.weight.abs() * (1.0 - inside).max(0.0);
    }
    Ok(2.0 * tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::discretize_continuous;
    use approx::assert_relative_eq;

    #[test]
    fn identical_measures_leave_the_tail() {
        let m = MeasureSpec::square_well();
        let opts = QuadratureOptions::new(50.0, 64).unwrap();
        let f = form_distance(&m, &m, opts).unwrap();
        assert_eq!(f.central, 0.0);
        let tail = 4.0 * 4.0 * 2.0 * (1.0 / 50.0f64).atan();
        assert_relative_eq!(f.s, FORM_CONSTANT * tail.sqrt(), max_relative = 1e-15);
        assert_eq!(form_distance_exact(&m, &m).unwrap().s, 0.0);
    }

    #[test]
    fn single_delta_tends_to_four() {
        let delta: MeasureSpec = PointMeasure::from_pairs([(0.0, 1.0)]).unwrap().into();
        let exact = form_distance_exact(&delta, &MeasureSpec::empty()).unwrap();
        assert_relative_eq!(exact.s, 4.0, max_relative = 1e-13);
        let quad = form_distance(
            &delta,
            &MeasureSpec::empty(),
            QuadratureOptions::new(1e4, 100_000).unwrap(),
        )
        .unwrap();
        // central → π, tail (2·1)²·2·arctan(1e-4) adds a little
        assert_relative_eq!(quad.central, PI - 2.0 * 1e-4, max_relative = 1e-8);
        assert!(quad.s > 4.0 && quad.s < 4.01);
    }

    #[test]
    fn quadrature_agrees_with_closed_form() {
        let well = MeasureSpec::square_well();
        let approx: MeasureSpec = discretize_continuous(&well, 1, 10).unwrap().into();
        let exact = form_distance_exact(&well, &approx).unwrap();
        let quad = form_distance(
            &well,
            &approx,
            QuadratureOptions::new(400.0, 40_000).unwrap(),
        )
        .unwrap();
        // the exact integral lies between the central part and central + tail
        assert!(quad.central <= exact.central && exact.central <= quad.central + quad.tail);
        assert_relative_eq!(quad.central, exact.central, max_relative = 0.1);
        assert!(quad.s >= exact.s);
    }

    #[test]
    fn split_integral_examples() {
        assert_relative_eq!(
            split_integral_bound(0.1, 100.0, 1.0).unwrap(),
            0.01 * PI + 8.0 * 0.01f64.atan()
        );
        assert!((split_integral_bound(0.1, 100.0, 1.0).unwrap() - 0.1114).abs() < 1e-4);
        assert_eq!(split_integral_bound(0.3, 5.0, 0.0).unwrap(), 0.09 * PI);
        assert!(split_integral_bound(0.0, 1e300, 1.0).unwrap() < 1e-299);
    }

    #[test]
    fn truncation_examples() {
        let far: MeasureSpec = PointMeasure::from_pairs([(5.0, -1.0)]).unwrap().into();
        assert_eq!(truncation_form_error(&far, -1.0, 1.0).unwrap(), 2.0);
        let two: MeasureSpec = PointMeasure::from_pairs([(-3.0, 0.5), (4.0, 0.25)])
            .unwrap()
            .into();
        assert_eq!(truncation_form_error(&two, -1.0, 1.0).unwrap(), 1.5);
        assert_eq!(
            truncation_form_error(&MeasureSpec::square_well(), -1.0, 1.0).unwrap(),
            0.0
        );
        // half of the Cantor mass lies in [2/3, 1]
        let c = MeasureSpec::cantor(-2.0);
        assert_relative_eq!(
            truncation_form_error(&c, -1.0, 0.5).unwrap(),
            2.0,
            max_relative = 1e-12
        );
    }
}
