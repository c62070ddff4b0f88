use num_complex::Complex64;

use super::{Atom, PointMeasure};
use crate::error::{Error, Result};

/// Largest supported level of the Cantor construction (2^26 atoms).
pub const CANTOR_DEPTH_CAP: u32 = 26;

/// Number of factors kept in the infinite product for `μ̂_C`. The omitted
/// factors satisfy `|1 − cos(t/3^j)| ≤ t²/(2·9^j)`, which is below machine
/// precision for `|t| ≤ 1e6`.
pub const CANTOR_PRODUCT_DEPTH: u32 = 40;

/// The level-`n` point approximation of the Cantor measure: `2^n` atoms of
/// weight `2^-n` at `Λ_n`, where `Λ_0 = {1/2}` and
/// `Λ_n = Λ_{n-1}/3 ∪ (1 − Λ_{n-1}/3)`.
pub fn cantor_level(n: u32) -> Result<PointMeasure> {
    if n > CANTOR_DEPTH_CAP {
        return Err(Error::DepthCap {
            requested: n,
            cap: CANTOR_DEPTH_CAP,
        });
    }
    let mut positions = vec![0.5_f64];
    for _ in 0..n {
        let mut next = Vec::with_capacity(2 * positions.len());
        next.extend(positions.iter().map(|x| x / 3.0));
        // 1 - x/3 reverses the order, so walk backwards to stay sorted.
        next.extend(positions.iter().rev().map(|x| 1.0 - x / 3.0));
        positions = next;
    }
    let weight = 0.5_f64.powi(n as i32);
    Ok(PointMeasure::from_sorted_unchecked(
        positions
            .into_iter()
            .map(|x| Atom::new(x, weight))
            .collect(),
    ))
}

/// `e^{it/2} ∏_{j=1}^{n} cos(t/3^j)`, the Fourier transform of [`cantor_level`].
pub fn cantor_fourier_level(t: f64, n: u32) -> Complex64 {
    let mut prod = 1.0;
    let mut scale = 1.0;
    for _ in 0..n {
        scale /= 3.0;
        prod *= (t * scale).cos();
    }
    let (s, c) = (0.5 * t).sin_cos();
    Complex64::new(c, s) * prod
}

/// Fourier transform of the Cantor probability measure.
pub fn cantor_fourier(t: f64) -> Complex64 {
    cantor_fourier_level(t, CANTOR_PRODUCT_DEPTH)
}

/// The Cantor function (CDF of the Cantor measure) at a floating point
/// argument. Digits are extracted in floating point, so values are accurate
/// to roughly `1e-10` next to the endpoints of removed intervals; use
/// [`cantor_function_ratio`] on rational grids.
pub fn cantor_function(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let mut x = x;
    let mut value = 0.0;
    let mut scale = 0.5;
    for _ in 0..64 {
        x *= 3.0;
        let digit = x.floor();
        x -= digit;
        if digit >= 2.0 {
            value += scale;
        } else if digit >= 1.0 {
            return value + scale;
        }
        if x <= 0.0 {
            break;
        }
        scale *= 0.5;
    }
    value
}

/// The Cantor function at the rational point `p/q`, with exact ternary
/// digit extraction.
pub fn cantor_function_ratio(p: i64, q: u64) -> f64 {
    assert!(q > 0, "denominator must be positive");
    if p <= 0 {
        return 0.0;
    }
    let q = q as u128;
    let mut p = p as u128;
    if p >= q {
        return 1.0;
    }
    let mut value = 0.0;
    let mut scale = 0.5;
    for _ in 0..64 {
        p *= 3;
        let digit = p / q;
        p -= digit * q;
        match digit {
            1 => return value + scale,
            2 => value += scale,
            _ => {}
        }
        if p == 0 {
            break;
        }
        scale *= 0.5;
    }
    value
}
