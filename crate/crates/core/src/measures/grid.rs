use std::f64::consts::PI;

use super::{cantor_function_ratio, Atom, MeasureSpec, PointMeasure};
use crate::error::{Error, Result};

/// Upper limit on `2·N·K` grid cells for one discretization.
pub const GRID_CELL_CAP: u64 = 1 << 27;

/// Weak point approximation `μ_N` of `m` on the grid `x_j = −K + j/N`.
///
/// Continuous parts contribute `a_j = μ_c((x_{j−1}, x_j])` placed at the
/// right endpoint `x_j`, for `j = 1..=2NK`; atoms of `m.point` pass through
/// unchanged and merge with grid atoms at the same position. The construction
/// never increases total variation.
pub fn discretize_continuous(m: &MeasureSpec, k: u32, n: u32) -> Result<PointMeasure> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidInput(
            "grid parameters K and N must be positive".into(),
        ));
    }
    if let Some((lo, hi)) = m.continuous_support() {
        let kf = k as f64;
        if lo < -kf || hi > kf {
            return Err(Error::SupportExceedsGrid { k });
        }
    }
    if !m.has_continuous_part() {
        return Ok(m.point.clone());
    }
    let cells = 2 * k as u64 * n as u64;
    if cells > GRID_CELL_CAP {
        return Err(Error::InvalidInput(format!(
            "grid with {cells} cells exceeds the cap of {GRID_CELL_CAP}"
        )));
    }
    let cells = cells as usize;
    let kn = k as u64 * n as u64;
    let nf = n as f64;
    let mut weights = vec![0.0_f64; cells + 1];

    // density pieces, in grid units u = (x + K)·N where cell j is (j−1, j]
    for piece in m.density.pieces() {
        let ua = (piece.start + k as f64) * nf;
        let ub = (piece.end + k as f64) * nf;
        let first = (ua.floor() as usize + 1).max(1);
        let last = (ub.ceil() as usize).min(cells);
        for (j, w) in weights.iter_mut().enumerate().take(last + 1).skip(first) {
            let overlap = ub.min(j as f64) - ua.max(j as f64 - 1.0);
            if overlap > 0.0 {
                *w += piece.value * overlap / nf;
            }
        }
    }

    if let Some(cdf) = &m.cdf {
        let x_at = |j: usize| (j as f64 - kn as f64) / nf;
        let mut prev = cdf.signed_cdf(x_at(0));
        for (j, w) in weights.iter_mut().enumerate().skip(1) {
            let cur = cdf.signed_cdf(x_at(j));
            *w += cur - prev;
            prev = cur;
        }
    }

    if let Some(cantor) = m.cantor {
        // only cells meeting (0, 1] carry Cantor mass
        let first = kn as usize + 1;
        let last = (kn + n as u64) as usize;
        let mut prev = 0.0;
        for (j, w) in weights.iter_mut().enumerate().take(last + 1).skip(first) {
            let cur = cantor_function_ratio(j as i64 - kn as i64, n as u64);
            *w += cantor.weight * (cur - prev);
            prev = cur;
        }
    }

    let grid_atoms = weights
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, w)| **w != 0.0)
        .map(|(j, w)| Atom::new((j as f64 - kn as f64) / nf, *w));
    PointMeasure::new(grid_atoms.chain(m.point.atoms().iter().copied()))
}

/// Smallest grid resolution `N` with `1/N < π/(2·t_max)·min(1, ε²/2)`, which
/// guarantees `|μ̂(t) − μ̂_N(t)| ≤ ε·|μ|(ℝ)` for all `|t| ≤ t_max`.
pub fn grid_modulus(t_max: f64, eps: f64) -> Result<u64> {
    if !(t_max > 0.0 && t_max.is_finite() && eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "grid_modulus needs positive finite t_max and eps, got {t_max}, {eps}"
        )));
    }
    let bound = PI / (2.0 * t_max) * (0.5 * eps * eps).min(1.0);
    let n = (1.0 / bound).floor() + 1.0;
    if n > u64::MAX as f64 {
        return Err(Error::InvalidInput("grid resolution overflows".into()));
    }
    Ok(n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{CantorPart, CdfPart, DensityPiece, PiecewiseDensity};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn pairs(pm: &PointMeasure) -> Vec<(f64, f64)> {
        pm.atoms().iter().map(|a| (a.position, a.weight)).collect()
    }

    #[test]
    fn square_well_levels() {
        let well = MeasureSpec::square_well();
        assert_eq!(
            pairs(&discretize_continuous(&well, 1, 1).unwrap()),
            vec![(0.0, -1.0), (1.0, -1.0)]
        );
        assert_eq!(
            pairs(&discretize_continuous(&well, 1, 2).unwrap()),
            vec![(-0.5, -0.5), (0.0, -0.5), (0.5, -0.5), (1.0, -0.5)]
        );
        let d = discretize_continuous(&well, 1, 100).unwrap();
        assert_eq!(d.len(), 200);
        assert!(d.atoms().iter().all(|a| a.weight == -0.01));
        assert_eq!(d.atoms()[99].position, 0.0);
    }

    #[test]
    fn empty_continuous_part() {
        assert!(discretize_continuous(&MeasureSpec::empty(), 3, 7)
            .unwrap()
            .is_empty());
        let pm = PointMeasure::from_pairs([(0.25, 2.0)]).unwrap();
        assert_eq!(discretize_continuous(&pm.clone().into(), 1, 4).unwrap(), pm);
    }

    #[test]
    fn atoms_merge_with_grid() {
        let m = MeasureSpec {
            point: PointMeasure::from_pairs([(0.0, 0.75), (3.0, 1.0)]).unwrap(),
            ..MeasureSpec::square_well()
        };
        let d = discretize_continuous(&m, 1, 1).unwrap();
        assert_eq!(pairs(&d), vec![(0.0, -0.25), (1.0, -1.0), (3.0, 1.0)]);
    }

    #[test]
    fn support_must_fit() {
        let wide =
            MeasureSpec::from(PiecewiseDensity::new([DensityPiece::new(-2.0, 0.5, 1.0)]).unwrap());
        assert_eq!(
            discretize_continuous(&wide, 1, 4).unwrap_err(),
            Error::SupportExceedsGrid { k: 1 }
        );
        assert!(discretize_continuous(&wide, 2, 4).is_ok());
        assert!(discretize_continuous(&wide, 0, 4).is_err());
    }

    #[test]
    fn partial_cells() {
        let m =
            MeasureSpec::from(PiecewiseDensity::new([DensityPiece::new(-0.3, 0.45, 2.0)]).unwrap());
        let d = discretize_continuous(&m, 1, 2).unwrap();
        // cells (-0.5,0] gets 0.3*2, (0,0.5] gets 0.45*2
        assert_eq!(d.len(), 2);
        assert_abs_diff_eq!(d.atoms()[0].weight, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(d.atoms()[1].weight, 0.9, epsilon = 1e-15);
        assert_eq!(d.atoms()[1].position, 0.5);
    }

    #[test]
    fn cantor_part_on_grid() {
        let m = MeasureSpec {
            cantor: Some(CantorPart { weight: -1.0 }),
            ..Default::default()
        };
        // N = 3: cells (0,1/3], (1/3,2/3], (2/3,1] carry 1/2, 0, 1/2
        let d = discretize_continuous(&m, 1, 3).unwrap();
        let got = pairs(&d);
        assert_eq!(got.len(), 2);
        assert_abs_diff_eq!(got[0].0, 1.0 / 3.0, epsilon = 1e-15);
        assert_eq!(got[0].1, -0.5);
        assert_eq!(got[1], (1.0, -0.5));
        assert_abs_diff_eq!(
            discretize_continuous(&m, 2, 81).unwrap().mass(),
            -1.0,
            epsilon = 1e-15
        );

        let via_cdf = MeasureSpec {
            cdf: Some(CdfPart::cantor(0.0, 1.0).unwrap()),
            ..Default::default()
        };
        let d2 = discretize_continuous(&via_cdf, 1, 3).unwrap();
        assert_eq!(d2.len(), 2);
        assert_abs_diff_eq!(d2.mass(), -1.0, epsilon = 1e-12);
    }

    #[test]
    fn grid_modulus_examples() {
        assert_eq!(grid_modulus(FRAC_PI_2, 2.0).unwrap(), 2);
        assert_eq!(grid_modulus(FRAC_PI_2, 1.0).unwrap(), 3);
        // linear in t_max for eps >= sqrt(2)
        let a = grid_modulus(100.0, 1.5).unwrap();
        let b = grid_modulus(50.0, 1.5).unwrap();
        assert!((a as i64 - 2 * b as i64).abs() <= 1, "{a} vs {b}");
        assert!(grid_modulus(0.0, 1.0).is_err());
        assert!(grid_modulus(1.0, -1.0).is_err());
    }
}
