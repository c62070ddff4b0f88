//! Finite signed Radon measures on the real line.
//!
//! A [`MeasureSpec`] is declared as a sum of mutually singular parts: an
//! atomic part, a piecewise constant density, an optional CDF-defined
//! continuous part and an optional multiple of the Cantor measure. Each part
//! knows its total variation, mass and Fourier transform
//! `ν̂(t) = ∫ e^{itx} dν(x)` exactly (or, for the CDF part, by a
//! Riemann–Stieltjes sum on a fixed grid).

mod cantor;
mod grid;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use cantor::{
    cantor_fourier, cantor_fourier_level, cantor_function, cantor_function_ratio, cantor_level,
    CANTOR_DEPTH_CAP, CANTOR_PRODUCT_DEPTH,
};
pub use grid::{discretize_continuous, grid_modulus, GRID_CELL_CAP};

/// A single point interaction `weight · δ_position`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub position: f64,
    pub weight: f64,
}

impl Atom {
    pub fn new(position: f64, weight: f64) -> Self {
        Atom { position, weight }
    }
}

/// Finite pure point measure with strictly increasing positions and
/// nonzero weights.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PointMeasure {
    atoms: Vec<Atom>,
}

impl PointMeasure {
    /// Sorts, merges atoms sharing a position and drops zero weights.
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Result<Self> {
        let mut atoms: Vec<Atom> = atoms.into_iter().collect();
        if let Some(bad) = atoms
            .iter()
            .find(|a| !a.position.is_finite() || !a.weight.is_finite())
        {
            return Err(Error::InvalidInput(format!(
                "atom ({}, {}) is not finite",
                bad.position, bad.weight
            )));
        }
        atoms.sort_by(|a, b| a.position.total_cmp(&b.position));
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for atom in atoms {
            match merged.last_mut() {
                Some(last) if last.position == atom.position => last.weight += atom.weight,
                _ => merged.push(atom),
            }
        }
        merged.retain(|a| a.weight != 0.0);
        Ok(PointMeasure { atoms: merged })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        Self::new(pairs.into_iter().map(|(x, w)| Atom::new(x, w)))
    }

    /// Caller guarantees strictly increasing finite positions and nonzero weights.
    pub(crate) fn from_sorted_unchecked(atoms: Vec<Atom>) -> Self {
        debug_assert!(atoms.windows(2).all(|w| w[0].position < w[1].position));
        debug_assert!(atoms.iter().all(|a| a.weight != 0.0));
        PointMeasure { atoms }
    }

    pub fn empty() -> Self {
        PointMeasure::default()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_variation(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight.abs()).sum()
    }

    pub fn mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    pub fn fourier(&self, t: f64) -> Complex64 {
        let (mut re, mut im) = (0.0, 0.0);
        for a in &self.atoms {
            let (s, c) = (t * a.position).sin_cos();
            re += a.weight * c;
            im += a.weight * s;
        }
        Complex64::new(re, im)
    }

    /// The negative Jordan part `μ₋` as a nonnegative measure.
    pub fn negative_part(&self) -> PointMeasure {
        PointMeasure {
            atoms: self
                .atoms
                .iter()
                .filter(|a| a.weight < 0.0)
                .map(|a| Atom::new(a.position, -a.weight))
                .collect(),
        }
    }

    /// Image under `x ↦ scale·x + shift` with weights multiplied by `weight_factor`.
    pub fn transformed(&self, scale: f64, shift: f64, weight_factor: f64) -> Result<Self> {
        Self::new(
            self.atoms
                .iter()
                .map(|a| Atom::new(scale * a.position + shift, weight_factor * a.weight)),
        )
    }

    /// Sum of the absolute weights of the atoms that are not in `[a, b]`.
    fn mass_outside(&self, a: f64, b: f64) -> f64 {
        self.atoms
            .iter()
            .filter(|at| at.position < a || at.position > b)
            .map(|at| at.weight.abs())
            .sum()
    }
}

/// Constant density `value` on the half-open interval `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityPiece {
    pub start: f64,
    pub end: f64,
    pub value: f64,
}

impl DensityPiece {
    pub fn new(start: f64, end: f64, value: f64) -> Self {
        DensityPiece { start, end, value }
    }

    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    fn fourier(&self, t: f64) -> Complex64 {
        // (e^{itb} - e^{ita}) / (it) = (b - a) sinc(t (b - a) / 2) e^{it (a + b) / 2}
        let half = 0.5 * self.len();
        let mid = 0.5 * (self.start + self.end);
        let z = t * half;
        let sinc = if z.abs() < 1e-4 {
            1.0 - z * z / 6.0
        } else {
            z.sin() / z
        };
        let (s, c) = (t * mid).sin_cos();
        Complex64::new(c, s) * (self.value * self.len() * sinc)
    }
}

/// Piecewise constant density with pairwise disjoint pieces, sorted by start.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PiecewiseDensity {
    pieces: Vec<DensityPiece>,
}

impl PiecewiseDensity {
    pub fn new(pieces: impl IntoIterator<Item = DensityPiece>) -> Result<Self> {
        let mut pieces: Vec<DensityPiece> = pieces.into_iter().collect();
        for p in &pieces {
            if !(p.start.is_finite() && p.end.is_finite() && p.value.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "density piece [{}, {}) = {} is not finite",
                    p.start, p.end, p.value
                )));
            }
            if p.start >= p.end {
                return Err(Error::InvalidInput(format!(
                    "density piece [{}, {}) is empty",
                    p.start, p.end
                )));
            }
        }
        pieces.sort_by(|a, b| a.start.total_cmp(&b.start));
        if let Some(w) = pieces.windows(2).find(|w| w[0].end > w[1].start) {
            return Err(Error::InvalidInput(format!(
                "density pieces [{}, {}) and [{}, {}) overlap",
                w[0].start, w[0].end, w[1].start, w[1].end
            )));
        }
        pieces.retain(|p| p.value != 0.0);
        Ok(PiecewiseDensity { pieces })
    }

    pub fn empty() -> Self {
        PiecewiseDensity::default()
    }

    pub fn pieces(&self) -> &[DensityPiece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn total_variation(&self) -> f64 {
        self.pieces.iter().map(|p| p.value.abs() * p.len()).sum()
    }

    pub fn mass(&self) -> f64 {
        self.pieces.iter().map(|p| p.value * p.len()).sum()
    }

    pub fn fourier(&self, t: f64) -> Complex64 {
        self.pieces.iter().map(|p| p.fourier(t)).sum()
    }

    /// The negative Jordan part as a nonnegative density.
    pub fn negative_part(&self) -> PiecewiseDensity {
        PiecewiseDensity {
            pieces: self
                .pieces
                .iter()
                .filter(|p| p.value < 0.0)
                .map(|p| DensityPiece::new(p.start, p.end, -p.value))
                .collect(),
        }
    }

    fn support(&self) -> Option<(f64, f64)> {
        Some((self.pieces.first()?.start, self.pieces.last()?.end))
    }

    /// Restriction to `[a, b]` and the total variation cut away.
    fn restrict(&self, a: f64, b: f64) -> (PiecewiseDensity, f64) {
        let mut kept = Vec::new();
        let mut tail = 0.0;
        for p in &self.pieces {
            let lo = p.start.max(a);
            let hi = p.end.min(b);
            if lo < hi {
                kept.push(DensityPiece::new(lo, hi, p.value));
                tail += p.value.abs() * (p.len() - (hi - lo));
            } else {
                tail += p.value.abs() * p.len();
            }
        }
        (PiecewiseDensity { pieces: kept }, tail)
    }
}

/// Monotone nondecreasing, continuous cumulative distribution function.
pub type Cdf = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Default Riemann–Stieltjes resolution (cells per unit length) used for the
/// Fourier transform of a CDF part.
pub const DEFAULT_CDF_RESOLUTION: u32 = 1024;

/// Continuous part given by the Jordan CDFs `F₊`, `F₋` supported in `[-K, K]`.
#[derive(Clone)]
pub struct CdfPart {
    support: u32,
    plus: Option<Cdf>,
    minus: Option<Cdf>,
    resolution: u32,
    label: String,
    cells: Arc<OnceLock<PointMeasure>>,
}

impl fmt::Debug for CdfPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CdfPart")
            .field("label", &self.label)
            .field("support", &self.support)
            .field("plus_total", &self.plus_total())
            .field("minus_total", &self.minus_total())
            .field("resolution", &self.resolution)
            .finish()
    }
}

impl CdfPart {
    /// Either CDF may be `None` (identically zero). Both must vanish at `-K`.
    pub fn new(support: u32, plus: Option<Cdf>, minus: Option<Cdf>, label: &str) -> Result<Self> {
        if support == 0 {
            return Err(Error::InvalidInput("CDF support K must be positive".into()));
        }
        let k = support as f64;
        for (name, f) in [("F+", &plus), ("F-", &minus)] {
            if let Some(f) = f {
                let (lo, hi) = (f(-k), f(k));
                if !lo.is_finite() || !hi.is_finite() {
                    return Err(Error::InvalidInput(format!(
                        "{name} is not finite on the support"
                    )));
                }
                if lo.abs() > 1e-12 {
                    return Err(Error::InvalidInput(format!(
                        "{name}(-K) = {lo} must vanish"
                    )));
                }
                if hi < 0.0 {
                    return Err(Error::InvalidInput(format!("{name} must be nondecreasing")));
                }
            }
        }
        Ok(CdfPart {
            support,
            plus,
            minus,
            resolution: DEFAULT_CDF_RESOLUTION,
            label: label.to_string(),
            cells: Arc::new(OnceLock::new()),
        })
    }

    /// The Cantor function scaled into `F₊ = plus·C`, `F₋ = minus·C` on `[-1, 1]`.
    pub fn cantor(plus: f64, minus: f64) -> Result<Self> {
        if !(plus >= 0.0 && minus >= 0.0 && plus.is_finite() && minus.is_finite()) {
            return Err(Error::InvalidInput(
                "cantor CDF scales must be finite and nonnegative".into(),
            ));
        }
        let cdf = |scale: f64| -> Option<Cdf> {
            (scale != 0.0).then(|| Arc::new(move |x: f64| scale * cantor_function(x)) as Cdf)
        };
        Self::new(1, cdf(plus), cdf(minus), "cantor")
    }

    pub fn with_resolution(mut self, resolution: u32) -> Self {
        self.resolution = resolution.max(1);
        self.cells = Arc::new(OnceLock::new());
        self
    }

    pub fn support(&self) -> u32 {
        self.support
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn plus_total(&self) -> f64 {
        self.plus.as_ref().map_or(0.0, |f| f(self.support as f64))
    }

    pub fn minus_total(&self) -> f64 {
        self.minus.as_ref().map_or(0.0, |f| f(self.support as f64))
    }

    /// Signed mass `μ_c((x0, x1])`.
    pub fn cell_mass(&self, x0: f64, x1: f64) -> f64 {
        let diff = |f: &Option<Cdf>| f.as_ref().map_or(0.0, |f| f(x1) - f(x0));
        diff(&self.plus) - diff(&self.minus)
    }

    /// `F₋` lumped onto the right ends of the resolution cells.
    pub fn minus_cells(&self) -> PointMeasure {
        let Some(f) = &self.minus else {
            return PointMeasure::empty();
        };
        let k = self.support as f64;
        let n = self.resolution as f64;
        let cells = 2 * self.support as u64 * self.resolution as u64;
        let mut prev = f(-k);
        let mut atoms = Vec::new();
        for j in 1..=cells {
            let x = j as f64 / n - k;
            let cur = f(x);
            if cur > prev {
                atoms.push(Atom::new(x, cur - prev));
            }
            prev = cur;
        }
        PointMeasure::from_sorted_unchecked(atoms)
    }

    /// Total variation `|μ_c|((x0, x1])`.
    pub fn abs_mass(&self, x0: f64, x1: f64) -> f64 {
        let diff = |f: &Option<Cdf>| f.as_ref().map_or(0.0, |f| f(x1) - f(x0));
        diff(&self.plus) + diff(&self.minus)
    }

    /// Signed CDF `F₊(x) − F₋(x)`.
    pub fn signed_cdf(&self, x: f64) -> f64 {
        let at = |f: &Option<Cdf>| f.as_ref().map_or(0.0, |f| f(x));
        at(&self.plus) - at(&self.minus)
    }

    fn stieltjes_cells(&self) -> &PointMeasure {
        self.cells.get_or_init(|| {
            let k = self.support as f64;
            let n = self.resolution as f64;
            let cells = 2 * self.support as u64 * self.resolution as u64;
            let mut prev = self.signed_cdf(-k);
            let mut atoms = Vec::new();
            for j in 1..=cells {
                let x = j as f64 / n - k;
                let cur = self.signed_cdf(x);
                if cur != prev {
                    atoms.push(Atom::new(x, cur - prev));
                }
                prev = cur;
            }
            PointMeasure::from_sorted_unchecked(atoms)
        })
    }

    /// Riemann–Stieltjes approximation of `∫ e^{itx} dμ_c` on the resolution grid.
    pub fn fourier(&self, t: f64) -> Complex64 {
        self.stieltjes_cells().fourier(t)
    }
}

/// `weight · μ_C` where `μ_C` is the Cantor probability measure on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CantorPart {
    pub weight: f64,
}

impl CantorPart {
    pub fn fourier(&self, t: f64) -> Complex64 {
        cantor_fourier(t) * self.weight
    }
}

/// A finite signed Radon measure declared as a sum of mutually singular parts.
#[derive(Debug, Clone, Default)]
pub struct MeasureSpec {
    pub point: PointMeasure,
    pub density: PiecewiseDensity,
    pub cdf: Option<CdfPart>,
    pub cantor: Option<CantorPart>,
}

impl From<PointMeasure> for MeasureSpec {
    fn from(point: PointMeasure) -> Self {
        MeasureSpec {
            point,
            ..Default::default()
        }
    }
}

impl From<PiecewiseDensity> for MeasureSpec {
    fn from(density: PiecewiseDensity) -> Self {
        MeasureSpec {
            density,
            ..Default::default()
        }
    }
}

impl MeasureSpec {
    pub fn empty() -> Self {
        MeasureSpec::default()
    }

    /// The square well `-χ_{[-1,1]} dx`.
    pub fn square_well() -> Self {
        PiecewiseDensity::new([DensityPiece::new(-1.0, 1.0, -1.0)])
            .expect("valid piece")
            .into()
    }

    /// `weight · μ_C`.
    pub fn cantor(weight: f64) -> Self {
        MeasureSpec {
            cantor: (weight != 0.0).then_some(CantorPart { weight }),
            ..Default::default()
        }
    }

    pub fn has_continuous_part(&self) -> bool {
        !self.density.is_empty() || self.cdf.is_some() || self.cantor.is_some()
    }

    /// `|μ|(ℝ)`.
    pub fn total_variation(&self) -> f64 {
        self.point.total_variation()
            + self.density.total_variation()
            + self
                .cdf
                .as_ref()
                .map_or(0.0, |c| c.plus_total() + c.minus_total())
            + self.cantor.map_or(0.0, |c| c.weight.abs())
    }

    /// `μ(ℝ)`.
    pub fn mass(&self) -> f64 {
        self.point.mass()
            + self.density.mass()
            + self
                .cdf
                .as_ref()
                .map_or(0.0, |c| c.plus_total() - c.minus_total())
            + self.cantor.map_or(0.0, |c| c.weight)
    }

    /// `μ̂(t) = ∫ e^{itx} dμ(x)`.
    pub fn fourier(&self, t: f64) -> Complex64 {
        let mut acc = self.point.fourier(t) + self.density.fourier(t);
        if let Some(cdf) = &self.cdf {
            acc += cdf.fourier(t);
        }
        if let Some(cantor) = &self.cantor {
            acc += cantor.fourier(t);
        }
        acc
    }

    /// Smallest closed interval containing the support of the continuous parts.
    pub fn continuous_support(&self) -> Option<(f64, f64)> {
        let mut hull: Option<(f64, f64)> = self.density.support();
        let mut extend = |lo: f64, hi: f64| {
            hull = Some(match hull {
                Some((a, b)) => (a.min(lo), b.max(hi)),
                None => (lo, hi),
            });
        };
        if let Some(cdf) = &self.cdf {
            let k = cdf.support() as f64;
            extend(-k, k);
        }
        if self.cantor.is_some() {
            extend(0.0, 1.0);
        }
        hull
    }

    /// Restriction `χ_{[a,b]} μ` together with `|μ|(ℝ \ [a, b])`.
    ///
    /// CDF-defined parts (including the Cantor part) are kept whole when
    /// `[a, b]` contains their support and dropped when the two are disjoint;
    /// partial overlaps are rejected.
    pub fn truncate(&self, a: f64, b: f64) -> Result<(MeasureSpec, f64)> {
        if !(a < b) {
            return Err(Error::InvalidInput(format!(
                "truncation window [{a}, {b}] is empty"
            )));
        }
        let mut tail = self.point.mass_outside(a, b);
        let point = PointMeasure::from_sorted_unchecked(
            self.point
                .atoms()
                .iter()
                .copied()
                .filter(|at| at.position >= a && at.position <= b)
                .collect(),
        );
        let (density, density_tail) = self.density.restrict(a, b);
        tail += density_tail;

        let mut cdf = None;
        if let Some(part) = &self.cdf {
            let k = part.support() as f64;
            if a <= -k && k <= b {
                cdf = Some(part.clone());
            } else if k <= a || b <= -k {
                tail += part.plus_total() + part.minus_total();
            } else {
                return Err(Error::UnsupportedTruncation("CDF"));
            }
        }
        let mut cantor = None;
        if let Some(part) = self.cantor {
            if a <= 0.0 && 1.0 <= b {
                cantor = Some(part);
            } else if 1.0 <= a || b <= 0.0 {
                tail += part.weight.abs();
            } else {
                return Err(Error::UnsupportedTruncation("Cantor"));
            }
        }
        Ok((
            MeasureSpec {
                point,
                density,
                cdf,
                cantor,
            },
            tail,
        ))
    }
}

/// Sampled estimate of `sup_{|t| ≤ t_max} |m̂(t) − n̂(t)|` on `samples`
/// equispaced points. This is a diagnostic; [`grid_modulus`] is the
/// certified route.
pub fn fourier_sup_distance(
    m: &MeasureSpec,
    n: &MeasureSpec,
    t_max: f64,
    samples: usize,
) -> Result<f64> {
    if samples < 2 {
        return Err(Error::InvalidInput(
            "fourier_sup_distance needs at least 2 samples".into(),
        ));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "t_max = {t_max} must be positive"
        )));
    }
    let step = 2.0 * t_max / (samples - 1) as f64;
    let at = |i: usize| {
        let t = -t_max + step * i as f64;
        (m.fourier(t) - n.fourier(t)).norm()
    };
    Ok(crate::par::map_indices(samples, at)
        .into_iter()
        .fold(0.0, f64::max))
}
