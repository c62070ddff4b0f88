use std::collections::BTreeMap;

use super::kernel::{Kernel, Primitives};
use crate::error::{Error, Result};
use crate::measures::{cantor_level, Atom, MeasureSpec, PiecewiseDensity, PointMeasure};
use crate::pointsolver::{LineOperator, PointInteraction};

/// Cantor level used to evaluate the double integral against `μ_C`.
pub const N0_CANTOR_LEVEL: u32 = 20;

/// Upper bound on the number of negative eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct N0Bound {
    pub value: f64,
    /// Level of the Cantor approximation used, if a Cantor part contributed.
    pub cantor_level: Option<u32>,
    /// Resolution of the CDF lumping used, if a CDF part contributed.
    pub cdf_resolution: Option<u32>,
}

impl N0Bound {
    /// `⌊value⌋`: the certified maximal count.
    pub fn count(&self) -> usize {
        self.value.floor() as usize
    }
}

fn n0_from(prim: &Primitives) -> Result<f64> {
    let mass: f64 = prim.atoms.iter().map(|a| a.weight).sum::<f64>()
        + prim.pieces.iter().map(|p| p.value * p.len()).sum::<f64>();
    if !(mass > 0.0) {
        return Err(Error::Hypothesis(
            "the negative part vanishes; there are no negative eigenvalues to count".into(),
        ));
    }
    let d = prim.double_integral(Kernel::Distance).value;
    Ok((2.0 * mass + d) / (2.0 * mass))
}

fn check_nonnegative(weights: impl Iterator<Item = f64>) -> Result<()> {
    if weights.into_iter().any(|w| w < 0.0) {
        return Err(Error::InvalidInput(
            "n0_upper expects the (nonnegative) negative part μ₋".into(),
        ));
    }
    Ok(())
}

/// `1 + ½ Σᵢⱼ wᵢwⱼ|xᵢ − xⱼ| / Σ wᵢ` for `μ₋ = Σ wᵢ δ_{xᵢ}`.
pub fn n0_upper_point(mu_minus: &PointMeasure) -> Result<f64> {
    check_nonnegative(mu_minus.atoms().iter().map(|a| a.weight))?;
    n0_from(&Primitives {
        atoms: mu_minus.atoms().to_vec(),
        pieces: Vec::new(),
    })
}

/// The same bound for a piecewise constant `μ₋`, integrated exactly.
pub fn n0_upper_density(mu_minus: &PiecewiseDensity) -> Result<f64> {
    check_nonnegative(mu_minus.pieces().iter().map(|p| p.value))?;
    n0_from(&Primitives {
        atoms: Vec::new(),
        pieces: mu_minus.pieces().to_vec(),
    })
}

/// `1 + ½ ∬|x − y| dμ₋ dμ₋ / μ₋(ℝ)` for the negative Jordan part of `m`.
/// A Cantor part enters through `cantor_level(20)`, a CDF part through its
/// resolution cells.
pub fn n0_upper(m: &MeasureSpec) -> Result<N0Bound> {
    let mut atoms: Vec<Atom> = m.point.negative_part().atoms().to_vec();
    let mut bound = N0Bound {
        value: 0.0,
        cantor_level: None,
        cdf_resolution: None,
    };
    if let Some(c) = m.cantor.filter(|c| c.weight < 0.0) {
        let level = cantor_level(N0_CANTOR_LEVEL)?;
        atoms.extend(
            level
                .atoms()
                .iter()
                .map(|a| Atom::new(a.position, -c.weight * a.weight)),
        );
        bound.cantor_level = Some(N0_CANTOR_LEVEL);
    }
    if let Some(cdf) = m.cdf.as_ref().filter(|c| c.minus_total() > 0.0) {
        atoms.extend_from_slice(cdf.minus_cells().atoms());
        bound.cdf_resolution = Some(cdf.resolution());
    }
    let atoms = PointMeasure::new(atoms)?;
    bound.value = n0_from(&Primitives {
        atoms: atoms.atoms().to_vec(),
        pieces: m.density.negative_part().pieces().to_vec(),
    })?;
    Ok(bound)
}

/// `μ(ℝ) < 0` certifies at least one negative eigenvalue.
pub fn exists_mass(m: &MeasureSpec) -> bool {
    m.mass() < 0.0
}

fn atom_at(op: &LineOperator, k: usize) -> Result<Atom> {
    op.atoms().get(k).copied().ok_or_else(|| {
        Error::InvalidInput(format!(
            "atom index {k} out of range (operator has {} atoms)",
            op.atoms().len()
        ))
    })
}

/// `αₖ < 0` and `1/dₖ⁻ + 1/dₖ⁺ < −αₖ` with the neighbour gaps `dₖ^±`
/// (infinite at the ends).
pub fn exists_gap(op: &LineOperator, k: usize) -> Result<bool> {
    let atom = atom_at(op, k)?;
    let atoms = op.atoms();
    let inv_left = k
        .checked_sub(1)
        .map_or(0.0, |j| 1.0 / (atom.position - atoms[j].position));
    let inv_right = atoms
        .get(k + 1)
        .map_or(0.0, |a| 1.0 / (a.position - atom.position));
    Ok(atom.weight < 0.0 && inv_left + inv_right < -atom.weight)
}

/// Energy of the single-δ ground state `e^{αₖ|x − xₖ|/2}` is negative.
/// Evaluated after multiplying through by `e^{αₖxₖ}`, so every exponential
/// is at most one.
pub fn exists_exp(op: &LineOperator, k: usize) -> Result<bool> {
    let atom = atom_at(op, k)?;
    let ak = atom.weight;
    if ak >= 0.0 {
        return Err(Error::Hypothesis(format!(
            "exponential criterion needs an attractive atom, α_{k} = {ak}"
        )));
    }
    let mut sum = ak / 2.0;
    for (j, a) in op.atoms().iter().enumerate() {
        if j != k {
            sum += a.weight * (ak * (a.position - atom.position).abs()).exp();
        }
    }
    Ok(sum < 0.0)
}

/// Results of all existence criteria for one operator.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExistenceReport {
    pub mass_negative: bool,
    pub gap_criterion: BTreeMap<usize, bool>,
    /// Only attractive atoms are eligible.
    pub exp_criterion: BTreeMap<usize, bool>,
}

impl ExistenceReport {
    /// True when some criterion certifies a negative eigenvalue.
    pub fn any(&self) -> bool {
        self.mass_negative
            || self.gap_criterion.values().any(|&b| b)
            || self.exp_criterion.values().any(|&b| b)
    }
}

pub fn existence_report(op: &LineOperator) -> ExistenceReport {
    let mut report = ExistenceReport {
        mass_negative: op.potential().mass() < 0.0,
        ..Default::default()
    };
    for (k, a) in op.atoms().iter().enumerate() {
        report
            .gap_criterion
            .insert(k, exists_gap(op, k).unwrap_or(false));
        if a.weight < 0.0 {
            report
                .exp_criterion
                .insert(k, exists_exp(op, k).unwrap_or(false));
        }
    }
    report
}
