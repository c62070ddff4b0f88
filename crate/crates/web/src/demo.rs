//! Plain Rust behind the wasm exports.

use deltaspec::bounds::{certify, CertifyOptions};
use deltaspec::measures::{
    cantor_fourier as cantor_transform, cantor_level, discretize_continuous,
};
use deltaspec::pointsolver::{eigenfunction, DEFAULT_ACCEPT_TOL, DEFAULT_GRID_POINTS, DEFAULT_TOL};
use deltaspec::{find_eigenvalues, Error, LineOperator, MeasureSpec, PointMeasure, Result};

/// Largest square-well `N` the page accepts.
pub const MAX_SQUARE_WELL_N: u32 = 2000;
/// Largest Cantor level the page accepts.
pub const MAX_CANTOR_LEVEL: u32 = 14;

fn chain(positions: &[f64], weights: &[f64]) -> Result<LineOperator> {
    if positions.len() != weights.len() {
        return Err(Error::InvalidInput(format!(
            "{} positions but {} weights",
            positions.len(),
            weights.len()
        )));
    }
    let pm = PointMeasure::from_pairs(positions.iter().copied().zip(weights.iter().copied()))?;
    Ok(LineOperator::new(pm))
}

pub fn chain_eigenvalues(positions: &[f64], weights: &[f64]) -> Result<Vec<f64>> {
    let op = chain(positions, weights)?;
    Ok(find_eigenvalues(&op, DEFAULT_GRID_POINTS, DEFAULT_TOL)
        .iter()
        .map(|e| e.lambda)
        .collect())
}

pub fn chain_eigenfunction(
    positions: &[f64],
    weights: &[f64],
    index: usize,
    xs: &[f64],
) -> Result<Vec<f64>> {
    let op = chain(positions, weights)?;
    let eigs = find_eigenvalues(&op, DEFAULT_GRID_POINTS, DEFAULT_TOL);
    let e = eigs.get(index).ok_or_else(|| {
        Error::InvalidInput(format!(
            "eigenvalue {index} requested, {} found",
            eigs.len()
        ))
    })?;
    Ok(eigenfunction(&op, e.lambda, DEFAULT_ACCEPT_TOL)?.normalized_values(xs))
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > MAX_SQUARE_WELL_N {
        return Err(Error::InvalidInput(format!(
            "N must lie in 1..={MAX_SQUARE_WELL_N}"
        )));
    }
    Ok(())
}

pub fn square_well_atoms(n: u32) -> Result<Vec<f64>> {
    check_n(n)?;
    let pm = discretize_continuous(&MeasureSpec::square_well(), 1, n)?;
    Ok(pm
        .atoms()
        .iter()
        .flat_map(|a| [a.position, a.weight])
        .collect())
}

pub fn cantor_fourier(level: u32, ts: &[f64]) -> Result<Vec<f64>> {
    if level > MAX_CANTOR_LEVEL {
        return Err(Error::InvalidInput(format!(
            "level must be at most {MAX_CANTOR_LEVEL}"
        )));
    }
    let atoms = cantor_level(level)?;
    Ok(ts
        .iter()
        .flat_map(|&t| {
            let exact = cantor_transform(t);
            [exact.norm(), (atoms.fourier(t) - exact).norm()]
        })
        .collect())
}

pub fn certify_square_well(n: u32) -> Result<[f64; 7]> {
    check_n(n)?;
    let target = MeasureSpec::square_well();
    let approx = discretize_continuous(&target, 1, n)?;
    let eigs = find_eigenvalues(
        &LineOperator::new(approx.clone()),
        DEFAULT_GRID_POINTS,
        DEFAULT_TOL,
    );
    let cert = certify(
        &target,
        &approx.into(),
        &eigs[..1.min(eigs.len())],
        &CertifyOptions::default(),
    )?;
    let w = cert
        .windows
        .first()
        .ok_or_else(|| Error::InvalidInput("no eigenvalue to certify".into()))?;
    Ok([
        w.center,
        w.lo,
        w.hi,
        w.isolation_lo,
        w.isolation_hi,
        cert.budget.s,
        cert.budget.delta,
    ])
}
