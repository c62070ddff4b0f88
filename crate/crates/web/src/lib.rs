//! Browser demo: δ-chain eigenfunctions, Cantor Fourier transforms and
//! certification windows, exported through wasm-bindgen.

pub mod demo;

use wasm_bindgen::prelude::*;

fn js(e: deltaspec::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Negative eigenvalues (ascending) of the chain with atoms `(positions[j], weights[j])`.
#[wasm_bindgen(js_name = chainEigenvalues)]
pub fn chain_eigenvalues(positions: &[f64], weights: &[f64]) -> Result<Vec<f64>, JsError> {
    demo::chain_eigenvalues(positions, weights).map_err(js)
}

/// Eigenfunction of the `index`-th eigenvalue sampled at `xs`, peak scaled to one.
#[wasm_bindgen(js_name = chainEigenfunction)]
pub fn chain_eigenfunction(
    positions: &[f64],
    weights: &[f64],
    index: usize,
    xs: &[f64],
) -> Result<Vec<f64>, JsError> {
    demo::chain_eigenfunction(positions, weights, index, xs).map_err(js)
}

/// Atoms of the square-well discretization at `n`, interleaved `x, weight`.
#[wasm_bindgen(js_name = squareWellAtoms)]
pub fn square_well_atoms(n: u32) -> Result<Vec<f64>, JsError> {
    demo::square_well_atoms(n).map_err(js)
}

/// `|μ̂_C(t)|` and `|μ̂_N(t) − μ̂_C(t)|` at each `t`, interleaved.
#[wasm_bindgen(js_name = cantorFourier)]
pub fn cantor_fourier(level: u32, ts: &[f64]) -> Result<Vec<f64>, JsError> {
    demo::cantor_fourier(level, ts).map_err(js)
}

/// Certified window for the square-well ground state from the discretization
/// at `n`: `[E, lo, hi, isolation_lo, isolation_hi, s, delta]`.
#[wasm_bindgen(js_name = certifySquareWell)]
pub fn certify_square_well(n: u32) -> Result<Vec<f64>, JsError> {
    demo::certify_square_well(n).map(|w| w.to_vec()).map_err(js)
}
