//! Negative eigenvalues of one-dimensional Schrödinger operators `−Δ + μ`
//! with a finite signed measure `μ`, computed through point-interaction
//! approximations, together with certified enclosures.
//!
//! * [`measures`]: measure specifications, Fourier transforms, grid and
//!   Cantor discretizations.
//! * [`pointsolver`]: shooting solver for `−Δ + Σ αⱼ δ_{xⱼ}` on the line and
//!   on the half-line with a Robin boundary condition.
//! * [`bounds`]: form distances, resolvent bounds, eigenvalue windows and
//!   counting and existence certificates.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod measures;
mod par;
pub mod pointsolver;

pub use error::{Error, Result};
pub use measures::{Atom, DensityPiece, MeasureSpec, PiecewiseDensity, PointMeasure};
pub use pointsolver::{
    find_eigenvalues, find_eigenvalues_halfline, EigenvalueRecord, HalfLineOperator, LineOperator,
    PointInteraction,
};
