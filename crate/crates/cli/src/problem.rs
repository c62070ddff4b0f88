//! JSON problem files.

use std::path::Path;

use deltaspec::bounds::{CertifyOptions, QuadratureOptions};
use deltaspec::measures::{
    cantor_level, discretize_continuous, Atom, CantorPart, CdfPart, DensityPiece, MeasureSpec,
    PiecewiseDensity, PointMeasure,
};
use deltaspec::pointsolver::{SearchOptions, DEFAULT_GRID_POINTS, DEFAULT_TOL};
use deltaspec::{HalfLineOperator, LineOperator};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    #[default]
    Line,
    Halfline,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomEntry {
    pub x: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceEntry {
    pub start: f64,
    pub end: f64,
    pub value: f64,
}

/// Builtin CDF names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CdfBuiltin {
    Cantor,
}

/// `F₊ = plus·F`, `F₋ = minus·F` for the named builtin `F`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CdfEntry {
    pub builtin: CdfBuiltin,
    #[serde(default)]
    pub plus: f64,
    #[serde(default)]
    pub minus: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureEntry {
    #[serde(default)]
    pub atoms: Vec<AtomEntry>,
    #[serde(default)]
    pub density: Vec<PieceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cdf: Option<CdfEntry>,
    /// Weight of the Cantor measure `μ_C`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cantor: Option<f64>,
}

/// How continuous parts become atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// `cantor_level` for a Cantor part, the grid for everything else.
    #[default]
    Auto,
    /// Right-endpoint grid `x_j = −K + j/N` for every continuous part.
    Grid,
    /// As `auto`, but a Cantor part is required.
    CantorLevel,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Discretization {
    #[serde(rename = "K")]
    pub k: u32,
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(default)]
    pub scheme: Scheme,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverEntry {
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_grid")]
    pub grid_points: usize,
}

impl Default for SolverEntry {
    fn default() -> Self {
        SolverEntry {
            tol: DEFAULT_TOL,
            grid_points: DEFAULT_GRID_POINTS,
        }
    }
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn default_grid() -> usize {
    DEFAULT_GRID_POINTS
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifyEntry {
    pub quad_tmax: f64,
    pub quad_points: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub domain: Domain,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_alpha: Option<f64>,
    pub measure: MeasureEntry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discretization: Option<Discretization>,
    #[serde(default)]
    pub solver: SolverEntry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certify: Option<CertifyEntry>,
}

/// Operator built from a problem file.
#[derive(Debug, Clone)]
pub enum Operator {
    Line(LineOperator),
    HalfLine(HalfLineOperator),
}

fn finite(name: &str, x: f64) -> Result<(), CliError> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "{name} must be finite, got {x}"
        )))
    }
}

impl ProblemFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Validation(msg) => CliError::Validation(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let p: ProblemFile =
            serde_json::from_str(text).map_err(|e| CliError::Validation(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    /// Problem holding only the given atoms, as written by `discretize`.
    pub fn atoms_only(domain: Domain, boundary_alpha: Option<f64>, atoms: &PointMeasure) -> Self {
        ProblemFile {
            domain,
            boundary_alpha,
            measure: MeasureEntry {
                atoms: atoms
                    .atoms()
                    .iter()
                    .map(|a| AtomEntry {
                        x: a.position,
                        weight: a.weight,
                    })
                    .collect(),
                ..Default::default()
            },
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        match (self.domain, self.boundary_alpha) {
            (Domain::Line, Some(_)) => {
                return Err(CliError::Validation(
                    "boundary_alpha is only allowed on the half-line".into(),
                ))
            }
            (Domain::Halfline, None) => {
                return Err(CliError::Validation(
                    "the half-line needs boundary_alpha in [0, π)".into(),
                ))
            }
            (Domain::Halfline, Some(a)) => {
                finite("boundary_alpha", a)?;
                if !(0.0..std::f64::consts::PI).contains(&a) {
                    return Err(CliError::Validation(format!(
                        "boundary_alpha = {a} must lie in [0, π)"
                    )));
                }
            }
            (Domain::Line, None) => {}
        }
        for a in &self.measure.atoms {
            finite("atom position", a.x)?;
            finite("atom weight", a.weight)?;
        }
        for p in &self.measure.density {
            finite("density start", p.start)?;
            finite("density end", p.end)?;
            finite("density value", p.value)?;
        }
        if let Some(c) = &self.measure.cdf {
            finite("cdf plus", c.plus)?;
            finite("cdf minus", c.minus)?;
        }
        if let Some(w) = self.measure.cantor {
            finite("cantor weight", w)?;
        }
        finite("solver tol", self.solver.tol)?;
        SearchOptions::new(self.solver.grid_points, self.solver.tol)?;
        if let Some(c) = &self.certify {
            finite("quad_tmax", c.quad_tmax)?;
            QuadratureOptions::new(c.quad_tmax, c.quad_points)?;
        }
        let continuous = !self.measure.density.is_empty()
            || self.measure.cdf.is_some()
            || self.measure.cantor.is_some();
        match &self.discretization {
            None if continuous => Err(CliError::Validation(
                "a continuous part needs a discretization {K, N}".into(),
            )),
            Some(d) if d.k == 0 || d.n == 0 => Err(CliError::Validation(
                "discretization K and N must be positive".into(),
            )),
            Some(d) if d.scheme == Scheme::CantorLevel && self.measure.cantor.is_none() => Err(
                CliError::Validation("scheme cantor_level needs a cantor weight".into()),
            ),
            _ => Ok(()),
        }
    }

    pub fn measure(&self) -> Result<MeasureSpec, CliError> {
        let m = &self.measure;
        let point = PointMeasure::new(m.atoms.iter().map(|a| Atom::new(a.x, a.weight)))?;
        let density = PiecewiseDensity::new(
            m.density
                .iter()
                .map(|p| DensityPiece::new(p.start, p.end, p.value)),
        )?;
        let cdf = m
            .cdf
            .map(|c| match c.builtin {
                CdfBuiltin::Cantor => CdfPart::cantor(c.plus, c.minus),
            })
            .transpose()?;
        let cantor = m
            .cantor
            .filter(|&w| w != 0.0)
            .map(|weight| CantorPart { weight });
        Ok(MeasureSpec {
            point,
            density,
            cdf,
            cantor,
        })
    }

    /// The discretization `N`, or 0 without one.
    pub fn n(&self) -> u32 {
        self.discretization.map_or(0, |d| d.n)
    }

    /// Point measure the solver runs on.
    pub fn discretized(&self) -> Result<PointMeasure, CliError> {
        let mut m = self.measure()?;
        let Some(d) = self.discretization else {
            return Ok(m.point);
        };
        let level = match d.scheme {
            Scheme::Grid => None,
            Scheme::Auto | Scheme::CantorLevel => m.cantor.take(),
        };
        let grid = discretize_continuous(&m, d.k, d.n)?;
        match level {
            None => Ok(grid),
            Some(c) => {
                let atoms = cantor_level(d.n)?.transformed(1.0, 0.0, c.weight)?;
                Ok(PointMeasure::new(
                    grid.atoms().iter().chain(atoms.atoms()).copied(),
                )?)
            }
        }
    }

    pub fn operator(&self, atoms: PointMeasure) -> Result<Operator, CliError> {
        Ok(match (self.domain, self.boundary_alpha) {
            (Domain::Halfline, Some(alpha)) => {
                Operator::HalfLine(HalfLineOperator::new(alpha, atoms)?)
            }
            _ => Operator::Line(LineOperator::new(atoms)),
        })
    }

    pub fn search_options(
        &self,
        tol: Option<f64>,
        grid: Option<usize>,
    ) -> Result<SearchOptions, CliError> {
        Ok(SearchOptions::new(
            grid.unwrap_or(self.solver.grid_points),
            tol.unwrap_or(self.solver.tol),
        )?)
    }

    pub fn certify_options(&self) -> CertifyOptions {
        let mut opts = CertifyOptions::default();
        if let Some(c) = self.certify {
            opts.quadrature = QuadratureOptions {
                tmax: c.quad_tmax,
                points: c.quad_points,
            };
        }
        opts
    }
}
