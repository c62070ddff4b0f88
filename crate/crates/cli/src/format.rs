//! Byte-stable number and CSV formatting.

use deltaspec::PointMeasure;

/// Significant digits written for every number.
pub const SIGNIFICANT_DIGITS: usize = 15;

/// Magnitudes below this (and nonzero) are written in scientific notation.
pub const SCIENTIFIC_BELOW: f64 = 1e-4;

/// `x` with 15 significant digits: fixed notation, or scientific for
/// `0 < |x| < 1e−4`. Negative zero prints as `0`.
pub fn number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    if x.abs() < SCIENTIFIC_BELOW {
        return sci;
    }
    // the exponent after rounding to 15 digits decides the decimal count
    let exponent: i64 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    let decimals = (SIGNIFICANT_DIGITS as i64 - 1 - exponent).max(0) as usize;
    format!("{:.*}", decimals, x)
}

pub const SOLVE_HEADER: &str = "n,lambda,bracket_lo,bracket_hi,residual,runtime_ms";

pub const ATOMS_HEADER: &str = "x,weight";

/// One row of a solve or reproduce table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResultRow {
    pub n: u32,
    pub lambda: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub residual: f64,
    pub runtime_ms: f64,
}

pub fn result_table(rows: &[ResultRow]) -> String {
    let mut out = String::from(SOLVE_HEADER);
    out.push('\n');
    for r in rows {
        let cells = [
            r.lambda,
            r.bracket_lo,
            r.bracket_hi,
            r.residual,
            r.runtime_ms,
        ]
        .map(number);
        out.push_str(&format!("{},{}\n", r.n, cells.join(",")));
    }
    out
}

pub fn atoms_table(atoms: &PointMeasure) -> String {
    let mut out = String::from(ATOMS_HEADER);
    out.push('\n');
    for a in atoms.atoms() {
        out.push_str(&format!("{},{}\n", number(a.position), number(a.weight)));
    }
    out
}
