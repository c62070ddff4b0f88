//! Closed-form double integrals `∬ k(x − y) dρ(x) dρ(y)` for measures made
//! of atoms and constant-density pieces, with `k(u) = e^{−|u|}` or `|u|`.

use crate::measures::{Atom, DensityPiece};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kernel {
    /// `e^{−|u|}`
    Laplace,
    /// `|u|`
    Distance,
}

impl Kernel {
    /// Second antiderivative `Φ` with `Φ'' = k` and `Φ(0) = Φ'(0) = 0`.
    fn phi(self, u: f64) -> f64 {
        let a = u.abs();
        match self {
            Kernel::Laplace => a + (-a).exp_m1(),
            Kernel::Distance => a * a * a / 6.0,
        }
    }

    /// `Φ'`.
    fn dphi(self, u: f64) -> f64 {
        match self {
            Kernel::Laplace => -u.signum() * (-u.abs()).exp_m1(),
            Kernel::Distance => 0.5 * u * u.abs(),
        }
    }

    /// `∫_a^b k(x − y) dy`.
    fn atom_piece(self, x: f64, p: &DensityPiece) -> f64 {
        self.dphi(x - p.start) - self.dphi(x - p.end)
    }

    /// `∫_a^b ∫_c^d k(x − y) dy dx`.
    fn piece_piece(self, p: &DensityPiece, q: &DensityPiece) -> f64 {
        let (a, b, c, d) = (p.start, p.end, q.start, q.end);
        self.phi(b - c) + self.phi(a - d) - self.phi(b - d) - self.phi(a - c)
    }
}

/// Signed measure `Σ wⱼ δ_{xⱼ} + Σ vₖ χ_{[aₖ,bₖ)}` with atoms sorted by position.
#[derive(Debug, Clone, Default)]
pub(crate) struct Primitives {
    pub atoms: Vec<Atom>,
    pub pieces: Vec<DensityPiece>,
}

/// Result of a double integral with a bound on its floating-point error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct KernelIntegral {
    pub value: f64,
    pub rounding: f64,
}

impl Primitives {
    fn total_variation(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight.abs()).sum::<f64>()
            + self
                .pieces
                .iter()
                .map(|p| (p.value * p.len()).abs())
                .sum::<f64>()
    }

    pub fn double_integral(&self, kernel: Kernel) -> KernelIntegral {
        let mut sum = Neumaier::default();
        match kernel {
            Kernel::Laplace => laplace_atoms(&self.atoms, &mut sum),
            Kernel::Distance => distance_atoms(&self.atoms, &mut sum),
        }
        for p in &self.pieces {
            let mut cross = Neumaier::default();
            for a in &self.atoms {
                cross.add(a.weight * kernel.atom_piece(a.position, p));
            }
            sum.add(2.0 * p.value * cross.value());
            for q in &self.pieces {
                sum.add(p.value * q.value * kernel.piece_piece(p, q));
            }
        }
        let tv = self.total_variation();
        let terms = (self.atoms.len() + self.pieces.len() + 4) as f64;
        let scale = match kernel {
            Kernel::Laplace => tv * tv,
            Kernel::Distance => tv * tv * self.diameter(),
        };
        KernelIntegral {
            value: sum.value(),
            rounding: 16.0 * terms * f64::EPSILON * scale,
        }
    }

    fn diameter(&self) -> f64 {
        let lo = self
            .atoms
            .iter()
            .map(|a| a.position)
            .chain(self.pieces.iter().map(|p| p.start))
            .fold(f64::INFINITY, f64::min);
        let hi = self
            .atoms
            .iter()
            .map(|a| a.position)
            .chain(self.pieces.iter().map(|p| p.end))
            .fold(f64::NEG_INFINITY, f64::max);
        if lo <= hi {
            hi - lo
        } else {
            0.0
        }
    }
}

/// `Σᵢⱼ wᵢ wⱼ e^{−|xᵢ − xⱼ|}` in one sweep.
fn laplace_atoms(atoms: &[Atom], out: &mut Neumaier) {
    // acc = Σ_{i<j} wᵢ e^{−(xⱼ − xᵢ)}
    let mut acc = 0.0;
    let mut prev: Option<f64> = None;
    for a in atoms {
        if let Some(p) = prev {
            acc *= (-(a.position - p)).exp();
        }
        out.add(a.weight * a.weight + 2.0 * a.weight * acc);
        acc += a.weight;
        prev = Some(a.position);
    }
}

/// `Σᵢⱼ wᵢ wⱼ |xᵢ − xⱼ|` via prefix sums.
fn distance_atoms(atoms: &[Atom], out: &mut Neumaier) {
    let (mut w, mut xw) = (Neumaier::default(), Neumaier::default());
    for a in atoms {
        out.add(2.0 * a.weight * (a.position * w.value() - xw.value()));
        w.add(a.weight);
        xw.add(a.weight * a.position);
    }
}

/// Compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
