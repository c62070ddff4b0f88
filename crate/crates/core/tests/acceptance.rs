//! Acceptance criteria 1 to 10. Each criterion prints one line
//! `criterion N: PASS|FAIL ...`; the test fails if any criterion outside
//! `KNOWN_RED` fails, or if a known-red criterion unexpectedly passes.
//! Reference values are either published reference eigenvalues or oracles
//! computed here independently of the library.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::time::Instant;

use deltaspec::bounds::{certify, n0_upper, CertifyOptions};
use deltaspec::measures::{
    cantor_fourier_level, cantor_level, discretize_continuous, MeasureSpec, PointMeasure,
};
use deltaspec::pointsolver::{
    find_eigenvalues, find_eigenvalues_halfline, residual, HalfLineOperator, LineOperator,
    DEFAULT_GRID_POINTS,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-12;
const LAMBDA_REF: f64 = -0.453753165860328;

const TABLE_1: [(u32, f64); 12] = [
    (1, -0.545877203227244),
    (2, -0.474617739449437),
    (3, -0.462861650386081),
    (4, -0.458844821756164),
    (5, -0.457002447176188),
    (10, -0.454562375073084),
    (25, -0.453882500447814),
    (50, -0.453785494551346),
    (75, -0.453767533759611),
    (100, -0.453761247723386),
    (1000, -0.453753246677936),
    (10000, -0.453753166668506),
];

/// Printed rows; row `N` is the level `N − 1` construction.
const TABLE_2: [(u32, f64); 8] = [
    (1, -0.25),
    (2, -0.190826516988754),
    (3, -0.182601523317952),
    (4, -0.181236785438422),
    (5, -0.181005430450725),
    (10, -0.180958390783868),
    (15, -0.180958384580303),
    (20, -0.180958384579497),
];

/// Criterion 7's "1 + 1/2 ± 0.01" for the Cantor measure contradicts the
/// bound's own value 1 + ½·E|X − Y| = 6/5; kept red on purpose.
const KNOWN_RED: &[u32] = &[7];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn square_well_eigs(n: u32) -> Vec<f64> {
    let approx = discretize_continuous(&MeasureSpec::square_well(), 1, n).unwrap();
    find_eigenvalues(&LineOperator::new(approx), DEFAULT_GRID_POINTS, TOL)
        .iter()
        .map(|r| r.lambda)
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for (n, want) in TABLE_1 {
        let eigs = square_well_eigs(n);
        if eigs.len() != 1 {
            return outcome(false, format!("N = {n}: found {} eigenvalues", eigs.len()));
        }
        let err = (eigs[0] - want).abs();
        worst = worst.max(err);
        ok &= err <= 1e-9;
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        ok && secs < 30.0,
        format!("max |λ_N − table| = {worst:.2e} over 12 rows, sweep {secs:.2} s"),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (row, want) in TABLE_2 {
        let op = LineOperator::new(
            cantor_level(row - 1)
                .unwrap()
                .transformed(1.0, 0.0, -1.0)
                .unwrap(),
        );
        let eigs = find_eigenvalues(&op, DEFAULT_GRID_POINTS, TOL);
        if eigs.len() != 1 {
            return outcome(
                false,
                format!("row {row}: found {} eigenvalues", eigs.len()),
            );
        }
        worst = worst.max((eigs[0].lambda - want).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-9 && secs < 300.0,
        format!("max |λ − table| = {worst:.2e} (row N = level N − 1), {secs:.2} s"),
    )
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let x = rng.gen_range(-10.0..10.0);
        let alpha = rng.gen_range(-5.0..-0.1);
        let op = LineOperator::new(PointMeasure::from_pairs([(x, alpha)]).unwrap());
        let eigs = find_eigenvalues(&op, DEFAULT_GRID_POINTS, 1e-17);
        if eigs.len() != 1 {
            return outcome(
                false,
                format!("(x, α) = ({x}, {alpha}): {} eigenvalues", eigs.len()),
            );
        }
        let want = -alpha * alpha / 4.0;
        worst = worst.max(((eigs[0].lambda - want) / want).abs());
    }
    outcome(
        worst <= 1e-12,
        format!("max relative error {worst:.2e} over 20 random atoms"),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let ts: Vec<f64> = (0..100).map(|_| rng.gen_range(-50.0..50.0)).collect();
    let mut worst: f64 = 0.0;
    for n in 0..=15u32 {
        let level = cantor_level(n).unwrap();
        for &t in &ts {
            // product formula evaluated independently of the library
            let mut prod = 1.0;
            let mut scale = 1.0;
            for _ in 0..n {
                scale /= 3.0;
                prod *= (t * scale).cos();
            }
            let oracle = Complex64::from_polar(prod, t / 2.0);
            let direct = level.fourier(t);
            worst = worst
                .max((direct - oracle).norm())
                .max((cantor_fourier_level(t, n) - oracle).norm());
        }
    }
    outcome(
        worst <= 1e-10,
        format!("max |μ̂_N − e^(it/2)∏cos(t/3^j)| = {worst:.2e}, N ≤ 15, 100 t"),
    )
}

fn criterion_5() -> Outcome {
    let e100 = (square_well_eigs(100)[0] - LAMBDA_REF).abs();
    let e1000 = (square_well_eigs(1000)[0] - LAMBDA_REF).abs();
    let ratio = e100 / e1000;
    outcome(
        (80.0..=120.0).contains(&ratio),
        format!("error(100)/error(1000) = {ratio:.3}"),
    )
}

fn criterion_6() -> Outcome {
    let well = MeasureSpec::square_well();
    let mut widths = Vec::new();
    for n in [100, 1000, 10000] {
        let approx = discretize_continuous(&well, 1, n).unwrap();
        let eigs = find_eigenvalues(&LineOperator::new(approx.clone()), DEFAULT_GRID_POINTS, TOL);
        let cert = match certify(&well, &approx.into(), &eigs, &CertifyOptions::default()) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("N = {n}: {e}")),
        };
        let w = cert.windows[0];
        if !w.contains(LAMBDA_REF) {
            return outcome(
                false,
                format!("N = {n}: [{}, {}] misses the reference", w.lo, w.hi),
            );
        }
        widths.push(w.width());
    }
    let shrinking = widths.windows(2).all(|p| p[1] < p[0]);
    outcome(
        shrinking,
        format!(
            "all windows contain {LAMBDA_REF}; widths {:.3e}, {:.3e}, {:.3e}",
            widths[0], widths[1], widths[2]
        ),
    )
}

fn criterion_7() -> Outcome {
    let well = MeasureSpec::square_well();
    let n0_well = n0_upper(&well).unwrap().value;
    let well_ok = (n0_well - 5.0 / 3.0).abs() <= 4.0 * f64::EPSILON;
    let n0_cantor = n0_upper(&MeasureSpec::cantor(-1.0)).unwrap().value;
    let cantor_ok = (n0_cantor - 1.5).abs() <= 0.01;
    let well_count = square_well_eigs(100).len();
    let cantor_op = LineOperator::new(
        cantor_level(12)
            .unwrap()
            .transformed(1.0, 0.0, -1.0)
            .unwrap(),
    );
    let cantor_count = find_eigenvalues(&cantor_op, DEFAULT_GRID_POINTS, TOL).len();
    let counts_ok = well_count == 1 && cantor_count == 1;
    outcome(
        well_ok && cantor_ok && counts_ok,
        format!(
            "n0(well) = {n0_well:.16} [{}], n0(cantor, level 20) = {n0_cantor:.10} vs 1.5 ± 0.01 [{}], counts {well_count}/{cantor_count} [{}]",
            if well_ok { "ok" } else { "bad" },
            if cantor_ok { "ok" } else { "bad: the formula gives 6/5" },
            if counts_ok { "ok" } else { "bad" },
        ),
    )
}

/// `κ(1 + tanh κ) − 2`: Neumann boundary plus the atom `(1, −2)`, from
/// `f = cosh(κx)` on `[0, 1]` and `f ∝ e^{−κx}` after the atom.
fn neumann_atom_oracle(lambda: f64) -> f64 {
    let kappa = (-lambda).sqrt();
    kappa * (1.0 + kappa.tanh()) - 2.0
}

fn criterion_8() -> Outcome {
    let robin = HalfLineOperator::new(FRAC_PI_4, PointMeasure::empty()).unwrap();
    let r = find_eigenvalues_halfline(&robin, DEFAULT_GRID_POINTS, TOL);
    let robin_ok = r.len() == 1 && (r[0].lambda + 1.0).abs() <= 1e-12;
    let none_ok = [0.0, FRAC_PI_2].iter().all(|&a| {
        let op = HalfLineOperator::new(a, PointMeasure::empty()).unwrap();
        find_eigenvalues_halfline(&op, DEFAULT_GRID_POINTS, TOL).is_empty()
    });

    let op =
        HalfLineOperator::new(FRAC_PI_2, PointMeasure::from_pairs([(1.0, -2.0)]).unwrap()).unwrap();
    let found = find_eigenvalues_halfline(&op, DEFAULT_GRID_POINTS, TOL);
    // 10⁶-point dense scan of the closed-form condition
    let (lo, hi) = (-4.0, -1e-9);
    let points = 1_000_000;
    let step = (hi - lo) / (points - 1) as f64;
    let mut brackets = Vec::new();
    let mut prev = neumann_atom_oracle(lo);
    for i in 1..points {
        let l = lo + step * i as f64;
        let cur = neumann_atom_oracle(l);
        if (prev < 0.0) != (cur < 0.0) {
            brackets.push((l - step, l));
        }
        prev = cur;
    }
    let in_bracket = found.len() == brackets.len()
        && found
            .iter()
            .zip(&brackets)
            .all(|(e, &(a, b))| a - 1e-10 <= e.lambda && e.lambda <= b + 1e-10);
    // refine the oracle bracket by bisection for a sharper comparison
    let refined = brackets.first().map(|&(mut a, mut b)| {
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if (neumann_atom_oracle(m) < 0.0) == (neumann_atom_oracle(a) < 0.0) {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    });
    let sharp = match (found.first(), refined) {
        (Some(e), Some(r)) => (e.lambda - r).abs(),
        _ => f64::INFINITY,
    };
    outcome(
        robin_ok && none_ok && in_bracket && sharp <= 1e-10,
        format!(
            "Robin π/4 → {:?}, Dirichlet/Neumann free → none [{}], Neumann + (1, −2): {} eigenvalue(s) in oracle brackets [{}], |λ − refined oracle| = {sharp:.1e}",
            r.first().map(|e| e.lambda),
            if none_ok { "ok" } else { "bad" },
            found.len(),
            if in_bracket { "ok" } else { "bad" },
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut worst_t, mut worst_d): (f64, f64) = (0.0, 0.0);
    for _ in 0..50 {
        let k = rng.gen_range(1..=20);
        let pm = PointMeasure::from_pairs(
            (0..k).map(|_| (rng.gen_range(-5.0..5.0), rng.gen_range(-2.0..-0.1))),
        )
        .unwrap();
        let base: Vec<f64> =
            find_eigenvalues(&LineOperator::new(pm.clone()), DEFAULT_GRID_POINTS, TOL)
                .iter()
                .map(|e| e.lambda)
                .collect();
        let tau = rng.gen_range(-50.0..50.0);
        let s = rng.gen_range(0.5..2.0);
        let shifted = find_eigenvalues(
            &LineOperator::new(pm.transformed(1.0, tau, 1.0).unwrap()),
            DEFAULT_GRID_POINTS,
            TOL,
        );
        let dilated = find_eigenvalues(
            &LineOperator::new(pm.transformed(s, 0.0, 1.0 / s).unwrap()),
            DEFAULT_GRID_POINTS,
            TOL,
        );
        if shifted.len() != base.len() || dilated.len() != base.len() {
            return outcome(
                false,
                format!("eigenvalue count changed for a {k}-atom configuration"),
            );
        }
        for ((b, t), d) in base.iter().zip(&shifted).zip(&dilated) {
            worst_t = worst_t.max((t.lambda - b).abs());
            worst_d = worst_d.max(((d.lambda * s * s - b) / b).abs());
        }
    }
    outcome(
        worst_t <= 1e-9 && worst_d <= 1e-9,
        format!("50 configurations: translation |Δλ| ≤ {worst_t:.1e}, dilation relative ≤ {worst_d:.1e}"),
    )
}

/// The unstabilized recursion on the global coefficients of
/// `a e^{κx} + b e^{−κx}`.
fn raw_coefficients(atoms: &[(f64, f64)], kappa: f64) -> (f64, f64) {
    let (mut a, mut b) = (1.0f64, 0.0f64);
    for &(x, alpha) in atoms {
        let f = a * (kappa * x).exp() + b * (-kappa * x).exp();
        let c = alpha * f / (2.0 * kappa);
        a += c * (-kappa * x).exp();
        b -= c * (kappa * x).exp();
    }
    (a, b)
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let pairs: Vec<(f64, f64)> = (-1000..=1000)
        .map(|j| (j as f64, rng.gen_range(-3.0..1.0)))
        .collect();
    let op = LineOperator::new(PointMeasure::from_pairs(pairs.iter().copied()).unwrap());
    let r = residual(&op, -1e4);
    let (a, b) = raw_coefficients(&pairs, 100.0);
    let raw_breaks = !(a.is_finite() && b.is_finite());
    match r {
        Ok(r) if r.is_finite() => outcome(
            true,
            format!(
                "r(−1e4) = {r:e} on 2001 atoms in [−1e3, 1e3]; raw recursion finite: {}",
                !raw_breaks
            ),
        ),
        other => outcome(false, format!("residual was {other:?}")),
    }
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (id, run) in criteria {
        let o = run();
        let known = KNOWN_RED.contains(&id);
        let tag = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known, see README)",
            (false, false) => "FAIL",
        };
        report(&format!("criterion {id}: {tag}: {}", o.detail));
        if o.pass == known {
            unexpected.push(id);
        }
    }
    assert!(
        unexpected.is_empty(),
        "unexpected outcome for criteria {unexpected:?}"
    );
}

/// Prints a line that stays visible without `--nocapture`.
fn report(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    writeln!(out, "{line}").expect("stdout");
}

/// Square well at N = 10⁶; opt in with `DELTASPEC_ALLOW_LONG=1`.
#[test]
fn criterion_1_long() {
    if std::env::var("DELTASPEC_ALLOW_LONG").as_deref() != Ok("1") {
        report("criterion 1 (N = 1e6): skipped, set DELTASPEC_ALLOW_LONG=1");
        return;
    }
    let start = Instant::now();
    let eigs = square_well_eigs(1_000_000);
    let err = (eigs[0] - -0.453753165860430).abs();
    let secs = start.elapsed().as_secs_f64();
    report(&format!(
        "criterion 1 (N = 1e6): λ = {}, error {err:.2e}, {secs:.1} s",
        eigs[0]
    ));
    assert!(eigs.len() == 1 && err <= 1e-10 && secs < 600.0);
}
