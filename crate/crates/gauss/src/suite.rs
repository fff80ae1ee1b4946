//! Seeded randomized verification suite with a serializable report.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::checks::{
    delta_reduction_check, periodic_average, pexp_factorization_check, AffineForm, CheckStatus, DeltaConfig,
    FourierMode, MatrixExpTrace, PeriodicFunction, Product, DEFAULT_POINTS_PER_DIM,
};
use crate::error::Result;
use crate::measure::{
    improper_integral_numeric, moment_closed_form, pair, FnIntegrand, OscGaussMeasure, QuadratureOptions,
};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub status: CheckStatus,
}

impl CheckResult {
    fn new(name: String, residual: f64, tolerance: f64) -> Self {
        let status = if residual <= tolerance {
            CheckStatus::Passed
        } else {
            CheckStatus::Failed
        };
        CheckResult {
            name,
            residual,
            tolerance,
            status,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub total: usize,
    pub all_passed: bool,
}

pub const MOMENT_TOLERANCE: f64 = 1e-3;
pub const SHIFT_TOLERANCE: f64 = 1e-9;

/// Symmetric matrix with eigenvalue magnitudes in `[lo, hi]` and random signs.
pub fn random_quad(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> DMatrix<f64> {
    let q = random_orthogonal(rng, n);
    let d = DVector::from_iterator(
        n,
        (0..n).map(|_| {
            let s = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            s * rng.gen_range(lo..hi)
        }),
    );
    let s = &q * DMatrix::from_diagonal(&d) * q.transpose();
    (&s + s.transpose()) * 0.5
}

fn random_orthogonal(rng: &mut impl Rng, n: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    a.qr().q()
}

fn random_vec(rng: &mut impl Rng, n: usize, r: f64) -> DVector<f64> {
    DVector::from_iterator(n, (0..n).map(|_| rng.gen_range(-r..r)))
}

/// Quadrature moments against closed forms for a random normalized,
/// non-degenerate measure of dimension `n`. Returns the worst relative error.
pub fn moment_trial(rng: &mut impl Rng, n: usize, opts: &QuadratureOptions) -> Result<f64> {
    let mu = OscGaussMeasure::normalized(random_vec(rng, n, 0.5), random_quad(rng, n, 1.5, 4.0))?;
    let v = random_vec(rng, n, 1.0);
    let w = random_vec(rng, n, 1.0);
    let exact = moment_closed_form(&mu, &v, &w)?;
    let first = FnIntegrand::new(0.0, |x: &[Complex64]| pair(&v, x));
    let second = FnIntegrand::new(0.0, |x: &[Complex64]| pair(&v, x) * pair(&w, x));
    let a = improper_integral_numeric(&mu, &first, opts)?.value;
    let b = improper_integral_numeric(&mu, &second, opts)?.value;
    Ok(((a - exact.first).norm() / (1.0 + exact.first.norm()))
        .max((b - exact.second).norm() / (1.0 + exact.second.norm())))
}

/// For `f = 1` on a random degenerate measure: the distance of the limit from 1,
/// and when `S = 0` also the spread of the regularized values across the
/// schedule (directions outside the kernel depend on `eps` on their own).
pub fn degenerate_trial(rng: &mut impl Rng, n: usize, kernel: usize, opts: &QuadratureOptions) -> Result<f64> {
    let q = random_orthogonal(rng, n);
    let d = DVector::from_iterator(
        n,
        (0..n).map(|i| {
            if i < kernel {
                0.0
            } else {
                rng.gen_range(1.0..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 }
            }
        }),
    );
    let s = &q * DMatrix::from_diagonal(&d) * q.transpose();
    let s = (&s + s.transpose()) * 0.5;
    let mu = OscGaussMeasure::normalized(random_vec(rng, n, 0.5), s)?;
    let one = FnIntegrand::new(0.0, |_: &[Complex64]| Complex64::new(1.0, 0.0));
    let r = improper_integral_numeric(&mu, &one, opts)?;
    let limit = (r.value - 1.0).norm();
    if kernel < n {
        return Ok(limit);
    }
    Ok(r.samples.iter().map(|(_, v)| (v - 1.0).norm()).fold(limit, f64::max))
}

/// Random delta-reduction configuration with total dimension `d0 + 2 d1 <= 4`.
pub fn random_delta_config(rng: &mut impl Rng, d0: usize, d1: usize) -> Result<DeltaConfig> {
    // Lattice vectors of length 3 to 5 keep the V0 frequencies moderate.
    let lattice = if d0 == 0 {
        DMatrix::zeros(0, 0)
    } else {
        let q = random_orthogonal(rng, d0);
        let lens = DVector::from_iterator(d0, (0..d0).map(|_| rng.gen_range(3.0..5.0)));
        let shear = DMatrix::from_fn(d0, d0, |i, j| {
            if i < j {
                rng.gen_range(-0.3..0.3)
            } else if i == j {
                1.0
            } else {
                0.0
            }
        });
        q * shear * DMatrix::from_diagonal(&lens)
    };
    let m = loop {
        let m = DMatrix::<f64>::from_fn(d1, d1, |_, _| rng.gen_range(-1.5..1.5));
        if m.determinant().abs() > 0.5 {
            break m;
        }
    };
    let mut modes = vec![FourierMode {
        coeff: Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        lattice_mode: vec![0; d0],
        x1_freq: vec![0.0; d1],
    }];
    for _ in 0..2 {
        modes.push(FourierMode {
            coeff: Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            lattice_mode: (0..d0).map(|_| rng.gen_range(-1..=1)).collect(),
            x1_freq: (0..d1).map(|_| rng.gen_range(-1.5..1.5)).collect(),
        });
    }
    let f = PeriodicFunction::new(lattice, modes)?;
    Ok(DeltaConfig {
        d0,
        d1,
        m,
        v: random_vec(rng, d1, 1.0),
        f,
    })
}

/// Shape of the `i`-th delta-reduction configuration.
pub fn delta_shape(i: usize) -> (usize, usize) {
    [(0, 1), (1, 1), (0, 2), (2, 1), (1, 1)][i % 5]
}

/// `|avg f(. + y) - avg f|` for a random trigonometric polynomial on a random
/// lattice of dimension `d`.
pub fn shift_trial(rng: &mut impl Rng, d: usize) -> Result<f64> {
    let cfg = random_delta_config(rng, d, 0)?;
    let y: Vec<f64> = (0..d).map(|_| rng.gen_range(-10.0..10.0)).collect();
    let f = |x: &[f64]| {
        let z: Vec<Complex64> = x.iter().map(|&c| Complex64::new(c, 0.0)).collect();
        cfg.f.eval(&z, &[])
    };
    let shifted = |x: &[f64]| {
        let z: Vec<Complex64> = x.iter().zip(&y).map(|(&c, s)| Complex64::new(c + s, 0.0)).collect();
        cfg.f.eval(&z, &[])
    };
    let a = periodic_average(&f, &cfg.f.lattice, DEFAULT_POINTS_PER_DIM);
    let b = periodic_average(&shifted, &cfg.f.lattice, DEFAULT_POINTS_PER_DIM);
    Ok((a - b).norm())
}

pub fn run_suite(seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = QuadratureOptions::default();
    let mut checks = Vec::new();

    for i in 0..20 {
        let n = 1 + i % 3;
        let r = moment_trial(&mut rng, n, &opts)?;
        checks.push(CheckResult::new(format!("moments/{i}/dim{n}"), r, MOMENT_TOLERANCE));
    }
    for (i, (n, kernel)) in [(1, 1), (2, 1), (3, 1), (2, 2), (3, 2), (3, 3)].into_iter().enumerate() {
        let r = degenerate_trial(&mut rng, n, kernel, &opts)?;
        checks.push(CheckResult::new(
            format!("degenerate/{i}/dim{n}/ker{kernel}"),
            r,
            MOMENT_TOLERANCE,
        ));
    }
    for (i, r) in pexp_trials(&mut rng, &opts)?.into_iter().enumerate() {
        checks.push(CheckResult {
            name: format!("pexp/{i}"),
            residual: r.0,
            tolerance: r.1,
            status: r.2,
        });
    }
    for i in 0..10 {
        let (d0, d1) = delta_shape(i);
        let cfg = random_delta_config(&mut rng, d0, d1)?;
        let r = delta_reduction_check(&cfg, MOMENT_TOLERANCE, &opts)?;
        checks.push(CheckResult {
            name: format!("delta/{i}/d0={d0}/d1={d1}"),
            residual: r.residual,
            tolerance: r.tolerance * (1.0 + r.rhs.norm()),
            status: r.status,
        });
    }
    for i in 0..10 {
        let d = 1 + i % 3;
        let r = shift_trial(&mut rng, d)?;
        checks.push(CheckResult::new(format!("shift/{i}/dim{d}"), r, SHIFT_TOLERANCE));
    }
    let passed = checks.iter().filter(|c| c.status == CheckStatus::Passed).count();
    let total = checks.len();
    Ok(SuiteReport {
        seed,
        checks,
        passed,
        total,
        all_passed: passed == total,
    })
}

/// Factorization checks under decorrelation: `exp(Y1 + Y2)` and a product of
/// two matrix-exponential traces, both on isotropic families.
fn pexp_trials(rng: &mut impl Rng, opts: &QuadratureOptions) -> Result<Vec<(f64, f64, CheckStatus)>> {
    let mut out = Vec::new();
    // Indefinite S on R^2 with isotropic direction u: S^{-1} = R diag(s, -s) R^T,
    // u = R (1, 1) / sqrt 2.
    for _ in 0..2 {
        let r = random_orthogonal(rng, 2);
        let s = rng.gen_range(0.7..2.0);
        let inv = &r * DMatrix::from_diagonal(&DVector::from_vec(vec![s, -s])) * r.transpose();
        let quad = inv.clone().try_inverse().unwrap();
        let quad = (&quad + quad.transpose()) * 0.5;
        let mu = OscGaussMeasure::normalized(random_vec(rng, 2, 0.5), quad)?;
        let u = &r * DVector::from_vec(vec![1.0, 1.0]) / 2f64.sqrt();
        let ys = [
            AffineForm {
                a: &u * rng.gen_range(0.5..1.0),
                b: rng.gen_range(-0.5..0.5),
            },
            AffineForm {
                a: &u * rng.gen_range(-1.0..-0.5),
                b: rng.gen_range(-0.5..0.5),
            },
        ];
        let phi = FnIntegrand::new(1.5, |y: &[Complex64]| (y[0] + y[1]).exp());
        let rep = pexp_factorization_check(&mu, &ys, &phi, MOMENT_TOLERANCE, opts)?;
        out.push((rep.residual, rep.tolerance * (1.0 + rep.rhs.norm()), rep.status));

        let rand_c = |rng: &mut dyn rand::RngCore, scale: f64| {
            DMatrix::from_fn(2, 2, |_, _| {
                Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
            })
        };
        let t1 = MatrixExpTrace {
            base: rand_c(rng, 0.5),
            coeffs: vec![rand_c(rng, 0.5), DMatrix::zeros(2, 2)],
            functional: rand_c(rng, 1.0),
        };
        let t2 = MatrixExpTrace {
            base: rand_c(rng, 0.5),
            coeffs: vec![DMatrix::zeros(2, 2), rand_c(rng, 0.5)],
            functional: rand_c(rng, 1.0),
        };
        let prod = Product(vec![&t1, &t2]);
        let rep = pexp_factorization_check(&mu, &ys, &prod, MOMENT_TOLERANCE, opts)?;
        out.push((rep.residual, rep.tolerance * (1.0 + rep.rhs.norm()), rep.status));
    }
    Ok(out)
}
