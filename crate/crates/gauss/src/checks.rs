//! Identity checks for oscillatory Gauss-type measures: factorization under
//! decorrelation, delta-type reduction, and periodic averages.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{GaussError, Result};
use crate::measure::{
    improper_integral_numeric, moment_closed_form, pair, FnIntegrand, Integrand, OscGaussMeasure, QuadratureOptions,
};

pub const DEFAULT_POINTS_PER_DIM: usize = 64;

/// `(1/vol Q) int_Q f dx` over the cell spanned by the columns of `basis`,
/// by the rectangle rule in lattice coordinates (exact for trigonometric
/// polynomials of degree below `points_per_dim`).
pub fn periodic_average(f: &dyn Fn(&[f64]) -> Complex64, basis: &DMatrix<f64>, points_per_dim: usize) -> Complex64 {
    let d = basis.nrows();
    if d == 0 {
        return f(&[]);
    }
    let p = points_per_dim.max(1);
    let mut idx = vec![0usize; d];
    let mut x = vec![0.0; d];
    let mut acc = Complex64::new(0.0, 0.0);
    let mut count = 0u64;
    loop {
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = (0..d).map(|j| basis[(i, j)] * idx[j] as f64 / p as f64).sum();
        }
        acc += f(&x);
        count += 1;
        let mut j = 0;
        while j < d {
            idx[j] += 1;
            if idx[j] < p {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == d {
            break;
        }
    }
    acc / count as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Passed,
    Failed,
    PreconditionFailed,
}

/// `Y(x) = <a, x> + b`.
#[derive(Clone, Debug)]
pub struct AffineForm {
    pub a: DVector<f64>,
    pub b: f64,
}

impl AffineForm {
    pub fn new(a: Vec<f64>, b: f64) -> Self {
        AffineForm {
            a: DVector::from_vec(a),
            b,
        }
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        pair(&self.a, x) + self.b
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PexpReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    pub error_estimate: f64,
    /// `max_{i,j} |int Y_i Y_j - int Y_i int Y_j|` from the closed-form moments.
    pub hypothesis_residual: f64,
    pub tolerance: f64,
    pub status: CheckStatus,
}

/// Compares `int Phi(Y) dmu` (quadrature) with `Phi(int Y dmu)` (closed form).
pub fn pexp_factorization_check(
    mu: &OscGaussMeasure,
    ys: &[AffineForm],
    phi: &dyn Integrand,
    tolerance: f64,
    opts: &QuadratureOptions,
) -> Result<PexpReport> {
    let n = mu.space_dim;
    for y in ys {
        if y.a.len() != n {
            return Err(GaussError::DimensionMismatch {
                expected: n,
                got: y.a.len(),
            });
        }
    }
    let means: Vec<Complex64> = ys
        .iter()
        .map(|y| Ok(moment_closed_form(mu, &y.a, &y.a)?.first + y.b))
        .collect::<Result<_>>()?;
    let mut hypothesis_residual: f64 = 0.0;
    for (i, yi) in ys.iter().enumerate() {
        for (j, yj) in ys.iter().enumerate() {
            let m = moment_closed_form(mu, &yi.a, &yj.a)?;
            // int Y_i Y_j = second + b_j first_i + b_i first_j + b_i b_j
            let mi = moment_closed_form(mu, &yi.a, &yi.a)?.first;
            let mj = moment_closed_form(mu, &yj.a, &yj.a)?.first;
            let joint = m.second + mi * yj.b + mj * yi.b + yi.b * yj.b;
            hypothesis_residual = hypothesis_residual.max((joint - means[i] * means[j]).norm());
        }
    }
    let amax = ys.iter().map(|y| y.a.norm()).fold(0.0, f64::max);
    let composite = FnIntegrand::new(
        phi.bandwidth() * amax * (ys.len().max(1) as f64).sqrt(),
        |x: &[Complex64]| {
            let y: Vec<Complex64> = ys.iter().map(|y| y.eval(x)).collect();
            phi.eval(&y)
        },
    );
    let lhs = improper_integral_numeric(mu, &composite, opts)?;
    let rhs = phi.eval(&means);
    let residual = (lhs.value - rhs).norm();
    let status = if hypothesis_residual > 1e-9 {
        CheckStatus::PreconditionFailed
    } else if residual <= tolerance * (1.0 + rhs.norm()) {
        CheckStatus::Passed
    } else {
        CheckStatus::Failed
    };
    Ok(PexpReport {
        lhs: lhs.value,
        rhs,
        residual,
        error_estimate: lhs.error_estimate,
        hypothesis_residual,
        tolerance,
        status,
    })
}

/// `theta(exp(B + sum_k Y_k C_k))` with `theta(X) = tr(F X)`.
#[derive(Clone, Debug)]
pub struct MatrixExpTrace {
    pub base: DMatrix<Complex64>,
    pub coeffs: Vec<DMatrix<Complex64>>,
    pub functional: DMatrix<Complex64>,
}

impl Integrand for MatrixExpTrace {
    fn eval(&self, y: &[Complex64]) -> Complex64 {
        let mut m = self.base.clone();
        for (c, yk) in self.coeffs.iter().zip(y) {
            m += c * *yk;
        }
        (&self.functional * m.exp()).trace()
    }

    fn bandwidth(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// `Phi(Y) = prod_i Phi_i(Y)`.
pub struct Product<'a>(pub Vec<&'a dyn Integrand>);

impl Integrand for Product<'_> {
    fn eval(&self, y: &[Complex64]) -> Complex64 {
        self.0.iter().map(|f| f.eval(y)).product()
    }

    fn bandwidth(&self) -> f64 {
        self.0.iter().map(|f| f.bandwidth()).sum()
    }
}

/// One term `c exp(i (2 pi <l, L^{-1} x0> + <w, x1>))`.
#[derive(Clone, Debug, Serialize)]
pub struct FourierMode {
    pub coeff: Complex64,
    pub lattice_mode: Vec<i64>,
    pub x1_freq: Vec<f64>,
}

/// A function on `V0 + V1`, periodic in `V0` with respect to the lattice spanned
/// by the columns of `lattice`.
#[derive(Clone, Debug)]
pub struct PeriodicFunction {
    pub lattice: DMatrix<f64>,
    pub modes: Vec<FourierMode>,
    /// `2 pi L^{-T} l` for each mode.
    freqs0: Vec<DVector<f64>>,
}

impl PeriodicFunction {
    pub fn new(lattice: DMatrix<f64>, modes: Vec<FourierMode>) -> Result<Self> {
        let d0 = lattice.nrows();
        let inv_t = if d0 == 0 {
            DMatrix::zeros(0, 0)
        } else {
            lattice
                .clone()
                .try_inverse()
                .ok_or(GaussError::SingularMap)?
                .transpose()
        };
        let freqs0 = modes
            .iter()
            .map(|m| {
                if m.lattice_mode.len() != d0 {
                    return Err(GaussError::DimensionMismatch {
                        expected: d0,
                        got: m.lattice_mode.len(),
                    });
                }
                let l = DVector::from_iterator(d0, m.lattice_mode.iter().map(|&c| c as f64));
                Ok(&inv_t * l * (2.0 * std::f64::consts::PI))
            })
            .collect::<Result<_>>()?;
        Ok(PeriodicFunction { lattice, modes, freqs0 })
    }

    pub fn eval(&self, x0: &[Complex64], x1: &[Complex64]) -> Complex64 {
        self.modes
            .iter()
            .zip(&self.freqs0)
            .map(|(m, k0)| {
                let phase = pair(k0, x0) + x1.iter().zip(&m.x1_freq).map(|(x, w)| x * *w).sum::<Complex64>();
                m.coeff * (Complex64::i() * phase).exp()
            })
            .sum()
    }

    pub fn bandwidth(&self) -> f64 {
        self.modes
            .iter()
            .zip(&self.freqs0)
            .map(|(m, k0)| (k0.norm_squared() + m.x1_freq.iter().map(|w| w * w).sum::<f64>()).sqrt())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct DeltaConfig {
    pub d0: usize,
    pub d1: usize,
    /// `M: V1 -> V2`, invertible.
    pub m: DMatrix<f64>,
    pub v: DVector<f64>,
    pub f: PeriodicFunction,
}

impl DeltaConfig {
    /// `S = -[[0, M^T], [M, 0]]` on `V1 + V2`, zero on `V0`.
    pub fn quad(&self) -> DMatrix<f64> {
        let (d0, d1) = (self.d0, self.d1);
        let n = d0 + 2 * d1;
        let mut s = DMatrix::zeros(n, n);
        for i in 0..d1 {
            for j in 0..d1 {
                s[(d0 + d1 + i, d0 + j)] = -self.m[(i, j)];
                s[(d0 + j, d0 + d1 + i)] = -self.m[(i, j)];
            }
        }
        s
    }

    pub fn measure(&self) -> Result<OscGaussMeasure> {
        let n = self.d0 + 2 * self.d1;
        OscGaussMeasure::normalized(DVector::zeros(n), self.quad())
    }
}

/// `x -> F(x0, x1) e^{i <x2, v>}`.
struct DeltaIntegrand<'a> {
    cfg: &'a DeltaConfig,
}

impl Integrand for DeltaIntegrand<'_> {
    fn eval(&self, x: &[Complex64]) -> Complex64 {
        let (d0, d1) = (self.cfg.d0, self.cfg.d1);
        self.cfg.f.eval(&x[..d0], &x[d0..d0 + d1]) * (Complex64::i() * pair(&self.cfg.v, &x[d0 + d1..])).exp()
    }

    fn bandwidth(&self) -> f64 {
        self.cfg.f.bandwidth() + self.cfg.v.norm()
    }

    fn bandwidth_along(&self, dir: &[f64]) -> f64 {
        let (d0, d1) = (self.cfg.d0, self.cfg.d1);
        let along_v: f64 = self.cfg.v.iter().zip(&dir[d0 + d1..]).map(|(a, b)| a * b).sum();
        self.cfg
            .f
            .modes
            .iter()
            .zip(&self.cfg.f.freqs0)
            .map(|(m, k0)| {
                let a0: f64 = k0.iter().zip(&dir[..d0]).map(|(a, b)| a * b).sum();
                let a1: f64 = m.x1_freq.iter().zip(&dir[d0..d0 + d1]).map(|(a, b)| a * b).sum();
                (a0 + a1).abs() + along_v.abs()
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    pub d0: usize,
    pub d1: usize,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    pub error_estimate: f64,
    pub tolerance: f64,
    pub status: CheckStatus,
}

/// `int F(x0 + x1) e^{i <x2, v>} dmu` by quadrature against
/// `int~ F(x0 - M^{-1} v) dx0` by periodic averaging.
pub fn delta_reduction_check(cfg: &DeltaConfig, tolerance: f64, opts: &QuadratureOptions) -> Result<DeltaReport> {
    let (d0, d1) = (cfg.d0, cfg.d1);
    if cfg.m.nrows() != d1 || cfg.m.ncols() != d1 || cfg.v.len() != d1 || cfg.f.lattice.nrows() != d0 {
        return Err(GaussError::DimensionMismatch {
            expected: d1,
            got: cfg.m.nrows(),
        });
    }
    let m_inv = cfg.m.clone().try_inverse().ok_or(GaussError::SingularMap)?;
    let mu = cfg.measure()?;
    let integrand = DeltaIntegrand { cfg };
    let lhs = improper_integral_numeric(&mu, &integrand, opts)?;
    let shift: Vec<Complex64> = (-(&m_inv * &cfg.v)).iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let rhs = periodic_average(
        &|x0: &[f64]| {
            let z: Vec<Complex64> = x0.iter().map(|&c| Complex64::new(c, 0.0)).collect();
            cfg.f.eval(&z, &shift)
        },
        &cfg.f.lattice,
        DEFAULT_POINTS_PER_DIM,
    );
    let residual = (lhs.value - rhs).norm();
    let bound = tolerance * (1.0 + rhs.norm());
    let status = if residual <= bound && lhs.error_estimate <= bound {
        CheckStatus::Passed
    } else {
        CheckStatus::Failed
    };
    Ok(DeltaReport {
        d0,
        d1,
        lhs: lhs.value,
        rhs,
        residual,
        error_estimate: lhs.error_estimate,
        tolerance,
        status,
    })
}
