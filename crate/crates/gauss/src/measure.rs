//! Oscillatory Gauss-type measures `dmu = (1/Z) exp(-(i/2) <x-m, S(x-m)>) dx`
//! and their epsilon-regularized improper integrals.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GaussError, Result};
use crate::hermite;

pub const MAX_DIM: usize = 4;
pub const DEFAULT_SCHEDULE: [f64; 4] = [0.04, 0.02, 0.01, 0.005];

/// Relative size below which an eigenvalue of `S` counts as zero.
const KERNEL_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct OscGaussMeasure {
    pub space_dim: usize,
    pub z: Complex64,
    pub mean: DVector<f64>,
    pub quad: DMatrix<f64>,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
    normalized: bool,
}

impl OscGaussMeasure {
    /// Measure with the given `Z`.
    pub fn new(mean: DVector<f64>, quad: DMatrix<f64>, z: Complex64) -> Result<Self> {
        let n = mean.len();
        if n > MAX_DIM {
            return Err(GaussError::DimensionTooLarge(n));
        }
        if quad.nrows() != n || quad.ncols() != n {
            return Err(GaussError::DimensionMismatch {
                expected: n,
                got: quad.nrows(),
            });
        }
        let scale = quad.amax().max(1.0);
        if (&quad - quad.transpose()).amax() > 1e-12 * scale {
            return Err(GaussError::NotSymmetric);
        }
        let eig = SymmetricEigen::new(quad.clone());
        let eigenvalues = eig
            .eigenvalues
            .iter()
            .map(|&d| if d.abs() <= KERNEL_TOL * scale { 0.0 } else { d })
            .collect();
        let mut m = OscGaussMeasure {
            space_dim: n,
            z,
            mean,
            quad,
            eigenvalues,
            eigenvectors: eig.eigenvectors,
            normalized: false,
        };
        m.normalized = (m.z - m.normalizing_constant()).norm() <= 1e-12 * m.z.norm();
        Ok(m)
    }

    /// Normalized measure: `Z = prod_{d != 0} sqrt(2 pi / (i d))` over the
    /// eigenvalues `d` of `S`.
    pub fn normalized(mean: DVector<f64>, quad: DMatrix<f64>) -> Result<Self> {
        let mut m = Self::new(mean, quad, Complex64::new(1.0, 0.0))?;
        m.z = m.normalizing_constant();
        m.normalized = true;
        Ok(m)
    }

    pub fn normalizing_constant(&self) -> Complex64 {
        self.eigenvalues
            .iter()
            .filter(|d| **d != 0.0)
            .map(|&d| (Complex64::new(2.0 * std::f64::consts::PI, 0.0) / Complex64::new(0.0, d)).sqrt())
            .product()
    }

    pub fn is_centered(&self) -> bool {
        self.mean.iter().all(|&x| x == 0.0)
    }

    pub fn is_degenerate(&self) -> bool {
        self.kernel_dim() > 0
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn kernel_dim(&self) -> usize {
        self.eigenvalues.iter().filter(|d| **d == 0.0).count()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `S^{-1}`, for non-degenerate measures.
    pub fn inverse_quad(&self) -> Result<DMatrix<f64>> {
        if self.is_degenerate() {
            return Err(GaussError::Degenerate);
        }
        let q = &self.eigenvectors;
        let inv = DMatrix::from_diagonal(&DVector::from_iterator(
            self.space_dim,
            self.eigenvalues.iter().map(|d| 1.0 / d),
        ));
        Ok(q * inv * q.transpose())
    }
}

/// A function on `V` that extends to an entire function on the
/// complexification; quadrature nodes are placed on a rotated contour.
pub trait Integrand: Sync {
    fn eval(&self, x: &[Complex64]) -> Complex64;

    /// Bound on the angular frequency of the integrand along unit directions,
    /// used to size the quadrature grid.
    fn bandwidth(&self) -> f64 {
        1.0
    }

    /// Frequency bound along the unit vector `dir`.
    fn bandwidth_along(&self, dir: &[f64]) -> f64 {
        let _ = dir;
        self.bandwidth()
    }
}

/// Closure integrand with an explicit bandwidth.
pub struct FnIntegrand<F> {
    pub f: F,
    pub bandwidth: f64,
}

impl<F: Fn(&[Complex64]) -> Complex64 + Sync> FnIntegrand<F> {
    pub fn new(bandwidth: f64, f: F) -> Self {
        FnIntegrand { f, bandwidth }
    }
}

impl<F: Fn(&[Complex64]) -> Complex64 + Sync> Integrand for FnIntegrand<F> {
    fn eval(&self, x: &[Complex64]) -> Complex64 {
        (self.f)(x)
    }

    fn bandwidth(&self) -> f64 {
        self.bandwidth
    }
}

#[derive(Clone, Debug)]
pub struct QuadratureOptions {
    pub schedule: Vec<f64>,
    /// Multiply the schedule by `min(1, min |d_j|)` over nonzero eigenvalues,
    /// keeping every `eps` well inside the radius `|d_j| / 2` of analyticity.
    pub spectral_scaling: bool,
    /// Extrapolation error above which the result is flagged.
    pub threshold: f64,
    pub base_nodes: usize,
    pub max_nodes_per_dim: usize,
    pub max_total_nodes: u64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            schedule: DEFAULT_SCHEDULE.to_vec(),
            spectral_scaling: true,
            threshold: 1e-4,
            base_nodes: 24,
            max_nodes_per_dim: 800,
            max_total_nodes: 200_000_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ImproperIntegral {
    pub value: Complex64,
    pub error_estimate: f64,
    /// `(epsilon, regularized integral)` for each point of the schedule.
    pub samples: Vec<(f64, Complex64)>,
    pub converged: bool,
}

/// `lim_{eps -> 0} (eps/pi)^{n/2} int f e^{-eps |x|^2} dmu`, `n = dim ker S`,
/// extrapolated from the schedule.
pub fn improper_integral_numeric(
    mu: &OscGaussMeasure,
    f: &dyn Integrand,
    opts: &QuadratureOptions,
) -> Result<ImproperIntegral> {
    let scale = if opts.spectral_scaling {
        mu.eigenvalues
            .iter()
            .filter(|d| **d != 0.0)
            .map(|d| d.abs())
            .fold(1.0, f64::min)
    } else {
        1.0
    };
    let mut eps: Vec<f64> = opts.schedule.iter().filter(|e| **e > 0.0).map(|e| e * scale).collect();
    eps.sort_by(|a, b| b.total_cmp(a));
    eps.dedup();
    if eps.len() < 2 {
        return Err(GaussError::BadSchedule);
    }
    let samples = eps
        .iter()
        .map(|&e| Ok((e, regularized_integral(mu, f, e, opts)?)))
        .collect::<Result<Vec<_>>>()?;
    let value = neville_at_zero(&samples);
    let coarse = neville_at_zero(&samples[..samples.len() - 1]);
    let error_estimate = (value - coarse).norm();
    Ok(ImproperIntegral {
        value,
        error_estimate,
        samples,
        converged: error_estimate <= opts.threshold * (1.0 + value.norm()),
    })
}

/// Polynomial interpolation of the samples, evaluated at `eps = 0`.
pub fn neville_at_zero(samples: &[(f64, Complex64)]) -> Complex64 {
    let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let mut p: Vec<Complex64> = samples.iter().map(|s| s.1).collect();
    let n = p.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            p[i] = (p[i + 1] * xi - p[i] * xj) / (xi - xj);
        }
    }
    p[0]
}

/// `(eps/pi)^{n/2} int f(x) e^{-eps |x|^2} dmu(x)` at fixed `eps`.
///
/// In eigen-coordinates `y = Q^T x` the weight factorizes into
/// `exp(-a_j (y_j - c_j)^2 + K_j)` with `a_j = eps + i d_j / 2`; the substitution
/// `y_j = c_j + a_j^{-1/2} u_j` turns each factor into `e^{-u_j^2}`.
pub fn regularized_integral(
    mu: &OscGaussMeasure,
    f: &dyn Integrand,
    eps: f64,
    opts: &QuadratureOptions,
) -> Result<Complex64> {
    let n = mu.space_dim;
    let q = &mu.eigenvectors;
    let mean_eig = q.transpose() * &mu.mean;
    let mut centre = Vec::with_capacity(n);
    let mut scale = Vec::with_capacity(n);
    let mut rules = Vec::with_capacity(n);
    let mut prefactor = Complex64::new(1.0, 0.0);
    let mut total: u64 = 1;
    for j in 0..n {
        let d = mu.eigenvalues[j];
        let a = Complex64::new(eps, d / 2.0);
        let id = Complex64::new(0.0, d);
        let c = id * mean_eig[j] / (a * 2.0);
        let k = a * c * c - id * 0.5 * mean_eig[j] * mean_eig[j];
        let s = a.sqrt().inv();
        prefactor *= s * k.exp();
        let dir: Vec<f64> = q.column(j).iter().copied().collect();
        let w = f.bandwidth_along(&dir) * s.norm();
        let nodes = (opts.base_nodes + (0.35 * w * w + 2.0 * w).ceil() as usize).min(opts.max_nodes_per_dim);
        total = total.saturating_mul(nodes as u64);
        centre.push(c);
        scale.push(s);
        rules.push(hermite::rule(nodes));
    }
    if total > opts.max_total_nodes {
        return Err(GaussError::TooManyNodes(total));
    }
    let kernel = mu.kernel_dim() as f64;
    prefactor *= (eps / std::f64::consts::PI).powf(kernel / 2.0) / mu.z;
    if n == 0 {
        return Ok(prefactor * f.eval(&[]));
    }

    // Partial sums over the last eigen-direction are computed in parallel and
    // combined in index order, so the result does not depend on scheduling.
    let outer = n - 1;
    let partials: Vec<Complex64> = (0..rules[outer].nodes.len())
        .into_par_iter()
        .map(|o| {
            let mut idx = vec![0usize; n];
            idx[outer] = o;
            let mut y = vec![Complex64::new(0.0, 0.0); n];
            let mut x = vec![Complex64::new(0.0, 0.0); n];
            let mut acc = Complex64::new(0.0, 0.0);
            loop {
                let mut weight = 1.0;
                for j in 0..n {
                    let r = &rules[j];
                    y[j] = centre[j] + scale[j] * r.nodes[idx[j]];
                    weight *= r.weights[idx[j]];
                }
                for (i, xi) in x.iter_mut().enumerate() {
                    *xi = (0..n).map(|j| y[j] * q[(i, j)]).sum();
                }
                acc += f.eval(&x) * weight;
                let mut j = 0;
                while j < outer {
                    idx[j] += 1;
                    if idx[j] < rules[j].nodes.len() {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
                if j == outer {
                    break;
                }
            }
            acc
        })
        .collect();
    let acc: Complex64 = partials.iter().sum();
    Ok(prefactor * acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Moments {
    pub first: Complex64,
    pub second: Complex64,
}

/// `int <v,x> dmu = <v,m>` and
/// `int <v,x><w,x> dmu = (1/i) <v, S^{-1} w> + <v,m><w,m>`.
pub fn moment_closed_form(mu: &OscGaussMeasure, v: &DVector<f64>, w: &DVector<f64>) -> Result<Moments> {
    if !mu.is_normalized() {
        return Err(GaussError::NotNormalized);
    }
    for u in [v, w] {
        if u.len() != mu.space_dim {
            return Err(GaussError::DimensionMismatch {
                expected: mu.space_dim,
                got: u.len(),
            });
        }
    }
    let inv = mu.inverse_quad()?;
    let vm = v.dot(&mu.mean);
    let wm = w.dot(&mu.mean);
    let cov = v.dot(&(&inv * w));
    Ok(Moments {
        first: Complex64::new(vm, 0.0),
        second: Complex64::new(vm * wm, -cov),
    })
}

/// `<v, x>` for complex `x`.
pub fn pair(v: &DVector<f64>, x: &[Complex64]) -> Complex64 {
    v.iter().zip(x).map(|(a, b)| b * *a).sum()
}
