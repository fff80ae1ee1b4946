//! Level-k modular data: the alcove of integrable weights, the S and C
//! matrices, twists and quantum dimensions.
//!
//! All phases are computed from exact rational exponents reduced modulo their
//! period before the complex exponential is taken. The level is unshifted:
//! `q = exp(2 pi i / k)` and `k` must exceed the dual Coxeter number.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{Rational, RootSystem, Weight, WeylElement};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// All dominant integral weights with `<lambda + rho, theta> < k`, sorted lexicographically.
pub fn level_weights(rs: &RootSystem, k: i64) -> Result<Vec<Weight>> {
    if k <= rs.dual_coxeter {
        return Err(Error::LevelTooSmall {
            level: k,
            dual_coxeter: rs.dual_coxeter,
        });
    }
    let budget = k - rs.dual_coxeter;
    let mut out = Vec::new();
    let mut cur = vec![0i64; rs.rank];
    fill_alcove(&rs.comarks, 0, budget, &mut cur, &mut out);
    out.sort();
    Ok(out)
}

fn fill_alcove(marks: &[i64], i: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
    if i == marks.len() {
        out.push(Weight(cur.clone()));
        return;
    }
    let mut c = 0;
    while c * marks[i] <= budget {
        cur[i] = c;
        fill_alcove(marks, i + 1, budget - c * marks[i], cur, out);
        c += 1;
    }
    cur[i] = 0;
}

#[derive(Clone, Debug)]
pub struct LevelData {
    pub rs: RootSystem,
    pub k: i64,
    pub alcove_weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
    pub weyl: Vec<WeylElement>,
    /// Row-major S matrix over `alcove_weights`.
    pub s: Vec<Complex64>,
    /// Row-major charge-conjugation matrix.
    pub c: Vec<u8>,
    pub tolerance: f64,
    /// Real normalization `k^{-rank/2} |Lambda/Gamma|^{-1/2}`.
    norm: f64,
    /// Phases `exp(-2 pi i j / (k * gram_den))`.
    phases: Vec<Complex64>,
}

impl LevelData {
    pub fn new(rs: RootSystem, k: i64) -> Result<Self> {
        Self::with_tolerance(rs, k, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(rs: RootSystem, k: i64, tolerance: f64) -> Result<Self> {
        let alcove_weights = level_weights(&rs, k)?;
        let weyl = rs.weyl_group()?;
        let index = alcove_weights.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let period = k * rs.gram_denominator();
        let phases = (0..period)
            .map(|j| Complex64::from_polar(1.0, -2.0 * PI * j as f64 / period as f64))
            .collect();
        let norm = (k as f64).powf(-(rs.rank as f64) / 2.0) / (rs.det_index as f64).sqrt();
        let mut ld = LevelData {
            rs,
            k,
            alcove_weights,
            index,
            weyl,
            s: Vec::new(),
            c: Vec::new(),
            tolerance,
            norm,
            phases,
        };
        ld.build_matrices();
        Ok(ld)
    }

    fn build_matrices(&mut self) {
        let n = self.alcove_weights.len();
        let orbits: Vec<Vec<(Vec<i64>, i64)>> = self.alcove_weights.iter().map(|mu| self.shifted_orbit(mu)).collect();
        let mut s = vec![Complex64::zero(); n * n];
        for i in 0..n {
            let dual = self.rs.scaled_dual(&(&self.alcove_weights[i] + &self.rs.rho).0);
            for j in i..n {
                let v = self.orbit_sum(&dual, &orbits[j]);
                s[i * n + j] = v;
                s[j * n + i] = v;
            }
        }
        self.s = s;
        let mut c = vec![0u8; n * n];
        for (i, lam) in self.alcove_weights.iter().enumerate() {
            let j = self.index[&self.rs.bar(lam)];
            c[i * n + j] = 1;
        }
        self.c = c;
    }

    /// `[(w (mu + rho), sign w)]` over the Weyl group.
    fn shifted_orbit(&self, mu: &Weight) -> Vec<(Vec<i64>, i64)> {
        let v = mu + &self.rs.rho;
        self.weyl.iter().map(|w| (w.apply(&v.0), w.sign)).collect()
    }

    fn orbit_sum(&self, dual: &[i64], orbit: &[(Vec<i64>, i64)]) -> Complex64 {
        let period = self.phases.len() as i64;
        let mut acc = Complex64::zero();
        for (y, sign) in orbit {
            let n: i64 = dual.iter().zip(y).map(|(a, b)| a * b).sum();
            let ph = self.phases[n.rem_euclid(period) as usize];
            if *sign > 0 {
                acc += ph;
            } else {
                acc -= ph;
            }
        }
        self.prefactor() * acc
    }

    /// `i^{#R+} k^{-rank/2} |Lambda/Gamma|^{-1/2}`.
    pub fn prefactor(&self) -> Complex64 {
        let quarter = match self.rs.positive_roots.len() % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        quarter * self.norm
    }

    pub fn len(&self) -> usize {
        self.alcove_weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alcove_weights.is_empty()
    }

    pub fn index_of(&self, lambda: &Weight) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    pub fn in_alcove(&self, lambda: &Weight) -> bool {
        self.index.contains_key(lambda)
    }

    pub fn require_alcove(&self, lambda: &Weight) -> Result<usize> {
        self.rs.check_rank(&lambda.0)?;
        self.index_of(lambda).ok_or_else(|| Error::OutsideAlcove {
            weight: lambda.0.clone(),
            level: self.k,
        })
    }

    pub fn s_at(&self, i: usize, j: usize) -> Complex64 {
        self.s[i * self.len() + j]
    }

    pub fn s00(&self) -> f64 {
        let i = self.index[&Weight::zero(self.rs.rank)];
        self.s_at(i, i).re
    }

    /// S entry for arbitrary integral weights, from the Weyl-group sum.
    pub fn s_entry(&self, lambda: &Weight, mu: &Weight) -> Complex64 {
        if let (Some(i), Some(j)) = (self.index_of(lambda), self.index_of(mu)) {
            return self.s_at(i, j);
        }
        let dual = self.rs.scaled_dual(&(lambda + &self.rs.rho).0);
        self.orbit_sum(&dual, &self.shifted_orbit(mu))
    }

    pub fn c_entry(&self, lambda: &Weight, mu: &Weight) -> Result<u8> {
        let i = self.require_alcove(lambda)?;
        let j = self.require_alcove(mu)?;
        Ok(self.c[i * self.len() + j])
    }

    /// `theta_lambda^r = exp(r pi i <lambda, lambda + 2 rho> / k)`, taken from the
    /// representative `lambda` itself.
    pub fn theta_pow(&self, lambda: &Weight, r: Rational) -> Complex64 {
        let two_rho = self.rs.rho.scale(2);
        let n = self.rs.ip_scaled(&lambda.0, &(lambda + &two_rho).0) as i128;
        let num = *r.numer() as i128 * n;
        let den = *r.denom() as i128 * self.rs.gram_denominator() as i128 * self.k as i128;
        phase_pi(Ratio::new(num, den))
    }

    /// Quantum dimension from the product of sine ratios.
    pub fn qdim(&self, lambda: &Weight) -> f64 {
        let shifted = lambda + &self.rs.rho;
        let period = 2 * self.k * self.rs.gram_denominator();
        let scale = (self.k * self.rs.gram_denominator()) as f64;
        let mut d = 1.0;
        for alpha in &self.rs.positive_roots {
            let a = self.rs.ip_scaled(&shifted.0, &alpha.0).rem_euclid(period);
            let b = self.rs.ip_scaled(&self.rs.rho.0, &alpha.0).rem_euclid(period);
            d *= (PI * a as f64 / scale).sin() / (PI * b as f64 / scale).sin();
        }
        d
    }

    /// Quantum dimension as `S_{lambda 0} / S_{00}`.
    pub fn qdim_ratio(&self, lambda: &Weight) -> Complex64 {
        let zero = Weight::zero(self.rs.rank);
        self.s_entry(lambda, &zero) / self.s_entry(&zero, &zero)
    }

    pub fn verify(&self) -> ModularReport {
        let n = self.len();
        let mut max_s2 = 0.0f64;
        let mut max_asym = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::zero();
                for l in 0..n {
                    acc += self.s_at(i, l) * self.s_at(l, j);
                }
                let c = self.c[i * n + j] as f64;
                max_s2 = max_s2.max((acc - c).norm());
                max_asym = max_asym.max((self.s_at(i, j) - self.s_at(j, i)).norm());
            }
        }
        ModularReport {
            algebra: self.rs.label.to_string(),
            level: self.k,
            size: n,
            max_s2_minus_c: max_s2,
            max_asymmetry: max_asym,
            tolerance: self.tolerance,
            passed: max_s2 <= self.tolerance && max_asym <= self.tolerance,
        }
    }
}

/// `exp(pi i x)` for exact rational `x`, reduced modulo 2 first.
pub fn phase_pi(x: Ratio<i128>) -> Complex64 {
    let den = *x.denom();
    let num = x.numer().rem_euclid(2 * den);
    Complex64::from_polar(1.0, PI * num as f64 / den as f64)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ModularReport {
    pub algebra: String,
    pub level: i64,
    pub size: usize,
    pub max_s2_minus_c: f64,
    pub max_asymmetry: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn verify_modular(ld: &LevelData) -> ModularReport {
    ld.verify()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ld(s: &str, k: i64) -> LevelData {
        LevelData::new(RootSystem::new(s.parse().unwrap()).unwrap(), k).unwrap()
    }

    #[test]
    fn a1_level_three_alcove() {
        let l = ld("A1", 3);
        assert_eq!(l.alcove_weights, vec![Weight(vec![0]), Weight(vec![1])]);
    }

    #[test]
    fn level_gate() {
        let rs = RootSystem::new("A1".parse().unwrap()).unwrap();
        let err = level_weights(&rs, 2).unwrap_err();
        assert_eq!(err.to_string(), "level must exceed dual Coxeter number 2 (got 2)");
    }

    #[test]
    fn a2_level_four_alcove() {
        // <lambda + rho, theta> < 4 leaves a + b <= 1.
        let l = ld("A2", 4);
        assert_eq!(
            l.alcove_weights,
            vec![Weight(vec![0, 0]), Weight(vec![0, 1]), Weight(vec![1, 0])]
        );
    }

    #[test]
    fn a1_s_matrix_closed_form() {
        for k in 3..9 {
            let l = ld("A1", k);
            for m in 0..k + 2 {
                for n in 0..k + 2 {
                    let got = l.s_entry(&Weight(vec![m]), &Weight(vec![n]));
                    let want = (2.0 / k as f64).sqrt() * (PI * ((m + 1) * (n + 1)) as f64 / k as f64).sin();
                    assert!((got - Complex64::new(want, 0.0)).norm() < 1e-12, "k={k} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn s_vanishes_on_the_affine_wall() {
        let l = ld("A2", 5);
        // <lambda + rho, theta> = k
        let wall = Weight(vec![2, 1]);
        assert_eq!(l.rs.theta_pairing(&(&wall + &l.rs.rho).0), 5);
        for mu in &l.alcove_weights {
            assert!(l.s_entry(&wall, mu).norm() < 1e-12);
        }
    }

    #[test]
    fn charge_conjugation() {
        let l = ld("A1", 6);
        for (i, a) in l.alcove_weights.iter().enumerate() {
            for (j, b) in l.alcove_weights.iter().enumerate() {
                assert_eq!(l.c_entry(a, b).unwrap(), (i == j) as u8);
            }
        }
        let l = ld("A2", 4);
        for a in &l.alcove_weights {
            for b in &l.alcove_weights {
                let swapped = Weight(vec![a.0[1], a.0[0]]);
                assert_eq!(l.c_entry(a, b).unwrap(), (*b == swapped) as u8);
            }
        }
        assert!(l.c_entry(&Weight(vec![5, 0]), &Weight(vec![0, 0])).is_err());
    }

    #[test]
    fn theta_values() {
        let l = ld("A1", 7);
        assert!((l.theta_pow(&Weight(vec![0]), Rational::new(3, 5)) - 1.0).norm() < 1e-15);
        for n in 0..9i64 {
            let want = Complex64::from_polar(1.0, PI * (n * (n + 2)) as f64 / 14.0);
            let got = l.theta_pow(&Weight(vec![n]), Rational::from_integer(1));
            assert!((got - want).norm() < 1e-12);
            let inv = l.theta_pow(&Weight(vec![n]), Rational::from_integer(-1));
            assert!((got * inv - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn qdim_forms_agree() {
        for (s, k) in [("A1", 5), ("A2", 6), ("B2", 6), ("G2", 7)] {
            let l = ld(s, k);
            let zero = Weight::zero(l.rs.rank);
            assert!((l.qdim(&zero) - 1.0).abs() < 1e-15);
            let mut sum = 0.0;
            for lam in &l.alcove_weights {
                let d = l.qdim(lam);
                assert!((l.qdim_ratio(lam) - d).norm() < 1e-10, "{s} {lam}");
                sum += d * d;
            }
            assert!((sum - 1.0 / (l.s00() * l.s00())).abs() < 1e-9 * sum);
        }
    }

    #[test]
    fn small_modular_reports() {
        let r = ld("A1", 5).verify();
        assert!(r.max_s2_minus_c <= 1e-10 && r.max_asymmetry <= 1e-10, "{r:?}");
        let r = ld("G2", 6).verify();
        assert!(r.passed, "{r:?}");
    }
}
