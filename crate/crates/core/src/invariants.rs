//! Torus-knot invariants: Wilson loop observables in S^2 x S^1, the surgery
//! passage to S^3, and the Rosso-Jones formula (framed and unframed).
//!
//! All values are normalized so that the empty link evaluates to 1.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::affine::{orbit_ball, plethysm_support, scaled_lookup, star_action, support_radius, support_taus};
use crate::error::{Error, Result};
use crate::lie::{CartanLabel, Rational, Weight};
use crate::modular::LevelData;
use crate::reps::{weight_multiplicities, MultiplicityTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TorusKnotSpec {
    pub p: i64,
    pub q: i64,
}

impl TorusKnotSpec {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 {
            return Err(Error::ZeroWinding);
        }
        if p.gcd(&q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(TorusKnotSpec { p, q })
    }

    pub fn unknot() -> Self {
        TorusKnotSpec { p: 1, q: 0 }
    }

    /// `q / p`, the exponent of the twist factors.
    pub fn slope(&self) -> Rational {
        Rational::new(self.q, self.p)
    }

    /// `(-p, -q)`, the same knot with reversed orientation.
    pub fn reversed(&self) -> Self {
        TorusKnotSpec { p: -self.p, q: -self.q }
    }

    pub fn writhe(&self) -> i64 {
        self.p * self.q
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalPath {
    Theorem1,
    Theorem2,
    Surgery,
    RtDirect,
    RossoJones,
    Qi,
}

impl EvalPath {
    pub fn as_str(&self) -> &'static str {
        match self {
            EvalPath::Theorem1 => "theorem1",
            EvalPath::Theorem2 => "theorem2",
            EvalPath::Surgery => "surgery",
            EvalPath::RtDirect => "rt_direct",
            EvalPath::RossoJones => "rosso_jones",
            EvalPath::Qi => "qi",
        }
    }

    /// The formula evaluated along this path.
    pub fn formula(&self) -> &'static str {
        match self {
            EvalPath::Theorem1 => {
                "S00^2 sum_{eta1,eta2,tau} m(tau) d_eta1 d_eta2 theta_eta1^(q/p) theta_(tau*eta2)^(-q/p)"
            }
            EvalPath::Theorem2 => {
                "S00 sum_{eta1,eta2,tau} m(tau) d_eta1 S_(beta,eta2) theta_eta1^(q/p) theta_(tau*eta2)^(-q/p)"
            }
            EvalPath::Surgery => "sum_alpha S_(alpha,beta) WLO(S2xS1; lambda, alpha)",
            EvalPath::RtDirect => {
                "S00 sum_{mu,tau} m^(mu,bar beta)(tau) d_mu theta_mu^(q/p) theta_(tau*bar beta)^(-q/p)"
            }
            EvalPath::RossoJones => "S00 sum_mu c^mu_(lambda,p) d_mu theta_mu^(q/p)",
            EvalPath::Qi => "theta_lambda^(-pq) / S_(lambda,0) * S00 sum_mu c^mu_(lambda,p) d_mu theta_mu^(q/p)",
        }
    }
}

impl fmt::Display for EvalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantValue {
    pub value: Complex64,
    pub path: EvalPath,
    pub k: i64,
    pub label: CartanLabel,
    pub colors: Vec<Weight>,
    pub p: i64,
    pub q: i64,
}

impl InvariantValue {
    pub fn new(ld: &LevelData, value: Complex64, path: EvalPath, colors: Vec<Weight>, spec: TorusKnotSpec) -> Self {
        InvariantValue {
            value,
            path,
            k: ld.k,
            label: ld.rs.label,
            colors,
            p: spec.p,
            q: spec.q,
        }
    }
}

/// Reusable sums for one knot colour and one torus-knot type.
///
/// `kernel[eta1][eta2] = sum_tau m^{eta1 eta2}_{lambda,p}(tau) theta^{-q/p}_{tau * eta2}`
/// and `amplitude[eta2] = sum_eta1 d_eta1 theta^{q/p}_eta1 kernel[eta1][eta2]`.
#[derive(Clone, Debug)]
pub struct KnotSums<'a> {
    ld: &'a LevelData,
    pub lambda: Weight,
    pub spec: TorusKnotSpec,
    pub table: MultiplicityTable,
    pub kernel: Vec<Vec<Complex64>>,
    pub amplitude: Vec<Complex64>,
    qdims: Vec<f64>,
}

impl<'a> KnotSums<'a> {
    pub fn new(ld: &'a LevelData, lambda: &Weight, spec: TorusKnotSpec) -> Result<Self> {
        ld.require_alcove(lambda)?;
        let table = weight_multiplicities(&ld.rs, lambda)?;
        Self::with_table(ld, table, spec)
    }

    pub fn with_table(ld: &'a LevelData, table: MultiplicityTable, spec: TorusKnotSpec) -> Result<Self> {
        let lambda = table.lambda.clone();
        ld.require_alcove(&lambda)?;
        let n = ld.len();
        let slope = spec.slope();
        let qdims: Vec<f64> = ld.alcove_weights.iter().map(|w| ld.qdim(w)).collect();
        let radius = ld
            .alcove_weights
            .iter()
            .map(|mu| support_radius(&ld.rs, &table, spec.p, mu))
            .fold(0.0, f64::max);
        let mut kernel = vec![vec![Complex64::zero(); n]; n];
        for (j, eta2) in ld.alcove_weights.iter().enumerate() {
            for (tau, moved) in orbit_ball(ld, eta2, radius) {
                let twist = ld.theta_pow(&moved, -slope);
                let signed = twist * tau.sign as f64;
                for (beta, &m) in &table.entries {
                    let eta1 = &moved + &beta.scale(spec.p);
                    if let Some(i) = ld.index_of(&eta1) {
                        kernel[i][j] += signed * m as f64;
                    }
                }
            }
        }
        let weights: Vec<Complex64> = ld
            .alcove_weights
            .iter()
            .zip(&qdims)
            .map(|(eta1, d)| ld.theta_pow(eta1, slope) * *d)
            .collect();
        let amplitude = (0..n)
            .map(|j| (0..n).map(|i| weights[i] * kernel[i][j]).sum())
            .collect();
        Ok(KnotSums {
            ld,
            lambda,
            spec,
            table,
            kernel,
            amplitude,
            qdims,
        })
    }

    pub fn theorem1(&self) -> Complex64 {
        let s00 = self.ld.s00();
        let sum: Complex64 = self.amplitude.iter().zip(&self.qdims).map(|(a, d)| a * *d).sum();
        sum * s00 * s00
    }

    pub fn theorem2(&self, beta: &Weight) -> Result<Complex64> {
        let b = self.ld.require_alcove(beta)?;
        let sum: Complex64 = self
            .amplitude
            .iter()
            .enumerate()
            .map(|(j, a)| a * self.ld.s_at(b, j))
            .sum();
        Ok(sum * self.ld.s00())
    }

    /// `sum_alpha S_{alpha beta} theorem2(alpha)`.
    pub fn surgery(&self, beta: &Weight) -> Result<Complex64> {
        let b = self.ld.require_alcove(beta)?;
        let mut acc = Complex64::zero();
        for (a, alpha) in self.ld.alcove_weights.iter().enumerate() {
            acc += self.ld.s_at(a, b) * self.theorem2(alpha)?;
        }
        Ok(acc)
    }
}

/// Wilson loop observable of a colored torus knot in S^2 x S^1.
pub fn wlo_torus_knot(ld: &LevelData, lambda: &Weight, spec: TorusKnotSpec) -> Result<InvariantValue> {
    let sums = KnotSums::new(ld, lambda, spec)?;
    Ok(InvariantValue::new(
        ld,
        sums.theorem1(),
        EvalPath::Theorem1,
        vec![lambda.clone()],
        spec,
    ))
}

/// Torus knot together with a vertical loop colored `beta`, in S^2 x S^1.
pub fn wlo_torus_knot_vertical(
    ld: &LevelData,
    lambda: &Weight,
    beta: &Weight,
    spec: TorusKnotSpec,
) -> Result<InvariantValue> {
    ld.require_alcove(beta)?;
    let sums = KnotSums::new(ld, lambda, spec)?;
    let v = sums.theorem2(beta)?;
    Ok(InvariantValue::new(
        ld,
        v,
        EvalPath::Theorem2,
        vec![lambda.clone(), beta.clone()],
        spec,
    ))
}

/// RT invariant in S^3 through surgery on the vertical loop.
pub fn rt_s3_via_surgery(ld: &LevelData, lambda: &Weight, spec: TorusKnotSpec) -> Result<InvariantValue> {
    let sums = KnotSums::new(ld, lambda, spec)?;
    let zero = Weight::zero(ld.rs.rank);
    let v = sums.surgery(&zero)?;
    Ok(InvariantValue::new(
        ld,
        v,
        EvalPath::Surgery,
        vec![lambda.clone()],
        spec,
    ))
}

/// `S00 sum_{mu, tau} m^{mu nu}_{lambda,p}(tau) d_mu theta^{q/p}_mu theta^{-q/p}_{tau * nu}`.
pub fn direct_sum(ld: &LevelData, table: &MultiplicityTable, spec: TorusKnotSpec, nu: &Weight) -> Result<Complex64> {
    let slope = spec.slope();
    let mut acc = Complex64::zero();
    for mu in &ld.alcove_weights {
        let mut inner = Complex64::zero();
        for tau in support_taus(ld, table, spec.p, mu, nu)? {
            let moved = star_action(&ld.rs, ld.k, &tau, nu);
            let m = tau.sign * scaled_lookup(table, mu, &moved, spec.p);
            if m != 0 {
                inner += ld.theta_pow(&moved, -slope) * m as f64;
            }
        }
        acc += inner * ld.qdim(mu) * ld.theta_pow(mu, slope);
    }
    Ok(acc * ld.s00())
}

/// RT invariant of the colored torus knot in S^3, framed by the torus.
pub fn rt_s3_direct(ld: &LevelData, lambda: &Weight, spec: TorusKnotSpec) -> Result<InvariantValue> {
    ld.require_alcove(lambda)?;
    let table = weight_multiplicities(&ld.rs, lambda)?;
    let v = direct_sum(ld, &table, spec, &Weight::zero(ld.rs.rank))?;
    Ok(InvariantValue::new(
        ld,
        v,
        EvalPath::RtDirect,
        vec![lambda.clone()],
        spec,
    ))
}

/// RT invariant of the torus knot linked with an unknot colored `beta`.
pub fn rt_two_component(ld: &LevelData, lambda: &Weight, beta: &Weight, spec: TorusKnotSpec) -> Result<InvariantValue> {
    ld.require_alcove(lambda)?;
    ld.require_alcove(beta)?;
    let table = weight_multiplicities(&ld.rs, lambda)?;
    let v = direct_sum(ld, &table, spec, &ld.rs.bar(beta))?;
    Ok(InvariantValue::new(
        ld,
        v,
        EvalPath::RtDirect,
        vec![lambda.clone(), beta.clone()],
        spec,
    ))
}

/// Two-component invariant through surgery: `sum_alpha S_{alpha beta} theorem2(alpha)`.
pub fn rt_two_component_via_surgery(
    ld: &LevelData,
    lambda: &Weight,
    beta: &Weight,
    spec: TorusKnotSpec,
) -> Result<InvariantValue> {
    let sums = KnotSums::new(ld, lambda, spec)?;
    let v = sums.surgery(beta)?;
    Ok(InvariantValue::new(
        ld,
        v,
        EvalPath::Surgery,
        vec![lambda.clone(), beta.clone()],
        spec,
    ))
}

/// `S00 sum_mu c^mu_{lambda,p} d_mu theta^{q/p}_mu` over all dominant `mu`.
/// Negative `p` is evaluated as `(-p, -q)`.
pub fn rosso_jones_framed(ld: &LevelData, lambda: &Weight, spec: TorusKnotSpec) -> Result<InvariantValue> {
    ld.require_alcove(lambda)?;
    let table = weight_multiplicities(&ld.rs, lambda)?;
    let v = rosso_jones_sum(ld, &table, spec)?;
    Ok(InvariantValue::new(
        ld,
        v,
        EvalPath::RossoJones,
        vec![lambda.clone()],
        spec,
    ))
}

/// `S00 sum_mu c^mu_{lambda,p} d_mu theta^{q/p}_mu` from a multiplicity table.
pub fn rosso_jones_sum(ld: &LevelData, table: &MultiplicityTable, spec: TorusKnotSpec) -> Result<Complex64> {
    let spec = if spec.p < 0 { spec.reversed() } else { spec };
    let slope = spec.slope();
    let coeffs = plethysm_support(&ld.rs, &ld.weyl, table, spec.p)?;
    let sum: Complex64 = coeffs
        .iter()
        .map(|(mu, &c)| ld.theta_pow(mu, slope) * (ld.qdim(mu) * c as f64))
        .sum();
    Ok(sum * ld.s00())
}

/// Framing-independent invariant, normalized so the unknot evaluates to 1.
pub fn qi_unframed(ld: &LevelData, lambda: &Weight, spec: TorusKnotSpec) -> Result<InvariantValue> {
    let framed = rosso_jones_framed(ld, lambda, spec)?;
    let v = unframe(ld, lambda, spec, framed.value);
    Ok(InvariantValue::new(ld, v, EvalPath::Qi, vec![lambda.clone()], spec))
}

/// `value * theta_lambda^{-pq} / S_{lambda 0}`: removes the writhe `pq` framing
/// and the unknot normalization from a framed S^3 value.
pub fn unframe(ld: &LevelData, lambda: &Weight, spec: TorusKnotSpec, value: Complex64) -> Complex64 {
    let s_l0 = ld.s_entry(lambda, &Weight::zero(ld.rs.rank));
    assert!(s_l0.norm() > 0.0, "S_lambda0 vanishes inside the alcove");
    value * ld.theta_pow(lambda, Rational::from_integer(-spec.writhe())) / s_l0
}

/// Normalized invariant of the empty link.
pub fn wlo_empty(ld: &LevelData) -> InvariantValue {
    InvariantValue {
        value: Complex64::new(1.0, 0.0),
        path: EvalPath::Theorem1,
        k: ld.k,
        label: ld.rs.label,
        colors: Vec::new(),
        p: 1,
        q: 0,
    }
}
