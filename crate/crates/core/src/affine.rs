//! The affine Weyl group at level k and the alternating sums built from it:
//! quantum Racah fusion coefficients and plethysm-type coefficients.
//!
//! An affine element `tau = (w, gamma)` acts on the torus Lie algebra by
//! `x -> w x + gamma`; its rho-shifted level-k action is
//! `tau * b = w (b + rho) + k gamma - rho`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::lie::{mat_mul, Rational, RootSystem, Weight, WeylElement};
use crate::modular::LevelData;
use crate::reps::MultiplicityTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineWeylElement {
    pub w: WeylElement,
    /// Coroot-lattice translation in fundamental-weight coordinates.
    pub gamma: Weight,
    pub sign: i64,
}

impl AffineWeylElement {
    pub fn identity(rank: usize) -> Self {
        AffineWeylElement {
            w: WeylElement::identity(rank),
            gamma: Weight::zero(rank),
            sign: 1,
        }
    }

    pub fn finite(w: WeylElement) -> Self {
        let rank = w.rank();
        let sign = w.sign;
        AffineWeylElement {
            w,
            gamma: Weight::zero(rank),
            sign,
        }
    }

    pub fn translation(gamma: Weight) -> Self {
        AffineWeylElement {
            w: WeylElement::identity(gamma.rank()),
            gamma,
            sign: 1,
        }
    }

    /// Sort key used to fix summation order.
    fn key(&self) -> (Vec<i64>, Vec<i64>) {
        (self.gamma.0.clone(), self.w.matrix.clone())
    }
}

/// `tau * b` for integral `b`.
pub fn star_action(rs: &RootSystem, k: i64, tau: &AffineWeylElement, b: &Weight) -> Weight {
    let shifted = b + &rs.rho;
    let moved = tau.w.apply(&shifted.0);
    Weight(
        moved
            .iter()
            .zip(&tau.gamma.0)
            .zip(&rs.rho.0)
            .map(|((m, g), r)| m + k * g - r)
            .collect(),
    )
}

/// `tau * b = k (tau . (b + rho) / k) - rho` for a rational point `b`.
pub fn star_action_rational(rs: &RootSystem, k: i64, tau: &AffineWeylElement, b: &[Rational]) -> Vec<Rational> {
    let kq = Rational::from_integer(k);
    let scaled: Vec<Rational> = b
        .iter()
        .zip(&rs.rho.0)
        .map(|(x, &r)| (*x + Rational::from_integer(r)) / kq)
        .collect();
    let moved = tau.w.apply_rational(&scaled);
    moved
        .iter()
        .zip(&tau.gamma.0)
        .zip(&rs.rho.0)
        .map(|((m, &g), &r)| kq * (*m + Rational::from_integer(g)) - Rational::from_integer(r))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldResult {
    pub on_wall: bool,
    /// Meaningless when `on_wall`.
    pub sign: i64,
    /// Meaningless when `on_wall`.
    pub representative: Weight,
    pub tau: AffineWeylElement,
}

/// Reflects `x + rho` into the open scaled alcove `k A`, recording the sign and
/// the affine element with `tau * representative = x`.
pub fn fold_to_alcove(rs: &RootSystem, k: i64, x: &Weight) -> FoldResult {
    let r = rs.rank;
    let theta = &rs.highest_root.0;
    let mut v = (x + &rs.rho).0;
    // Accumulated affine map T(y) = M y + t with v = T(x + rho).
    let mut m_inv = WeylElement::identity(r).matrix;
    let mut t = vec![0i64; r];
    let mut sign = 1;
    let wall = |v: Vec<i64>, m_inv: Vec<i64>, t: Vec<i64>| FoldResult {
        on_wall: true,
        sign: 0,
        representative: &Weight(v) - &rs.rho,
        tau: affine_from_accumulated(rs, k, m_inv, &t),
    };
    loop {
        if let Some(i) = (0..r).find(|&i| v[i] <= 0) {
            if v[i] == 0 {
                return wall(v, m_inv, t);
            }
            rs.reflect_in_place(i, &mut v);
            rs.reflect_in_place(i, &mut t);
            m_inv = mat_mul(&m_inv, &rs.reflection_matrix(i), r);
            sign = -sign;
            continue;
        }
        let level = rs.theta_pairing(&v);
        if level == k {
            return wall(v, m_inv, t);
        }
        if level < k {
            break;
        }
        // Affine reflection in the wall <y, theta> = k.
        let c = level - k;
        for (vi, th) in v.iter_mut().zip(theta) {
            *vi -= c * th;
        }
        // s_0 (M y + t) = s_theta(M y) + s_theta(t) + k theta.
        let tc = rs.theta_pairing(&t);
        for (ti, th) in t.iter_mut().zip(theta) {
            *ti += (k - tc) * th;
        }
        m_inv = mat_mul(&m_inv, &theta_reflection_matrix(rs), r);
        sign = -sign;
    }
    FoldResult {
        on_wall: false,
        sign,
        representative: &Weight(v) - &rs.rho,
        tau: affine_from_accumulated(rs, k, m_inv, &t),
    }
}

fn theta_reflection_matrix(rs: &RootSystem) -> Vec<i64> {
    let r = rs.rank;
    let mut m = WeylElement::identity(r).matrix;
    // y -> y - <y, theta> theta, with <y, theta> = sum_j comarks_j y_j.
    for i in 0..r {
        for j in 0..r {
            m[i * r + j] -= rs.highest_root.0[i] * rs.comarks[j];
        }
    }
    m
}

/// From `T(y) = M y + t` build `T^{-1} = (M^{-1}, -M^{-1} t / k)`.
fn affine_from_accumulated(rs: &RootSystem, k: i64, m_inv: Vec<i64>, t: &[i64]) -> AffineWeylElement {
    let w = WeylElement::from_matrix(rs, m_inv);
    let back = w.apply(t);
    let gamma = Weight(
        back.iter()
            .map(|c| {
                debug_assert_eq!(c % k, 0);
                -c / k
            })
            .collect(),
    );
    let sign = w.sign;
    AffineWeylElement { w, gamma, sign }
}

/// `m^{mu nu}_{lambda,p}(tau) = sign(tau) mbar_lambda((mu - tau * nu) / p)`.
pub fn little_m(
    rs: &RootSystem,
    k: i64,
    table: &MultiplicityTable,
    p: i64,
    mu: &Weight,
    nu: &Weight,
    tau: &AffineWeylElement,
) -> Result<i64> {
    if p == 0 {
        return Err(Error::ZeroWinding);
    }
    let moved = star_action(rs, k, tau, nu);
    Ok(tau.sign * scaled_lookup(table, mu, &moved, p))
}

/// `mbar((mu - x) / p)` without allocating rationals.
pub(crate) fn scaled_lookup(table: &MultiplicityTable, mu: &Weight, x: &Weight, p: i64) -> i64 {
    let mut coords = Vec::with_capacity(mu.rank());
    for (a, b) in mu.0.iter().zip(&x.0) {
        let d = a - b;
        if d % p != 0 {
            return 0;
        }
        coords.push(d / p);
    }
    table.get_coords(&coords) as i64
}

/// Radius of the ball containing every `tau * nu + rho` that can contribute
/// to an alternating sum with target `mu`: `|mu + rho| + |p| |lambda| + |rho|`
/// plus one lattice spacing.
pub fn support_radius(rs: &RootSystem, table: &MultiplicityTable, p: i64, mu: &Weight) -> f64 {
    let spacing = rs.simple_coroots.iter().map(|c| rs.norm(&c.0)).fold(0.0, f64::max);
    rs.norm(&(mu + &rs.rho).0) + p.unsigned_abs() as f64 * table.max_norm(rs) + rs.norm(&rs.rho.0) + spacing
}

/// Every affine element `tau` with `|tau * nu + rho| <= radius`, paired with
/// `tau * nu`, sorted by `(gamma, w)`.
pub fn orbit_ball(ld: &LevelData, nu: &Weight, radius: f64) -> Vec<(AffineWeylElement, Weight)> {
    let rs = &ld.rs;
    let k = ld.k;
    let r = rs.rank;
    let shifted = nu + &rs.rho;
    let kf = k as f64;
    let mut out = Vec::new();
    for w in &ld.weyl {
        let u = w.apply(&shifted.0);
        // gamma = sum_j c_j coroot_j with |u + k gamma| <= radius. The coroot
        // coordinates of a vector x are gram * x.
        let centre: Vec<f64> = (0..r)
            .map(|j| -(0..r).map(|i| rs.gram[j][i].to_f64_lossy() * u[i] as f64).sum::<f64>() / kf)
            .collect();
        let half: Vec<f64> = (0..r)
            .map(|j| radius / kf * rs.gram[j][j].to_f64_lossy().sqrt() + 1e-9)
            .collect();
        let lo: Vec<i64> = (0..r).map(|j| (centre[j] - half[j]).ceil() as i64).collect();
        let hi: Vec<i64> = (0..r).map(|j| (centre[j] + half[j]).floor() as i64).collect();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            continue;
        }
        let mut c = lo.clone();
        loop {
            let gamma: Vec<i64> = (0..r)
                .map(|i| (0..r).map(|j| c[j] * rs.simple_coroots[j].0[i]).sum())
                .collect();
            let image: Vec<i64> = u.iter().zip(&gamma).map(|(a, g)| a + k * g).collect();
            if rs.norm(&image) <= radius + 1e-9 {
                let tau = AffineWeylElement {
                    w: w.clone(),
                    gamma: Weight(gamma),
                    sign: w.sign,
                };
                let moved = &Weight(image) - &rs.rho;
                out.push((tau, moved));
            }
            // odometer
            let mut idx = 0;
            loop {
                if idx == r {
                    break;
                }
                c[idx] += 1;
                if c[idx] <= hi[idx] {
                    break;
                }
                c[idx] = lo[idx];
                idx += 1;
            }
            if idx == r {
                break;
            }
        }
    }
    out.sort_by_key(|a| a.0.key());
    out
}

trait LossyF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl LossyF64 for Rational {
    fn to_f64_lossy(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// Finite set of affine elements containing every `tau` with
/// `m^{mu nu}_{lambda,p}(tau) != 0`.
pub fn support_taus(
    ld: &LevelData,
    table: &MultiplicityTable,
    p: i64,
    mu: &Weight,
    nu: &Weight,
) -> Result<Vec<AffineWeylElement>> {
    if p == 0 {
        return Err(Error::ZeroWinding);
    }
    let radius = support_radius(&ld.rs, table, p, mu);
    Ok(orbit_ball(ld, nu, radius).into_iter().map(|(t, _)| t).collect())
}

/// `M^{mu nu}_{lambda,p} = sum_tau m^{mu nu}_{lambda,p}(tau)`.
pub fn big_m(ld: &LevelData, table: &MultiplicityTable, p: i64, mu: &Weight, nu: &Weight) -> Result<i64> {
    if p == 0 {
        return Err(Error::ZeroWinding);
    }
    let radius = support_radius(&ld.rs, table, p, mu);
    Ok(orbit_ball(ld, nu, radius)
        .iter()
        .map(|(tau, moved)| tau.sign * scaled_lookup(table, mu, moved, p))
        .sum())
}

/// Quantum Racah formula `N^mu_{lambda nu} = sum_tau sign(tau) m_lambda(mu - tau * nu)`.
pub fn fusion_n(ld: &LevelData, table: &MultiplicityTable, nu: &Weight, mu: &Weight) -> Result<i64> {
    ld.require_alcove(&table.lambda)?;
    ld.require_alcove(nu)?;
    ld.require_alcove(mu)?;
    big_m(ld, table, 1, mu, nu)
}

/// Every nonzero fusion coefficient `N^mu_{lambda nu}` for the given `lambda`.
pub fn fusion_row(ld: &LevelData, table: &MultiplicityTable) -> Result<BTreeMap<(Weight, Weight), i64>> {
    ld.require_alcove(&table.lambda)?;
    let mut out = BTreeMap::new();
    for nu in &ld.alcove_weights {
        for mu in &ld.alcove_weights {
            let n = big_m(ld, table, 1, mu, nu)?;
            if n != 0 {
                out.insert((nu.clone(), mu.clone()), n);
            }
        }
    }
    Ok(out)
}

/// `sum_{w in W} sign(w) mbar_lambda((mu + rho - w rho) / p)`.
pub fn plethysm_cbar(
    rs: &RootSystem,
    weyl: &[WeylElement],
    table: &MultiplicityTable,
    p: i64,
    mu: &Weight,
) -> Result<i64> {
    if p <= 0 {
        return Err(Error::NonPositivePower(p));
    }
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.0.clone()));
    }
    let target = mu + &rs.rho;
    Ok(weyl
        .iter()
        .map(|w| {
            let wr = w.apply_weight(&rs.rho);
            w.sign * scaled_lookup(table, &target, &wr, p)
        })
        .sum())
}

/// All nonzero `cbar^mu_{lambda,p}`, keyed by dominant `mu`.
pub fn plethysm_support(
    rs: &RootSystem,
    weyl: &[WeylElement],
    table: &MultiplicityTable,
    p: i64,
) -> Result<BTreeMap<Weight, i64>> {
    if p <= 0 {
        return Err(Error::NonPositivePower(p));
    }
    let rho_images: Vec<Weight> = weyl.iter().map(|w| w.apply_weight(&rs.rho)).collect();
    let mut candidates = BTreeSet::new();
    for beta in table.entries.keys() {
        let pb = beta.scale(p);
        for wr in &rho_images {
            let mu = &(&pb + wr) - &rs.rho;
            if mu.is_dominant() {
                candidates.insert(mu);
            }
        }
    }
    let mut out = BTreeMap::new();
    for mu in candidates {
        let c = plethysm_cbar(rs, weyl, table, p, &mu)?;
        if c != 0 {
            out.insert(mu, c);
        }
    }
    Ok(out)
}
