//! Weight multiplicities and characters of irreducible representations.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{Rational, RootSystem, Weight};

/// Default cap on the dimension of a representation whose weights are tabulated.
pub const DEFAULT_DIM_CAP: u128 = 20_000_000;

/// Weight multiplicities of the irreducible representation with highest weight `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub lambda: Weight,
    pub entries: BTreeMap<Weight, u64>,
    /// Largest `<mu + rho, mu + rho>` over the support.
    pub norm_bound: Rational,
    pub dim: u64,
}

impl MultiplicityTable {
    pub fn get(&self, mu: &Weight) -> u64 {
        self.entries.get(mu).copied().unwrap_or(0)
    }

    pub fn get_coords(&self, mu: &[i64]) -> u64 {
        // BTreeMap<Weight, _> lookups need an owned key; the tables are small
        // enough that the allocation does not matter.
        self.entries.get(&Weight(mu.to_vec())).copied().unwrap_or(0)
    }

    /// Largest norm `|mu|` over the support, i.e. `|lambda|`.
    pub fn max_norm(&self, rs: &RootSystem) -> f64 {
        rs.norm(&self.lambda.0)
    }

    /// Evaluates the multiplicity at a rational point: zero off the weight lattice.
    pub fn mbar(&self, x: &[Rational]) -> u64 {
        if x.iter().any(|c| !c.is_integer()) {
            return 0;
        }
        let coords: Vec<i64> = x.iter().map(|c| c.to_integer()).collect();
        self.get_coords(&coords)
    }

    /// `sum_mu m(mu) e^{2 pi i <mu, b>}` for a point `b` of the torus in
    /// fundamental-weight coordinates.
    pub fn character(&self, rs: &RootSystem, b: &[f64]) -> Complex64 {
        let mut acc = Complex64::zero();
        for (mu, &m) in &self.entries {
            let mu_f: Vec<f64> = mu.0.iter().map(|&c| c as f64).collect();
            let phase = 2.0 * std::f64::consts::PI * rs.ip_f64(&mu_f, b);
            acc += Complex64::from_polar(m as f64, phase);
        }
        acc
    }
}

/// Weyl dimension formula, exact.
pub fn dimension(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    rs.check_rank(&lambda.0)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    let shifted = lambda + &rs.rho;
    let mut num: Ratio<i128> = Ratio::from_integer(1);
    for alpha in &rs.positive_roots {
        let a = rs.ip_scaled(&shifted.0, &alpha.0) as i128;
        let b = rs.ip_scaled(&rs.rho.0, &alpha.0) as i128;
        num *= Ratio::new(a, b);
    }
    debug_assert!(num.is_integer());
    Ok(num.to_integer() as u128)
}

/// Dominant weights of the representation, found by subtracting positive roots
/// from dominant weights; the dominant weights below `lambda` form a saturated set.
fn dominant_weights(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![lambda.clone()];
    seen.insert(lambda.clone());
    while let Some(mu) = stack.pop() {
        for alpha in &rs.positive_roots {
            let nu = &mu - alpha;
            if nu.is_dominant() && !seen.contains(&nu) {
                seen.insert(nu.clone());
                stack.push(nu);
            }
        }
    }
    seen.into_iter().collect()
}

/// Freudenthal recursion over the dominant weights followed by a Weyl-orbit fill.
pub fn weight_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<MultiplicityTable> {
    weight_multiplicities_capped(rs, lambda, DEFAULT_DIM_CAP)
}

pub fn weight_multiplicities_capped(rs: &RootSystem, lambda: &Weight, dim_cap: u128) -> Result<MultiplicityTable> {
    let dim = dimension(rs, lambda)?;
    if dim > dim_cap {
        return Err(Error::DimensionCapExceeded {
            lambda: lambda.0.clone(),
            dim,
            cap: dim_cap,
        });
    }

    let lr = lambda + &rs.rho;
    let top = rs.ip_scaled(&lr.0, &lr.0) as i128;
    let shifted_norm = |mu: &Weight| {
        let v = mu + &rs.rho;
        rs.ip_scaled(&v.0, &v.0) as i128
    };

    let mut dominant = dominant_weights(rs, lambda);
    // Decreasing <mu+rho, mu+rho>, ties broken lexicographically.
    dominant.sort_by(|a, b| shifted_norm(b).cmp(&shifted_norm(a)).then_with(|| a.cmp(b)));

    let mut mult: HashMap<Weight, u64> = HashMap::new();
    for mu in &dominant {
        if mu == lambda {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mut acc: i128 = 0;
        for alpha in &rs.positive_roots {
            let mut j = 1;
            loop {
                let shifted: Vec<i64> = mu.0.iter().zip(&alpha.0).map(|(m, a)| m + j * a).collect();
                let (rep, _) = rs.dominant_rep(&shifted);
                let Some(&m) = mult.get(&rep) else { break };
                acc += m as i128 * rs.ip_scaled(&shifted, &alpha.0) as i128;
                j += 1;
            }
        }
        let denom = top - shifted_norm(mu);
        debug_assert!(denom > 0);
        debug_assert_eq!((2 * acc) % denom, 0);
        let m = (2 * acc) / denom;
        if m > 0 {
            mult.insert(mu.clone(), m as u64);
        }
    }

    let mut entries = BTreeMap::new();
    let mut norm_bound = Rational::zero();
    for mu in &dominant {
        let Some(&m) = mult.get(mu) else { continue };
        let nb = Rational::new(shifted_norm(mu) as i64, rs.gram_denominator());
        if nb > norm_bound {
            norm_bound = nb;
        }
        for nu in rs.orbit(mu) {
            entries.insert(nu, m);
        }
    }
    let total: u64 = entries.values().sum();
    debug_assert_eq!(total as u128, dim);
    Ok(MultiplicityTable {
        lambda: lambda.clone(),
        entries,
        norm_bound,
        dim: total,
    })
}

/// `Tr rho_lambda(exp b)`.
pub fn character_eval(rs: &RootSystem, lambda: &Weight, b: &[f64]) -> Result<Complex64> {
    let table = weight_multiplicities(rs, lambda)?;
    Ok(table.character(rs, b))
}

/// Multiplicity extended by zero to non-integral points.
pub fn mbar_eval(rs: &RootSystem, lambda: &Weight, x: &[Rational]) -> Result<u64> {
    rs.check_rank(lambda.coords())?;
    let table = weight_multiplicities(rs, lambda)?;
    Ok(table.mbar(x))
}

/// Coefficients of `chi_lambda(p b)` in the basis of irreducible characters,
/// by repeatedly peeling off the character of the leading dominant term.
pub fn adams_decompose(rs: &RootSystem, lambda: &Weight, p: i64) -> Result<BTreeMap<Weight, i64>> {
    if p < 1 {
        return Err(Error::NonPositivePower(p));
    }
    let base = weight_multiplicities(rs, lambda)?;
    let mut remaining: BTreeMap<Weight, i64> = base.entries.iter().map(|(mu, &m)| (mu.scale(p), m as i64)).collect();
    let shifted_norm = |mu: &Weight| {
        let v = mu + &rs.rho;
        rs.ip_scaled(&v.0, &v.0)
    };
    let mut out = BTreeMap::new();
    while !remaining.is_empty() {
        let lead = remaining
            .keys()
            .filter(|mu| mu.is_dominant())
            .max_by(|a, b| shifted_norm(a).cmp(&shifted_norm(b)).then_with(|| b.cmp(a)))
            .cloned()
            .expect("a Weyl-invariant formal character has a dominant term");
        let c = remaining[&lead];
        let table = weight_multiplicities(rs, &lead)?;
        for (nu, &m) in &table.entries {
            let e = remaining.entry(nu.clone()).or_insert(0);
            *e -= c * m as i64;
            if *e == 0 {
                remaining.remove(nu);
            }
        }
        out.insert(lead, c);
    }
    Ok(out)
}

/// On-disk form of a multiplicity table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TableDocument {
    pub algebra: String,
    pub lambda: Vec<i64>,
    pub entries: Vec<(Vec<i64>, u64)>,
    pub dim: u64,
}

impl TableDocument {
    pub fn from_table(rs: &RootSystem, t: &MultiplicityTable) -> Self {
        TableDocument {
            algebra: rs.label.to_string(),
            lambda: t.lambda.0.clone(),
            entries: t.entries.iter().map(|(k, &v)| (k.0.clone(), v)).collect(),
            dim: t.dim,
        }
    }

    pub fn into_table(self, rs: &RootSystem) -> MultiplicityTable {
        let entries: BTreeMap<Weight, u64> = self.entries.into_iter().map(|(k, v)| (Weight(k), v)).collect();
        let norm_bound = entries
            .keys()
            .map(|mu| {
                let v = mu + &rs.rho;
                rs.ip(&v.0, &v.0)
            })
            .max()
            .unwrap_or_else(Rational::zero);
        MultiplicityTable {
            lambda: Weight(self.lambda),
            entries,
            norm_bound,
            dim: self.dim,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn trivial_and_fundamental() {
        let a1 = rs("A1");
        let t = weight_multiplicities(&a1, &Weight(vec![0])).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.get(&Weight(vec![0])), 1);
        let t = weight_multiplicities(&a1, &Weight(vec![1])).unwrap();
        assert_eq!(t.entries.len(), 2);
        assert_eq!(t.get(&Weight(vec![1])), 1);
        assert_eq!(t.get(&Weight(vec![-1])), 1);
    }

    #[test]
    fn a1_dimensions() {
        let a1 = rs("A1");
        for n in 0..12 {
            assert_eq!(dimension(&a1, &Weight(vec![n])).unwrap(), (n + 1) as u128);
        }
    }

    #[test]
    fn g2_first_fundamental_dimension_matches_table() {
        let g2 = rs("G2");
        let lam = Weight(vec![1, 0]);
        let d = dimension(&g2, &lam).unwrap();
        let t = weight_multiplicities(&g2, &lam).unwrap();
        assert_eq!(d, t.entries.values().sum::<u64>() as u128);
        assert_eq!(d, 7);
    }

    #[test]
    fn mbar_off_lattice_is_zero() {
        let a1 = rs("A1");
        let lam = Weight(vec![1]);
        assert_eq!(mbar_eval(&a1, &lam, &[Rational::new(1, 2)]).unwrap(), 0);
        assert_eq!(mbar_eval(&a1, &lam, &[Rational::from_integer(1)]).unwrap(), 1);
        assert_eq!(mbar_eval(&a1, &lam, &[Rational::from_integer(7)]).unwrap(), 0);
    }

    #[test]
    fn adams_a1_fundamental_square() {
        let a1 = rs("A1");
        let c = adams_decompose(&a1, &Weight(vec![1]), 2).unwrap();
        let expected: BTreeMap<Weight, i64> = [(Weight(vec![2]), 1), (Weight(vec![0]), -1)].into_iter().collect();
        assert_eq!(c, expected);
        let c1 = adams_decompose(&a1, &Weight(vec![3]), 1).unwrap();
        assert_eq!(c1, [(Weight(vec![3]), 1)].into_iter().collect());
        assert!(adams_decompose(&a1, &Weight(vec![1]), 0).is_err());
    }

    #[test]
    fn non_dominant_rejected() {
        let a2 = rs("A2");
        assert!(matches!(
            weight_multiplicities(&a2, &Weight(vec![1, -1])),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn dimension_cap() {
        let a2 = rs("A2");
        assert!(matches!(
            weight_multiplicities_capped(&a2, &Weight(vec![5, 5]), 100),
            Err(Error::DimensionCapExceeded { dim: 216, .. })
        ));
    }
}
