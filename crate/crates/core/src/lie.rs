//! Root systems of the simple Lie algebras.
//!
//! Every vector lives in fundamental-weight coordinates: the i-th coordinate of
//! `x` is `<x, coroot_i>`. The invariant form is normalized so that long roots
//! have squared length 2, which makes the coroot lattice even and the pairing
//! between weights and coroots integral.

#![allow(clippy::needless_range_loop)]

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Default cap on the order of an enumerated Weyl group. Admits E6, rejects E7 and E8.
pub const DEFAULT_WEYL_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn as_char(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CartanLabel {
    pub series: Series,
    pub rank: usize,
}

impl CartanLabel {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(CartanLabel { series, rank })
        } else {
            Err(Error::InadmissibleLabel {
                series: series.as_char(),
                rank,
            })
        }
    }
}

impl fmt::Display for CartanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.as_char(), self.rank)
    }
}

impl FromStr for CartanLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(|| Error::BadLabel(s.to_string()))?;
        let series = match head.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return Err(Error::BadLabel(s.to_string())),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest.parse().map_err(|_| Error::BadLabel(s.to_string()))?;
        CartanLabel::new(series, rank)
    }
}

impl From<CartanLabel> for String {
    fn from(l: CartanLabel) -> String {
        l.to_string()
    }
}

impl TryFrom<String> for CartanLabel {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, s: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * s).collect())
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&c| Rational::from_integer(c)).collect()
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Element of the finite Weyl group acting on fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// Row-major `rank x rank` integer matrix.
    pub matrix: Vec<i64>,
    pub sign: i64,
    /// Reduced word `[i1, ..., il]` meaning `s_i1 s_i2 ... s_il`.
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![0; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        WeylElement {
            matrix,
            sign: 1,
            word: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        (self.matrix.len() as f64).sqrt().round() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let r = x.len();
        (0..r)
            .map(|i| (0..r).map(|j| self.matrix[i * r + j] * x[j]).sum())
            .collect()
    }

    pub fn apply_weight(&self, x: &Weight) -> Weight {
        Weight(self.apply(&x.0))
    }

    pub fn apply_rational(&self, x: &[Rational]) -> Vec<Rational> {
        let r = x.len();
        (0..r)
            .map(|i| {
                (0..r).fold(Rational::zero(), |acc, j| {
                    acc + x[j] * Rational::from_integer(self.matrix[i * r + j])
                })
            })
            .collect()
    }

    /// Builds an element from its matrix, recovering a reduced word from the
    /// descent of `w . rho`.
    pub fn from_matrix(rs: &RootSystem, matrix: Vec<i64>) -> Self {
        let r = rs.rank;
        let w = WeylElement {
            matrix,
            sign: 1,
            word: Vec::new(),
        };
        let mut v = w.apply(&rs.rho.0);
        let mut word = Vec::new();
        while let Some(i) = (0..r).find(|&i| v[i] < 0) {
            rs.reflect_in_place(i, &mut v);
            word.push(i);
        }
        // s_{i_l} ... s_{i_1} w = 1, so w = s_{i_1} ... s_{i_l}.
        let sign = if word.len() % 2 == 0 { 1 } else { -1 };
        WeylElement {
            matrix: w.matrix,
            sign,
            word,
        }
    }

    pub fn compose(&self, other: &WeylElement, rs: &RootSystem) -> WeylElement {
        let r = rs.rank;
        let mut m = vec![0; r * r];
        for i in 0..r {
            for j in 0..r {
                m[i * r + j] = (0..r).map(|l| self.matrix[i * r + l] * other.matrix[l * r + j]).sum();
            }
        }
        WeylElement::from_matrix(rs, m)
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let r = rs.rank;
        let mut inv = WeylElement::identity(r).matrix;
        for &i in self.word.iter().rev() {
            inv = mat_mul(&inv, &rs.reflection_matrix(i), r);
        }
        WeylElement {
            matrix: inv,
            sign: self.sign,
            word: self.word.iter().rev().copied().collect(),
        }
    }
}

pub(crate) fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut m = vec![0; r * r];
    for i in 0..r {
        for l in 0..r {
            let ail = a[i * r + l];
            if ail == 0 {
                continue;
            }
            for j in 0..r {
                m[i * r + j] += ail * b[l * r + j];
            }
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub label: CartanLabel,
    pub rank: usize,
    /// `cartan[i][j] = <alpha_i, coroot_j>`.
    pub cartan: Vec<Vec<i64>>,
    pub simple_roots: Vec<Weight>,
    /// Simple coroots; a basis of the coroot lattice.
    pub simple_coroots: Vec<Weight>,
    /// Positive roots sorted lexicographically on simple-root coefficients.
    pub positive_roots: Vec<Weight>,
    pub positive_root_coeffs: Vec<Vec<i64>>,
    /// All roots sorted lexicographically on simple-root coefficients.
    pub all_roots: Vec<Weight>,
    /// Coroots of the positive roots, in the order of `positive_roots`.
    pub coroots: Vec<Weight>,
    pub fundamental_weights: Vec<Weight>,
    pub rho: Weight,
    pub highest_root: Weight,
    pub dual_coxeter: i64,
    /// `gram[i][j] = <omega_i, omega_j>`.
    pub gram: Vec<Vec<Rational>>,
    gram_int: Vec<i64>,
    gram_den: i64,
    pub weyl_order: u64,
    /// Index of the coroot lattice in the weight lattice.
    pub det_index: i64,
    /// `<omega_i, theta>`, so that `<x, theta> = sum_i x_i comarks[i]`.
    pub comarks: Vec<i64>,
}

impl RootSystem {
    pub fn new(label: CartanLabel) -> Result<Self> {
        let label = CartanLabel::new(label.series, label.rank)?;
        let r = label.rank;
        let b = simple_root_products(label);

        let two = Rational::from_integer(2);
        let four = Rational::from_integer(4);
        let mut cartan = vec![vec![0i64; r]; r];
        let mut coroot_gram = vec![vec![Rational::zero(); r]; r];
        for i in 0..r {
            for j in 0..r {
                let a = two * b[i][j] / b[j][j];
                debug_assert!(a.is_integer());
                cartan[i][j] = a.to_integer();
                coroot_gram[i][j] = four * b[i][j] / (b[i][i] * b[j][j]);
            }
        }
        let gram = rational_inverse(&coroot_gram);
        let det_index = rational_det(&coroot_gram);
        debug_assert!(det_index.is_integer());
        let det_index = det_index.to_integer();

        let gram_den = gram.iter().flatten().fold(1i64, |acc, q| acc.lcm(q.denom()));
        let gram_int: Vec<i64> = gram
            .iter()
            .flatten()
            .map(|q| (q * Rational::from_integer(gram_den)).to_integer())
            .collect();

        let simple_roots: Vec<Weight> = (0..r).map(|i| Weight(cartan[i].clone())).collect();
        let simple_coroots: Vec<Weight> = (0..r)
            .map(|i| Weight(coroot_gram[i].iter().map(|q| q.to_integer()).collect()))
            .collect();

        // Roots in simple-root coordinates, closed under simple reflections.
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            seen.insert(e.clone(), ());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for j in 0..r {
                let pairing: i64 = (0..r).map(|i| beta[i] * cartan[i][j]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut next = beta.clone();
                next[j] -= pairing;
                if !seen.contains_key(&next) {
                    seen.insert(next.clone(), ());
                    queue.push_back(next);
                }
            }
        }
        let mut all_coeffs: Vec<Vec<i64>> = seen.into_keys().collect();
        all_coeffs.sort();
        let mut positive_root_coeffs: Vec<Vec<i64>> = all_coeffs
            .iter()
            .filter(|c| c.iter().all(|&x| x >= 0))
            .cloned()
            .collect();
        positive_root_coeffs.sort();

        let to_fund =
            |c: &Vec<i64>| -> Weight { Weight((0..r).map(|j| (0..r).map(|i| c[i] * cartan[i][j]).sum()).collect()) };
        let positive_roots: Vec<Weight> = positive_root_coeffs.iter().map(to_fund).collect();
        let all_roots: Vec<Weight> = all_coeffs.iter().map(to_fund).collect();

        let highest_idx = positive_root_coeffs
            .iter()
            .enumerate()
            .max_by_key(|(_, c)| c.iter().sum::<i64>())
            .map(|(i, _)| i)
            .expect("nonempty root system");
        let highest_root = positive_roots[highest_idx].clone();

        let fundamental_weights: Vec<Weight> = (0..r).map(|i| Weight::unit(r, i)).collect();
        let rho = Weight(vec![1; r]);

        let mut rs = RootSystem {
            label,
            rank: r,
            cartan,
            simple_roots,
            simple_coroots,
            positive_roots,
            positive_root_coeffs,
            all_roots,
            coroots: Vec::new(),
            fundamental_weights,
            rho,
            highest_root,
            dual_coxeter: 0,
            gram,
            gram_int,
            gram_den,
            weyl_order: weyl_order(label),
            det_index,
            comarks: Vec::new(),
        };

        rs.coroots = rs
            .positive_roots
            .iter()
            .map(|a| {
                let n = rs.ip(&a.0, &a.0);
                Weight(
                    a.0.iter()
                        .map(|&c| {
                            let q = Rational::from_integer(2 * c) / n;
                            debug_assert!(q.is_integer());
                            q.to_integer()
                        })
                        .collect(),
                )
            })
            .collect();
        rs.comarks = (0..r)
            .map(|i| {
                let q = rs.ip(&rs.fundamental_weights[i].0, &rs.highest_root.0);
                debug_assert!(q.is_integer());
                q.to_integer()
            })
            .collect();
        let th_rho = rs.ip(&rs.highest_root.0, &rs.rho.0);
        debug_assert!(th_rho.is_integer());
        rs.dual_coxeter = 1 + th_rho.to_integer();
        Ok(rs)
    }

    pub fn check_rank(&self, x: &[i64]) -> Result<()> {
        if x.len() == self.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank,
                got: x.len(),
            })
        }
    }

    /// Exact inner product with rank checking.
    pub fn inner_product(&self, x: &Weight, y: &Weight) -> Result<Rational> {
        self.check_rank(&x.0)?;
        self.check_rank(&y.0)?;
        Ok(self.ip(&x.0, &y.0))
    }

    pub fn ip(&self, x: &[i64], y: &[i64]) -> Rational {
        Rational::new(self.ip_scaled(x, y), self.gram_den)
    }

    /// `gram_den * <x, y>`, an integer for integral `x`, `y`.
    pub fn ip_scaled(&self, x: &[i64], y: &[i64]) -> i64 {
        let r = self.rank;
        let mut s = 0i64;
        for i in 0..r {
            if x[i] == 0 {
                continue;
            }
            let row = &self.gram_int[i * r..(i + 1) * r];
            let gy: i64 = row.iter().zip(y).map(|(g, v)| g * v).sum();
            s += x[i] * gy;
        }
        s
    }

    /// Row `gram_int * x`, so that `ip_scaled(x, y) = dot(scaled_dual(x), y)`.
    pub fn scaled_dual(&self, x: &[i64]) -> Vec<i64> {
        let r = self.rank;
        (0..r)
            .map(|j| (0..r).map(|i| x[i] * self.gram_int[i * r + j]).sum())
            .collect()
    }

    pub fn gram_denominator(&self) -> i64 {
        self.gram_den
    }

    pub fn ip_rational(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let r = self.rank;
        let mut s = Rational::zero();
        for i in 0..r {
            for j in 0..r {
                s += x[i] * self.gram[i][j] * y[j];
            }
        }
        s
    }

    pub fn ip_f64(&self, x: &[f64], y: &[f64]) -> f64 {
        let r = self.rank;
        let mut s = 0.0;
        for i in 0..r {
            for j in 0..r {
                s += x[i] * self.gram[i][j].to_f64().unwrap() * y[j];
            }
        }
        s
    }

    pub fn norm(&self, x: &[i64]) -> f64 {
        (self.ip_scaled(x, x) as f64 / self.gram_den as f64).sqrt()
    }

    /// `<x, theta>` for integral `x`.
    pub fn theta_pairing(&self, x: &[i64]) -> i64 {
        x.iter().zip(&self.comarks).map(|(a, b)| a * b).sum()
    }

    pub fn reflect_in_place(&self, i: usize, x: &mut [i64]) {
        let c = x[i];
        if c != 0 {
            for (xj, aj) in x.iter_mut().zip(&self.cartan[i]) {
                *xj -= c * aj;
            }
        }
    }

    pub fn reflect(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let mut v = x.to_vec();
        self.reflect_in_place(i, &mut v);
        v
    }

    pub fn reflection_matrix(&self, i: usize) -> Vec<i64> {
        let r = self.rank;
        let mut m = WeylElement::identity(r).matrix;
        for j in 0..r {
            m[j * r + i] -= self.cartan[i][j];
        }
        m
    }

    /// Dominant representative of the Weyl orbit of `x`, together with the
    /// parity of the number of reflections used.
    pub fn dominant_rep(&self, x: &[i64]) -> (Weight, i64) {
        let mut v = x.to_vec();
        let mut sign = 1;
        while let Some(i) = (0..self.rank).find(|&i| v[i] < 0) {
            self.reflect_in_place(i, &mut v);
            sign = -sign;
        }
        (Weight(v), sign)
    }

    /// Weyl orbit of `x`, sorted.
    pub fn orbit(&self, x: &Weight) -> Vec<Weight> {
        let (start, _) = self.dominant_rep(&x.0);
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(start.0.clone(), ());
        queue.push_back(start.0);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank {
                if v[i] > 0 {
                    let w = self.reflect(i, &v);
                    if !seen.contains_key(&w) {
                        seen.insert(w.clone(), ());
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_keys().map(Weight).collect();
        out.sort();
        out
    }

    pub fn weyl_group(&self) -> Result<Vec<WeylElement>> {
        self.weyl_group_capped(DEFAULT_WEYL_CAP)
    }

    /// Breadth-first closure of the simple reflections. Elements are keyed by
    /// their image of `rho`, which is regular, and every word is reduced.
    pub fn weyl_group_capped(&self, cap: u64) -> Result<Vec<WeylElement>> {
        if self.weyl_order > cap {
            return Err(Error::WeylCapExceeded {
                label: self.label,
                order: self.weyl_order,
                cap,
            });
        }
        let r = self.rank;
        let gens: Vec<Vec<i64>> = (0..r).map(|i| self.reflection_matrix(i)).collect();
        let id = WeylElement::identity(r);
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        index.insert(self.rho.0.clone(), 0);
        let mut elems = vec![id];
        let mut head = 0;
        while head < elems.len() {
            for (i, g) in gens.iter().enumerate() {
                let m = mat_mul(g, &elems[head].matrix, r);
                let key: Vec<i64> = (0..r).map(|a| (0..r).map(|b| m[a * r + b]).sum()).collect();
                if index.contains_key(&key) {
                    continue;
                }
                index.insert(key, elems.len());
                let mut word = Vec::with_capacity(elems[head].word.len() + 1);
                word.push(i);
                word.extend_from_slice(&elems[head].word);
                elems.push(WeylElement {
                    matrix: m,
                    sign: -elems[head].sign,
                    word,
                });
            }
            head += 1;
        }
        debug_assert_eq!(elems.len() as u64, self.weyl_order);
        Ok(elems)
    }

    /// `(lambda*, lambda_bar)` with `lambda* = -w0 lambda` and
    /// `lambda_bar + rho = (lambda + rho)*`.
    pub fn conjugates(&self, lambda: &Weight) -> Result<(Weight, Weight)> {
        self.check_rank(&lambda.0)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        Ok((self.star(lambda), self.bar(lambda)))
    }

    /// `-w0 x`: the dominant element of the orbit of `-x`.
    pub fn star(&self, x: &Weight) -> Weight {
        self.dominant_rep(&(-x).0).0
    }

    pub fn bar(&self, x: &Weight) -> Weight {
        let shifted = self.star(&(x + &self.rho));
        &shifted - &self.rho
    }

    pub fn dimension_of_algebra(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    pub fn document(&self) -> RootSystemDocument {
        RootSystemDocument {
            label: self.label.to_string(),
            rank: self.rank,
            cartan_matrix: self.cartan.clone(),
            simple_roots: self.simple_roots.clone(),
            positive_roots: self.positive_roots.clone(),
            positive_root_coefficients: self.positive_root_coeffs.clone(),
            simple_coroots: self.simple_coroots.clone(),
            rho: self.rho.clone(),
            highest_root: self.highest_root.clone(),
            gram: self
                .gram
                .iter()
                .map(|row| row.iter().map(|q| q.to_string()).collect())
                .collect(),
            dual_coxeter: self.dual_coxeter,
            weyl_order: self.weyl_order,
            det_index: self.det_index,
        }
    }
}

/// JSON view of a root system.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RootSystemDocument {
    pub label: String,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub simple_roots: Vec<Weight>,
    pub positive_roots: Vec<Weight>,
    pub positive_root_coefficients: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Weight>,
    pub rho: Weight,
    pub highest_root: Weight,
    pub gram: Vec<Vec<String>>,
    pub dual_coxeter: i64,
    pub weyl_order: u64,
    pub det_index: i64,
}

fn weyl_order(label: CartanLabel) -> u64 {
    let n = label.rank as u64;
    let fact = |m: u64| (1..=m).product::<u64>();
    match label.series {
        Series::A => fact(n + 1),
        Series::B | Series::C => (1u64 << n) * fact(n),
        Series::D => (1u64 << (n - 1)) * fact(n),
        Series::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Series::F => 1_152,
        Series::G => 12,
    }
}

/// Inner products of simple roots, Bourbaki numbering, long roots of norm 2.
fn simple_root_products(label: CartanLabel) -> Vec<Vec<Rational>> {
    let n = label.rank;
    let q = |a: i64, b: i64| Rational::new(a, b);
    let mut m = vec![vec![Rational::zero(); n]; n];
    let link = |m: &mut Vec<Vec<Rational>>, i: usize, j: usize, v: Rational| {
        m[i][j] = v;
        m[j][i] = v;
    };
    match label.series {
        Series::A => {
            for i in 0..n {
                m[i][i] = q(2, 1);
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut m, i, i + 1, q(-1, 1));
            }
        }
        Series::B => {
            for i in 0..n {
                m[i][i] = if i + 1 < n { q(2, 1) } else { q(1, 1) };
            }
            for i in 0..n - 1 {
                link(&mut m, i, i + 1, q(-1, 1));
            }
        }
        Series::C => {
            for i in 0..n {
                m[i][i] = if i + 1 < n { q(1, 1) } else { q(2, 1) };
            }
            for i in 0..n - 1 {
                let v = if i + 2 < n { q(-1, 2) } else { q(-1, 1) };
                link(&mut m, i, i + 1, v);
            }
        }
        Series::D => {
            for i in 0..n {
                m[i][i] = q(2, 1);
            }
            for i in 0..n - 2 {
                link(&mut m, i, i + 1, q(-1, 1));
            }
            link(&mut m, n - 3, n - 1, q(-1, 1));
        }
        Series::E => {
            for i in 0..n {
                m[i][i] = q(2, 1);
            }
            link(&mut m, 0, 2, q(-1, 1));
            link(&mut m, 1, 3, q(-1, 1));
            for i in 2..n - 1 {
                link(&mut m, i, i + 1, q(-1, 1));
            }
        }
        Series::F => {
            m[0][0] = q(2, 1);
            m[1][1] = q(2, 1);
            m[2][2] = q(1, 1);
            m[3][3] = q(1, 1);
            link(&mut m, 0, 1, q(-1, 1));
            link(&mut m, 1, 2, q(-1, 1));
            link(&mut m, 2, 3, q(-1, 2));
        }
        Series::G => {
            m[0][0] = q(2, 3);
            m[1][1] = q(2, 1);
            link(&mut m, 0, 1, q(-1, 1));
        }
    }
    m
}

fn rational_inverse(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("nonsingular Gram matrix");
        m.swap(col, piv);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in 0..2 * n {
                    let v = m[col][c];
                    m[r][c] -= f * v;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

pub(crate) fn rational_det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = m[r][col] / p;
                for c in col..n {
                    let v = m[col][c];
                    m[r][c] -= f * v;
                }
            }
        }
    }
    det
}
