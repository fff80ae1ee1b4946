use std::sync::OnceLock;

use num_complex::Complex64;
use proptest::prelude::*;

use tkinv::affine::{star_action, AffineWeylElement};
use tkinv::reps::{adams_decompose, weight_multiplicities};
use tkinv::{LevelData, Rational, RootSystem, Weight};

const LABELS: [&str; 6] = ["A1", "A2", "B2", "G2", "A3", "C3"];

fn systems() -> &'static Vec<RootSystem> {
    static CELL: OnceLock<Vec<RootSystem>> = OnceLock::new();
    CELL.get_or_init(|| {
        LABELS
            .iter()
            .map(|l| RootSystem::new(l.parse().unwrap()).unwrap())
            .collect()
    })
}

fn dominant(rank: usize, max: i64) -> impl Strategy<Value = Weight> {
    prop::collection::vec(0..=max, rank).prop_map(Weight)
}

fn system_and_weight(max: i64) -> impl Strategy<Value = (usize, Weight)> {
    (0..LABELS.len()).prop_flat_map(move |i| (Just(i), dominant(systems()[i].rank, max)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplicities_are_weyl_invariant((i, lam) in system_and_weight(2), word in prop::collection::vec(0usize..4, 0..6)) {
        let r = &systems()[i];
        let table = weight_multiplicities(r, &lam).unwrap();
        for (mu, &m) in &table.entries {
            let mut x = mu.0.clone();
            for &s in &word {
                r.reflect_in_place(s % r.rank, &mut x);
            }
            prop_assert_eq!(table.get_coords(&x), m);
        }
    }

    #[test]
    fn conjugation_is_an_involution((i, lam) in system_and_weight(4)) {
        let r = &systems()[i];
        let star = r.star(&lam);
        prop_assert!(star.is_dominant());
        prop_assert_eq!(r.star(&star), lam.clone());
        prop_assert_eq!(r.bar(&r.bar(&lam)), lam);
    }

    #[test]
    fn characters_are_coroot_periodic((i, lam) in system_and_weight(2), b in prop::collection::vec(-1.0f64..1.0, 3), c in prop::collection::vec(-2i64..=2, 3)) {
        let r = &systems()[i];
        let table = weight_multiplicities(r, &lam).unwrap();
        let b = &b[..r.rank];
        let mut shifted = b.to_vec();
        for (j, cv) in r.simple_coroots.iter().enumerate() {
            for (s, x) in shifted.iter_mut().zip(&cv.0) {
                *s += (c[j % 3] * x) as f64;
            }
        }
        let d = table.character(r, b) - table.character(r, &shifted);
        prop_assert!(d.norm() < 1e-8 * table.dim as f64);
    }

    #[test]
    fn adams_decomposition_evaluates_to_scaled_character((i, lam) in system_and_weight(2), p in 1i64..=3, b in prop::collection::vec(-0.5f64..0.5, 3)) {
        let r = &systems()[i];
        let b = &b[..r.rank];
        let lhs = weight_multiplicities(r, &lam).unwrap().character(r, &b.iter().map(|x| x * p as f64).collect::<Vec<_>>());
        let rhs: Complex64 = adams_decompose(r, &lam, p)
            .unwrap()
            .iter()
            .map(|(mu, &c)| weight_multiplicities(r, mu).unwrap().character(r, b) * c as f64)
            .sum();
        prop_assert!((lhs - rhs).norm() < 1e-7 * (1.0 + lhs.norm()));
    }

    #[test]
    fn twists_and_dimensions_transform_under_the_star_action(
        (i, eta) in (0..LABELS.len()).prop_flat_map(|i| (Just(i), prop::collection::vec(-20i64..20, systems()[i].rank).prop_map(Weight))),
        dk in 1i64..=4,
        wi in 0usize..1000,
        g in prop::collection::vec(-2i64..=2, 3),
    ) {
        let r = &systems()[i];
        let k = r.dual_coxeter + dk;
        let ld = LevelData::new(r.clone(), k).unwrap();
        let w = ld.weyl[wi % ld.weyl.len()].clone();
        let mut gamma = Weight::zero(r.rank);
        for (j, cv) in r.simple_coroots.iter().enumerate() {
            gamma = &gamma + &cv.scale(g[j % 3]);
        }
        let tau = AffineWeylElement { sign: w.sign, w, gamma };
        let moved = star_action(r, k, &tau, &eta);
        let one = Rational::from_integer(1);
        prop_assert!((ld.theta_pow(&moved, one) - ld.theta_pow(&eta, one)).norm() < 1e-9);
        prop_assert!((ld.qdim(&moved) - tau.sign as f64 * ld.qdim(&eta)).abs() < 1e-9);
        for lam in &ld.alcove_weights {
            prop_assert!((ld.s_entry(lam, &moved) - ld.s_entry(lam, &eta) * tau.sign as f64).norm() < 1e-9);
        }
    }
}
