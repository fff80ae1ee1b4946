use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;

use tkinv_gauss::{
    improper_integral_numeric, moment_closed_form, periodic_average, FnIntegrand, OscGaussMeasure, QuadratureOptions,
};

fn measure(mean: &[f64], quad: &[f64]) -> OscGaussMeasure {
    let n = mean.len();
    OscGaussMeasure::normalized(DVector::from_row_slice(mean), DMatrix::from_row_slice(n, n, quad)).unwrap()
}

/// Fourier transform of a nondegenerate normalized measure:
/// `int e^{i <v, x>} dmu = e^{i <v, m>} e^{(i/2) <v, S^{-1} v>}`.
fn fourier_closed_form(mu: &OscGaussMeasure, v: &DVector<f64>) -> Complex64 {
    let inv = mu.inverse_quad().unwrap();
    let phase = v.dot(&mu.mean) + 0.5 * v.dot(&(&inv * v));
    Complex64::from_polar(1.0, phase)
}

#[test]
fn plane_waves_match_the_fourier_transform() {
    let cases: [(&[f64], &[f64], &[f64]); 3] = [
        (&[0.2], &[1.7], &[0.9]),
        (&[0.1, -0.3], &[2.0, 0.5, 0.5, -1.5], &[0.7, -0.4]),
        (
            &[0.0, 0.2, -0.1],
            &[2.5, 0.3, 0.0, 0.3, -2.0, 0.4, 0.0, 0.4, 1.8],
            &[0.5, 0.3, -0.6],
        ),
    ];
    for (mean, quad, v) in cases {
        let mu = measure(mean, quad);
        let v = DVector::from_row_slice(v);
        let vv = v.clone();
        let f = FnIntegrand::new(v.norm(), move |x: &[Complex64]| {
            let s: Complex64 = x.iter().zip(vv.iter()).map(|(a, b)| a * b).sum();
            (s * Complex64::i()).exp()
        });
        let got = improper_integral_numeric(&mu, &f, &QuadratureOptions::default()).unwrap();
        let want = fourier_closed_form(&mu, &v);
        assert!((got.value - want).norm() < 1e-4, "{} vs {want}", got.value);
    }
}

#[test]
fn quadrature_matches_closed_form_moments() {
    let mu = measure(&[0.3, -0.1, 0.2], &[1.8, 0.2, 0.1, 0.2, -2.2, 0.3, 0.1, 0.3, 2.6]);
    let v = DVector::from_vec(vec![0.4, -0.8, 0.3]);
    let w = DVector::from_vec(vec![-0.2, 0.5, 0.9]);
    let closed = moment_closed_form(&mu, &v, &w).unwrap();
    let vc = v.clone();
    let pair = |a: &DVector<f64>, x: &[Complex64]| -> Complex64 { x.iter().zip(a.iter()).map(|(x, a)| x * a).sum() };
    let first = FnIntegrand::new(0.0, move |x: &[Complex64]| pair(&vc, x));
    let second = FnIntegrand::new(0.0, move |x: &[Complex64]| pair(&v, x) * pair(&w, x));
    let opts = QuadratureOptions::default();
    let a = improper_integral_numeric(&mu, &first, &opts).unwrap().value;
    let b = improper_integral_numeric(&mu, &second, &opts).unwrap().value;
    assert!((a - closed.first).norm() <= 1e-3 * (1.0 + closed.first.norm()));
    assert!((b - closed.second).norm() <= 1e-3 * (1.0 + closed.second.norm()));
}

#[test]
fn kernel_directions_kill_oscillations() {
    // Along the kernel the regularized factor is exp(-v^2 / (4 eps)) -> 0.
    let mu = OscGaussMeasure::normalized(
        DVector::zeros(2),
        DMatrix::from_diagonal(&DVector::from_vec(vec![1.3, 0.0])),
    )
    .unwrap();
    let f = FnIntegrand::new(2.0, |x: &[Complex64]| (x[1] * Complex64::new(0.0, 2.0)).exp());
    let got = improper_integral_numeric(&mu, &f, &QuadratureOptions::default()).unwrap();
    assert!(got.value.norm() < 1e-6, "{:?}", got.value);
}

#[test]
fn spectral_scaling_sharpens_small_eigenvalues() {
    let mu = measure(&[0.0], &[0.2]);
    let f = FnIntegrand::new(1.0, |x: &[Complex64]| (x[0] * Complex64::i()).exp());
    let want = fourier_closed_form(&mu, &DVector::from_vec(vec![1.0]));
    let scaled = improper_integral_numeric(&mu, &f, &QuadratureOptions::default()).unwrap();
    let fixed = improper_integral_numeric(
        &mu,
        &f,
        &QuadratureOptions {
            spectral_scaling: false,
            ..QuadratureOptions::default()
        },
    )
    .unwrap();
    assert!((scaled.value - want).norm() < (fixed.value - want).norm());
    assert!((scaled.value - want).norm() < 1e-4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn periodic_average_is_shift_invariant(
        len in 2.0f64..5.0,
        shear in -0.5f64..0.5,
        coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 3),
        modes in prop::collection::vec((-2i64..=2, -2i64..=2), 3),
        y in (-10.0f64..10.0, -10.0f64..10.0),
    ) {
        let basis = DMatrix::from_row_slice(2, 2, &[len, shear, 0.0, len * 0.8]);
        let dual = basis.clone().try_inverse().unwrap().transpose() * (2.0 * std::f64::consts::PI);
        let f = |x: &[f64]| -> Complex64 {
            let mut acc = Complex64::new(0.3, 0.0);
            for ((re, im), (m1, m2)) in coeffs.iter().zip(&modes) {
                let freq = &dual * DVector::from_vec(vec![*m1 as f64, *m2 as f64]);
                acc += Complex64::new(*re, *im) * Complex64::from_polar(1.0, freq[0] * x[0] + freq[1] * x[1]);
            }
            acc
        };
        let g = |x: &[f64]| f(&[x[0] + y.0, x[1] + y.1]);
        let a = periodic_average(&f, &basis, 64);
        let b = periodic_average(&g, &basis, 64);
        prop_assert!((a - b).norm() < 1e-9);
        // Only the constant mode survives averaging.
        let constant: Complex64 = coeffs.iter().zip(&modes).filter(|(_, m)| **m == (0, 0)).map(|((r, i), _)| Complex64::new(*r, *i)).sum();
        prop_assert!((a - constant - 0.3).norm() < 1e-9);
    }
}
