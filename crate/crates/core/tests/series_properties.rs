use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use jacobi_flow::powerseries::{
    lagrange_coefficient, series_compose, series_revert, TruncatedSeries,
};

fn complex_series() -> impl Strategy<Value = Vec<Complex64>> {
    (1usize..=32).prop_flat_map(|order| {
        (
            (0.1f64..2.0, 0.0f64..std::f64::consts::TAU),
            prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), order - 1),
        )
            .prop_map(|((r, theta), rest)| {
                let mut c = vec![Complex64::new(0.5, -0.25), Complex64::from_polar(r, theta)];
                // f = c_0 + r (w + small higher terms), so the inverse has
                // coefficients of order r^{-k} and no worse
                c.extend(
                    rest.into_iter().enumerate().map(|(k, (re, im))| {
                        Complex64::new(re, im) * r * 0.5f64.powi(k as i32 + 1)
                    }),
                );
                c
            })
    })
}

fn rational_series(max_order: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-20i64..=20, 1i64..=9), 2..=max_order + 1).prop_map(|pairs| {
        pairs
            .into_iter()
            .enumerate()
            .map(|(k, (n, d))| {
                // linear coefficient must be nonzero
                let n = if k == 1 && n == 0 { 1 } else { n };
                BigRational::new(BigInt::from(n), BigInt::from(d))
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complex_reversion_round_trips(coeffs in complex_series()) {
        let base = Complex64::new(1.0, 0.0);
        let f = TruncatedSeries::new(base, coeffs).unwrap();
        let g = series_revert(&f).unwrap();
        let id = series_compose(&g, &f).unwrap();
        // Errors are measured against the same composition on absolute
        // values: each coefficient of g o f is a sum of terms whose size is
        // bounded by the majorant, and cancellation among them is inherent.
        let abs = |x: &[Complex64]| x.iter().map(|c| Complex64::new(c.norm(), 0.0)).collect::<Vec<_>>();
        let zero = Complex64::new(0.0, 0.0);
        let mut f_abs = abs(f.coeffs());
        f_abs[0] = zero;
        let majorant = series_compose(
            &TruncatedSeries::new(zero, abs(g.coeffs())).unwrap(),
            &TruncatedSeries::new(zero, f_abs).unwrap(),
        )
        .unwrap();
        let tol = 1e-13 * (f.order() as f64 + 1.0);
        let c = id.coeffs();
        prop_assert!((c[0] - base).norm() <= tol * majorant.coeff(0).re.max(1.0));
        for (k, ck) in c.iter().enumerate().skip(1) {
            let want = if k == 1 { 1.0 } else { 0.0 };
            prop_assert!(
                (ck - want).norm() <= tol * majorant.coeff(k).re,
                "k={} c_k={} bound={}", k, ck, majorant.coeff(k).re
            );
        }
    }

    #[test]
    fn rational_reversion_is_exact(coeffs in rational_series(10)) {
        let one = BigRational::from_integer(BigInt::from(1));
        let f = TruncatedSeries::new(one.clone(), coeffs).unwrap();
        let g = series_revert(&f).unwrap();
        let id = series_compose(&f, &g).unwrap();
        let mut want = vec![BigRational::from_integer(BigInt::from(0)); f.order() + 1];
        want[0] = f.coeff(0).clone();
        want[1] = one;
        prop_assert_eq!(id.coeffs(), &want[..]);
        let back = series_compose(&g, &f).unwrap();
        prop_assert_eq!(back.coeff(0), f.base());
    }

    #[test]
    fn lagrange_agrees_with_newton(coeffs in rational_series(12)) {
        let f = TruncatedSeries::new(BigRational::from_integer(BigInt::from(0)), coeffs).unwrap();
        let g = series_revert(&f).unwrap();
        for n in 1..=f.order() {
            prop_assert_eq!(&lagrange_coefficient(&f, n).unwrap(), g.coeff(n));
        }
    }
}
