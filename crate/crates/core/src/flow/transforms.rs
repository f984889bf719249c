use num_bigint::BigInt;
use num_rational::BigRational;

use super::FlowParams;
use crate::error::{Error, Result};
use crate::scalar::{rational_to_f64, Scalar};
use crate::specfun::{binomial, binomial_rational};

/// `b_n = sum_{k<=n} C(2n, n-k) c_k`.
pub fn binom_transform<R: Scalar>(c: &[R]) -> Vec<R> {
    (0..c.len())
        .map(|n| {
            c.iter()
                .take(n + 1)
                .enumerate()
                .fold(R::zero(), |acc, (k, ck)| {
                    acc + R::from_rational(&binomial_rational(2 * n as u64, (n - k) as i64))
                        * ck.clone()
                })
        })
        .collect()
}

/// Inverse of [`binom_transform`]:
/// `c_0 = b_0`, `c_n = sum_{k<=n} (-1)^{k+n} (2n/(n+k)) C(n+k, n-k) b_k`.
pub fn inv_binom_transform<R: Scalar>(b: &[R]) -> Vec<R> {
    (0..b.len())
        .map(|n| {
            if n == 0 {
                return b[0].clone();
            }
            b.iter()
                .take(n + 1)
                .enumerate()
                .fold(R::zero(), |acc, (k, bk)| {
                    let w = R::from_rational(&inv_rel_weight(n as u64, k as u64));
                    if (k + n) % 2 == 0 {
                        acc + w * bk.clone()
                    } else {
                        acc - w * bk.clone()
                    }
                })
        })
        .collect()
}

/// `(2n/(n+k)) C(n+k, n-k)` for `n >= 1`.
pub fn inv_rel_weight(n: u64, k: u64) -> BigRational {
    BigRational::new(BigInt::from(2 * n), BigInt::from(n + k))
        * binomial_rational(n + k, n as i64 - k as i64)
}

/// `C(n+k, n-k) + C(n+k-1, n-k-1)` for `n >= 1`; equal to [`inv_rel_weight`].
pub fn inv_rel_weight_split(n: u64, k: u64) -> BigRational {
    let first = binomial(n + k, n as i64 - k as i64);
    let second = binomial(n + k - 1, n as i64 - k as i64 - 1);
    BigRational::from_integer(first + second)
}

/// `tau(J^n) = C(2n,n)/2^{2n+1} + kappa/2 + 4^{-n} sum_{k=1}^n C(2n,n-k) tau(U^k)`
/// for `n = 1..=n_max`, with `unitary[k-1] = tau(U^k)`.
pub fn jacobi_moments_in<R: Scalar>(unitary: &[R], kappa: &R, n_max: usize) -> Result<Vec<R>> {
    if unitary.len() < n_max {
        return Err(Error::domain(
            "jacobi_moments",
            format!("need {n_max} unitary moments, got {}", unitary.len()),
        ));
    }
    let two = R::from_i64(2);
    let half_kappa = kappa.clone() / two;
    Ok((1..=n_max)
        .map(|n| {
            let four_n = R::from_rational(&BigRational::from_integer(BigInt::from(1) << (2 * n)));
            let central = R::from_rational(&binomial_rational(2 * n as u64, n as i64));
            let sum = (1..=n).fold(R::zero(), |acc, k| {
                acc + R::from_rational(&binomial_rational(2 * n as u64, (n - k) as i64))
                    * unitary[k - 1].clone()
            });
            central / (four_n.clone() * R::from_i64(2)) + half_kappa.clone() + sum / four_n
        })
        .collect())
}

/// [`jacobi_moments_in`] at the exact `kappa` of `p`, rounded once.
pub fn jacobi_moments(unitary: &[f64], p: &FlowParams, n_max: usize) -> Result<Vec<f64>> {
    let exact: Vec<BigRational> = unitary
        .iter()
        .map(|&u| crate::scalar::f64_to_rational(u))
        .collect();
    let moments = jacobi_moments_in(&exact, p.kappa_exact(), n_max)?;
    Ok(moments.iter().map(rational_to_f64).collect())
}

/// Moments `m_k = e^{-kt} L_{k-1}^{(1)}(2kt) / k` of the free unitary
/// Brownian motion at time `2t`, `k = 1..=n_max`.
pub fn herglotz_moments(t: f64, n_max: usize) -> Vec<f64> {
    (1..=n_max)
        .map(|k| crate::maps::k_series_coeff(t, k as u32) / 2.0)
        .collect()
}

/// `E[((Y + Y* + 2)/4)^n] = 4^{-n} (C(2n,n) + 2 sum_k C(2n,n-k) m_k)` for a
/// unitary `Y` with real moments `m_k`.
pub fn symmetric_moments<R: Scalar>(m: &[R], n_max: usize) -> Vec<R> {
    (1..=n_max)
        .map(|n| {
            let four_n = R::from_rational(&BigRational::from_integer(BigInt::from(1) << (2 * n)));
            let sum = (1..=n).fold(R::zero(), |acc, k| {
                acc + R::from_rational(&binomial_rational(2 * n as u64, (n - k) as i64))
                    * m[k - 1].clone()
            });
            (R::from_rational(&binomial_rational(2 * n as u64, n as i64)) + R::from_i64(2) * sum)
                / four_n
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn transform_of_unit_vectors() {
        let mut e0 = vec![BigRational::zero(); 8];
        e0[0] = BigRational::one();
        let b = binom_transform(&e0);
        for (n, bn) in b.iter().enumerate() {
            assert_eq!(*bn, binomial_rational(2 * n as u64, n as i64));
        }
        let mut e1 = vec![BigRational::zero(); 8];
        e1[1] = BigRational::one();
        let b = binom_transform(&e1);
        for (n, bn) in b.iter().enumerate() {
            assert_eq!(*bn, binomial_rational(2 * n as u64, n as i64 - 1));
        }
    }

    #[test]
    fn inverse_of_unit_vector() {
        let mut b = vec![BigRational::zero(); 10];
        b[0] = BigRational::one();
        let c = inv_binom_transform(&b);
        assert_eq!(c[0], BigRational::one());
        for (n, cn) in c.iter().enumerate().skip(1) {
            let want = if n % 2 == 0 { q(2, 1) } else { q(-2, 1) };
            assert_eq!(*cn, want);
        }
    }

    #[test]
    fn round_trip_is_exact() {
        let c: Vec<BigRational> = (0..30).map(|k| q(k * k - 7 * k + 3, k + 2)).collect();
        assert_eq!(inv_binom_transform(&binom_transform(&c)), c);
        assert_eq!(binom_transform(&inv_binom_transform(&c)), c);
    }

    #[test]
    fn weight_forms_agree() {
        for n in 1..=30u64 {
            for k in 0..=30u64 {
                assert_eq!(
                    inv_rel_weight(n, k),
                    inv_rel_weight_split(n, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn moments_at_time_zero() {
        for kappa in [q(0, 1), q(3, 10), q(-7, 10)] {
            let ones = vec![BigRational::one(); 16];
            let m = jacobi_moments_in(&ones, &kappa, 16).unwrap();
            let want = (BigRational::one() + &kappa) / q(2, 1);
            assert!(m.iter().all(|x| *x == want));
        }
    }

    #[test]
    fn moments_with_vanishing_unitary_part() {
        let zeros = vec![BigRational::zero(); 6];
        let kappa = q(1, 4);
        let m = jacobi_moments_in(&zeros, &kappa, 6).unwrap();
        for (i, mn) in m.iter().enumerate() {
            let n = i + 1;
            let want = binomial_rational(2 * n as u64, n as i64)
                / BigRational::from_integer(BigInt::from(1) << (2 * n + 1))
                + &kappa / q(2, 1);
            assert_eq!(*mn, want);
        }
        assert!(jacobi_moments_in(&zeros, &kappa, 7).is_err());
    }

    #[test]
    fn symmetric_kappa_zero_is_half_the_compressed_moment() {
        // tau(P) = 1/2 at kappa = 0, so tau(J^n) is half the moment of the
        // compressed operator (Y + Y* + 2)/4
        for t in [0.5, 1.0, 2.5] {
            let p = FlowParams::new(0.0, t).unwrap();
            let m = herglotz_moments(t, 12);
            let lhs = jacobi_moments(&m, &p, 12).unwrap();
            let rhs = symmetric_moments(&m, 12);
            for (a, b) in lhs.iter().zip(&rhs) {
                assert!((2.0 * a - b).abs() < 1e-14, "{a} {b}");
            }
        }
    }
}
