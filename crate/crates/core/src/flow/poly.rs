use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Scalar;
use crate::specfun::{binomial, factorial, pochhammer_exact};

/// Polynomial in `epsilon` with exact rational coefficients, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    /// Trailing zero coefficients are trimmed; the zero polynomial is empty.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval<R: Scalar>(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + R::from_rational(c))
    }

    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

/// `P_n^(m)(eps) = ((-1)^m / m!) sum_k C(n,k) (-eps)^k (2k)_m`.
pub fn pnm_poly(n: u32, m: u32) -> RationalPoly {
    let sign_m = if m.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let denom = BigRational::from_integer(factorial(m));
    let coeffs = (0..=n)
        .map(|k| {
            let sign_k = if k % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            let c = BigRational::from_integer(binomial(n as u64, k as i64) * sign_k * &sign_m);
            c * pochhammer_exact(&BigRational::from_integer(BigInt::from(2 * k)), m) / &denom
        })
        .collect();
    RationalPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn p11_is_two_eps() {
        assert_eq!(pnm_poly(1, 1).coeffs(), &[q(0), q(2)]);
    }

    #[test]
    fn m_zero_is_power_of_one_minus_eps() {
        for n in 0..=20u32 {
            let p = pnm_poly(n, 0);
            let want: Vec<BigRational> = (0..=n)
                .map(|k| {
                    let c = q(binomial(n as u64, k as i64).try_into().unwrap());
                    if k % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect();
            assert_eq!(p.coeffs(), &want[..], "n={n}");
        }
    }

    #[test]
    fn value_at_zero_and_degree() {
        for n in 0..=20u32 {
            for m in 0..=20u32 {
                let p = pnm_poly(n, m);
                let at0 = p.eval_exact(&BigRational::zero());
                assert_eq!(at0, if m == 0 { q(1) } else { q(0) }, "n={n} m={m}");
                assert!(p.degree().is_none_or(|d| d <= n as usize));
            }
        }
    }

    #[test]
    fn trimming_and_float_eval() {
        let p = RationalPoly::new(vec![q(1), q(2), q(0), q(0)]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.eval(&0.5f64), 2.0);
        assert_eq!(RationalPoly::new(vec![q(0)]).degree(), None);
    }
}
