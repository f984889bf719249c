//! Coefficient rings shared by the series algebra and the special functions.
//!
//! The same code runs over complex binary64, exact rationals and Gaussian
//! rationals, so an exact evaluation is always available as ground truth for
//! the floating one.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact complex numbers with rational parts.
pub type GaussianRational = Complex<BigRational>;

/// A field that can absorb exact rationals.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(q: &BigRational) -> Self;

    fn to_complex(&self) -> Complex64;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn is_finite(&self) -> bool {
        true
    }
}

/// Rounds an exact rational to the nearest binary64 value.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite binary64 number.
///
/// Panics on NaN or infinity; callers validate their inputs first.
pub fn f64_to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Exact Gaussian-rational value of a finite complex binary64 number.
pub fn complex_to_gaussian(z: Complex64) -> GaussianRational {
    Complex::new(f64_to_rational(z.re), f64_to_rational(z.im))
}

impl Scalar for f64 {
    fn from_rational(q: &BigRational) -> Self {
        rational_to_f64(q)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Scalar for Complex64 {
    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Scalar for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
}

impl Scalar for GaussianRational {
    fn from_rational(q: &BigRational) -> Self {
        Complex::new(q.clone(), BigRational::zero())
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip_is_exact() {
        for x in [0.1, -3.75, 1e-300, 12345.678, 0.3] {
            assert_eq!(rational_to_f64(&f64_to_rational(x)), x);
        }
    }

    #[test]
    fn thirds_round_to_nearest() {
        let q = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(rational_to_f64(&q), 1.0 / 3.0);
        let q = BigRational::new(BigInt::from(-2), BigInt::from(3));
        assert_eq!(rational_to_f64(&q), -2.0 / 3.0);
    }

    #[test]
    fn gaussian_division() {
        let i = GaussianRational::new(BigRational::zero(), BigRational::one());
        let one = GaussianRational::one();
        assert_eq!(one.clone() / i.clone(), -i);
    }
}
