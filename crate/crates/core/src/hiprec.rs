//! Rational approximations of the exponential.
//!
//! The coefficient formulas are exact-rational combinations of `e^{-jt}`; the
//! exponential is the only transcendental ingredient. It is approximated here
//! by a dyadic rational with a guaranteed number of correct bits, so that the
//! remaining arithmetic can stay exact until the final rounding to `f64`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Default number of correct bits for rational exponentials.
pub const DEFAULT_BITS: u32 = 256;

/// `e^x` for rational `x`, with relative error below `2^-bits`.
///
/// Fixed-point Taylor series after halving the argument, followed by repeated
/// squaring. Negative arguments are handled through the exact reciprocal.
pub fn exp_rational(x: &BigRational, bits: u32) -> BigRational {
    if x.is_zero() {
        return BigRational::one();
    }
    let y = x.abs();
    let int_bits = y.ceil().to_integer().bits() as u32;
    let halvings = int_bits + 4;
    // 2^halvings relative amplification from squaring, plus Taylor rounding.
    let prec = bits + halvings + 40;
    let one = BigInt::one() << prec;

    let scaled = (y * BigRational::from_integer(one.clone()))
        / BigRational::from_integer(BigInt::one() << halvings);
    let r = scaled.round().to_integer();

    let mut term = one.clone();
    let mut sum = one.clone();
    let mut k = 1u32;
    loop {
        term = (&term * &r) >> prec;
        term = term.div_floor(&BigInt::from(k));
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    for _ in 0..halvings {
        sum = (&sum * &sum) >> prec;
    }

    if x.is_positive() {
        BigRational::new(sum, one)
    } else {
        BigRational::new(one, sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{f64_to_rational, rational_to_f64};

    #[test]
    fn matches_std_exp() {
        for x in [1.0, -1.0, 0.5, -2.5, 40.0, -160.0, 1e-3] {
            let e = exp_rational(&f64_to_rational(x), 128);
            let got = rational_to_f64(&e);
            let want = x.exp();
            assert!(
                ((got - want) / want).abs() < 4e-16,
                "x={x} got={got} want={want}"
            );
        }
    }

    #[test]
    fn product_of_exponentials_is_consistent() {
        // e^{a} e^{-a} = 1 to the requested precision
        let a = f64_to_rational(2.5);
        let p = exp_rational(&a, 200) * exp_rational(&-a, 200);
        let err = (p - BigRational::one()).abs();
        let bound = BigRational::new(BigInt::one(), BigInt::one() << 195u32);
        assert!(err < bound);
    }
}
