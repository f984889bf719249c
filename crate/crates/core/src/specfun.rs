//! Pochhammer symbols, binomials and the terminating hypergeometric families
//! used by the coefficient formulas: Laguerre, Charlier and Jacobi.
//!
//! Every sum is taken in the index order of its defining formula. The inner
//! factors (Pochhammer products, binomials, factorials) are formed exactly and
//! only the finished coefficient is converted into the target ring, so the
//! same routine gives the floating result for `Complex64` and the exact one
//! for [`BigRational`] or [`GaussianRational`](crate::GaussianRational).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{complex_to_gaussian, f64_to_rational, rational_to_f64, Scalar};

/// Degree and parameters of a classical polynomial family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyIndex {
    pub n: u32,
    /// Laguerre index; any real value.
    pub alpha: f64,
    /// Jacobi parameters.
    pub a: f64,
    pub b: f64,
}

impl PolyIndex {
    pub fn laguerre(n: u32, alpha: f64) -> Self {
        PolyIndex {
            n,
            alpha,
            a: 0.0,
            b: 0.0,
        }
    }

    pub fn jacobi(n: u32, a: f64, b: f64) -> Self {
        PolyIndex {
            n,
            alpha: 0.0,
            a,
            b,
        }
    }

    pub fn eval_laguerre(&self, z: Complex64) -> Complex64 {
        laguerre(self.n, self.alpha, z)
    }

    pub fn eval_jacobi(&self, z: Complex64) -> Complex64 {
        jacobi_poly(self.n, self.a, self.b, z)
    }
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a + i as f64))
}

pub fn pochhammer_exact(a: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x += BigRational::one();
    }
    acc
}

/// Exact binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn binomial_rational(n: u64, k: i64) -> BigRational {
    BigRational::from_integer(binomial(n, k))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, i| acc * i)
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Coefficients `c_j` of `L_n^{(alpha)}(z) = sum_j c_j z^j`,
/// `c_j = (-n)_j/j! (alpha+j+1)_{n-j} / n!`.
pub fn laguerre_coeffs(n: u32, alpha: &BigRational) -> Vec<BigRational> {
    let n_fact = BigRational::from_integer(factorial(n));
    // (alpha+j+1)_{n-j} built downward from j = n, C(n, j) upward
    let mut tails = vec![BigRational::one(); n as usize + 1];
    for j in (0..n as usize).rev() {
        tails[j] = &tails[j + 1] * (alpha + int(j as i64 + 1));
    }
    let mut binom = BigInt::one();
    (0..=n)
        .map(|j| {
            if j > 0 {
                binom = &binom * (n - j + 1) / j;
            }
            // (-n)_j / j! = (-1)^j C(n, j)
            let signed = if j % 2 == 0 {
                binom.clone()
            } else {
                -binom.clone()
            };
            BigRational::from_integer(signed) * &tails[j as usize] / &n_fact
        })
        .collect()
}

/// Sums `coeffs[j] * z^j` left to right, converting each exact coefficient
/// into the target ring just before it is used.
fn sum_powers<R: Scalar>(coeffs: &[BigRational], z: &R) -> R {
    let mut acc = R::zero();
    let mut power = R::one();
    for (j, c) in coeffs.iter().enumerate() {
        if j > 0 {
            power = power * z.clone();
        }
        if !c.is_zero() {
            acc = acc + R::from_rational(c) * power.clone();
        }
    }
    acc
}

/// `L_n^{(alpha)}(z)` in any coefficient ring.
pub fn laguerre_in<R: Scalar>(n: u32, alpha: &BigRational, z: &R) -> R {
    sum_powers(&laguerre_coeffs(n, alpha), z)
}

/// Generalized Laguerre polynomial `L_n^{(alpha)}(z)` for real `alpha` and
/// complex `z`.
///
/// Evaluated exactly at the exact value of `z` and rounded once, since the
/// power-basis sum cancels for moderate `n`.
pub fn laguerre(n: u32, alpha: f64, z: Complex64) -> Complex64 {
    laguerre_in(n, &f64_to_rational(alpha), &complex_to_gaussian(z)).to_complex()
}

/// `L_n^{(alpha)}(x)` at rational `x`, exactly.
///
/// For integer `alpha` the sum is accumulated over the integers as
/// `sum_j (-1)^j C(n,j) (alpha+j+1)_{n-j} p^j q^{n-j}` with `x = p/q`, and a
/// single division by `n! q^n` at the end.
pub fn laguerre_exact(n: u32, alpha: &BigRational, x: &BigRational) -> BigRational {
    if !alpha.is_integer() {
        return laguerre_in(n, alpha, x);
    }
    let a = alpha.to_integer();
    let (p, q) = (x.numer(), x.denom());
    let nu = n as usize;
    let mut tails = vec![BigInt::one(); nu + 1];
    for j in (0..nu).rev() {
        tails[j] = &tails[j + 1] * (&a + BigInt::from(j as u64 + 1));
    }
    let mut q_pows = vec![BigInt::one(); nu + 1];
    for j in 1..=nu {
        q_pows[j] = &q_pows[j - 1] * q;
    }
    let mut binom = BigInt::one();
    let mut p_pow = BigInt::one();
    let mut acc = BigInt::zero();
    for j in 0..=nu {
        if j > 0 {
            binom = binom * (nu - j + 1) / j;
            p_pow *= p;
        }
        let term = &binom * &tails[j] * &p_pow * &q_pows[nu - j];
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    BigRational::new(acc, factorial(n) * &q_pows[nu])
}

/// `L_n^{(alpha)}(x)` for real `x`, evaluated exactly and rounded once.
///
/// Use this where the alternating sum cancels heavily, e.g. `L_{n-1}^{(1)}(2nt)`.
pub fn laguerre_real(n: u32, alpha: f64, x: f64) -> f64 {
    rational_to_f64(&laguerre_exact(
        n,
        &f64_to_rational(alpha),
        &f64_to_rational(x),
    ))
}

/// `C_n(x, a) = 2F0(-n, -x; -1/a)` in any coefficient ring.
pub fn charlier_in<R: Scalar>(n: u32, x: i64, a: &R) -> Result<R> {
    if *a == R::zero() {
        return Err(Error::domain("charlier", "parameter a must be nonzero"));
    }
    let arg = -(R::one() / a.clone());
    let neg_n = int(-(n as i64));
    let neg_x = int(-x);
    let coeffs: Vec<BigRational> = (0..=n)
        .map(|j| {
            pochhammer_exact(&neg_n, j) * pochhammer_exact(&neg_x, j)
                / BigRational::from_integer(factorial(j))
        })
        .collect();
    Ok(sum_powers(&coeffs, &arg))
}

pub fn charlier(n: u32, x: i64, a: f64) -> Result<f64> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::domain(
            "charlier",
            "parameter a must be finite and nonzero",
        ));
    }
    charlier_in(n, x, &a)
}

pub fn charlier_exact(n: u32, x: i64, a: &BigRational) -> Result<BigRational> {
    charlier_in(n, x, a)
}

/// Coefficients of `P_n^{a,b}` as a polynomial in `u = (1 - z)/2`.
///
/// `(a+1)_n/n! * (-n)_k (n+a+b+1)_k / ((a+1)_k k!)`, with the ratio
/// `(a+1)_n / (a+1)_k` written as `(a+k+1)_{n-k}` so that no parameter value
/// makes it singular.
pub fn jacobi_coeffs(n: u32, a: &BigRational, b: &BigRational) -> Vec<BigRational> {
    let n_fact = BigRational::from_integer(factorial(n));
    let shift = a + b + int(n as i64 + 1);
    (0..=n)
        .map(|k| {
            let sign_binom = if k % 2 == 0 {
                binomial_rational(n as u64, k as i64)
            } else {
                -binomial_rational(n as u64, k as i64)
            };
            sign_binom
                * pochhammer_exact(&shift, k)
                * pochhammer_exact(&(a + int(k as i64 + 1)), n - k)
                / &n_fact
        })
        .collect()
}

/// Jacobi polynomial `P_n^{a,b}(z)` in any coefficient ring.
pub fn jacobi_in<R: Scalar>(n: u32, a: &BigRational, b: &BigRational, z: &R) -> R {
    let half = R::from_rational(&BigRational::new(BigInt::one(), BigInt::from(2)));
    let u = (R::one() - z.clone()) * half;
    sum_powers(&jacobi_coeffs(n, a, b), &u)
}

/// Jacobi polynomial `P_n^{a,b}(z)` for real parameters and complex `z`,
/// evaluated exactly at the exact value of `z` and rounded once.
pub fn jacobi_poly(n: u32, a: f64, b: f64, z: Complex64) -> Complex64 {
    jacobi_in(
        n,
        &f64_to_rational(a),
        &f64_to_rational(b),
        &complex_to_gaussian(z),
    )
    .to_complex()
}

/// `P_0^{a,b}(z), ..., P_{n_max}^{a,b}(z)` by the three-term recurrence in `n`.
///
/// The explicit sum alternates with terms far larger than the result once
/// `n` reaches a few dozen; the forward recurrence does not. Requires
/// `a + b >= 0` so that no recurrence denominator vanishes.
pub fn jacobi_sequence(n_max: u32, a: f64, b: f64, z: Complex64) -> Vec<Complex64> {
    assert!(a + b >= 0.0, "jacobi_sequence needs a + b >= 0");
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(Complex64::new(1.0, 0.0));
    if n_max == 0 {
        return out;
    }
    out.push((a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0);
    for n in 2..=n_max as usize {
        let nf = n as f64;
        let s = 2.0 * nf + a + b;
        let lead = 2.0 * nf * (nf + a + b) * (s - 2.0);
        let p1 = (s - 1.0) * (s * (s - 2.0) * z + a * a - b * b) * out[n - 1];
        let p2 = 2.0 * (nf + a - 1.0) * (nf + b - 1.0) * s * out[n - 2];
        out.push((p1 - p2) / lead);
    }
    out
}
