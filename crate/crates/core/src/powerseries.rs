//! Truncated power series over an abstract coefficient ring.
//!
//! A [`TruncatedSeries`] is `f(x) = sum_{k<=N} c_k (x - base)^k`. Composition
//! `f o g` needs `g(base_g) = base_f`, i.e. the constant term of the inner
//! series must equal the expansion point of the outer one. Reversion maps a
//! series about `b` with `f(b) = c_0` to its inverse about `c_0`.
//!
//! Reversion is done by Newton iteration with order doubling and never by
//! coefficient extraction, so that it can serve as an independent check of
//! closed-form Lagrange coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_ORDER: usize = 24;
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<R> {
    base: R,
    coeffs: Vec<R>,
}

impl<R: Scalar> TruncatedSeries<R> {
    /// Series with the given coefficients `c_0..c_N` about `base`.
    pub fn new(base: R, coeffs: Vec<R>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::SeriesMismatch(
                "a series needs at least one coefficient".into(),
            ));
        }
        let order = coeffs.len() - 1;
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        if !base.is_finite() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("series coefficients"));
        }
        Ok(TruncatedSeries { base, coeffs })
    }

    pub fn constant(base: R, value: R, order: usize) -> Result<Self> {
        let mut coeffs = vec![R::zero(); order + 1];
        coeffs[0] = value;
        Self::new(base, coeffs)
    }

    /// The identity map `x -> x` expanded about `base`.
    pub fn identity(base: R, order: usize) -> Result<Self> {
        let mut coeffs = vec![R::zero(); order + 1];
        coeffs[0] = base.clone();
        if order >= 1 {
            coeffs[1] = R::one();
        }
        Self::new(base, coeffs)
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Evaluates the truncated polynomial at `x` by Horner's rule.
    pub fn eval(&self, x: &R) -> R {
        let h = x.clone() - self.base.clone();
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * h.clone() + c.clone())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, R::zero());
        TruncatedSeries {
            base: self.base.clone(),
            coeffs,
        }
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> Result<TruncatedSeries<S>> {
        TruncatedSeries::new(f(&self.base), self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, s: &R) -> Self {
        TruncatedSeries {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_aligned(self, other)?;
        Ok(TruncatedSeries {
            base: self.base.clone(),
            coeffs: zip_with(&self.coeffs, &other.coeffs, |a, b| a + b),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_aligned(self, other)?;
        Ok(TruncatedSeries {
            base: self.base.clone(),
            coeffs: zip_with(&self.coeffs, &other.coeffs, |a, b| a - b),
        })
    }

    /// Adds a constant to `c_0`.
    pub fn add_constant(&self, c: &R) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].clone() + c.clone();
        out
    }
}

fn zip_with<R: Scalar>(a: &[R], b: &[R], f: impl Fn(R, R) -> R) -> Vec<R> {
    a.iter()
        .zip(b)
        .map(|(x, y)| f(x.clone(), y.clone()))
        .collect()
}

fn check_aligned<R: Scalar>(f: &TruncatedSeries<R>, g: &TruncatedSeries<R>) -> Result<()> {
    if f.base != g.base {
        return Err(Error::SeriesMismatch(format!(
            "bases differ: {:?} vs {:?}",
            f.base, g.base
        )));
    }
    if f.order() != g.order() {
        return Err(Error::SeriesMismatch(format!(
            "orders differ: {} vs {}",
            f.order(),
            g.order()
        )));
    }
    Ok(())
}

// Raw coefficient kernels; `len` is the number of coefficients kept.

fn mul_trunc<R: Scalar>(a: &[R], b: &[R], len: usize) -> Vec<R> {
    let mut out = vec![R::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if *ai == R::zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].clone() + ai.clone() * bj.clone();
        }
    }
    out
}

fn recip_trunc<R: Scalar>(a: &[R], len: usize) -> Result<Vec<R>> {
    if a[0] == R::zero() {
        return Err(Error::SeriesMismatch(
            "reciprocal needs a nonzero constant term".into(),
        ));
    }
    let inv0 = R::one() / a[0].clone();
    let mut out = vec![R::zero(); len];
    out[0] = inv0.clone();
    for n in 1..len {
        let mut acc = R::zero();
        for k in 1..=n.min(a.len() - 1) {
            acc = acc + a[k].clone() * out[n - k].clone();
        }
        out[n] = -(acc * inv0.clone());
    }
    Ok(out)
}

/// Horner composition `sum_k f[k] g^k`, where `g` has zero constant term.
fn compose_trunc<R: Scalar>(f: &[R], g: &[R], len: usize) -> Vec<R> {
    let mut out = vec![R::zero(); len];
    for c in f.iter().take(len).rev() {
        out = mul_trunc(&out, g, len);
        out[0] = out[0].clone() + c.clone();
    }
    out
}

fn derive_raw<R: Scalar>(f: &[R]) -> Vec<R> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.clone() * R::from_i64(k as i64))
        .collect()
}

/// Cauchy product truncated to the common order.
pub fn series_mul<R: Scalar>(
    f: &TruncatedSeries<R>,
    g: &TruncatedSeries<R>,
) -> Result<TruncatedSeries<R>> {
    check_aligned(f, g)?;
    let len = f.coeffs.len();
    TruncatedSeries::new(f.base.clone(), mul_trunc(&f.coeffs, &g.coeffs, len))
}

/// Multiplicative inverse `1/f`; needs `c_0 != 0`.
pub fn series_recip<R: Scalar>(f: &TruncatedSeries<R>) -> Result<TruncatedSeries<R>> {
    let len = f.coeffs.len();
    TruncatedSeries::new(f.base.clone(), recip_trunc(&f.coeffs, len)?)
}

pub fn series_div<R: Scalar>(
    f: &TruncatedSeries<R>,
    g: &TruncatedSeries<R>,
) -> Result<TruncatedSeries<R>> {
    series_mul(f, &series_recip(g)?)
}

pub fn series_pow<R: Scalar>(f: &TruncatedSeries<R>, k: u32) -> Result<TruncatedSeries<R>> {
    let mut acc = TruncatedSeries::constant(f.base.clone(), R::one(), f.order())?;
    for _ in 0..k {
        acc = series_mul(&acc, f)?;
    }
    Ok(acc)
}

/// Taylor coefficients of `f(g(x))` about `g`'s base.
pub fn series_compose<R: Scalar>(
    f: &TruncatedSeries<R>,
    g: &TruncatedSeries<R>,
) -> Result<TruncatedSeries<R>> {
    if f.order() != g.order() {
        return Err(Error::SeriesMismatch(format!(
            "orders differ: {} vs {}",
            f.order(),
            g.order()
        )));
    }
    if g.coeffs[0] != f.base {
        return Err(Error::SeriesMismatch(format!(
            "inner constant term {:?} differs from outer base {:?}",
            g.coeffs[0], f.base
        )));
    }
    let mut inner = g.coeffs.clone();
    inner[0] = R::zero();
    let len = f.coeffs.len();
    TruncatedSeries::new(g.base.clone(), compose_trunc(&f.coeffs, &inner, len))
}

/// Compositional inverse by Newton iteration with order doubling.
///
/// For `f` about `b` with `f(b) = c_0`, returns `g` about `c_0` with
/// `g(c_0) = b` and `f o g = id` to order `N`.
pub fn series_revert<R: Scalar>(f: &TruncatedSeries<R>) -> Result<TruncatedSeries<R>> {
    let n = f.order();
    if n == 0 {
        return TruncatedSeries::new(f.coeffs[0].clone(), vec![f.base.clone()]);
    }
    if f.coeffs[1] == R::zero() {
        return Err(Error::NotInvertible);
    }
    // shifted map F(w) = f(b + w) - c_0, zero constant term
    let mut shifted = f.coeffs.clone();
    shifted[0] = R::zero();
    let dshifted = derive_raw(&shifted);

    // h ~ w / f_1, exact to order 1
    let mut h = vec![R::zero(), R::one() / shifted[1].clone()];
    let mut prec = 1usize;
    while prec < n {
        let next = (2 * prec).min(n);
        let len = next + 1;
        h.resize(len, R::zero());
        let mut residual = compose_trunc(&shifted, &h, len);
        residual[1] = residual[1].clone() - R::one();
        let slope = compose_trunc(&dshifted, &h, len);
        let step = mul_trunc(&residual, &recip_trunc(&slope, len)?, len);
        for (hk, sk) in h.iter_mut().zip(step) {
            *hk = hk.clone() - sk;
        }
        prec = next;
    }
    h[0] = f.base.clone();
    TruncatedSeries::new(f.coeffs[0].clone(), h)
}

/// Termwise derivative; the result has order `N - 1`.
pub fn series_derive<R: Scalar>(f: &TruncatedSeries<R>) -> Result<TruncatedSeries<R>> {
    if f.order() == 0 {
        return Err(Error::SeriesMismatch("derivative needs order >= 1".into()));
    }
    TruncatedSeries::new(f.base.clone(), derive_raw(&f.coeffs))
}

/// `n`-th Taylor coefficient of the inverse of `f` by Lagrange's formula,
/// `(1/n) [w^{n-1}] (w / F(w))^n` with `F(w) = f(b + w) - c_0`.
///
/// Uses only the first `n + 1` coefficients of `f`. Kept separate from
/// [`series_revert`]; the two are cross-checked in the tests.
pub fn lagrange_coefficient<R: Scalar>(f: &TruncatedSeries<R>, n: usize) -> Result<R> {
    if n == 0 || n > f.order() {
        return Err(Error::domain(
            "lagrange_coefficient",
            format!("index {n} outside 1..={}", f.order()),
        ));
    }
    if f.coeffs[1] == R::zero() {
        return Err(Error::NotInvertible);
    }
    // F(w)/w = f_1 + f_2 w + ...
    let quotient: Vec<R> = f.coeffs[1..=n].to_vec();
    let inv = recip_trunc(&quotient, n)?;
    let mut power = vec![R::zero(); n];
    power[0] = R::one();
    for _ in 0..n {
        power = mul_trunc(&power, &inv, n);
    }
    Ok(power[n - 1].clone() / R::from_i64(n as i64))
}

/// Multiplies by `(x - base)`, dropping the top coefficient.
pub fn shift_up<R: Scalar>(f: &TruncatedSeries<R>) -> TruncatedSeries<R> {
    let mut coeffs = Vec::with_capacity(f.coeffs.len());
    coeffs.push(R::zero());
    coeffs.extend_from_slice(&f.coeffs[..f.coeffs.len() - 1]);
    TruncatedSeries {
        base: f.base.clone(),
        coeffs,
    }
}

/// Coefficients of `sqrt(1 - u) = sum_k binom(1/2, k) (-u)^k`, exactly.
pub fn sqrt_one_minus_coeffs(order: usize) -> Vec<BigRational> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut out = Vec::with_capacity(order + 1);
    let mut c = BigRational::one();
    for k in 0..=order {
        if k > 0 {
            // binom(1/2, k) = binom(1/2, k-1) (1/2 - k + 1)/k, times -1 for (-u)^k
            c = -c * (&half - BigRational::from_integer(BigInt::from(k as i64 - 1)))
                / BigRational::from_integer(BigInt::from(k as i64));
        }
        out.push(c.clone());
    }
    out
}

/// `true` when every coefficient is zero.
pub fn is_zero_series<R: Scalar>(f: &TruncatedSeries<R>) -> bool {
    f.coeffs.iter().all(Zero::is_zero)
}
