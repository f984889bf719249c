//! Conformal maps behind the flow and the kernels of its integral form.
//!
//! All square roots are principal and validated: an argument on `(-inf, 0]`
//! is reported as [`Error::BranchCut`] instead of silently switching sheets.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::flow::{ExpPolynomial, FlowParams};
use crate::powerseries::{
    series_compose, series_div, series_mul, sqrt_one_minus_coeffs, TruncatedSeries,
};
use crate::scalar::{f64_to_rational, Scalar};
use crate::specfun::laguerre_exact;

/// Newton stopping tolerance on `|xi(Z) - y|`.
pub const NEWTON_TOL: f64 = 1e-13;
pub const NEWTON_MAX_ITER: usize = 50;
/// Number of series terms used to seed Newton.
pub const SEED_TERMS: usize = 20;
const SEED_RADIUS: f64 = 0.5;
const CONTINUATION_STEP: f64 = 0.05;

/// A point off the cut `[1, inf)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutPlanePoint(Complex64);

impl CutPlanePoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("CutPlanePoint"));
        }
        if z.im == 0.0 && z.re >= 1.0 {
            return Err(Error::domain(
                "CutPlanePoint",
                format!("{z} lies on [1, inf)"),
            ));
        }
        Ok(CutPlanePoint(z))
    }

    pub fn get(self) -> Complex64 {
        self.0
    }
}

/// A point of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint(Complex64);

impl DiscPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("DiscPoint"));
        }
        if z.norm() >= 1.0 {
            return Err(Error::domain("DiscPoint", format!("|{z}| >= 1")));
        }
        Ok(DiscPoint(z))
    }

    pub fn get(self) -> Complex64 {
        self.0
    }
}

/// Principal square root, refusing arguments on `(-inf, 0]`.
pub fn sqrt_checked(op: &'static str, arg: Complex64) -> Result<Complex64> {
    if !(arg.re.is_finite() && arg.im.is_finite()) {
        return Err(Error::NonFinite(op));
    }
    if arg.im == 0.0 && arg.re <= 0.0 {
        return Err(Error::BranchCut { op, arg });
    }
    Ok(arg.sqrt())
}

/// `alpha(z) = (1 - sqrt(1 - z)) / (1 + sqrt(1 - z))`, mapping the cut plane
/// onto the disc.
pub fn alpha(z: CutPlanePoint) -> DiscPoint {
    // 1 - z is off (-inf, 0] by construction, so the root has positive real part
    let r = (Complex64::one() - z.0).sqrt();
    DiscPoint((Complex64::one() - r) / (Complex64::one() + r))
}

/// [`alpha`] on an unchecked complex argument.
pub fn alpha_c(z: Complex64) -> Result<Complex64> {
    CutPlanePoint::new(z)
        .map(|p| alpha(p).get())
        .map_err(|_| Error::BranchCut {
            op: "alpha",
            arg: Complex64::one() - z,
        })
}

/// `alpha^{-1}(z) = 4z / (1 + z)^2`.
pub fn alpha_inv(z: Complex64) -> Result<Complex64> {
    let d = Complex64::one() + z;
    if d.is_zero() {
        return Err(Error::domain("alpha_inv", "pole at z = -1"));
    }
    Ok(4.0 * z / (d * d))
}

/// `xi_{2t}(z) = (z - 1)/(z + 1) e^{tz}`.
pub fn xi(t: f64, z: Complex64) -> Result<Complex64> {
    let d = z + 1.0;
    if d.is_zero() {
        return Err(Error::domain("xi", "pole at z = -1"));
    }
    Ok((z - 1.0) / d * (t * z).exp())
}

fn xi_and_derivative(t: f64, z: Complex64) -> (Complex64, Complex64) {
    let d = z + 1.0;
    let e = (t * z).exp();
    let ratio = (z - 1.0) / d;
    (ratio * e, e * (2.0 / (d * d) + t * ratio))
}

/// Taylor coefficient `2 e^{-nt} L_{n-1}^{(1)}(2nt) / n` of `K_{2t}` at 0.
///
/// The Laguerre value is exact at the rational point `2nt` and the
/// exponential is substituted to high precision, so the result is rounded
/// once.
pub fn k_series_coeff(t: f64, n: u32) -> f64 {
    assert!(n >= 1, "Herglotz coefficients start at n = 1");
    let tq = f64_to_rational(t);
    let x = &tq * BigRational::from_integer((2 * n).into());
    let l = laguerre_exact(n - 1, &BigRational::one(), &x);
    let mut weights = vec![BigRational::zero(); n as usize + 1];
    weights[n as usize] = l * BigRational::new(2.into(), n.into());
    ExpPolynomial::new(weights).eval(&tq)
}

/// The Herglotz transform `K_{2t}`, the inverse of `xi_{2t}` on the disc.
///
/// Holds the seed series so that repeated evaluations only pay for Newton.
#[derive(Debug, Clone)]
pub struct HerglotzK {
    t: f64,
    seed: Vec<f64>,
}

impl HerglotzK {
    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::InvalidParams(format!("t must be positive, got {t}")));
        }
        let seed = (1..=SEED_TERMS as u32)
            .map(|n| k_series_coeff(t, n))
            .collect();
        Ok(HerglotzK { t, seed })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Truncated series `1 + sum_{n <= SEED_TERMS} k_n y^n`.
    pub fn seed_value(&self, y: Complex64) -> Complex64 {
        self.seed
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| (acc + c) * y)
            + 1.0
    }

    /// `K_{2t}(y)` for `|y| < 1`.
    pub fn eval(&self, y: Complex64) -> Result<Complex64> {
        let y = DiscPoint::new(y)?.get();
        let r = y.norm();
        if r <= SEED_RADIUS {
            return self.newton(y, self.seed_value(y));
        }
        // radial continuation from |y| = 0.5, reusing each solution as seed
        let dir = y / r;
        let mut z = self.newton(dir * SEED_RADIUS, self.seed_value(dir * SEED_RADIUS))?;
        let mut rad = SEED_RADIUS;
        while rad < r {
            rad = (rad + CONTINUATION_STEP).min(r);
            z = self.newton(dir * rad, z)?;
        }
        Ok(z)
    }

    fn newton(&self, y: Complex64, mut z: Complex64) -> Result<Complex64> {
        let mut residual = f64::INFINITY;
        for _ in 0..NEWTON_MAX_ITER {
            let (f, df) = xi_and_derivative(self.t, z);
            residual = (f - y).norm();
            if residual < NEWTON_TOL {
                // one polishing step costs nothing and tightens the root
                let step = (f - y) / df;
                let polished = z - step;
                let (fp, _) = xi_and_derivative(self.t, polished);
                return Ok(if (fp - y).norm() <= residual {
                    polished
                } else {
                    z
                });
            }
            if df.is_zero() || !(df.re.is_finite() && df.im.is_finite()) {
                break;
            }
            z -= (f - y) / df;
        }
        Err(Error::NewtonFailed {
            target: y,
            last: z,
            residual,
            iterations: NEWTON_MAX_ITER,
        })
    }
}

/// One-off evaluation of `K_{2t}(y)`.
pub fn herglotz_k(t: f64, y: DiscPoint) -> Result<Complex64> {
    HerglotzK::new(t)?.eval(y.get())
}

/// `V_{kappa,2t}(z) = K_{2t}(alpha((1 - eps) alpha^{-1}(z)))`.
pub fn v_deformed_with(k: &HerglotzK, p: &FlowParams, z: DiscPoint) -> Result<Complex64> {
    let inner = (1.0 - p.epsilon()) * alpha_inv(z.get())?;
    k.eval(alpha_c(inner)?)
}

pub fn v_deformed(p: &FlowParams, z: DiscPoint) -> Result<Complex64> {
    v_deformed_with(&HerglotzK::new(p.t())?, p, z)
}

/// `phi(z) = z^2/(z^2 - kappa^2) alpha^{-1}(xi_{2t}(z))`.
pub fn phi(p: &FlowParams, z: Complex64) -> Result<Complex64> {
    let z2 = z * z;
    let d = z2 - p.epsilon();
    if d.is_zero() {
        return Err(Error::domain("phi", "pole at z = +-kappa"));
    }
    Ok(z2 / d * alpha_inv(xi(p.t(), z)?)?)
}

/// `Phi = alpha o phi`.
pub fn big_phi(p: &FlowParams, z: Complex64) -> Result<Complex64> {
    alpha_c(phi(p, z)?)
}

/// `a(s) = sqrt(kappa^2 + (1 - kappa^2) s^2)`, principal, so `a(1) = 1`.
pub fn a_map(p: &FlowParams, s: Complex64) -> Result<Complex64> {
    let eps = p.epsilon();
    sqrt_checked("a_map", eps + (1.0 - eps) * s * s)
}

/// `psi(z) = alpha(a^2/(a^2 - kappa^2) alpha^{-1}[xi_{2t}(a)])` with
/// `a = a(s)` and `s = (1 + z)/(1 - z)`.
pub fn psi(p: &FlowParams, z: DiscPoint) -> Result<Complex64> {
    let z = z.get();
    let s = (1.0 + z) / (1.0 - z);
    let a = a_map(p, s)?;
    let a2 = a * a;
    let d = a2 - p.epsilon();
    if d.is_zero() {
        return Err(Error::domain("psi", "a(s)^2 = kappa^2"));
    }
    alpha_c(a2 / d * alpha_inv(xi(p.t(), a)?)?)
}

/// `R(z, w) = sqrt((1 - z)^2 + 4 w^2 z)`, principal.
pub fn r_func(z: Complex64, w: Complex64) -> Result<Complex64> {
    let one_minus = 1.0 - z;
    sqrt_checked("r_func", one_minus * one_minus + 4.0 * w * w * z)
}

/// `y(z, w) = 4z(1 - w^2)/(1 + z + R)^2`, also equal to `(1 + z - R)/(1 + z + R)`.
pub fn y_func(z: Complex64, w: Complex64) -> Result<Complex64> {
    let r = r_func(z, w)?;
    y_from_r(z, w, r)
}

pub(crate) fn y_from_r(z: Complex64, w: Complex64, r: Complex64) -> Result<Complex64> {
    let d = 1.0 + z + r;
    if d.is_zero() {
        return Err(Error::domain("y_func", "1 + z + R vanishes"));
    }
    Ok(4.0 * z * (1.0 - w * w) / (d * d))
}

/// Taylor series of `phi` about `z = 1` to the given order.
///
/// Generic over the ring so that the same construction runs exactly;
/// `exp_t` is the caller's value of `e^t` in that ring.
pub fn phi_taylor_at_one<R: Scalar>(
    eps: &R,
    t: &R,
    exp_t: &R,
    order: usize,
) -> Result<TruncatedSeries<R>> {
    let zero = R::zero();
    let one = TruncatedSeries::constant(zero.clone(), R::one(), order)?;
    let w = TruncatedSeries::identity(zero.clone(), order)?;
    let z = one.add(&w)?;
    let z2 = series_mul(&z, &z)?;
    let prefactor = series_div(&z2, &z2.add_constant(&-eps.clone()))?;
    let frac = series_div(&w, &w.add_constant(&R::from_i64(2)))?;

    // e^{t(1 + w)} = e^t sum_k t^k w^k / k!
    let mut ex = Vec::with_capacity(order + 1);
    let mut term = exp_t.clone();
    for k in 0..=order {
        if k > 0 {
            term = term * t.clone() / R::from_i64(k as i64);
        }
        ex.push(term.clone());
    }
    let ex = TruncatedSeries::new(zero.clone(), ex)?;

    let xi_s = series_mul(&frac, &ex)?;
    let one_plus = xi_s.add_constant(&R::one());
    let ainv = series_div(
        &xi_s.scale(&R::from_i64(4)),
        &series_mul(&one_plus, &one_plus)?,
    )?;
    let phi_s = series_mul(&prefactor, &ainv)?;
    TruncatedSeries::new(R::one(), phi_s.into_coeffs())
}

/// Taylor series of `alpha(u)` about `u = 0`.
pub fn alpha_taylor<R: Scalar>(order: usize) -> Result<TruncatedSeries<R>> {
    let sq: Vec<R> = sqrt_one_minus_coeffs(order)
        .iter()
        .map(R::from_rational)
        .collect();
    let sq = TruncatedSeries::new(R::zero(), sq)?;
    let one = TruncatedSeries::constant(R::zero(), R::one(), order)?;
    series_div(&one.sub(&sq)?, &one.add(&sq)?)
}

/// Taylor series of `Phi = alpha o phi` about `z = 1`.
pub fn big_phi_taylor_at_one<R: Scalar>(
    eps: &R,
    t: &R,
    exp_t: &R,
    order: usize,
) -> Result<TruncatedSeries<R>> {
    let phi_s = phi_taylor_at_one(eps, t, exp_t, order)?;
    series_compose(&alpha_taylor(order)?, &phi_s)
}
