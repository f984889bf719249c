//! Circle-contour quadrature and the integral representation of `M`.
//!
//! Integrals `(1/2 pi i) \oint f(w) dw` over `|w - c| = rho` are evaluated by
//! the trapezoidal rule, which converges geometrically for integrands
//! analytic in an annulus around the circle. Samples are doubled (reusing the
//! previous nodes) until two successive values agree.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::flow::{ExpPolynomial, FlowParams};
use crate::maps::{r_func, y_from_r, DiscPoint, HerglotzK};
use crate::report::CheckEntry;
use crate::scalar::f64_to_rational;
use crate::specfun::{jacobi_sequence, laguerre_exact};

pub const MIN_SAMPLES: usize = 16;
pub const MAX_SAMPLES: usize = 1 << 16;
/// Successive trapezoidal values must agree to this relative tolerance.
pub const QUADRATURE_TOL: f64 = 1e-12;
/// Nodes used to test a candidate contour.
pub const CHECK_NODES: usize = 256;
pub const MAX_HALVINGS: usize = 20;
pub const MIN_RADIUS: f64 = 1e-6;
/// Ellipse parameter for the Jacobi generating-function condition.
pub const ELLIPSE_R: f64 = 0.5;
const POLE_MARGIN: f64 = 1e-8;
const BRANCH_MARGIN: f64 = 1e-10;

/// Circle `|w - center| = radius` sampled at `samples` equispaced nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub center: Complex64,
    pub radius: f64,
    pub samples: usize,
}

impl ContourSpec {
    pub fn new(center: Complex64, radius: f64, samples: usize) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InadmissibleContour(format!(
                "radius {radius} is not positive"
            )));
        }
        if samples < MIN_SAMPLES || !samples.is_power_of_two() {
            return Err(Error::InadmissibleContour(format!(
                "samples {samples} must be a power of two >= {MIN_SAMPLES}"
            )));
        }
        if !(center.re.is_finite() && center.im.is_finite()) {
            return Err(Error::NonFinite("contour center"));
        }
        Ok(ContourSpec {
            center,
            radius,
            samples,
        })
    }

    /// Node `j` of `n` equispaced nodes.
    pub fn node(&self, j: usize, n: usize) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, TAU * j as f64 / n as f64)
    }

    pub fn nodes(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.samples).map(move |j| self.node(j, self.samples))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: Complex64,
    pub samples: usize,
    /// `|value - previous|` at the final doubling.
    pub last_diff: f64,
}

/// `(1/2 pi i) \oint f dw` with exactly `n` nodes: the mean of `f(w_j)(w_j - c)`.
pub fn trapezoid<F>(mut f: F, c: &ContourSpec, n: usize) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let mut sum = Complex64::zero();
    for j in 0..n {
        sum += node_term(&mut f, c, j, n)?;
    }
    Ok(sum / n as f64)
}

fn node_term<F>(f: &mut F, c: &ContourSpec, j: usize, n: usize) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let w = c.node(j, n);
    let v = f(w)? * (w - c.center);
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::NonFinite("contour integrand"));
    }
    Ok(v)
}

/// Trapezoidal `(1/2 pi i) \oint f dw` with sample doubling from `c.samples`.
///
/// Stops when two successive values differ by less than
/// `QUADRATURE_TOL * max(1, |value|)`. Nodes are visited in a fixed order,
/// so the result is reproducible bit for bit.
pub fn circle_quadrature<F>(mut f: F, c: &ContourSpec) -> Result<Quadrature>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let mut n = c.samples;
    let mut sum = Complex64::zero();
    for j in 0..n {
        sum += node_term(&mut f, c, j, n)?;
    }
    let mut value = sum / n as f64;
    while n < MAX_SAMPLES {
        // new nodes of the doubled rule are the odd ones
        let mut odd = Complex64::zero();
        for j in 0..n {
            odd += node_term(&mut f, c, 2 * j + 1, 2 * n)?;
        }
        sum += odd;
        n *= 2;
        let next = sum / n as f64;
        let diff = (next - value).norm();
        let previous = value;
        value = next;
        if diff < QUADRATURE_TOL * value.norm().max(1.0) {
            return Ok(Quadrature {
                value,
                samples: n,
                last_diff: diff,
            });
        }
        if n >= MAX_SAMPLES {
            return Err(Error::QuadratureFailed {
                samples: n,
                previous,
                last: value,
            });
        }
    }
    Err(Error::QuadratureFailed {
        samples: n,
        previous: value,
        last: value,
    })
}

/// Circle around `kappa` of radius `|kappa|/2`, used for the residue formula.
pub fn residue_contour(p: &FlowParams) -> Result<ContourSpec> {
    ContourSpec::new(
        Complex64::new(p.kappa(), 0.0),
        p.kappa().abs() / 2.0,
        MIN_SAMPLES,
    )
}

/// `(-1)^m P_k^(m)(eps)` as `kappa/(2 pi i) \oint w^{m-1}(1 - w^2)^k/(w - kappa)^{m+1} dw`.
pub fn pkm_residue(k: u32, m: u32, p: &FlowParams, c: &ContourSpec) -> Result<f64> {
    let kappa = p.kappa();
    if kappa == 0.0 {
        return Err(Error::domain("pkm_residue", "kappa must be nonzero"));
    }
    if (c.center - kappa).norm() > 0.0 {
        return Err(Error::InadmissibleContour(
            "contour must be centred at kappa".into(),
        ));
    }
    if m == 0 && c.radius >= kappa.abs() {
        return Err(Error::InadmissibleContour(format!(
            "radius {} must be below |kappa| = {} to exclude the pole at 0",
            c.radius,
            kappa.abs()
        )));
    }
    let q = circle_quadrature(
        |w| {
            let one_minus = 1.0 - w * w;
            Ok(w.powi(m as i32 - 1) * one_minus.powu(k) / (w - kappa).powu(m + 1))
        },
        c,
    )?;
    Ok(kappa * q.value.re)
}

/// Which of the two equivalent integrands to use for `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntegralForm {
    /// `(1 - z) kappa/(2 pi i) \oint (K^2-1)/([tK^2+2-t][wK-kappa]) dw/(wR)`.
    Proposition,
    /// `(1 - z)/(2 pi i) \oint K(K^2-1)/([tK^2+2-t][wK-kappa]) dw/R`; no pole at `w = 0`.
    #[default]
    Corollary,
}

impl fmt::Display for IntegralForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntegralForm::Proposition => "proposition",
            IntegralForm::Corollary => "corollary",
        })
    }
}

impl FromStr for IntegralForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proposition" => Ok(IntegralForm::Proposition),
            "corollary" => Ok(IntegralForm::Corollary),
            other => Err(Error::domain(
                "IntegralForm",
                format!("unknown form {other:?}"),
            )),
        }
    }
}

/// Kernel quantities at one contour node.
#[derive(Debug, Clone, Copy)]
struct Kernel {
    r: Complex64,
    y: Complex64,
    k: Complex64,
}

fn kernel(herglotz: &HerglotzK, z: Complex64, w: Complex64) -> Result<Kernel> {
    let r = r_func(z, w)?;
    let y = y_from_r(z, w, r)?;
    let k = herglotz.eval(y)?;
    Ok(Kernel { r, y, k })
}

/// Ellipse with foci `+-1` and semi-axes `(1/r +- r)/2`.
fn inside_ellipse(u: Complex64, r: f64) -> bool {
    let major = 0.5 * (1.0 / r + r);
    (u - 1.0).norm() + (u + 1.0).norm() < 2.0 * major
}

fn distance_to_cut(v: Complex64) -> f64 {
    if v.re >= 0.0 {
        v.norm()
    } else {
        v.im.abs()
    }
}

/// Reason a radius fails, or `None` when all six conditions hold.
fn contour_defect(p: &FlowParams, z: Complex64, rho: f64, herglotz: &HerglotzK) -> Option<String> {
    let kappa = p.kappa();
    let center = Complex64::new(kappa, 0.0);
    let ellipse_r = ELLIPSE_R.max(z.norm());
    if rho >= kappa.abs() {
        return Some(format!("radius {rho:e} does not exclude w = 0"));
    }
    for j in 0..CHECK_NODES {
        let w = center + Complex64::from_polar(rho, TAU * j as f64 / CHECK_NODES as f64);
        if !inside_ellipse(1.0 - 2.0 * w * w, ellipse_r) {
            return Some(format!("1 - 2w^2 leaves the ellipse at w = {w}"));
        }
        let one_minus = 1.0 - z;
        let inner = one_minus * one_minus + 4.0 * w * w * z;
        if distance_to_cut(inner) <= BRANCH_MARGIN {
            return Some(format!("R(z, w) meets its branch cut at w = {w}"));
        }
        let ker = match kernel(herglotz, z, w) {
            Ok(ker) => ker,
            Err(e) => return Some(format!("kernel failed at w = {w}: {e}")),
        };
        if ker.y.norm() >= 1.0 {
            return Some(format!("|y| >= 1 at w = {w}"));
        }
        if (w * ker.k - kappa).norm() <= POLE_MARGIN {
            return Some(format!("w K - kappa vanishes near w = {w}"));
        }
        if (w * (1.0 - ker.k) / (w - kappa)).norm() >= 1.0 {
            return Some(format!(
                "geometric ratio |w(1 - K)/(w - kappa)| >= 1 at w = {w}"
            ));
        }
    }
    None
}

/// Finds a circle around `kappa` on which the integral representation holds.
///
/// Starts at `min((1 - |kappa|)/4, |kappa|/2)` and halves the radius at most
/// [`MAX_HALVINGS`] times. Along the circle, `1 - 2w^2` must stay inside the
/// Jacobi convergence ellipse, `R(z, w)` off its cut, `|y| < 1`, `wK - kappa`
/// away from zero, the circle must exclude `w = 0`, and
/// `|w(1 - K)/(w - kappa)| < 1`. The last condition makes `wK - kappa` have
/// exactly one zero inside the circle, which the representation needs.
pub fn admissible_contour(
    p: &FlowParams,
    z: DiscPoint,
    herglotz: &HerglotzK,
) -> Result<ContourSpec> {
    let kappa = p.kappa();
    if kappa == 0.0 {
        return Err(Error::domain("admissible_contour", "kappa must be nonzero"));
    }
    let z = z.get();
    let mut rho = ((1.0 - kappa.abs()) / 4.0).min(kappa.abs() / 2.0);
    let mut reason = String::from("no radius tried");
    for _ in 0..=MAX_HALVINGS {
        if rho < MIN_RADIUS {
            break;
        }
        match contour_defect(p, z, rho, herglotz) {
            None => return ContourSpec::new(Complex64::new(kappa, 0.0), rho, MIN_SAMPLES),
            Some(r) => reason = r,
        }
        rho /= 2.0;
    }
    Err(Error::NoAdmissibleContour {
        kappa,
        z,
        radius: rho,
        reason,
    })
}

/// Result of [`m_integral`], with the kernel diagnostics along the contour.
#[derive(Debug, Clone, PartialEq)]
pub struct MIntegral {
    pub value: Complex64,
    pub form: IntegralForm,
    /// `None` when the closed form at `kappa = 0` was used.
    pub contour: Option<ContourSpec>,
    pub samples: usize,
    /// `min |t K^2 + 2 - t|` over all evaluated nodes.
    pub min_denominator: f64,
    /// `min |w K - kappa|` over all evaluated nodes.
    pub min_pole_distance: f64,
    /// `max |w(1 - K)/(w - kappa)|` over all evaluated nodes.
    pub max_geom_ratio: f64,
}

/// `M_{0,t}(z) = (K^2 - 1)/(t K^2 + 2 - t)` with `K = K_{2t}(z)`.
pub fn m_closed_form(herglotz: &HerglotzK, z: DiscPoint) -> Result<Complex64> {
    let k = herglotz.eval(z.get())?;
    let k2 = k * k;
    Ok((k2 - 1.0) / (herglotz.t() * k2 + 2.0 - herglotz.t()))
}

/// `M_{kappa,t}(z)` from its contour-integral representation.
///
/// At `kappa = 0` the closed form [`m_closed_form`] is returned.
pub fn m_integral(p: &FlowParams, z: DiscPoint, form: IntegralForm) -> Result<MIntegral> {
    let herglotz = HerglotzK::new(p.t())?;
    if p.kappa() == 0.0 {
        let k = herglotz.eval(z.get())?;
        let den = p.t() * k * k + 2.0 - p.t();
        return Ok(MIntegral {
            value: m_closed_form(&herglotz, z)?,
            form,
            contour: None,
            samples: 0,
            min_denominator: den.norm(),
            min_pole_distance: f64::NAN,
            max_geom_ratio: f64::NAN,
        });
    }
    let c = admissible_contour(p, z, &herglotz)?;
    m_integral_on(p, z, form, &c, &herglotz)
}

/// [`m_integral`] on a given contour.
pub fn m_integral_on(
    p: &FlowParams,
    z: DiscPoint,
    form: IntegralForm,
    c: &ContourSpec,
    herglotz: &HerglotzK,
) -> Result<MIntegral> {
    let kappa = p.kappa();
    let t = p.t();
    let z = z.get();
    if form == IntegralForm::Proposition && c.radius >= (c.center.norm()) {
        return Err(Error::InadmissibleContour(
            "the 1/w integrand needs a contour excluding w = 0".into(),
        ));
    }
    let mut min_den = f64::INFINITY;
    let mut min_pole = f64::INFINITY;
    let mut max_geom: f64 = 0.0;
    let q = circle_quadrature(
        |w| {
            let ker = kernel(herglotz, z, w)?;
            let k2 = ker.k * ker.k;
            let den = t * k2 + 2.0 - t;
            let pole = w * ker.k - kappa;
            min_den = min_den.min(den.norm());
            min_pole = min_pole.min(pole.norm());
            max_geom = max_geom.max((w * (1.0 - ker.k) / (w - kappa)).norm());
            let common = (k2 - 1.0) / (den * pole * ker.r);
            Ok(match form {
                IntegralForm::Proposition => kappa * common / w,
                IntegralForm::Corollary => ker.k * common,
            })
        },
        c,
    )?;
    Ok(MIntegral {
        value: (1.0 - z) * q.value,
        form,
        contour: Some(ContourSpec {
            samples: q.samples,
            ..*c
        }),
        samples: q.samples,
        min_denominator: min_den,
        min_pole_distance: min_pole,
        max_geom_ratio: max_geom,
    })
}

/// Coefficients `2^{m+1} e^{-jt} L_{j-m-1}^{(m+1)}(2jt)` for `j = 0..=n`
/// (zero for `j <= m`).
pub fn laguerre_gen_coeffs(m: u32, t: f64, n: u32) -> Vec<f64> {
    let tq = f64_to_rational(t);
    let alpha = BigRational::from_integer((m + 1).into());
    let scale = BigRational::from_integer(num_bigint::BigInt::from(1u32) << (m + 1));
    (0..=n)
        .map(|j| {
            if j <= m {
                return 0.0;
            }
            let x = &tq * BigRational::from_integer((2 * j).into());
            let mut weights = vec![BigRational::zero(); j as usize + 1];
            weights[j as usize] = laguerre_exact(j - m - 1, &alpha, &x) * &scale;
            ExpPolynomial::new(weights).eval(&tq)
        })
        .collect()
}

/// Absolute residual of the Laguerre generating function
/// `sum_j c_j y^j = (K^2 - 1)/(tK^2 + 2 - t) (K - 1)^m`, with `c_j` from
/// [`laguerre_gen_coeffs`].
pub fn laguerre_gen_residual(
    coeffs: &[f64],
    m: u32,
    herglotz: &HerglotzK,
    y: DiscPoint,
) -> Result<f64> {
    let yv = y.get();
    let lhs = coeffs
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, &c| acc * yv + c);
    let k = herglotz.eval(yv)?;
    let k2 = k * k;
    let t = herglotz.t();
    let rhs = (k2 - 1.0) / (t * k2 + 2.0 - t) * (k - 1.0).powu(m);
    Ok((lhs - rhs).norm())
}

pub fn laguerre_gen_check(m: u32, t: f64, y: DiscPoint, n: u32, tol: f64) -> Result<CheckEntry> {
    if y.get().norm() >= 0.95 {
        return Err(Error::domain(
            "laguerre_gen_check",
            "|y| must be below 0.95",
        ));
    }
    let herglotz = HerglotzK::new(t)?;
    let coeffs = laguerre_gen_coeffs(m, t, n);
    let res = laguerre_gen_residual(&coeffs, m, &herglotz, y)?;
    Ok(CheckEntry::new("laguerre_generating_function", res, tol)
        .with("m", m)
        .with("t", t)
        .with("y", y.get())
        .with("N", n))
}

/// Residuals of the two Jacobi generating functions at `(z, w)`:
/// `z^j sum_{n<=N} P_n^{0,2j}(1-2w^2) z^n = (4z)^j / (R (1+z+R)^{2j})` and
/// `sum_{n=j+1}^{N+j+1} P_{n-j-1}^{0,2j}(1-2w^2) z^n = z (4z)^j / (R (1+z+R)^{2j})`.
pub fn jacobi_gen_check(
    j: u32,
    z: DiscPoint,
    w: Complex64,
    n: u32,
    tol: f64,
) -> Result<Vec<CheckEntry>> {
    let zv = z.get();
    let u = 1.0 - 2.0 * w * w;
    let polys = jacobi_sequence(n, 0.0, 2.0 * j as f64, u);
    let r = r_func(zv, w)?;
    let rhs1 = (4.0 * zv).powu(j) / (r * (1.0 + zv + r).powu(2 * j));
    let rhs2 = zv * rhs1;

    let sum = polys
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, &p| acc * zv + p);
    let lhs1 = zv.powu(j) * sum;
    let mut lhs2 = Complex64::zero();
    for idx in (j + 1..=n + j + 1).rev() {
        lhs2 = (lhs2 + polys[(idx - j - 1) as usize]) * zv;
    }
    lhs2 *= zv.powu(j);

    let ctx = |e: CheckEntry| e.with("j", j).with("z", zv).with("w", w).with("N", n);
    Ok(vec![
        ctx(CheckEntry::new(
            "jacobi_generating_function",
            (lhs1 - rhs1).norm(),
            tol,
        )),
        ctx(CheckEntry::new(
            "jacobi_generating_function_shifted",
            (lhs2 - rhs2).norm(),
            tol,
        )),
    ])
}

/// `min |t K(y)^2 + 2 - t|` over the contour nodes, as a lower-bound check
/// against `1e-10`.
pub fn nonvanishing_check(p: &FlowParams, z: DiscPoint, c: &ContourSpec) -> Result<CheckEntry> {
    let herglotz = HerglotzK::new(p.t())?;
    let t = p.t();
    let mut min = f64::INFINITY;
    for w in c.nodes() {
        let k = kernel(&herglotz, z.get(), w)?.k;
        min = min.min((t * k * k + 2.0 - t).norm());
    }
    Ok(
        CheckEntry::lower_bound("nonvanishing_denominator", min, 1e-10)
            .with("kappa", p.kappa())
            .with("t", t)
            .with("z", z.get()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{m_series_coeffs, pnm_poly};
    use crate::rel_err;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn disc(re: f64, im: f64) -> DiscPoint {
        DiscPoint::new(c(re, im)).unwrap()
    }

    #[test]
    fn trivial_residues() {
        let spec = ContourSpec::new(c(0.3, 0.1), 0.2, 16).unwrap();
        let one = circle_quadrature(|w| Ok(1.0 / (w - spec.center)), &spec).unwrap();
        assert!((one.value - 1.0).norm() < 1e-15);
        let zero = circle_quadrature(|_| Ok(c(1.0, 0.0)), &spec).unwrap();
        assert!(zero.value.norm() < 1e-15);
        let second =
            circle_quadrature(|w| Ok(1.0 / ((w - spec.center) * (w - spec.center))), &spec)
                .unwrap();
        assert!(second.value.norm() < 1e-14);
    }

    #[test]
    fn convergence_is_geometric() {
        let spec = ContourSpec::new(c(0.0, 0.0), 1.0, 16).unwrap();
        let f = |w: Complex64| Ok(1.0 / (w * (w - 1.5)));
        let exact = c(-1.0 / 1.5, 0.0);
        let mut prev = f64::INFINITY;
        for n in [16, 32, 64] {
            let err = (trapezoid(f, &spec, n).unwrap() - exact).norm();
            assert!(err * 10.0 <= prev, "n={n} err={err}");
            prev = err;
        }
    }

    #[test]
    fn contour_spec_validation() {
        assert!(ContourSpec::new(c(0.0, 0.0), 0.0, 16).is_err());
        assert!(ContourSpec::new(c(0.0, 0.0), 0.1, 24).is_err());
        assert!(ContourSpec::new(c(0.0, 0.0), 0.1, 8).is_err());
    }

    #[test]
    fn residue_matches_exact_polynomials() {
        for kappa in [0.3, 0.6, 0.9] {
            let p = FlowParams::new(kappa, 1.0).unwrap();
            let spec = residue_contour(&p).unwrap();
            for k in 1..=12u32 {
                for m in 0..=8u32 {
                    let got = pkm_residue(k, m, &p, &spec).unwrap();
                    let exact = crate::scalar::rational_to_f64(
                        &pnm_poly(k, m).eval_exact(p.epsilon_exact()),
                    );
                    let want = if m % 2 == 0 { exact } else { -exact };
                    assert!((got - want).abs() < 1e-10, "kappa={kappa} k={k} m={m}");
                }
            }
        }
        let p = FlowParams::new(0.5, 1.0).unwrap();
        let spec = residue_contour(&p).unwrap();
        assert!((pkm_residue(1, 1, &p, &spec).unwrap() + 0.5).abs() < 1e-13);
        let wide = ContourSpec::new(c(0.5, 0.0), 0.6, 16).unwrap();
        assert!(pkm_residue(2, 0, &p, &wide).is_err());
    }

    #[test]
    fn contour_exists_near_origin() {
        let p = FlowParams::new(0.5, 1.0).unwrap();
        let k = HerglotzK::new(1.0).unwrap();
        let spec = admissible_contour(&p, disc(0.02, 0.0), &k).unwrap();
        assert!(spec.radius > 0.0 && spec.radius < 0.5);
        assert!(admissible_contour(&p, disc(0.0, 0.0), &k).is_ok());
    }

    #[test]
    fn obstruction_is_reported() {
        let p = FlowParams::new(0.5, 1.0).unwrap();
        let k = HerglotzK::new(1.0).unwrap();
        let err = admissible_contour(&p, disc(0.8, 0.0), &k).unwrap_err();
        assert!(matches!(err, Error::NoAdmissibleContour { .. }), "{err}");
    }

    #[test]
    fn forms_agree_and_match_series() {
        let p = FlowParams::new(0.5, 1.0).unwrap();
        let z = disc(0.03, 0.0);
        let cor = m_integral(&p, z, IntegralForm::Corollary).unwrap();
        let prop = m_integral(&p, z, IntegralForm::Proposition).unwrap();
        assert!((cor.value - prop.value).norm() < 1e-9);
        let series = m_series_coeffs(&p, 16).unwrap();
        assert!(rel_err(cor.value, series.eval(z.get())) < 1e-6);
        assert!(cor.min_denominator > 1e-6);
        assert!(cor.max_geom_ratio < 1.0);
    }

    #[test]
    fn integral_vanishes_at_origin() {
        let p = FlowParams::new(0.5, 1.0).unwrap();
        let v = m_integral(&p, disc(0.0, 0.0), IntegralForm::Corollary).unwrap();
        assert!(v.value.norm() < 1e-15);
    }

    #[test]
    fn small_kappa_approaches_closed_form() {
        let z = disc(0.05, 0.0);
        let k = HerglotzK::new(1.0).unwrap();
        let closed = m_closed_form(&k, z).unwrap();
        let p = FlowParams::new(1e-3, 1.0).unwrap();
        let v = m_integral(&p, z, IntegralForm::Corollary).unwrap();
        assert!(rel_err(v.value, closed) < 1e-5, "{} vs {closed}", v.value);
        let p0 = FlowParams::new(0.0, 1.0).unwrap();
        let v0 = m_integral(&p0, z, IntegralForm::Corollary).unwrap();
        assert_eq!(v0.value, closed);
        assert!(v0.contour.is_none());
    }

    #[test]
    fn laguerre_generating_function() {
        let e = laguerre_gen_check(0, 1.0, disc(0.2, 0.0), 80, 1e-10).unwrap();
        assert!(e.pass, "{e}");
        let e = laguerre_gen_check(2, 0.8, disc(0.3, 0.0), 120, 1e-8).unwrap();
        assert!(e.pass, "{e}");
        let e = laguerre_gen_check(3, 1.0, disc(0.0, 0.0), 10, 1e-15).unwrap();
        assert_eq!(e.residual, 0.0);
        // m = 0 coefficients are those of y K'(y)
        let coeffs = laguerre_gen_coeffs(0, 1.0, 5);
        for n in 1..=5u32 {
            let want = n as f64 * crate::maps::k_series_coeff(1.0, n);
            assert!((coeffs[n as usize] - want).abs() < 1e-15 * want.abs().max(1.0));
        }
    }

    #[test]
    fn jacobi_generating_functions() {
        for e in jacobi_gen_check(1, disc(0.2, 0.0), c(0.6, 0.0), 100, 1e-9).unwrap() {
            assert!(e.pass, "{e}");
        }
        for e in jacobi_gen_check(2, disc(0.15, 0.0), c(0.5, 0.1), 150, 1e-8).unwrap() {
            assert!(e.pass, "{e}");
        }
        for e in jacobi_gen_check(3, disc(0.0, 0.0), c(0.5, 0.1), 20, 1e-15).unwrap() {
            assert_eq!(e.residual, 0.0);
        }
    }

    #[test]
    fn denominator_stays_away_from_zero() {
        for t in [1.0, 3.0] {
            let p = FlowParams::new(0.5, t).unwrap();
            let k = HerglotzK::new(t).unwrap();
            let z = disc(0.03, 0.01);
            let spec = admissible_contour(&p, z, &k).unwrap();
            assert!(nonvanishing_check(&p, z, &spec).unwrap().pass);
            let e = nonvanishing_check(&p, disc(0.0, 0.0), &spec).unwrap();
            assert!(e.pass);
        }
    }

    #[test]
    fn form_names_round_trip() {
        for f in [IntegralForm::Proposition, IntegralForm::Corollary] {
            assert_eq!(f.to_string().parse::<IntegralForm>().unwrap(), f);
        }
        assert!("other".parse::<IntegralForm>().is_err());
    }
}
