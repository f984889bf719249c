//! The verification suite behind `jacobi-flow verify` and the acceptance run.
//!
//! Each function compares one computed quantity against an independent
//! route to it and returns the residuals as a [`VerifyReport`]. Grids are
//! chosen by the caller, so the same checks serve a single parameter point
//! and the full acceptance grid.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use jacobi_flow::contour::{
    jacobi_gen_check, laguerre_gen_check, m_integral, m_integral_on, pkm_residue, residue_contour,
    IntegralForm,
};
use jacobi_flow::flow::{
    binom_transform, inv_binom_transform, inv_rel_weight, inv_rel_weight_split, jacobi_moments_in,
    pnm_poly, CoefficientTable, MSeries,
};
use jacobi_flow::maps::{big_phi, xi, DiscPoint, HerglotzK, NEWTON_TOL};
use jacobi_flow::oracle::{a_by_lagrange, phi_inv_by_reversion};
use jacobi_flow::powerseries::{series_mul, TruncatedSeries};
use jacobi_flow::scalar::rational_to_f64;
use jacobi_flow::specfun::{charlier_exact, factorial, laguerre_exact, laguerre_real};
use jacobi_flow::{rel_err, CheckEntry, FlowParams, Result, VerifyReport};

/// Truncation order of the `M` series compared against the contour integral.
pub const SERIES_ORDER: usize = 16;
/// Evaluation points for the integral-versus-series comparison.
pub const INTEGRAL_POINTS: [Complex64; 3] = [
    Complex64::new(0.02, 0.0),
    Complex64::new(0.03, 0.01),
    Complex64::new(0.05, 0.0),
];
/// Lower bound on `|t K^2 + 2 - t|` along every contour.
pub const DENOMINATOR_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Level {
    #[default]
    Fast,
    Full,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Fast => "fast",
            Level::Full => "full",
        })
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            other => Err(format!("unknown level {other:?} (expected fast or full)")),
        }
    }
}

/// Single entry carrying the largest residual, labelled by where it occurred.
fn worst_entry<L: fmt::Display>(
    name: &str,
    residuals: impl IntoIterator<Item = (L, f64)>,
    tol: f64,
) -> CheckEntry {
    let mut worst: Option<(L, f64)> = None;
    for (label, r) in residuals {
        // NaN must win so that it surfaces as a failure
        let replace = match &worst {
            None => true,
            Some((_, w)) => r.is_nan() || (!w.is_nan() && r > *w),
        };
        if replace {
            worst = Some((label, r));
        }
    }
    match worst {
        Some((label, r)) => CheckEntry::new(name, r, tol).with("at", label),
        None => CheckEntry::new(name, f64::NAN, tol).with("at", "no samples"),
    }
}

fn params_ctx(e: CheckEntry, p: &FlowParams) -> CheckEntry {
    e.with("kappa", p.kappa()).with("t", p.t())
}

fn rel(a: f64, b: f64) -> f64 {
    rel_err(Complex64::new(a, 0.0), Complex64::new(b, 0.0))
}

/// Runs `f`, turning an error into a failing entry named `name`.
pub fn guarded(name: &str, f: impl FnOnce() -> Result<VerifyReport>) -> VerifyReport {
    f().unwrap_or_else(|e| {
        let mut r = VerifyReport::new();
        r.push(CheckEntry::new(name, f64::NAN, 0.0).with("error", e));
        r
    })
}

/// At `kappa = 0` the `Phi^{-1}` coefficients are `2 e^{-nt} L_{n-1}^{(1)}(2nt) / n`.
pub fn kappa_zero_reduction(t: f64, n_max: usize, tol: f64) -> Result<VerifyReport> {
    let p = FlowParams::new(0.0, t)?;
    let table = CoefficientTable::new(&p, n_max)?;
    let residuals = (1..=n_max).map(|n| {
        let nf = n as f64;
        let want = 2.0 * (-nf * t).exp() * laguerre_real(n as u32 - 1, 1.0, 2.0 * nf * t) / nf;
        (format!("n={n}"), rel(table.phi_inv(n), want))
    });
    let mut r = VerifyReport::new();
    r.push(params_ctx(
        worst_entry("kappa_zero_reduction", residuals, tol),
        &p,
    ));
    Ok(r)
}

/// Closed-form `Phi^{-1}` coefficients against Newton reversion of the Taylor
/// expansion of `Phi` about `z = 1`.
pub fn reversion_oracle(p: &FlowParams, n_max: usize, tol: f64) -> Result<VerifyReport> {
    let table = CoefficientTable::new(p, n_max)?;
    let oracle = phi_inv_by_reversion(p, n_max)?;
    let residuals = (0..=n_max).map(|n| (format!("n={n}"), rel(table.phi_inv(n), oracle[n])));
    let mut r = VerifyReport::new();
    r.push(params_ctx(
        worst_entry("reversion_oracle", residuals, tol),
        p,
    ));
    Ok(r)
}

/// `a_n` against Lagrange inversion of the Taylor expansion of `phi` about 1.
pub fn lagrange_oracle(p: &FlowParams, n_max: usize, tol: f64) -> Result<VerifyReport> {
    let table = CoefficientTable::new(p, n_max)?;
    let oracle = a_by_lagrange(p, n_max)?;
    let residuals = (1..=n_max).map(|n| (format!("n={n}"), rel(table.a(n), oracle[n - 1])));
    let mut r = VerifyReport::new();
    r.push(params_ctx(
        worst_entry("lagrange_oracle", residuals, tol),
        p,
    ));
    Ok(r)
}

/// `n c_n` from the `Phi^{-1}` coefficients against the `S_n` sums.
pub fn m_series_consistency(p: &FlowParams, n_max: usize, tol: f64) -> Result<VerifyReport> {
    let m = CoefficientTable::new(p, n_max)?.m_series()?;
    let mut r = VerifyReport::new();
    r.push(params_ctx(
        CheckEntry::new("m_series_derivative_vs_sums", m.max_rel_diff, tol).with("sign", m.sign),
        p,
    ));
    r.push(params_ctx(
        CheckEntry::new("m_series_sign", (m.sign - 1.0).abs(), 0.0),
        p,
    ));
    Ok(r)
}

/// Contour residues against `(-1)^m P_k^(m)(eps)` from exact rationals.
pub fn residue_oracle(p: &FlowParams, k_max: u32, m_max: u32, tol: f64) -> Result<VerifyReport> {
    let c = residue_contour(p)?;
    let mut residuals = Vec::new();
    for k in 1..=k_max {
        for m in 0..=m_max {
            let got = pkm_residue(k, m, p, &c)?;
            let exact = rational_to_f64(&pnm_poly(k, m).eval_exact(p.epsilon_exact()));
            let want = if m % 2 == 0 { exact } else { -exact };
            residuals.push((format!("k={k},m={m}"), (got - want).abs()));
        }
    }
    let mut r = VerifyReport::new();
    r.push(params_ctx(worst_entry("residue_oracle", residuals, tol), p));
    Ok(r)
}

/// Contour integral of `M` at `z` against the truncated series, the two
/// integral forms against each other, and the kernel denominator along the
/// contour. At `kappa = 0` the closed form stands in for the integral.
pub fn integral_checks(p: &FlowParams, z: Complex64, series: &MSeries) -> Result<VerifyReport> {
    let zp = DiscPoint::new(z)?;
    let cor = m_integral(p, zp, IntegralForm::Corollary)?;
    let want = series.eval(z);
    let ctx = |e: CheckEntry| params_ctx(e, p).with("z", z);
    let mut r = VerifyReport::new();
    r.push(ctx(CheckEntry::new(
        "integral_vs_series",
        rel_err(cor.value, want),
        1e-6,
    )
    .with("samples", cor.samples)));
    let mut min_den = cor.min_denominator;
    if let Some(c) = cor.contour {
        let herglotz = HerglotzK::new(p.t())?;
        let prop = m_integral_on(p, zp, IntegralForm::Proposition, &c, &herglotz)?;
        min_den = min_den.min(prop.min_denominator);
        r.push(ctx(CheckEntry::new(
            "proposition_vs_corollary",
            rel_err(prop.value, cor.value),
            1e-9,
        )
        .with("radius", c.radius)));
    }
    r.push(ctx(CheckEntry::lower_bound(
        "nonvanishing_denominator",
        min_den,
        DENOMINATOR_FLOOR,
    )));
    Ok(r)
}

/// [`integral_checks`] at each of `points` against the order-[`SERIES_ORDER`] series.
pub fn integral_vs_series(p: &FlowParams, points: &[Complex64]) -> Result<VerifyReport> {
    let series = CoefficientTable::new(p, SERIES_ORDER)?.m_series()?;
    let mut r = VerifyReport::new();
    for &z in points {
        r.extend(guarded("integral_vs_series", || {
            integral_checks(p, z, &series)
        }));
    }
    Ok(r)
}

/// `xi_{2t}(K_{2t}(y)) = y` on a radial grid of `|y| <= 0.9`, and `K_{2t}(0) = 1`.
pub fn map_inversion(t: f64, tol: f64) -> Result<VerifyReport> {
    let k = HerglotzK::new(t)?;
    let mut residuals = Vec::new();
    for i in 1..=9 {
        let rad = 0.1 * i as f64;
        for j in 0..16 {
            let y = Complex64::from_polar(rad, std::f64::consts::TAU * j as f64 / 16.0);
            let back = xi(t, k.eval(y)?)?;
            residuals.push((format!("y={y}"), (back - y).norm()));
        }
    }
    let mut r = VerifyReport::new();
    r.push(worst_entry("map_inversion", residuals, tol).with("t", t));
    r.push(
        CheckEntry::new(
            "herglotz_at_origin",
            (k.eval(Complex64::zero())? - 1.0).norm(),
            NEWTON_TOL,
        )
        .with("t", t),
    );
    Ok(r)
}

/// With `tau(U^k) = 1` the Jacobi moments collapse to `(1 + kappa)/2` exactly.
pub fn moment_sanity(p: &FlowParams, n_max: usize) -> Result<VerifyReport> {
    let ones = vec![BigRational::one(); n_max];
    let moments = jacobi_moments_in(&ones, p.kappa_exact(), n_max)?;
    let want = (BigRational::one() + p.kappa_exact()) / BigRational::from_integer(2.into());
    let wrong = moments.iter().filter(|m| **m != want).count();
    let mut r = VerifyReport::new();
    r.push(params_ctx(
        CheckEntry::new("moment_expansion_at_time_zero", wrong as f64, 0.0).with("n_max", n_max),
        p,
    ));
    Ok(r)
}

/// Laguerre and Jacobi generating functions at sample points.
pub fn generating_functions(t: f64) -> Result<VerifyReport> {
    let ys = [
        Complex64::new(0.3, 0.0),
        Complex64::new(0.0, 0.3),
        Complex64::new(-0.2, 0.1),
        Complex64::from_polar(0.25, 2.0),
    ];
    let mut lag = Vec::new();
    for m in 0..=4 {
        for &y in &ys {
            let e = laguerre_gen_check(m, t, DiscPoint::new(y)?, 120, 1e-8)?;
            lag.push((format!("m={m},y={y}"), e.residual));
        }
    }
    let zs = [
        Complex64::new(0.2, 0.0),
        Complex64::new(0.1, 0.1),
        Complex64::new(-0.15, 0.05),
    ];
    let ws = [
        Complex64::new(0.5, 0.1),
        Complex64::new(0.3, -0.2),
        Complex64::new(0.7, 0.0),
    ];
    let mut jac = Vec::new();
    let mut jac_shifted = Vec::new();
    for j in 1..=4 {
        for &z in &zs {
            for &w in &ws {
                let e = jacobi_gen_check(j, DiscPoint::new(z)?, w, 150, 1e-8)?;
                let label = format!("j={j},z={z},w={w}");
                jac.push((label.clone(), e[0].residual));
                jac_shifted.push((label, e[1].residual));
            }
        }
    }
    let mut r = VerifyReport::new();
    r.push(worst_entry("laguerre_generating_function", lag, 1e-8).with("t", t));
    r.push(worst_entry("jacobi_generating_function", jac, 1e-8));
    r.push(worst_entry(
        "jacobi_generating_function_shifted",
        jac_shifted,
        1e-8,
    ));
    Ok(r)
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(-a)^n C_n(x, a) / n! = L_n^{(x-n)}(a)` and the coefficients of
/// `sum_n C_n(x, a) (au)^n / n! = e^{au} (1 - u)^x`, both exactly.
pub fn charlier_identities(n_max: u32) -> Result<VerifyReport> {
    let samples = [
        BigRational::new(1.into(), 3.into()),
        BigRational::new((-3).into(), 2.into()),
        BigRational::new(7.into(), 5.into()),
        int(2),
    ];
    let mut cl_wrong = 0usize;
    for a in &samples {
        for x in -10..=10i64 {
            let mut neg_a_pow = BigRational::one();
            for n in 0..=n_max {
                let lhs =
                    &neg_a_pow * charlier_exact(n, x, a)? / BigRational::from_integer(factorial(n));
                let rhs = laguerre_exact(n, &int(x - n as i64), a);
                if lhs != rhs {
                    cl_wrong += 1;
                }
                neg_a_pow = -(neg_a_pow * a);
            }
        }
    }

    let order = n_max as usize;
    let mut gf_wrong = 0usize;
    for a in &samples {
        let mut exp_c = Vec::with_capacity(order + 1);
        let mut term = BigRational::one();
        for k in 0..=order {
            exp_c.push(term.clone());
            term = term * a / int(k as i64 + 1);
        }
        let exp_s = TruncatedSeries::new(BigRational::zero(), exp_c)?;
        for x in -5..=5i64 {
            // (1 - u)^x = sum_k (-x)_k u^k / k!
            let mut pow_c = Vec::with_capacity(order + 1);
            let mut term = BigRational::one();
            for k in 0..=order {
                pow_c.push(term.clone());
                term = term * int(k as i64 - x) / int(k as i64 + 1);
            }
            let rhs = series_mul(&exp_s, &TruncatedSeries::new(BigRational::zero(), pow_c)?)?;
            let mut a_pow = BigRational::one();
            for n in 0..=n_max {
                let lhs =
                    charlier_exact(n, x, a)? * &a_pow / BigRational::from_integer(factorial(n));
                if &lhs != rhs.coeff(n as usize) {
                    gf_wrong += 1;
                }
                a_pow *= a;
            }
        }
    }
    let mut r = VerifyReport::new();
    r.push(
        CheckEntry::new("charlier_laguerre_relation", cl_wrong as f64, 0.0).with("n_max", n_max),
    );
    r.push(
        CheckEntry::new("charlier_generating_function", gf_wrong as f64, 0.0).with("n_max", n_max),
    );
    Ok(r)
}

/// Exact round trip of the binomial transform and agreement of the two
/// forms of its inverse weights.
pub fn exact_combinatorics(len: usize) -> Result<VerifyReport> {
    let c: Vec<BigRational> = (0..len as i64)
        .map(|k| {
            let q = BigRational::new(BigInt::from(k * k + 1), BigInt::from(k + 3));
            if k % 3 == 1 {
                -q
            } else {
                q
            }
        })
        .collect();
    let back = inv_binom_transform(&binom_transform(&c));
    let forward = binom_transform(&inv_binom_transform(&c));
    let trip_wrong = back.iter().zip(&c).filter(|(x, y)| x != y).count()
        + forward.iter().zip(&c).filter(|(x, y)| x != y).count();

    let mut weight_wrong = 0usize;
    for n in 1..=len as u64 {
        for k in 0..=n {
            if inv_rel_weight(n, k) != inv_rel_weight_split(n, k) {
                weight_wrong += 1;
            }
        }
    }
    let mut r = VerifyReport::new();
    r.push(
        CheckEntry::new("binomial_transform_round_trip", trip_wrong as f64, 0.0).with("len", len),
    );
    r.push(CheckEntry::new("inverse_weight_forms", weight_wrong as f64, 0.0).with("n_max", len));
    Ok(r)
}

/// `Phi(Phi^{-1}(z)) = z` with the truncated series for `Phi^{-1}`.
pub fn composition_identity(
    p: &FlowParams,
    points: &[Complex64],
    tol: f64,
) -> Result<VerifyReport> {
    let inv = CoefficientTable::new(p, SERIES_ORDER)?.phi_inv_series()?;
    let mut residuals = Vec::new();
    for &z in points {
        let back = big_phi(p, inv.eval(&z))?;
        residuals.push((format!("z={z}"), rel_err(back, z)));
    }
    let mut r = VerifyReport::new();
    r.push(params_ctx(
        worst_entry("composition_identity", residuals, tol),
        p,
    ));
    Ok(r)
}

/// Every check that applies at `p`; `Full` adds the slower exact identities.
pub fn verify(p: &FlowParams, level: Level) -> VerifyReport {
    let mut r = VerifyReport::new();
    r.extend(guarded("reversion_oracle", || {
        reversion_oracle(p, 12, 1e-9)
    }));
    r.extend(guarded("lagrange_oracle", || lagrange_oracle(p, 10, 1e-9)));
    r.extend(guarded("m_series", || {
        m_series_consistency(p, SERIES_ORDER, 1e-9)
    }));
    if p.kappa() == 0.0 {
        r.extend(guarded("kappa_zero_reduction", || {
            kappa_zero_reduction(p.t(), 16, 1e-10)
        }));
    }
    r.extend(guarded("integral_vs_series", || {
        integral_vs_series(p, &INTEGRAL_POINTS)
    }));
    r.extend(guarded("map_inversion", || map_inversion(p.t(), 1e-11)));
    r.extend(guarded("moment_expansion", || moment_sanity(p, 16)));
    if level == Level::Full {
        if p.kappa() != 0.0 {
            r.extend(guarded("residue_oracle", || {
                residue_oracle(p, 12, 8, 1e-10)
            }));
        }
        r.extend(guarded("composition_identity", || {
            composition_identity(p, &INTEGRAL_POINTS, 1e-8)
        }));
        r.extend(guarded("generating_functions", || {
            generating_functions(p.t())
        }));
        r.extend(guarded("charlier", || charlier_identities(15)));
        r.extend(guarded("combinatorics", || exact_combinatorics(30)));
    }
    r
}
