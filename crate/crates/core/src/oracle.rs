//! Coefficients of `Phi^{-1}` rebuilt from the map itself.
//!
//! The Taylor series of `Phi = alpha o phi` about `z = 1` is assembled in
//! exact rational arithmetic from its definition (with `e^t` replaced by a
//! high-precision rational) and inverted by Newton reversion. Nothing here
//! uses the closed-form coefficient formulas, so agreement with
//! [`crate::flow`] is an independent confirmation of them.

use num_rational::BigRational;

use crate::error::Result;
use crate::flow::FlowParams;
use crate::hiprec::{exp_rational, DEFAULT_BITS};
use crate::maps::{big_phi_taylor_at_one, phi_taylor_at_one};
use crate::powerseries::{lagrange_coefficient, series_revert, TruncatedSeries};
use crate::scalar::rational_to_f64;

fn exp_t(p: &FlowParams) -> BigRational {
    exp_rational(p.t_exact(), DEFAULT_BITS)
}

/// Exact-rational Taylor series of `Phi` about `z = 1`.
pub fn big_phi_series_exact(p: &FlowParams, order: usize) -> Result<TruncatedSeries<BigRational>> {
    big_phi_taylor_at_one(p.epsilon_exact(), p.t_exact(), &exp_t(p), order)
}

/// Coefficients `c_0..c_N` of `Phi^{-1}` about `0` by Newton reversion.
pub fn phi_inv_by_reversion(p: &FlowParams, order: usize) -> Result<Vec<f64>> {
    let inv = series_revert(&big_phi_series_exact(p, order)?)?;
    Ok(inv.coeffs().iter().map(rational_to_f64).collect())
}

/// `a_n = (1/n) [w^{n-1}] (w / phi(1 + w))^n` for `n = 1..=n_max`.
pub fn a_by_lagrange(p: &FlowParams, n_max: usize) -> Result<Vec<f64>> {
    let phi_s = phi_taylor_at_one(p.epsilon_exact(), p.t_exact(), &exp_t(p), n_max)?;
    (1..=n_max)
        .map(|n| lagrange_coefficient(&phi_s, n).map(|q| rational_to_f64(&q)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::CoefficientTable;

    #[test]
    fn reversion_fixes_constant_term() {
        let p = FlowParams::new(0.5, 1.0).unwrap();
        let c = phi_inv_by_reversion(&p, 4).unwrap();
        assert_eq!(c[0], 1.0);
    }

    #[test]
    fn lagrange_matches_closed_form_a() {
        let p = FlowParams::new(0.4, 1.0).unwrap();
        let tab = CoefficientTable::new(&p, 8).unwrap();
        let a = a_by_lagrange(&p, 8).unwrap();
        for n in 1..=8 {
            assert!(((a[n - 1] - tab.a(n)) / tab.a(n)).abs() < 1e-12, "n={n}");
        }
    }
}
