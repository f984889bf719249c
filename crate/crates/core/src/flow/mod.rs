//! Explicit coefficient formulas for the inverted flow.
//!
//! The Taylor coefficients of `Phi^{-1}` about `z = 0` are finite sums of the
//! form `sum_j w_j e^{-jt}` with rational weights `w_j` that depend on
//! `epsilon = kappa^2` and `t` only through exact arithmetic. They are kept in
//! that form ([`ExpPolynomial`]) and rounded to `f64` once, after the
//! exponentials have been substituted to high precision.

mod coeffs;
mod poly;
mod transforms;

pub use coeffs::{
    a_coeff, b_coeff, m_series_coeffs, phi_inv_coeffs, s_coeff, CoefficientTable, ExpPolynomial,
    MSeries,
};
pub use poly::{pnm_poly, RationalPoly};
pub use transforms::{
    binom_transform, herglotz_moments, inv_binom_transform, inv_rel_weight, inv_rel_weight_split,
    jacobi_moments, jacobi_moments_in, symmetric_moments,
};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{f64_to_rational, rational_to_f64};

/// Trace asymmetry `kappa` and time `t`, with `epsilon = kappa^2`.
///
/// Both inputs are taken at their exact binary64 values; `epsilon` is the
/// exact square, so it is a rational and not a rounded float.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowParams {
    kappa: f64,
    t: f64,
    kappa_q: BigRational,
    t_q: BigRational,
    eps_q: BigRational,
}

impl FlowParams {
    pub fn new(kappa: f64, t: f64) -> Result<Self> {
        if !kappa.is_finite() || kappa.abs() >= 1.0 {
            return Err(Error::InvalidParams(format!(
                "kappa must lie in (-1, 1), got {kappa}"
            )));
        }
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::InvalidParams(format!("t must be positive, got {t}")));
        }
        let kappa_q = f64_to_rational(kappa);
        let eps_q = &kappa_q * &kappa_q;
        Ok(FlowParams {
            kappa,
            t,
            t_q: f64_to_rational(t),
            kappa_q,
            eps_q,
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// `kappa^2` rounded to the nearest `f64`.
    pub fn epsilon(&self) -> f64 {
        rational_to_f64(&self.eps_q)
    }

    pub fn kappa_exact(&self) -> &BigRational {
        &self.kappa_q
    }

    pub fn t_exact(&self) -> &BigRational {
        &self.t_q
    }

    pub fn epsilon_exact(&self) -> &BigRational {
        &self.eps_q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_are_validated() {
        assert!(FlowParams::new(0.5, 1.0).is_ok());
        assert!(FlowParams::new(-0.999, 0.1).is_ok());
        for (k, t) in [
            (1.0, 1.0),
            (-1.0, 1.0),
            (0.5, 0.0),
            (0.5, -1.0),
            (f64::NAN, 1.0),
            (0.2, f64::INFINITY),
        ] {
            assert!(
                matches!(FlowParams::new(k, t), Err(Error::InvalidParams(_))),
                "{k} {t}"
            );
        }
    }

    #[test]
    fn epsilon_is_exact_square() {
        let p = FlowParams::new(0.3, 1.0).unwrap();
        let k = f64_to_rational(0.3);
        assert_eq!(p.epsilon_exact(), &(&k * &k));
        assert_eq!(p.epsilon(), rational_to_f64(&(&k * &k)));
    }
}
