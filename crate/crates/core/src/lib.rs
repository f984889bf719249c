//! Inverted spectral flow of the free Jacobi process.
//!
//! The crate computes the Taylor coefficients of the local inverse of the flow
//! attached to the free Jacobi process with one projection of trace
//! `(1 + kappa) / 2`, evaluates the conformal maps and Herglotz transforms
//! that the flow is built from, and evaluates the circle-contour integral
//! representation of the derivative series `M(z) = z d/dz Phi^{-1}(z)`.
//!
//! Every closed form has an independent check:
//!
//! - [`flow`] holds the explicit coefficient formulas, evaluated with exact
//!   rational weights of `e^{-jt}`.
//! - [`oracle`] rebuilds the same coefficients by Newton reversion of the Taylor
//!   expansion of the map itself ([`powerseries`] + [`maps`]).
//! - [`contour`] evaluates the integral representations by trapezoidal
//!   quadrature on circles and checks the generating-function identities they
//!   rely on.
//!
//! Results of comparisons are collected in a [`report::VerifyReport`].

pub mod contour;
pub mod error;
pub mod flow;
pub mod hiprec;
pub mod maps;
pub mod oracle;
pub mod powerseries;
pub mod report;
pub mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use flow::FlowParams;
pub use powerseries::TruncatedSeries;
pub use report::{CheckEntry, VerifyReport};
pub use scalar::{GaussianRational, Scalar};

/// Relative error `|a - b| / |b|`, taken as zero when both are exactly zero.
pub fn rel_err(a: num_complex::Complex64, b: num_complex::Complex64) -> f64 {
    let diff = (a - b).norm();
    if diff == 0.0 {
        return 0.0;
    }
    diff / b.norm()
}
