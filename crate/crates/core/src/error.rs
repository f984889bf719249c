use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// A principal square root was requested on its branch cut.
    #[error("branch cut violated in {op}: argument {arg} lies on (-inf, 0]")]
    BranchCut { op: &'static str, arg: Complex64 },

    #[error("invalid flow parameters: {0}")]
    InvalidParams(String),

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("series is not invertible: linear coefficient vanishes")]
    NotInvertible,

    #[error("truncation order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    /// Newton iteration for the Herglotz transform did not reach tolerance.
    #[error("Newton iteration did not converge for y = {target} after {iterations} steps (last iterate {last}, residual {residual:e})")]
    NewtonFailed {
        target: Complex64,
        last: Complex64,
        residual: f64,
        iterations: usize,
    },

    /// Sample doubling stopped before two successive values agreed.
    #[error("quadrature did not converge with {samples} samples: {previous} vs {last}")]
    QuadratureFailed {
        samples: usize,
        previous: Complex64,
        last: Complex64,
    },

    #[error("contour is inadmissible: {0}")]
    InadmissibleContour(String),

    /// No circle around kappa satisfies the kernel conditions for this z.
    #[error(
        "no admissible contour for kappa = {kappa}, z = {z}: {reason} (last radius {radius:e})"
    )]
    NoAdmissibleContour {
        kappa: f64,
        z: Complex64,
        radius: f64,
        reason: String,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }
}
