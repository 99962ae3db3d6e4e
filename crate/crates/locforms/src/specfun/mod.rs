//! Self-contained numerical special functions: complex Gamma, modified
//! K-Bessel of imaginary order, classical Whittaker functions, Gauss and
//! generalized hypergeometric series, conical Legendre functions, and the
//! GL(3) spherical Whittaker function via a double Mellin-Barnes integral.

mod bessel;
mod gamma;
mod gl3;
mod hyp;
mod legendre;
mod point;
mod quad;
mod whittaker;

pub use bessel::bessel_k;
pub use gamma::{cgamma, gamma_r, ln_cgamma};
pub use gl3::gl3_whittaker;
pub use hyp::{hyp2f1, hyp3f2_unit};
pub use legendre::legendre_conical;
pub use point::SpectralPoint;
pub use quad::{gauss_legendre, line_integral, QuadratureSpec};
pub use whittaker::{kirillov_wn, whittaker_w};

use thiserror::Error;

/// Errors from the special-function kernels.
#[derive(Debug, Error)]
pub enum SpecFunError {
    #[error("gamma pole at nonpositive integer {0}")]
    PoleAtNonpositiveInteger(f64),
    #[error("argument outside supported range: {0}")]
    OutOfRange(String),
    #[error("parameter too large for stable evaluation: {0}")]
    ParameterOverflow(String),
    #[error("series does not converge for these parameters: {0}")]
    Divergent(String),
    #[error("hypergeometric lower parameter is a nonpositive integer")]
    PoleInC,
    #[error("contour cutoff too short: tail estimate {tail:.3e} exceeds tolerance {tol:.3e}")]
    ContourTooShort { tail: f64, tol: f64 },
}
