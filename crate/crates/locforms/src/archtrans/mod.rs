//! Archimedean transforms and identities at real places: the spherical
//! transform chain along the unipotent, K-type Hecke integrals, the dual
//! weight assembly, and the degenerate/generic closed forms with their
//! contour-reduction verifications.

mod degen;
mod dual;
mod fourier;
mod generic;
mod hecke;
mod report;
mod selberg;
mod spectrum;

pub use degen::{
    arch_degen, barnes_inner_closed, barnes_inner_contour, i2_closed, i2_contour, i3_closed,
    i3_contour,
};
pub use dual::dual_weight_arch;
pub use fourier::{fhat, mellin_f, mellin_fhat};
pub use generic::{arch_gen, arch_gen_spec_integrand, ArchSide};
pub use hecke::{hecke_psi, s_series, SigmaArch};
pub use report::IdentityReport;
pub use selberg::{inverse_selberg, kernel_identity_check, kernel_rhs};
pub use spectrum::TestSpectrum;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ArchError {
    #[error("quadrature failed: {0}")]
    QuadratureFail(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series truncation insufficient: tail {tail:.3e} vs tolerance {tol:.3e}")]
    TruncationInsufficient { tail: f64, tol: f64 },
    #[error(transparent)]
    SpecFun(#[from] crate::specfun::SpecFunError),
}
