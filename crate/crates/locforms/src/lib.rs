//! Exact and numerical evaluation of the local weight formulas attached to
//! GL(3) x GL(2) spectral identities: p-adic multi-geometric sums and
//! Hecke/Schur combinatorics, archimedean integral transforms, and a
//! verification harness that certifies each closed form against an
//! independent oracle.

pub mod nonarch;
pub mod qsymbolic;
pub mod specfun;

pub use specfun::SpectralPoint;
