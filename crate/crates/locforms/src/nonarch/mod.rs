//! All p-adic local quantities: Schur/Casselman-Shalika values, Hecke and
//! oldform combinatorics, Gauss sums, the degenerate and generic local
//! integrals (closed forms and brute-force oracles), the spectral and dual
//! weight families, and the newform-sieve coefficients.

mod degen;
mod gauss;
mod generic;
mod local;
mod schur;
mod series;
mod sieve;
mod typei;
mod typeii;

pub use degen::{degen_nonarch, degen_nonarch_exact, degen_unramified_product, Side, Weyl};
pub use gauss::{gauss_sum, CharacterTable};
pub use generic::{gen_nonarch, gen_nonarch_assembled};
pub use local::{
    hecke_gl2, LocalDatum, NonArchError, SatakeGL2, SatakeGL3, SigmaClass, TruncationSpec,
};
pub use schur::{atkin_lehner_xi, atkin_lehner_xi_unramified, cs_gl3, schur, schur_bialternant};
pub use series::{gen_double_sum, gen_double_sum_closed, hm_poly, n_factor, p_poly};
pub use sieve::{sieve_a, sieve_c};
pub use typei::{typei_dual_weight, typei_unramified_brute, TypeICase};
pub use typeii::{
    newvector_norm_sq, typeii_dual_weight, typeii_spec_weight, typeii_spec_weight_newform_closed,
    TypeIIBranch,
};
