//! The first family of dual weights at finite places: closed forms for the
//! twisted double torus integral against the spherical GL(3) vector, in the
//! three regimes (unramified place; ramified place at small residue
//! cardinality; ramified place at large residue cardinality).
//!
//! Twisting characters are globally trivialized here; their ramified
//! branches are exercised only through Gauss-sum magnitudes.

use num::complex::Complex64;

use super::local::{LocalDatum, NonArchError, SatakeGL3};
use super::schur::cs_gl3;
use crate::specfun::SpectralPoint;

/// Regime selector for the closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeICase {
    Unramified,
    SmallQ,
    LargeQ,
}

/// The closed-form dual weight.  `pt.s1` plays the role of the single
/// complex parameter `s`; `lam` is the contour variable; `r_xi` is the
/// ramification exponent of the twisting character (the weight vanishes
/// unless it is zero).  The spherical vector is normalized so its value at
/// the identity is `1`, matching the torus values `q^{-i-j} lambda(p^i, p^j)`.
pub fn typei_dual_weight(
    pt: &SpectralPoint,
    lam: Complex64,
    datum: &LocalDatum,
    a: &SatakeGL3,
    case: TypeICase,
    r_xi: u32,
) -> Result<Complex64, NonArchError> {
    let q = datum.qf();
    let s = pt.s1;
    let theta = a.theta(q);
    if case == TypeICase::Unramified || case == TypeICase::LargeQ {
        // where both the torus series and the unit-ball sum converge
        if !(lam.re > -0.5 && lam.re < 0.5 + 2.0 * s.re - theta) {
            return Err(NonArchError::Domain(format!(
                "lambda = {lam} outside (-1/2, 1/2 + 2 Re s - theta) with theta = {theta}"
            )));
        }
    }
    if r_xi > 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let vol_units = q.powf(-(datum.d as f64) / 2.0);
    let dual = a.dual();
    match case {
        TypeICase::Unramified => {
            // volume^2 * L(1/2 + 2s - lambda, pi~) * zeta(1/2 + lambda)
            let l_dual = dual.l_factor(q, Complex64::new(0.5, 0.0) + s * 2.0 - lam);
            let zeta = 1.0 / (Complex64::new(1.0, 0.0) - datum.qc(-(Complex64::new(0.5, 0.0) + lam)));
            Ok(vol_units * vol_units * l_dual * zeta)
        }
        TypeICase::SmallQ => {
            // q^{(3/2 - lambda) r} Vol(K0'[r]) Vol(O^x)^4
            let rt = datum.r as f64;
            let head = datum.qc((Complex64::new(1.5, 0.0) - lam) * rt);
            Ok(head * datum.vol_k0(datum.r) * vol_units.powi(4))
        }
        TypeICase::LargeQ => {
            // trivial twisting character: Gauss factor 1, conductor 0
            let head = datum.qc((Complex64::new(0.5, 0.0) - lam) * datum.r as f64);
            let l_dual = dual.l_factor(q, Complex64::new(0.5, 0.0) + s * 2.0 - lam);
            Ok(head * vol_units * vol_units * l_dual)
        }
    }
}

/// Brute-force oracle for the unramified case: the torus double sum unfolded
/// with Casselman-Shalika values of the contragredient and the unit-ball
/// character sum, truncated at `n_max`.
pub fn typei_unramified_brute(
    pt: &SpectralPoint,
    lam: Complex64,
    datum: &LocalDatum,
    a: &SatakeGL3,
    n_max: u32,
) -> Complex64 {
    let q = datum.qf();
    let s = pt.s1;
    let dual = a.dual();
    let vol_units = q.powf(-(datum.d as f64) / 2.0);
    // z-sum: sum_{m >= 0} W~(diag(p^m,1,1)) q^{-m(2s - lambda - 1/2)}
    //   with W~(diag(p^m,1,1)) = q^{-m} s_{(m,0,0)}(alpha~)
    let mut zsum = Complex64::new(0.0, 0.0);
    for m in 0..=n_max as i64 {
        let w = cs_gl3(m, 0, &dual, q);
        zsum += w * datum.qc(-(s * 2.0 - lam - 0.5) * m as f64);
    }
    // y-sum over the unit ball: sum_{k >= 0} q^{-k(lambda + 1/2)}
    let mut ysum = Complex64::new(0.0, 0.0);
    for k in 0..=n_max as i64 {
        ysum += datum.qc(-(lam + 0.5) * k as f64);
    }
    vol_units * vol_units * zsum * ysum
}
