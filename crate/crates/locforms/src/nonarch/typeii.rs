//! The second family of spectral and dual weights at finite places: the
//! pairing of the twisted GL(3) section against an oldform basis of a GL(2)
//! representation, in closed form.
//!
//! The ramified-level evaluation is a finite sum over the level split and
//! oldform depth, against a two-index Hecke lattice that is truncated with a
//! certified geometric tail.  The newvector normalization at the identity is
//! `|W'(I_2)|^2 = 1 - q^{-2}` throughout, which makes every printed
//! specialization (unramified product, newform-level collapse, dual
//! analogues) hold exactly.

use num::complex::Complex64;

use super::local::{LocalDatum, NonArchError, SatakeGL3, SigmaClass, TruncationSpec};
use super::schur::{atkin_lehner_xi, schur};
use crate::specfun::SpectralPoint;

/// `|W'(I_2)|^2` for the unit newvector in this normalization.
pub fn newvector_norm_sq(q: f64) -> f64 {
    1.0 - q.powi(-2)
}

/// Branch selector for the dual weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeIIBranch {
    Unramified,
    DividesTwist,
    DividesLevel,
}

/// The two-index Hecke lattice
/// `sum_{min(l1, d2) = 0} sum_{l2 >= 0}
///    lambda_pi(p^{l2+k2}, p^{l1+d1}) conj(lambda_sigma(p^{l2}))
///    q^{-(2 l1 + l2) w}`
/// truncated with a certified polynomial-times-geometric tail.
fn hecke_lattice(
    k2: i64,
    d1: i64,
    d2: i64,
    w: Complex64,
    datum: &LocalDatum,
    a: &SatakeGL3,
    sigma: &SigmaClass,
    trunc: &TruncationSpec,
) -> Result<Complex64, NonArchError> {
    let q = datum.qf();
    let x = datum.qc(-w); // per unit of (2 l1 + l2)
    let max_alpha = a.alpha.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    // |lambda_sigma(p^l)| <= (l+1) max(|beta|,1/|beta|)^l
    let beta_growth = match sigma {
        SigmaClass::Unramified(b) => b.beta.norm().max(1.0 / b.beta.norm()),
        _ => 1.0,
    };
    let rho_l2 = x.norm() * max_alpha * beta_growth;
    let rho_l1 = x.norm().powi(2) * max_alpha.powi(2);
    if rho_l2 >= 1.0 || rho_l1 >= 1.0 {
        return Err(NonArchError::Domain(format!(
            "Hecke lattice diverges: ratios ({rho_l1:.3}, {rho_l2:.3})"
        )));
    }
    let n = trunc.n_max as i64;
    let mut total = Complex64::new(0.0, 0.0);
    let l1_range: Vec<i64> = if d2 == 0 { (0..=n).collect() } else { vec![0] };
    for &l1 in &l1_range {
        for l2 in 0..=n {
            // the torus indices are Fourier-normalized: (l2+k2, l1+d1)
            // addresses the partition (l2+k2+l1+d1, l1+d1, 0), which is the
            // indexing under which the unramified collapse reproduces the
            // Rankin-Selberg factor
            let lam_pi = schur(l2 + k2, l1 + d1, a);
            let lam_sig = sigma.lambda(q, l2).conj();
            total += lam_pi * lam_sig * x.powi((2 * l1 + l2) as i32);
        }
    }
    let nf = n as f64;
    let dim = (nf + 2.0) * (nf + 2.0) * (2.0 * nf + 4.0 + k2 as f64 + d1 as f64);
    let mut tail = dim * rho_l2.powi(n as i32 + 1) / (1.0 - rho_l2).powi(2);
    if d2 == 0 {
        tail /= 1.0 - rho_l1;
        tail += dim * rho_l1.powi(n as i32 + 1) / (1.0 - rho_l1).powi(2) / (1.0 - rho_l2);
    }
    if tail > trunc.tail_tol * total.norm().max(1.0) {
        return Err(NonArchError::TruncationInsufficient {
            tail,
            tol: trunc.tail_tol * total.norm().max(1.0),
        });
    }
    Ok(total)
}

/// Spectral weight.  For `r = 0` the closed unramified product; for
/// `r >= 1` the finite-plus-truncated level sum.  A conductor exceeding the
/// level gives weight zero.
pub fn typeii_spec_weight(
    pt: &SpectralPoint,
    datum: &LocalDatum,
    a: &SatakeGL3,
    sigma: &SigmaClass,
    trunc: &TruncationSpec,
) -> Result<Complex64, NonArchError> {
    let q = datum.qf();
    let (s1, s2) = (pt.s1, pt.s2);
    let theta_pi = a.theta(q);
    if s1.re <= -0.5 + theta_pi || s2.re <= -0.5 {
        return Err(NonArchError::Domain(format!(
            "spectral weight outside its half-planes: s = ({s1}, {s2})"
        )));
    }
    let r_sigma = sigma.r_sigma();
    if r_sigma > datum.r {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let w2 = newvector_norm_sq(q);
    if datum.r == 0 {
        // lambda_sigma(p^n) |W'(I2)|^2 L(1/2+s1, pi x sigma) conj(L(1/2 + conj(s2), sigma))
        if r_sigma != 0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let l_rs = sigma.l_factor_rs(q, Complex64::new(0.5, 0.0) + s1, a);
        let l_s2 = sigma
            .l_factor(q, Complex64::new(0.5, 0.0) + s2.conj())
            .conj();
        return Ok(sigma.lambda(q, datum.n as i64) * w2 * l_rs * l_s2);
    }
    // level split: the printed level-sum structure with the single
    // L(1/2 + s2, sigma) prefactor its own inner sums do not regenerate
    let l_s2 = sigma.l_factor(q, Complex64::new(0.5, 0.0) + s2);
    let d_pow = datum.qc((Complex64::new(1.0, 0.0) - s1 * 3.0 - s2) * datum.d as f64);
    let r = datum.r as i64;
    let mut level_sum = Complex64::new(0.0, 0.0);
    for d2 in 0..=r {
        let d1 = r - d2;
        let vol = datum.vol_k0(d2 as u32);
        let l_top = d2 - r_sigma as i64;
        if l_top < 0 {
            continue;
        }
        let mut inner = Complex64::new(0.0, 0.0);
        for l in 0..=l_top {
            let lam_p = sigma.lambda(q, 1);
            let mut kk = Complex64::new(0.0, 0.0);
            for k1 in 0..=l {
                let xi1 = atkin_lehner_xi(k1, l, lam_p, q)?;
                if xi1.norm() == 0.0 {
                    continue;
                }
                for k2 in 0..=l {
                    let xi2 = atkin_lehner_xi(k2, l, lam_p, q)?;
                    if xi2.norm() == 0.0 {
                        continue;
                    }
                    let lattice = hecke_lattice(
                        k2,
                        d1,
                        d2,
                        Complex64::new(0.5, 0.0) + s1,
                        datum,
                        a,
                        sigma,
                        trunc,
                    )?;
                    let powers = datum.qc((Complex64::new(0.5, 0.0) - s2) * k1 as f64)
                        * datum.qc((Complex64::new(0.5, 0.0) - s1) * k2 as f64);
                    kk += xi1 * xi2 * powers * lattice;
                }
            }
            inner += datum.qc(Complex64::new(-(l as f64), 0.0)) * kk;
        }
        let d1_pow = datum.qc(-(Complex64::new(1.0, 0.0) + s1 * 2.0) * d1 as f64);
        level_sum += vol * d1_pow * inner;
    }
    Ok(w2 * l_s2 * d_pow * q.powi(datum.r as i32) * level_sum)
}

/// The newform-level collapse of the spectral weight
/// (`r_sigma = r >= 1`): `zeta(1)^{-1} q^{(1-3s1-s2)d}
/// L(1/2+s1, pi x sigma) L(1/2+s2, sigma)`.
pub fn typeii_spec_weight_newform_closed(
    pt: &SpectralPoint,
    datum: &LocalDatum,
    a: &SatakeGL3,
    sigma: &SigmaClass,
) -> Complex64 {
    let q = datum.qf();
    let zeta1_inv = 1.0 - 1.0 / q;
    let d_pow = datum.qc((Complex64::new(1.0, 0.0) - pt.s1 * 3.0 - pt.s2) * datum.d as f64);
    let l_rs = sigma.l_factor_rs(q, Complex64::new(0.5, 0.0) + pt.s1, a);
    let l_s2 = sigma.l_factor(q, Complex64::new(0.5, 0.0) + pt.s2);
    d_pow * zeta1_inv * l_rs * l_s2
}

/// Dual weight in its three branches.
pub fn typeii_dual_weight(
    pt: &SpectralPoint,
    datum: &LocalDatum,
    a: &SatakeGL3,
    sigma: &SigmaClass,
    branch: TypeIIBranch,
    trunc: &TruncationSpec,
) -> Result<Complex64, NonArchError> {
    let q = datum.qf();
    let (s1, s2) = (pt.s1, pt.s2);
    let theta_pi = a.theta(q);
    if s1.re <= -0.5 + theta_pi || s2.re <= -0.5 {
        return Err(NonArchError::Domain(format!(
            "dual weight outside its half-planes: s = ({s1}, {s2})"
        )));
    }
    let r_sigma = sigma.r_sigma();
    let w2 = newvector_norm_sq(q);
    let half = Complex64::new(0.5, 0.0);
    // the dual variables (1 + s2 - s1)/2 and (1 + 3 s1 + s2)/2
    let s_rs = (Complex64::new(1.0, 0.0) + s2 - s1) / 2.0;
    let s_second = (Complex64::new(1.0, 0.0) + s1 * 3.0 + s2) / 2.0;
    match branch {
        TypeIIBranch::Unramified => {
            if r_sigma != 0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let d_pow = datum.qc((Complex64::new(1.0, 0.0) - s2 * 2.0) * datum.d as f64);
            Ok(d_pow * w2 * sigma.l_factor_rs(q, s_rs, a) * sigma.l_factor(q, s_second))
        }
        TypeIIBranch::DividesLevel => {
            if r_sigma != 0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let r = datum.r as f64;
            let head = datum.qc((Complex64::new(1.0, 0.0) - s1 * 3.0 - s2) / 2.0 * r);
            let bracket = sigma.lambda(q, datum.r as i64)
                - datum.qc(-s_second) * sigma.lambda(q, datum.r as i64 - 1);
            Ok(head * bracket * w2 * sigma.l_factor_rs(q, s_rs, a) * sigma.l_factor(q, s_second))
        }
        TypeIIBranch::DividesTwist => {
            // finite twist sum against the dual-variable lattice, with the
            // single L((1+3s1+s2)/2, sigma) prefactor
            if r_sigma > datum.n {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let d_pow = datum.qc((Complex64::new(1.0, 0.0) - s2 * 2.0) * datum.d as f64);
            let n = datum.n as i64;
            let head = datum.qc(-(half + s2) * n as f64);
            let mut ell_sum = Complex64::new(0.0, 0.0);
            for ell in 0..=n {
                let ell_w = datum.qc((Complex64::new(1.0, 0.0) + s2 * 2.0) * ell as f64);
                let mut split = Complex64::new(0.0, 0.0);
                for d2 in 0..=ell {
                    let d1 = ell - d2;
                    let l_top = d2 - r_sigma as i64;
                    if l_top < 0 {
                        continue;
                    }
                    let vol = datum.vol_k0(d2 as u32);
                    let mut inner = Complex64::new(0.0, 0.0);
                    for l in 0..=l_top {
                        let lam_p = sigma.lambda(q, 1);
                        let mut kk = Complex64::new(0.0, 0.0);
                        for k1 in 0..=l {
                            let xi1 = atkin_lehner_xi(k1, l, lam_p, q)?;
                            if xi1.norm() == 0.0 {
                                continue;
                            }
                            for k2 in 0..=l {
                                let xi2 = atkin_lehner_xi(k2, l, lam_p, q)?;
                                if xi2.norm() == 0.0 {
                                    continue;
                                }
                                let lattice = hecke_lattice(k2, d1, d2, s_rs, datum, a, sigma, trunc)?;
                                let powers = datum
                                    .qc((Complex64::new(1.0, 0.0) - s1 * 3.0 - s2) / 2.0 * k1 as f64)
                                    * datum.qc(
                                        (Complex64::new(1.0, 0.0) - s2 + s1) / 2.0 * k2 as f64,
                                    );
                                kk += xi1 * xi2 * powers * lattice;
                            }
                        }
                        inner += datum.qc(Complex64::new(-(l as f64), 0.0)) * kk;
                    }
                    let d1_pow = datum.qc(-(Complex64::new(1.0, 0.0) + s2 - s1) * d1 as f64);
                    split += vol * d1_pow * inner;
                }
                ell_sum += ell_w * split;
            }
            Ok(d_pow * w2 * head * sigma.l_factor(q, s_second) * ell_sum)
        }
    }
}
