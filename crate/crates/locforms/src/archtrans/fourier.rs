//! The Fourier/Mellin chain of the unipotent spherical transform: the
//! Fourier transform of the unipotent slice, its Mellin transform, and the
//! Mellin transform of the slice itself, all as closed Gamma-line integrals
//! against the test spectrum.

use num::complex::Complex64;
use std::f64::consts::PI;

use super::spectrum::TestSpectrum;
use super::ArchError;
use crate::specfun::{bessel_k, ln_cgamma, line_integral, QuadratureSpec};

/// `fhat(y)`: the Fourier transform of the unipotent slice at `y != 0`,
/// as the Bessel-weighted spectral integral
/// `(2 |y|^{-1/2-s2} / pi^{5/2+s2}) \int beta(t) t sinh(pi t) K_it(2 pi |y|)
///   Gamma((s2+1/2+it)/2) Gamma((s2+1/2-it)/2) dt`.
pub fn fhat(
    y: f64,
    s2: Complex64,
    beta: &TestSpectrum,
    quad: &QuadratureSpec,
) -> Result<Complex64, ArchError> {
    if y == 0.0 {
        return Err(ArchError::Domain("fhat at y = 0; use the spectral value".into()));
    }
    if s2.re.abs() >= 0.5 {
        return Err(ArchError::Domain(format!("fhat needs |Re s2| < 1/2, got {s2}")));
    }
    let ay = y.abs();
    let t_max = beta.t_cut().min(quad.t_max.max(8.0));
    let half = Complex64::new(0.5, 0.0);
    let val = line_integral(
        |t| {
            let it = Complex64::new(0.0, t);
            let k = bessel_k(it, 2.0 * PI * ay).unwrap_or_default();
            let g = (ln_cgamma((s2 + half + it) / 2.0) + ln_cgamma((s2 + half - it) / 2.0)).exp();
            beta.at_it(Complex64::new(t, 0.0)) * t * (PI * t).sinh() * k * g
        },
        &QuadratureSpec {
            t_max,
            ..quad.clone()
        },
    );
    let pi_pow = ((Complex64::new(2.5, 0.0) + s2) * PI.ln()).exp();
    Ok(val * 2.0 * (-(half + s2) * ay.ln()).exp() / pi_pow)
}

/// Closed form of the Mellin transform of `fhat` over `(0, infinity)`:
/// `(pi^{-lambda} / 2 pi^2) \int beta(t) t sinh(pi t)
///   Gamma((lambda-1/2-s2+it)/2) Gamma((lambda-1/2-s2-it)/2)
///   Gamma((s2+1/2+it)/2) Gamma((s2+1/2-it)/2) dt`.
pub fn mellin_fhat(
    lam: Complex64,
    s2: Complex64,
    beta: &TestSpectrum,
    quad: &QuadratureSpec,
) -> Result<Complex64, ArchError> {
    if lam.re <= 0.5 + s2.re + 0.1 {
        return Err(ArchError::Domain(format!(
            "mellin_fhat needs Re(lambda) > 1/2 + Re(s2) + 0.1, got {lam}"
        )));
    }
    let t_max = beta.t_cut().min(quad.t_max.max(8.0));
    let half = Complex64::new(0.5, 0.0);
    let val = line_integral(
        |t| {
            let it = Complex64::new(0.0, t);
            let g = (ln_cgamma((lam - half - s2 + it) / 2.0)
                + ln_cgamma((lam - half - s2 - it) / 2.0)
                + ln_cgamma((s2 + half + it) / 2.0)
                + ln_cgamma((s2 + half - it) / 2.0))
            .exp();
            beta.at_it(Complex64::new(t, 0.0)) * t * (PI * t).sinh() * g
        },
        &QuadratureSpec {
            t_max,
            ..quad.clone()
        },
    );
    let pi_pow = (-lam * PI.ln()).exp();
    Ok(val * pi_pow / (2.0 * PI * PI))
}

/// Closed form of the Mellin transform of the unipotent slice itself, valid
/// in the strip `0 < Re(lambda) < 1/2 - Re(s2)`:
/// `(pi^{-5/2} Gamma(lambda/2) / 16 Gamma((1-lambda)/2)) \int
///   Gamma(1/4+s2/2+it/2) Gamma(1/4+s2/2-it/2)
///   Gamma(1/4-s2/2+it/2-lambda/2) Gamma(1/4-s2/2-it/2-lambda/2)
///   beta(t) t sinh(pi t) dt`.
pub fn mellin_f(
    lam: Complex64,
    s2: Complex64,
    beta: &TestSpectrum,
    quad: &QuadratureSpec,
) -> Result<Complex64, ArchError> {
    if s2.re.abs() >= 0.5 || lam.re <= 0.0 || lam.re >= 0.5 - s2.re {
        return Err(ArchError::Domain(format!(
            "mellin_f needs |Re s2| < 1/2 and 0 < Re lambda < 1/2 - Re s2; got ({lam}, {s2})"
        )));
    }
    let t_max = beta.t_cut().min(quad.t_max.max(8.0));
    let q = Complex64::new(0.25, 0.0);
    let val = line_integral(
        |t| {
            let it2 = Complex64::new(0.0, t / 2.0);
            let g = (ln_cgamma(q + s2 / 2.0 + it2)
                + ln_cgamma(q + s2 / 2.0 - it2)
                + ln_cgamma(q - s2 / 2.0 + it2 - lam / 2.0)
                + ln_cgamma(q - s2 / 2.0 - it2 - lam / 2.0))
            .exp();
            beta.at_it(Complex64::new(t, 0.0)) * t * (PI * t).sinh() * g
        },
        &QuadratureSpec {
            t_max,
            ..quad.clone()
        },
    );
    let head = (ln_cgamma(lam / 2.0) - ln_cgamma((Complex64::new(1.0, 0.0) - lam) / 2.0)).exp()
        * PI.powf(-2.5)
        / 16.0;
    Ok(head * val)
}
