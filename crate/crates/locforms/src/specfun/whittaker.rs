//! Classical Whittaker W function and the K-type Kirillov vectors built from
//! it.
//!
//! `W_{kappa,nu}(z)` is recovered from the Mellin pair of its exponentially
//! weighted form:
//! `e^{-z/2} W_{kappa,nu}(z) = (1/2 pi i) \int_(c) Gamma(1/2+nu+s)
//!      Gamma(1/2-nu+s) / Gamma(1-kappa+s) z^{-s} ds`
//! with the contour to the right of the poles of both numerator factors.
//! For large `z` the contour is moved near the saddle `Re s ~ z` so the
//! integrand peak matches the answer scale.

use num::complex::Complex64;

use super::gamma::{cgamma, ln_cgamma};
use super::quad::integrate;
use super::SpecFunError;

/// `W_{kappa,nu}(z)` for real `z > 0`.
pub fn whittaker_w(kappa: Complex64, nu: Complex64, z: f64) -> Result<Complex64, SpecFunError> {
    if z <= 0.0 || z > 1e3 {
        return Err(SpecFunError::OutOfRange(format!("whittaker_w z = {z}")));
    }
    if kappa.norm() > 100.0 || nu.norm() > 100.0 {
        return Err(SpecFunError::ParameterOverflow(format!(
            "whittaker_w kappa = {kappa}, nu = {nu}"
        )));
    }
    // contour right of s = -1/2 - Re nu - n and s = -1/2 + Re nu - n;
    // for z beyond O(1) sit near the saddle Re s ~ z to avoid cancellation
    let c_min = (-0.5 + nu.re.abs()).max(-0.25) + 0.75;
    let c = c_min.max(z.min(400.0));
    let im_shift = nu.im.abs() + kappa.im.abs();
    let t_max = 34.0 + 2.0 * im_shift + 2.0 * c.sqrt();
    let ln_z = z.ln();
    let panels = ((t_max * (2.5 + ln_z.abs()) / 2.0).ceil() as usize).clamp(32, 4000);
    let half = Complex64::new(0.5, 0.0);
    let mb = integrate(
        |tau| {
            let s = Complex64::new(c, tau);
            let ln = ln_cgamma(half + nu + s) + ln_cgamma(half - nu + s)
                - ln_cgamma(Complex64::new(1.0, 0.0) - kappa + s)
                - s * ln_z
                + 0.5 * z;
            if ln.re > 700.0 || ln.re < -740.0 {
                Complex64::new(0.0, 0.0)
            } else {
                ln.exp()
            }
        },
        -t_max,
        t_max,
        panels,
        16,
    ) / (2.0 * std::f64::consts::PI);
    Ok(mb)
}

/// The K-isotypic Kirillov vector of weight `2n` evaluated at `diag(a, 1)`:
/// a normalized Whittaker value, zero whenever `1/2 +- nu + sgn(a) n` is a
/// nonpositive integer.
pub fn kirillov_wn(n: i64, nu: Complex64, a: f64) -> Complex64 {
    assert!(a != 0.0, "kirillov_wn at a = 0");
    let eps = if a > 0.0 { 1.0 } else { -1.0 };
    let m = eps * n as f64;
    if gamma_arg_is_nonpositive_int(Complex64::new(0.5 + m, 0.0) - nu)
        || gamma_arg_is_nonpositive_int(Complex64::new(0.5 + m, 0.0) + nu)
    {
        return Complex64::new(0.0, 0.0);
    }
    let kappa = Complex64::new(m, 0.0);
    let w = match whittaker_w(kappa, nu, 4.0 * std::f64::consts::PI * a.abs()) {
        Ok(w) => w,
        Err(_) => return Complex64::new(0.0, 0.0),
    };
    let g1 = cgamma(Complex64::new(0.5 + m, 0.0) - nu);
    let g2 = cgamma(Complex64::new(0.5 + m, 0.0) + nu);
    let phase = Complex64::new(0.0, 1.0).powc(Complex64::new(m, 0.0));
    phase * w / (g1 * g2).sqrt()
}

pub(crate) fn gamma_arg_is_nonpositive_int(z: Complex64) -> bool {
    z.im.abs() < 1e-10 && z.re < 0.5 && (z.re - z.re.round()).abs() < 1e-10 && z.re.round() <= 0.0
}
