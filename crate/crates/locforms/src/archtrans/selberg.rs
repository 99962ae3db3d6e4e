//! The inverse spherical transform on the hyperbolic plane and the product
//! kernel identity it satisfies against the Bessel pair.

use num::complex::Complex64;

use super::report::IdentityReport;
use super::spectrum::TestSpectrum;
use super::ArchError;
use crate::specfun::{bessel_k, integrate, legendre_conical, line_integral, QuadratureSpec};

/// `V(u) = (1/4 pi) \int_R P_{-1/2+it}(1 + u/2) beta(t) t tanh(pi t) dt`
/// for `u >= 0`.
pub fn inverse_selberg(
    u: f64,
    beta: &TestSpectrum,
    quad: &QuadratureSpec,
) -> Result<f64, ArchError> {
    if !(0.0..=1e4).contains(&u) {
        return Err(ArchError::Domain(format!("inverse transform at u = {u}")));
    }
    if beta.is_zero() {
        return Ok(0.0);
    }
    let x = 1.0 + u / 2.0;
    let t_max = beta.t_cut().min(quad.t_max.max(8.0));
    let val = line_integral(
        |t| {
            let p = legendre_conical(t, x).unwrap_or(0.0);
            beta.at_it(Complex64::new(t, 0.0)) * p * t * (std::f64::consts::PI * t).tanh()
        },
        &QuadratureSpec {
            t_max,
            ..quad.clone()
        },
    );
    Ok(val.re / (4.0 * std::f64::consts::PI))
}

/// The double-Bessel side of the kernel identity:
/// `(8 sqrt(y)/pi^2) \int_R \int_0^infty K_it(2 pi b) K_it(2 pi b y)
///  cos(2 pi b x) db  beta(t) t sinh(pi t) dt`.
pub fn kernel_rhs(
    x: f64,
    y: f64,
    beta: &TestSpectrum,
    quad: &QuadratureSpec,
) -> Result<f64, ArchError> {
    if y <= 0.0 {
        return Err(ArchError::Domain("kernel needs y > 0".into()));
    }
    let t_max = beta.t_cut().min(quad.t_max.max(8.0));
    let val = line_integral(
        |t| {
            if t.abs() < 1e-9 {
                return Complex64::new(0.0, 0.0);
            }
            let order = Complex64::new(0.0, t);
            // b-integral in log coordinates; K decays like e^{-2 pi b (1+y)}
            let b_hi = (40.0 / (1.0 + y)).max(2.0);
            let panels = ((t.abs() * 3.0) as usize + 40).min(600);
            let inner = integrate(
                |v| {
                    let b = v.exp();
                    let k1 = bessel_k(order, 2.0 * std::f64::consts::PI * b).unwrap_or_default();
                    let k2 =
                        bessel_k(order, 2.0 * std::f64::consts::PI * b * y).unwrap_or_default();
                    k1 * k2 * (2.0 * std::f64::consts::PI * b * x).cos() * b
                },
                -14.0,
                b_hi.ln(),
                panels,
                16,
            );
            inner
                * beta.at_it(Complex64::new(t, 0.0))
                * t
                * (std::f64::consts::PI * t).sinh()
        },
        &QuadratureSpec {
            t_max,
            ..quad.clone()
        },
    );
    Ok(val.re * 8.0 * y.sqrt() / (std::f64::consts::PI * std::f64::consts::PI))
}

/// Compare the inverse-transform route `V(y + 1/y - 2 + x^2/y)` against the
/// double-Bessel route at one point.
pub fn kernel_identity_check(
    x: f64,
    y: f64,
    beta: &TestSpectrum,
    quad: &QuadratureSpec,
    tol: f64,
) -> Result<IdentityReport, ArchError> {
    let u = y + 1.0 / y - 2.0 + x * x / y;
    let lhs = inverse_selberg(u, beta, quad)?;
    let rhs = kernel_rhs(x, y, beta, quad)?;
    Ok(IdentityReport::compare(
        "unipotent-kernel-product",
        Complex64::new(lhs, 0.0),
        Complex64::new(rhs, 0.0),
        tol,
        format!("x={x}, y={y}, t_max={}", quad.t_max),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad() -> QuadratureSpec {
        QuadratureSpec {
            t_max: 9.0,
            nodes: 640,
            tol: 1e-7,
            shift: 0.4,
        }
    }

    #[test]
    fn zero_spectrum_gives_zero() {
        let v = inverse_selberg(0.7, &TestSpectrum::Zero, &quad()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn kernel_identity_at_origin() {
        let beta = TestSpectrum::default();
        let rep = kernel_identity_check(0.0, 1.0, &beta, &quad(), 1e-5).unwrap();
        assert!(rep.pass, "rel err {}", rep.rel_err);
    }

    #[test]
    fn kernel_identity_off_axis() {
        let beta = TestSpectrum::default();
        for (x, y) in [(0.5, 1.0), (1.0, 0.5), (0.5, 2.0)] {
            let rep = kernel_identity_check(x, y, &beta, &quad(), 1e-5).unwrap();
            assert!(rep.pass, "({x},{y}): rel err {}", rep.rel_err);
        }
    }

    #[test]
    fn kernel_even_in_x() {
        let beta = TestSpectrum::default();
        let a = kernel_rhs(0.8, 1.3, &beta, &quad()).unwrap();
        let b = kernel_rhs(-0.8, 1.3, &beta, &quad()).unwrap();
        assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-12));
    }

    #[test]
    fn kernel_decays_for_large_x() {
        let beta = TestSpectrum::default();
        let v0 = inverse_selberg(0.0, &beta, &quad()).unwrap();
        let u_far = 1.0 + 1.0 - 2.0 + 50.0 * 50.0; // x = 50, y = 1
        let far = inverse_selberg(u_far, &beta, &quad()).unwrap();
        assert!(far.abs() < 1e-8 && v0.abs() > 1e-4, "far={far}, v0={v0}");
    }
}
