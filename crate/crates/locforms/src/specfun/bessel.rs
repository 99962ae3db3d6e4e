//! Modified Bessel function of the second kind with complex (in particular
//! purely imaginary) order, through the cosh-integral representation
//! `K_mu(x) = \int_0^infty exp(-x cosh u) cosh(mu u) du`.

use num::complex::Complex64;

use super::quad::integrate;
use super::SpecFunError;

/// `K_order(x)` for real `x > 0` and complex order, relative accuracy about
/// 1e-10 inside the documented range (`|Im order| <= 200`, `1e-6 <= x <= 1e3`).
pub fn bessel_k(order: Complex64, x: f64) -> Result<Complex64, SpecFunError> {
    if !(1e-6..=1e3).contains(&x) {
        return Err(SpecFunError::OutOfRange(format!("bessel_k x = {x}")));
    }
    if order.im.abs() > 200.0 || order.re.abs() > 200.0 {
        return Err(SpecFunError::OutOfRange(format!("bessel_k order = {order}")));
    }
    // cutoff: need exp(-x cosh U) * cosh(Re mu * U) below target;
    // cosh U ~ e^U/2, so U = ln(2 (ln(1/eps) + |Re mu| U_0) / x) iterated once.
    let eps = 1e-16f64;
    let mut u_max = 1.0f64;
    for _ in 0..4 {
        let need = (1.0 / eps).ln() + order.re.abs() * u_max + 1.0;
        u_max = (2.0 * need / x).ln().max(1.0);
    }
    //
    // The integrand oscillates in u with frequency |Im mu|; resolve it.
    let freq = order.im.abs().max(1.0);
    let panels = ((freq * u_max / 3.0).ceil() as usize).clamp(8, 4000);
    let val = integrate(
        |u| {
            let damp = -x * u.cosh();
            if damp < -745.0 {
                return Complex64::new(0.0, 0.0);
            }
            // cosh(mu u) for complex mu
            let mu_u = order * u;
            ((mu_u.exp() + (-mu_u).exp()) * 0.5) * damp.exp()
        },
        0.0,
        u_max,
        panels,
        16,
    );
    Ok(val)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn half_order_closed_form() {
        // K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
        for &x in &[0.3, 1.0, 4.0, 20.0] {
            let k = bessel_k(Complex64::new(0.5, 0.0), x).unwrap();
            let want = (PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!(
                (k.re - want).abs() / want < 1e-10,
                "x = {}: {} vs {}",
                x,
                k.re,
                want
            );
        }
    }

    #[test]
    fn k0_reference_value() {
        // K_0(1) = 0.42102443824070833... (standard tables)
        let k = bessel_k(Complex64::new(0.0, 0.0), 1.0).unwrap();
        assert!((k.re - 0.421_024_438_240_708_33).abs() < 1e-11);
    }

    #[test]
    fn imaginary_order_is_real() {
        for &t in &[0.5, 2.0, 9.5] {
            for &x in &[0.2, 1.0, 5.0] {
                let k = bessel_k(Complex64::new(0.0, t), x).unwrap();
                assert!(k.im.abs() < 1e-12 * k.re.abs().max(1e-10), "t={} x={}", t, x);
            }
        }
    }

    #[test]
    fn ode_residual_finite_differences() {
        // x^2 K'' + x K' - (x^2 + mu^2) K = 0
        let mu = Complex64::new(0.0, 3.0);
        let h = 1e-4;
        for &x in &[0.8, 1.7, 3.1] {
            let km = bessel_k(mu, x - h).unwrap();
            let k0 = bessel_k(mu, x).unwrap();
            let kp = bessel_k(mu, x + h).unwrap();
            let d2 = (kp - k0 * 2.0 + km) / (h * h);
            let d1 = (kp - km) / (2.0 * h);
            let res = d2 * x * x + d1 * x - k0 * (x * x + (mu * mu).re);
            assert!(res.norm() < 1e-7, "x = {}: residual {}", x, res.norm());
        }
    }
}
