//! The spherical GL(3) Whittaker function on the torus, through its double
//! Mellin-Barnes representation
//! `W(diag(y1 y2, y2, 1)) = pi^{3/2} (2 pi i)^{-2} \int\int y2^{1-l1} y1^{1-l2}
//!    prod_j Gamma((l1+nu_j)/2) Gamma((l2-nu_j)/2)
//!    / (4 pi^{l1+l2} Gamma((l1+l2)/2)) dl2 dl1`.

use num::complex::Complex64;
use std::f64::consts::PI;

use super::gamma::ln_cgamma;
use super::quad::{gauss_legendre, QuadratureSpec};
use super::{SpecFunError, SpectralPoint};

/// `W(diag(y1*y2, y2, 1))` for `y1, y2 > 0`.
pub fn gl3_whittaker(
    y1: f64,
    y2: f64,
    pt: &SpectralPoint,
    quad: &QuadratureSpec,
) -> Result<Complex64, SpecFunError> {
    if y1 <= 0.0 || y2 <= 0.0 {
        return Err(SpecFunError::OutOfRange("gl3_whittaker needs y1, y2 > 0".into()));
    }
    let nus = pt.nus();
    let max_re = nus.iter().map(|n| n.re.abs()).fold(0.0f64, f64::max);
    if max_re > 0.26 {
        return Err(SpecFunError::OutOfRange(format!(
            "gl3_whittaker nu real parts {max_re} exceed 1/4"
        )));
    }
    let c = quad.shift.max(2.0 * max_re + 0.4);
    let t_max = quad.t_max.max(14.0);
    let order = 16usize;
    let panels = (quad.nodes / order).max(12);
    let (xs, ws) = gauss_legendre(order);
    let n = panels * order;
    let mut nodes = Vec::with_capacity(n);
    let h = 2.0 * t_max / panels as f64;
    for p in 0..panels {
        let lo = -t_max + p as f64 * h;
        let mid = lo + 0.5 * h;
        for (x, w) in xs.iter().zip(&ws) {
            nodes.push((mid + 0.5 * h * x, w * 0.5 * h));
        }
    }

    // cache the single-line factors
    let ln_y1 = y1.ln();
    let ln_y2 = y2.ln();
    let ln_pi = PI.ln();
    let mut f1 = Vec::with_capacity(n); // lambda1-dependent
    let mut f2 = Vec::with_capacity(n); // lambda2-dependent
    for &(tau, w) in &nodes {
        let l1 = Complex64::new(c, tau);
        let l2 = Complex64::new(c, tau);
        let mut ln1 = Complex64::new(0.0, 0.0);
        let mut ln2 = Complex64::new(0.0, 0.0);
        for nu in &nus {
            ln1 += ln_cgamma((l1 + nu) / 2.0);
            ln2 += ln_cgamma((l2 - nu) / 2.0);
        }
        ln1 += (Complex64::new(1.0, 0.0) - l1) * ln_y2 - l1 * ln_pi;
        ln2 += (Complex64::new(1.0, 0.0) - l2) * ln_y1 - l2 * ln_pi;
        f1.push((l1, ln1, w));
        f2.push((l2, ln2, w));
    }

    let mut total = Complex64::new(0.0, 0.0);
    let mut boundary = 0.0f64;
    let mut peak = 0.0f64;
    for (i1, &(l1, ln1, w1)) in f1.iter().enumerate() {
        for (i2, &(l2, ln2, w2)) in f2.iter().enumerate() {
            let ln = ln1 + ln2 - ln_cgamma((l1 + l2) / 2.0);
            if ln.re < -740.0 {
                continue;
            }
            let v = ln.exp();
            total += v * (w1 * w2);
            let mag = v.norm();
            if mag > peak {
                peak = mag;
            }
            if i1 == 0 || i2 == 0 || i1 + 1 == f1.len() || i2 + 1 == f2.len() {
                boundary = boundary.max(mag);
            }
        }
    }
    // (2 pi i)^{-2} over dl2 dl1 = (i d tau)^2 / (2 pi i)^2 = d tau^2 / (2 pi)^2
    let val = total * PI.sqrt() * PI / (4.0 * (2.0 * PI) * (2.0 * PI));
    let tail_est = boundary * t_max * 4.0;
    if tail_est > quad.tol * peak.max(1e-300) {
        return Err(SpecFunError::ContourTooShort {
            tail: tail_est,
            tol: quad.tol * peak,
        });
    }
    Ok(val)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec {
            t_max: 16.0,
            nodes: 512,
            tol: 1e-5,
            shift: 0.9,
        }
    }

    #[test]
    fn nu_permutation_invariance() {
        let q = spec();
        let pt = SpectralPoint::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.7),
            Complex64::new(0.0, -0.3),
            Complex64::new(0.0, -0.4),
        );
        let mut perm = pt.clone();
        perm.nu1 = pt.nu3;
        perm.nu3 = pt.nu1;
        let a = gl3_whittaker(1.3, 0.8, &pt, &q).unwrap();
        let b = gl3_whittaker(1.3, 0.8, &perm, &q).unwrap();
        assert!((a - b).norm() <= 1e-6 * a.norm().max(1e-12));
    }

    #[test]
    fn rapid_decay_in_torus_direction() {
        let q = spec();
        let pt = SpectralPoint::real(0.0, 0.0, 0.0, 0.0, 0.0);
        let w1 = gl3_whittaker(1.0, 1.0, &pt, &q).unwrap();
        let w20 = gl3_whittaker(1.0, 20.0, &pt, &q).unwrap();
        assert!(
            w20.norm() * 1e3 < w1.norm(),
            "decay too slow: {} vs {}",
            w20.norm(),
            w1.norm()
        );
    }

    #[test]
    fn self_convergence_at_degenerate_point() {
        let pt = SpectralPoint::real(0.0, 0.0, 0.0, 0.0, 0.0);
        let a = gl3_whittaker(0.9, 1.4, &pt, &spec()).unwrap();
        let fine = QuadratureSpec {
            t_max: 20.0,
            nodes: 1024,
            tol: 1e-6,
            shift: 0.9,
        };
        let b = gl3_whittaker(0.9, 1.4, &pt, &fine).unwrap();
        assert!(
            (a - b).norm() <= 1e-6 * b.norm().max(1e-12),
            "{} vs {}",
            a,
            b
        );
    }
}
