//! The double Hecke series over a GL(3) torus and its closed-form numerator
//! family: the recursively defined `h_m`, the five weight polynomials `P_j`,
//! and the factored evaluation they assemble to.

use num::complex::Complex64;

use super::local::{NonArchError, SatakeGL3, TruncationSpec};
use super::schur::{homogeneous_values, schur};
use crate::specfun::SpectralPoint;

/// `h_m` from `h_0 = 1`, `h_{-1} = h_{-2} = 0`,
/// `h_m = lambda(p) h_{m-1} - lambda~(p) h_{m-2} + h_{m-3}`;
/// agrees with the complete homogeneous symmetric value of the Satake
/// parameters.
pub fn hm_poly(m: i64, a: &SatakeGL3) -> Complex64 {
    if m < 0 {
        return Complex64::new(0.0, 0.0);
    }
    homogeneous_values(a, m as usize)[m as usize]
}

/// The weight polynomials `P_j(x, y)`, `0 <= j <= 4`, in the Hecke
/// eigenvalues of `pi` and its contragredient.
pub fn p_poly(j: u32, x: Complex64, y: Complex64, a: &SatakeGL3) -> Complex64 {
    let (l, lt, _) = a.elementary(); // lambda(p) = e1, lambda~(p) = e2
    let one = Complex64::new(1.0, 0.0);
    match j {
        0 => l * lt * x * y - l * y - lt * lt * x * y * y - lt * (x - y * y) + one,
        1 => l * lt * x * y * y * 2.0 - (l * l + lt) * x * y + l * (x - y * y) + y,
        2 => -(l * l) * x * y * y + l * x * y * 2.0 - lt * x * y * y * 2.0 - x + y * y,
        3 => l * x * y * y * 2.0 - x * y,
        4 => -(x * y * y),
        _ => panic!("p_poly index out of range"),
    }
}

/// The numerator `N(s, pi; ell) = sum_{j=0}^4 P_j(A, B) h_{ell+j}` with
/// `A = q^{-1-2 s1}` and `B = q^{-1-s1-s2}`.
pub fn n_factor(ell: i64, pt: &SpectralPoint, a: &SatakeGL3, q: f64) -> Complex64 {
    let ln_q = q.ln();
    let x = ((-1.0 - 2.0 * pt.s1) * ln_q).exp();
    let y = ((-1.0 - pt.s1 - pt.s2) * ln_q).exp();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..=4u32 {
        acc += p_poly(j, x, y, a) * hm_poly(ell + j as i64, a);
    }
    acc
}

/// Truncated evaluation of the double series
/// `sum_{i >= ell} sum_{j >= 0} lambda(p^{i+j}, p^j)
///  q^{-i(1+s1+s2) - j(1+2 s1)}`
/// with a certified geometric tail.
pub fn gen_double_sum(
    ell: i64,
    pt: &SpectralPoint,
    a: &SatakeGL3,
    q: f64,
    trunc: &TruncationSpec,
) -> Result<Complex64, NonArchError> {
    if pt.s1.re <= -0.1 || pt.s2.re <= -0.05 {
        return Err(NonArchError::Domain(format!(
            "gen_double_sum needs Re(s1) > -1/10, Re(s2) > -1/20; got ({}, {})",
            pt.s1.re, pt.s2.re
        )));
    }
    let n = trunc.n_max as i64;
    if ell > n {
        return Err(NonArchError::TruncationInsufficient {
            tail: f64::INFINITY,
            tol: trunc.tail_tol,
        });
    }
    let ln_q = q.ln();
    let wi = (-(Complex64::new(1.0, 0.0) + pt.s1 + pt.s2) * ln_q).exp();
    let wj = (-(Complex64::new(1.0, 0.0) + pt.s1 * 2.0) * ln_q).exp();
    let max_alpha = a.alpha.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    // |schur(i,j)| <= dim * max|alpha|^{i+2j}, dim = (i+1)(j+1)(i+j+2)/2
    let rho_i = wi.norm() * max_alpha;
    let rho_j = wj.norm() * max_alpha * max_alpha;
    if rho_i >= 1.0 || rho_j >= 1.0 {
        return Err(NonArchError::Domain(format!(
            "series diverges: per-index ratios ({rho_i:.3}, {rho_j:.3})"
        )));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for i in ell..=n {
        let wi_i = wi.powi(i as i32);
        for j in 0..=n {
            total += schur(i, j, a) * wi_i * wj.powi(j as i32);
        }
    }
    // polynomial-times-geometric tail over each of the two escape directions
    let nf = n as f64;
    let dim_bound = (nf + 2.0) * (nf + 2.0) * (2.0 * nf + 2.0);
    let tail_i = dim_bound * rho_i.powi(n as i32 + 1) / (1.0 - rho_i).powi(2) / (1.0 - rho_j);
    let tail_j = dim_bound * rho_j.powi(n as i32 + 1) / (1.0 - rho_j).powi(2) / (1.0 - rho_i);
    let tail = tail_i + tail_j;
    if tail > trunc.tail_tol * total.norm().max(1.0) {
        return Err(NonArchError::TruncationInsufficient {
            tail,
            tol: trunc.tail_tol * total.norm().max(1.0),
        });
    }
    Ok(total)
}

/// The factored closed form the double series sums to:
/// `B^ell N(s, pi; ell) / (prod_k (1 - q^{nu_k} B) prod_{i<j} (1 - q^{nu_i+nu_j} A))`.
///
/// The denominators are expressed through the Satake parameters, so this is
/// usable for any unramified `pi`, not only explicit principal series.
pub fn gen_double_sum_closed(ell: i64, pt: &SpectralPoint, a: &SatakeGL3, q: f64) -> Complex64 {
    let ln_q = q.ln();
    let big_a = ((-1.0 - 2.0 * pt.s1) * ln_q).exp();
    let big_b = ((-1.0 - pt.s1 - pt.s2) * ln_q).exp();
    let one = Complex64::new(1.0, 0.0);
    let mut den = one;
    for k in 0..3 {
        // q^{nu_k} = alpha_k
        den *= one - a.alpha[k] * big_b;
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            den *= one - a.alpha[i] * a.alpha[j] * big_a;
        }
    }
    big_b.powi(ell as i32) * n_factor(ell, pt, a, q) / den
}
