//! Gauss and generalized hypergeometric series at and inside the unit disc.

use num::complex::Complex64;

use super::gamma::ln_cgamma;
use super::SpecFunError;

fn is_nonpositive_int(z: Complex64) -> Option<i64> {
    if z.im.abs() < 1e-12 {
        let r = z.re.round();
        if r <= 0.0 && (z.re - r).abs() < 1e-12 {
            return Some(r as i64);
        }
    }
    None
}

/// Gauss hypergeometric `2F1(a, b; c; z)` for `|z| <= 1`.
///
/// At `z = 1` the classical Gauss evaluation is used (requires
/// `Re(c - a - b) > 0`); elsewhere the defining series, which terminates when
/// `a` or `b` is a nonpositive integer.
pub fn hyp2f1(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
) -> Result<Complex64, SpecFunError> {
    if is_nonpositive_int(c).is_some() {
        return Err(SpecFunError::PoleInC);
    }
    let terminating = is_nonpositive_int(a).or(is_nonpositive_int(b));
    if let Some(m) = terminating {
        let n_terms = (-m) as usize + 1;
        return Ok(sum_2f1(a, b, c, z, n_terms, 0.0));
    }
    if (z - Complex64::new(1.0, 0.0)).norm() < 1e-14 {
        let s = c - a - b;
        if s.re <= 0.0 {
            return Err(SpecFunError::Divergent(format!(
                "2F1 at z=1 with Re(c-a-b) = {}",
                s.re
            )));
        }
        // Gauss: Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))
        return Ok((ln_cgamma(c) + ln_cgamma(c - a - b) - ln_cgamma(c - a) - ln_cgamma(c - b)).exp());
    }
    if z.norm() > 1.0 + 1e-12 {
        return Err(SpecFunError::Divergent(format!("2F1 with |z| = {}", z.norm())));
    }
    if z.norm() > 0.985 {
        return Err(SpecFunError::Divergent(
            "2F1 too close to the unit circle for direct summation".into(),
        ));
    }
    Ok(sum_2f1(a, b, c, z, 100_000, 1e-17))
}

fn sum_2f1(a: Complex64, b: Complex64, c: Complex64, z: Complex64, nmax: usize, tol: f64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for n in 0..nmax {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) * z / ((c + nf) * (nf + 1.0));
        sum += term;
        if term.norm() < tol * sum.norm().max(1e-300) {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    sum
}

/// `3F2(a1, a2, a3; b1, b2; 1)` by direct summation with Levin-u
/// acceleration; terminating parameter sets are summed exactly.
pub fn hyp3f2_unit(
    a1: Complex64,
    a2: Complex64,
    a3: Complex64,
    b1: Complex64,
    b2: Complex64,
) -> Result<Complex64, SpecFunError> {
    if is_nonpositive_int(b1).is_some() || is_nonpositive_int(b2).is_some() {
        return Err(SpecFunError::PoleInC);
    }
    let terminating = [a1, a2, a3].iter().filter_map(|&a| is_nonpositive_int(a)).min();
    if let Some(m) = terminating {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for n in 0..(-m) as usize {
            let nf = n as f64;
            term *= (a1 + nf) * (a2 + nf) * (a3 + nf) / ((b1 + nf) * (b2 + nf) * (nf + 1.0));
            sum += term;
        }
        return Ok(sum);
    }
    let margin = (b1 + b2 - a1 - a2 - a3).re;
    if margin <= 0.0 {
        return Err(SpecFunError::Divergent(format!(
            "3F2 at unit argument with Re(b1+b2-a1-a2-a3) = {margin}"
        )));
    }
    // terms decay like n^{-1-margin}; accelerate the logarithmic convergence
    let n_terms = 220;
    let mut terms = Vec::with_capacity(n_terms);
    let mut term = Complex64::new(1.0, 0.0);
    for n in 0..n_terms {
        terms.push(term);
        let nf = n as f64;
        term *= (a1 + nf) * (a2 + nf) * (a3 + nf) / ((b1 + nf) * (b2 + nf) * (nf + 1.0));
    }
    Ok(levin_u(&terms))
}

/// Levin u-transform estimate of `sum a_n` from the leading terms.
///
/// Uses the explicit order-k formula with remainder model
/// `omega_n = (beta + n) a_n`; the returned value is the order whose
/// successive estimates stabilize best.
fn levin_u(terms: &[Complex64]) -> Complex64 {
    let beta = 1.0f64;
    let mut partial = Vec::with_capacity(terms.len());
    let mut s = Complex64::new(0.0, 0.0);
    for &a in terms {
        s += a;
        partial.push(s);
    }
    let k_max = 34.min(terms.len().saturating_sub(2));
    let mut best = *partial.last().unwrap();
    let mut best_delta = f64::INFINITY;
    let mut prev = Complex64::new(f64::NAN, 0.0);
    for k in 4..=k_max {
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = Complex64::new(0.0, 0.0);
        let mut binom = 1.0f64; // C(k, j), updated multiplicatively
        for j in 0..=k {
            let jf = j as f64;
            let omega = (beta + jf) * terms[j + 1];
            if omega.norm() > 1e-290 {
                let damp = ((beta + jf) / (beta + k as f64)).powi(k as i32 - 1);
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                let w = sign * binom * damp;
                num += partial[j] / omega * w;
                den += Complex64::new(w, 0.0) / omega;
            }
            binom *= (k - j) as f64 / (jf + 1.0);
        }
        if den.norm() > 1e-250 {
            let est = num / den;
            if prev.re.is_finite() {
                let delta = (est - prev).norm();
                if delta < best_delta {
                    best_delta = delta;
                    best = est;
                }
            }
            prev = est;
        }
    }
    best
}
