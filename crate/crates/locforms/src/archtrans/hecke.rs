//! Hecke integrals of the K-isotypic Kirillov vectors and the weighted
//! two-sided series over the K-type ladder.

use num::complex::Complex64;
use std::f64::consts::PI;

use super::ArchError;
use crate::specfun::{hyp2f1, ln_cgamma, SpecFunError};

/// The archimedean GL(2) datum: its K-type ladder is two-sided for the
/// continuous classes and one-sided beyond the lowest weight for the
/// discrete class.
#[derive(Clone, Copy, Debug)]
pub struct SigmaArch {
    pub nu: Complex64,
    pub discrete: bool,
}

impl SigmaArch {
    pub fn principal(t: f64) -> Self {
        SigmaArch {
            nu: Complex64::new(0.0, t),
            discrete: false,
        }
    }

    pub fn complementary(nu: f64) -> Self {
        assert!(nu > 0.0 && nu < 0.5);
        SigmaArch {
            nu: Complex64::new(nu, 0.0),
            discrete: false,
        }
    }

    /// weight `2 nu + 1` discrete class: `2 nu` a positive odd integer
    pub fn discrete(two_nu: i64) -> Self {
        assert!(two_nu > 0 && two_nu % 2 == 1);
        SigmaArch {
            nu: Complex64::new(two_nu as f64 / 2.0, 0.0),
            discrete: true,
        }
    }

    /// The K-type indices `n` (with isotypic weight `2n`) in the ladder,
    /// truncated to `|n| <= n_max`.
    pub fn ladder(&self, n_max: i64) -> Vec<i64> {
        if self.discrete {
            let lo = (self.nu.re + 0.5).ceil() as i64;
            (lo..=n_max).flat_map(|n| [n, -n]).collect()
        } else {
            (-n_max..=n_max).collect()
        }
    }
}

fn is_nonpositive_int(z: Complex64) -> bool {
    z.im.abs() < 1e-10 && z.re < 0.5 && (z.re - z.re.round()).abs() < 1e-10 && z.re.round() <= 0.0
}

/// The Hecke integral of the weight-`2n` Kirillov vector:
/// `Psi(W_n; lambda) = Gamma(lambda+1/2+nu) Gamma(lambda+1/2-nu) (4 pi)^{-lambda}
///    sum_{eps} i^{eps n} 2F1(lambda+nu+1/2, lambda-nu+1/2; lambda-eps n+1; 1/2)
///      / (Gamma(lambda-eps n+1) sqrt(Gamma(1/2-nu+eps n) Gamma(1/2+nu+eps n)))`,
/// each term taken to be zero when `1/2 +- nu + eps n` is a nonpositive
/// integer.
pub fn hecke_psi(n: i64, nu: Complex64, lam: Complex64) -> Result<Complex64, ArchError> {
    let half = Complex64::new(0.5, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let lead = ln_cgamma(lam + half + nu) + ln_cgamma(lam + half - nu)
        - lam * (4.0 * PI).ln();
    let mut sum = Complex64::new(0.0, 0.0);
    for eps in [1.0f64, -1.0] {
        let en = Complex64::new(eps * n as f64, 0.0);
        if is_nonpositive_int(half - nu + en) || is_nonpositive_int(half + nu + en) {
            continue;
        }
        let f = match hyp2f1(
            lam + nu + half,
            lam - nu + half,
            lam - en + one,
            Complex64::new(0.5, 0.0),
        ) {
            Ok(f) => f,
            Err(SpecFunError::PoleInC) => continue,
            Err(e) => return Err(e.into()),
        };
        let ln_den = ln_cgamma(lam - en + one)
            + (ln_cgamma(half - nu + en) + ln_cgamma(half + nu + en)) / 2.0;
        let phase = Complex64::new(0.0, 1.0).powc(en);
        sum += phase * f * (-ln_den).exp();
    }
    Ok(lead.exp() * sum)
}

/// The two-sided weighted series over the K-type ladder:
/// `S(lambda1, lambda2, s) = sum_{2n in the ladder}
///   Gamma(|n| + 1/2 - lambda1/2 + (s2-s1)/2)
///   / Gamma(|n| + 1/2 + lambda1/2 - (s2-s1)/2)
///   Psi(W_n; -lambda2 + (s2-s1)/2) conj(Psi(W_n; (3 conj(s1) + conj(s2))/2))`
/// truncated with a certified power-law tail.
pub fn s_series(
    lam1: Complex64,
    lam2: Complex64,
    s1: Complex64,
    s2: Complex64,
    sigma: &SigmaArch,
    n_max: i64,
    tail_tol: f64,
) -> Result<Complex64, ArchError> {
    let d = (s2 - s1) / 2.0;
    // convergence region of the series
    if 0.5 - lam1.re / 2.0 + d.re <= 0.0 {
        return Err(ArchError::Domain(format!(
            "series needs 1/2 - Re(lambda1)/2 + Re(s2-s1)/2 > 0 at lambda1 = {lam1}"
        )));
    }
    let e3 = (s1 * 3.0 + s2) / 2.0;
    if e3.re <= -0.5 + 1e-9 || e3.re >= 1.0 {
        return Err(ArchError::Domain(format!(
            "series needs -1/2 < (3 Re s1 + Re s2)/2 < 1, got {e3}"
        )));
    }
    if (lam2 - lam1).re - s1.re >= 0.0 {
        return Err(ArchError::Domain(format!(
            "series needs Re(lambda2 - lambda1 - s1) < 0, got {}",
            (lam2 - lam1).re - s1.re
        )));
    }
    let half = Complex64::new(0.5, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    let mut last_mag = 0.0f64;
    for n in sigma.ladder(n_max) {
        let an = Complex64::new(n.abs() as f64, 0.0);
        let ratio = (ln_cgamma(an + half - lam1 / 2.0 + d) - ln_cgamma(an + half + lam1 / 2.0 - d))
            .exp();
        let p1 = hecke_psi(n, sigma.nu, -lam2 + d)?;
        let p2 = hecke_psi(n, sigma.nu, (s1.conj() * 3.0 + s2.conj()) / 2.0)?;
        let term = ratio * p1 * p2.conj();
        total += term;
        if n.abs() == n_max {
            last_mag = last_mag.max(term.norm());
        }
    }
    // power-law tail: |term(n)| ~ n^{-1-delta} with delta = Re(s1+lambda1-lambda2)
    let delta = (s1 + lam1 - lam2).re;
    let tail = 2.0 * last_mag * (n_max as f64) / delta.max(1e-3);
    if tail > tail_tol * total.norm().max(1e-12) {
        return Err(ArchError::TruncationInsufficient {
            tail,
            tol: tail_tol * total.norm().max(1e-12),
        });
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::integrate;
    use crate::specfun::kirillov_wn;

    #[test]
    fn discrete_zero_convention() {
        // weight-2 class (nu = 1/2): the n = 0 integral vanishes termwise
        let v = hecke_psi(0, Complex64::new(0.5, 0.0), Complex64::new(0.4, 0.0)).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn psi_matches_numeric_mellin() {
        // Psi(W_n; lambda) = \int_{R^x} W_n(a) |a|^lambda d^x a
        for (n, nu) in [
            (0i64, Complex64::new(0.0, 0.2)),
            (1, Complex64::new(0.0, 0.2)),
            (-2, Complex64::new(1.0 / 3.0, 0.0)),
            (2, Complex64::new(1.5, 0.0)),
        ] {
            for lam in [Complex64::new(0.2, 0.0), Complex64::new(0.7, 0.0)] {
                let closed = hecke_psi(n, nu, lam).unwrap();
                let numeric = integrate(
                    |v| {
                        let a = v.exp();
                        (kirillov_wn(n, nu, a) + kirillov_wn(n, nu, -a)) * (lam * v).exp()
                    },
                    -26.0,
                    2.0,
                    120,
                    16,
                );
                let scale = closed.norm().max(1e-8);
                assert!(
                    (closed - numeric).norm() <= 1e-6 * scale.max(numeric.norm()),
                    "n={n}, nu={nu}, lam={lam}: {closed} vs {numeric}"
                );
            }
        }
    }

    #[test]
    fn psi_eps_swap_under_sign_of_n() {
        // swapping n -> -n permutes the two eps-terms; with the i^{eps n}
        // phase this is visible as equality for even n
        let nu = Complex64::new(0.0, 0.7);
        let lam = Complex64::new(0.45, 0.1);
        let a = hecke_psi(2, nu, lam).unwrap();
        let b = hecke_psi(-2, nu, lam).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm().max(1e-12));
    }

    #[test]
    fn series_self_convergence() {
        let sigma = SigmaArch::discrete(3);
        let s1 = Complex64::new(0.02, 0.0);
        let s2 = Complex64::new(0.03, 0.0);
        let lam1 = Complex64::new(0.4, 0.0);
        let lam2 = Complex64::new(-0.8, 0.0);
        let coarse = s_series(lam1, lam2, s1, s2, &sigma, 24, 1.0).unwrap();
        let fine = s_series(lam1, lam2, s1, s2, &sigma, 180, 1.0).unwrap();
        assert!(
            (coarse - fine).norm() <= 1e-3 * fine.norm(),
            "{coarse} vs {fine}"
        );
    }

    #[test]
    fn series_is_beta_free_and_region_checked() {
        let sigma = SigmaArch::principal(0.4);
        // region violation: lambda2 - lambda1 - s1 >= 0
        let err = s_series(
            Complex64::new(0.2, 0.0),
            Complex64::new(0.9, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            &sigma,
            40,
            1.0,
        );
        assert!(err.is_err());
    }
}
