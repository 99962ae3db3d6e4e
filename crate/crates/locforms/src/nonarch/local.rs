//! Local data at a finite place: residue cardinality, different/level/twist
//! exponents, Satake parameters, and the three-way family of GL(2)
//! representations entering the weight formulas.

use num::complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NonArchError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("truncation insufficient: tail bound {tail:.3e} exceeds tolerance {tol:.3e}")]
    TruncationInsufficient { tail: f64, tol: f64 },
    #[error("character is not primitive of the stated conductor")]
    NotPrimitive,
    #[error("singular triangular system: |c(p^{i},p^{i})| = {diag:.3e}")]
    SingularSystem { i: u32, diag: f64 },
    #[error(transparent)]
    Qsym(#[from] crate::qsymbolic::QsymError),
    #[error(transparent)]
    SpecFun(#[from] crate::specfun::SpecFunError),
}

/// Numerical data of a finite place: residue cardinality `q`, different
/// exponent `d`, level exponent `r`, twist exponent `n`, and the summation
/// index `ell` (`0 <= ell <= n`) used by the twisted sections.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LocalDatum {
    pub q: u64,
    pub d: u32,
    pub r: u32,
    pub n: u32,
    #[serde(default)]
    pub ell: u32,
}

impl LocalDatum {
    pub fn new(q: u64, d: u32, r: u32, n: u32) -> Self {
        assert!(q >= 2);
        LocalDatum { q, d, r, n, ell: 0 }
    }

    pub fn unramified(q: u64) -> Self {
        Self::new(q, 0, 0, 0)
    }

    pub fn qf(&self) -> f64 {
        self.q as f64
    }

    /// `q^z` for complex `z`.
    pub fn qc(&self, z: Complex64) -> Complex64 {
        (z * self.qf().ln()).exp()
    }

    /// Volume of the depth-`m` congruence subgroup of GL(2, O) under the
    /// probability Haar measure: `1` for `m = 0`, `q^{-m}/(1 + 1/q)` for
    /// `m >= 1`.
    pub fn vol_k0(&self, m: u32) -> f64 {
        if m == 0 {
            1.0
        } else {
            self.qf().powi(-(m as i32)) / (1.0 + 1.0 / self.qf())
        }
    }
}

/// Satake parameters `(alpha1, alpha2, alpha3)` of an unramified GL(3)
/// representation with trivial central character (`alpha1 alpha2 alpha3 = 1`).
#[derive(Clone, Copy, Debug)]
pub struct SatakeGL3 {
    pub alpha: [Complex64; 3],
}

impl SatakeGL3 {
    pub fn new(alpha: [Complex64; 3]) -> Self {
        let prod = alpha[0] * alpha[1] * alpha[2];
        debug_assert!(
            (prod - Complex64::new(1.0, 0.0)).norm() <= 1e-9,
            "central character not trivial: product = {prod}"
        );
        SatakeGL3 { alpha }
    }

    pub fn trivial() -> Self {
        SatakeGL3 {
            alpha: [Complex64::new(1.0, 0.0); 3],
        }
    }

    /// Satake parameters `q^{nu_k}` of `|.|^{nu1} + |.|^{nu2} + |.|^{nu3}`.
    pub fn from_nus(q: f64, nus: [Complex64; 3]) -> Self {
        let a = |nu: Complex64| (nu * q.ln()).exp();
        SatakeGL3 {
            alpha: [a(nus[0]), a(nus[1]), a(nus[2])],
        }
    }

    /// Elementary symmetric values `(e1, e2, e3)`.
    pub fn elementary(&self) -> (Complex64, Complex64, Complex64) {
        let [a, b, c] = self.alpha;
        (a + b + c, a * b + a * c + b * c, a * b * c)
    }

    /// The contragredient has inverted parameters.
    pub fn dual(&self) -> Self {
        SatakeGL3 {
            alpha: [
                1.0 / self.alpha[0],
                1.0 / self.alpha[1],
                1.0 / self.alpha[2],
            ],
        }
    }

    /// Standard local L-factor `prod_k (1 - alpha_k q^{-s})^{-1}`.
    pub fn l_factor(&self, q: f64, s: Complex64) -> Complex64 {
        let qs = (-s * q.ln()).exp();
        let one = Complex64::new(1.0, 0.0);
        1.0 / ((one - self.alpha[0] * qs) * (one - self.alpha[1] * qs) * (one - self.alpha[2] * qs))
    }

    /// Temperedness defect `max_k |log_q |alpha_k||`.
    pub fn theta(&self, q: f64) -> f64 {
        self.alpha
            .iter()
            .map(|a| (a.norm().ln() / q.ln()).abs())
            .fold(0.0, f64::max)
    }
}

/// Satake parameter `beta` of an unramified GL(2) representation with
/// trivial central character; the pair `(beta, beta^{-1})` is implicit.
#[derive(Clone, Copy, Debug)]
pub struct SatakeGL2 {
    pub beta: Complex64,
}

impl SatakeGL2 {
    pub fn new(beta: Complex64) -> Self {
        assert!(beta.norm() > 0.0, "beta must be nonzero");
        SatakeGL2 { beta }
    }

    pub fn tempered(theta: f64) -> Self {
        SatakeGL2 {
            beta: Complex64::new(theta.cos(), theta.sin()),
        }
    }

    pub fn is_tempered(&self) -> bool {
        (self.beta.norm() - 1.0).abs() < 1e-12
    }

    /// Standard local L-factor `(1 - beta q^{-s})^{-1} (1 - beta^{-1} q^{-s})^{-1}`.
    pub fn l_factor(&self, q: f64, s: Complex64) -> Complex64 {
        let qs = (-s * q.ln()).exp();
        let one = Complex64::new(1.0, 0.0);
        1.0 / ((one - self.beta * qs) * (one - qs / self.beta))
    }
}

/// The family of GL(2) local representations with trivial central character
/// used by the weight formulas, indexed by conductor exponent:
/// unramified (`r_sigma = 0`, a Satake parameter), the special representation
/// (`r_sigma = 1`, eigenvalues `q^{-l/2}`), and the depth `>= 2` classes whose
/// Hecke eigenvalues vanish beyond the identity.
#[derive(Clone, Copy, Debug)]
pub enum SigmaClass {
    Unramified(SatakeGL2),
    Special,
    Deep { r_sigma: u32 },
}

impl SigmaClass {
    pub fn r_sigma(&self) -> u32 {
        match self {
            SigmaClass::Unramified(_) => 0,
            SigmaClass::Special => 1,
            SigmaClass::Deep { r_sigma } => *r_sigma,
        }
    }

    /// Hecke eigenvalue `lambda_sigma(p^l)`; zero for `l < 0`.
    pub fn lambda(&self, q: f64, l: i64) -> Complex64 {
        if l < 0 {
            return Complex64::new(0.0, 0.0);
        }
        match self {
            SigmaClass::Unramified(b) => hecke_gl2(l, b),
            SigmaClass::Special => Complex64::new(q.powf(-(l as f64) / 2.0), 0.0),
            SigmaClass::Deep { .. } => {
                if l == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
        }
    }

    /// Standard L-factor `L(s, sigma)`.
    pub fn l_factor(&self, q: f64, s: Complex64) -> Complex64 {
        match self {
            SigmaClass::Unramified(b) => b.l_factor(q, s),
            SigmaClass::Special => {
                let x = ((-s - 0.5) * q.ln()).exp();
                1.0 / (Complex64::new(1.0, 0.0) - x)
            }
            SigmaClass::Deep { .. } => Complex64::new(1.0, 0.0),
        }
    }

    /// Rankin-Selberg factor `L(s, pi x sigma)` against an unramified GL(3)
    /// datum.
    pub fn l_factor_rs(&self, q: f64, s: Complex64, pi: &SatakeGL3) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self {
            SigmaClass::Unramified(b) => {
                let qs = (-s * q.ln()).exp();
                let mut den = one;
                for a in pi.alpha {
                    den *= (one - a * b.beta * qs) * (one - a * qs / b.beta);
                }
                1.0 / den
            }
            SigmaClass::Special => {
                let qs = ((-s - 0.5) * q.ln()).exp();
                let mut den = one;
                for a in pi.alpha {
                    den *= one - a * qs;
                }
                1.0 / den
            }
            SigmaClass::Deep { .. } => one,
        }
    }

    /// Adjoint L-factor at `s = 1`.
    pub fn l_factor_ad1(&self, q: f64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let qi = 1.0 / q;
        match self {
            SigmaClass::Unramified(b) => {
                let b2 = b.beta * b.beta;
                one / ((one - b2 * qi) * (1.0 - qi) * (one - qi / b2))
            }
            SigmaClass::Special => one / (1.0 - qi * qi),
            SigmaClass::Deep { .. } => one,
        }
    }
}

/// Hecke eigenvalue `lambda(p^l) = (beta^{l+1} - beta^{-l-1})/(beta - beta^{-1})`
/// computed by the Chebyshev-type recursion, which is stable through the
/// degenerate points `beta = +-1`.
pub fn hecke_gl2(l: i64, b: &SatakeGL2) -> Complex64 {
    if l < 0 {
        return Complex64::new(0.0, 0.0);
    }
    let lam1 = b.beta + 1.0 / b.beta;
    let mut prev = Complex64::new(1.0, 0.0);
    if l == 0 {
        return prev;
    }
    let mut cur = lam1;
    for _ in 1..l {
        let next = lam1 * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Index cutoff and certified tail tolerance for the infinite sums.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TruncationSpec {
    pub n_max: u32,
    pub tail_tol: f64,
}

impl Default for TruncationSpec {
    fn default() -> Self {
        TruncationSpec {
            n_max: 170,
            tail_tol: 1e-12,
        }
    }
}

impl TruncationSpec {
    pub fn new(n_max: u32, tail_tol: f64) -> Self {
        TruncationSpec { n_max, tail_tol }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hecke_eigenvalue_normalization() {
        let b = SatakeGL2::tempered(0.9);
        assert_eq!(hecke_gl2(0, &b), Complex64::new(1.0, 0.0));
        assert_eq!(hecke_gl2(-2, &b), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn hecke_chebyshev_identity() {
        // lambda(p^2) for beta = e^{i theta} is sin(3 theta)/sin(theta)
        let theta = 0.7f64;
        let b = SatakeGL2::tempered(theta);
        let l2 = hecke_gl2(2, &b);
        let want = (3.0 * theta).sin() / theta.sin();
        assert!((l2.re - want).abs() < 1e-12 && l2.im.abs() < 1e-12);
    }

    #[test]
    fn hecke_square_relation() {
        // lambda(p)^2 = lambda(p^2) + 1
        for beta in [
            Complex64::new(0.3, 0.0).exp(),
            Complex64::new(0.0, 1.1).exp(),
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ] {
            let b = SatakeGL2::new(beta);
            let l1 = hecke_gl2(1, &b);
            let l2 = hecke_gl2(2, &b);
            assert!(
                (l1 * l1 - l2 - Complex64::new(1.0, 0.0)).norm() < 1e-12,
                "beta = {beta}"
            );
        }
    }

    #[test]
    fn degenerate_beta_limit() {
        // at beta = 1 the eigenvalue degenerates to l + 1
        let b = SatakeGL2::new(Complex64::new(1.0, 0.0));
        for l in 0..6 {
            let v = hecke_gl2(l, &b);
            assert!((v.re - (l + 1) as f64).abs() < 1e-12);
        }
        // at beta = -1 it alternates: (-1)^l (l+1)
        let bm = SatakeGL2::new(Complex64::new(-1.0, 0.0));
        for l in 0..6 {
            let v = hecke_gl2(l, &bm);
            let want = if l % 2 == 0 { 1.0 } else { -1.0 } * (l + 1) as f64;
            assert!((v.re - want).abs() < 1e-12);
        }
    }
}
