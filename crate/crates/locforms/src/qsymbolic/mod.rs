//! Exact arithmetic for rational functions whose monomials are powers of a
//! residue cardinality `q` raised to affine forms in the five spectral symbols
//! `(s1, s2, nu1, nu2, nu3)`.
//!
//! Every non-archimedean closed form handled by this crate is a quotient of
//! finite sums of terms `c * q^(a0 + a1*s1 + ... + a5*nu3)` with rational `c`
//! and rational affine coefficients.  Equality is decided exactly by
//! cross-multiplication of canonical forms; no floating point is involved.

mod latsum;

pub use latsum::{Bound, LatticeSum};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

use crate::specfun::SpectralPoint;

/// Errors from numeric evaluation of exact rational functions.
#[derive(Debug, Error)]
pub enum QsymError {
    #[error("denominator vanishes at the evaluation point (|den| = {den_abs:.3e}, scale = {scale:.3e})")]
    PoleAtPoint { den_abs: f64, scale: f64 },
}

fn brat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// An affine form `c0 + c1*s1 + c2*s2 + c3*nu1 + c4*nu2 + c5*nu3` with exact
/// rational coefficients, used as the exponent of `q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentForm {
    pub c0: BigRational,
    pub c: [BigRational; 5],
}

impl ExponentForm {
    pub fn zero() -> Self {
        ExponentForm {
            c0: BigRational::zero(),
            c: Default::default(),
        }
    }

    /// Constant exponent `n`.
    pub fn constant(n: i64) -> Self {
        let mut e = Self::zero();
        e.c0 = brat(n, 1);
        e
    }

    pub fn constant_rat(n: i64, d: i64) -> Self {
        let mut e = Self::zero();
        e.c0 = brat(n, d);
        e
    }

    /// Build `k0 + k1*s1 + k2*s2 + k3*nu1 + k4*nu2 + k5*nu3` from integers.
    pub fn affine(k0: i64, k1: i64, k2: i64, k3: i64, k4: i64, k5: i64) -> Self {
        ExponentForm {
            c0: brat(k0, 1),
            c: [brat(k1, 1), brat(k2, 1), brat(k3, 1), brat(k4, 1), brat(k5, 1)],
        }
    }

    pub fn s1() -> Self {
        Self::affine(0, 1, 0, 0, 0, 0)
    }
    pub fn s2() -> Self {
        Self::affine(0, 0, 1, 0, 0, 0)
    }
    pub fn nu(k: usize) -> Self {
        let mut e = Self::zero();
        e.c[2 + k] = BigRational::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.c0 += &other.c0;
        for k in 0..5 {
            out.c[k] += &other.c[k];
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ExponentForm {
            c0: -self.c0.clone(),
            c: [
                -self.c[0].clone(),
                -self.c[1].clone(),
                -self.c[2].clone(),
                -self.c[3].clone(),
                -self.c[4].clone(),
            ],
        }
    }

    pub fn scale(&self, f: &BigRational) -> Self {
        ExponentForm {
            c0: &self.c0 * f,
            c: [
                &self.c[0] * f,
                &self.c[1] * f,
                &self.c[2] * f,
                &self.c[3] * f,
                &self.c[4] * f,
            ],
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&brat(n, 1))
    }

    /// Value of the affine form at a spectral point.
    pub fn value_at(&self, pt: &SpectralPoint) -> Complex64 {
        let vars = [pt.s1, pt.s2, pt.nu1, pt.nu2, pt.nu3];
        let mut z = Complex64::new(rat_to_f64(&self.c0), 0.0);
        for k in 0..5 {
            z += vars[k] * rat_to_f64(&self.c[k]);
        }
        z
    }

    /// Substitute `(s1, s2) -> (m11*s1 + m12*s2, m21*s1 + m22*s2)` leaving the
    /// `nu` slots untouched.  Used for the dual-variable change
    /// `s -> ((s2-s1)/2, (3*s1+s2)/2)`.
    pub fn subst_s(&self, m: &[[BigRational; 2]; 2]) -> Self {
        let mut out = self.clone();
        out.c[0] = &self.c[0] * &m[0][0] + &self.c[1] * &m[1][0];
        out.c[1] = &self.c[0] * &m[0][1] + &self.c[1] * &m[1][1];
        out
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        self.c0
            .cmp(&other.c0)
            .then_with(|| self.c[0].cmp(&other.c[0]))
            .then_with(|| self.c[1].cmp(&other.c[1]))
            .then_with(|| self.c[2].cmp(&other.c[2]))
            .then_with(|| self.c[3].cmp(&other.c[3]))
            .then_with(|| self.c[4].cmp(&other.c[4]))
    }
}

/// The substitution matrix for the dual spectral variables
/// `s1 -> (s2-s1)/2`, `s2 -> (3*s1+s2)/2`; row `k` holds the coefficients of
/// the image of `s_{k+1}`.
pub fn dual_subst() -> [[BigRational; 2]; 2] {
    [
        [brat(-1, 2), brat(1, 2)],
        [brat(3, 2), brat(1, 2)],
    ]
}

fn rat_to_f64(r: &BigRational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    bigint_to_f64(n) / bigint_to_f64(d)
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    // Exact for the magnitudes arising here; falls back to string parsing for
    // very large intermediates from cross-multiplication.
    use num::ToPrimitive;
    n.to_f64().unwrap_or_else(|| {
        n.to_string().parse::<f64>().unwrap_or(f64::INFINITY)
    })
}

impl fmt::Display for ExponentForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["s1", "s2", "nu1", "nu2", "nu3"];
        write!(f, "{}", self.c0)?;
        for k in 0..5 {
            if !self.c[k].is_zero() {
                if self.c[k].is_positive() {
                    write!(f, " + {}*{}", self.c[k], names[k])?;
                } else {
                    write!(f, " - {}*{}", -self.c[k].clone(), names[k])?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExponentForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `coeff * q^expo` with exact rational coefficient.
#[derive(Clone, PartialEq)]
pub struct QMonomial {
    pub coeff: BigRational,
    pub expo: ExponentForm,
}

impl QMonomial {
    pub fn new(coeff: BigRational, expo: ExponentForm) -> Self {
        QMonomial { coeff, expo }
    }

    pub fn constant(n: i64) -> Self {
        QMonomial::new(brat(n, 1), ExponentForm::zero())
    }

    pub fn q_pow(expo: ExponentForm) -> Self {
        QMonomial::new(BigRational::one(), expo)
    }
}

/// A canonicalized finite sum of monomials: like exponents merged, zero
/// coefficients dropped, terms ordered lexicographically by exponent.
#[derive(Clone, PartialEq)]
pub struct QPolynomial {
    terms: Vec<QMonomial>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial::from_terms(vec![QMonomial::constant(1)])
    }

    pub fn constant(n: i64) -> Self {
        QPolynomial::from_terms(vec![QMonomial::constant(n)])
    }

    pub fn q_pow(e: ExponentForm) -> Self {
        QPolynomial::from_terms(vec![QMonomial::q_pow(e)])
    }

    pub fn from_terms(terms: Vec<QMonomial>) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| a.expo.cmp_key(&b.expo));
        let mut out: Vec<QMonomial> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.expo == t.expo {
                    last.coeff += t.coeff;
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !t.coeff.is_zero());
        QPolynomial { terms: out }
    }

    pub fn terms(&self) -> &[QMonomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        QPolynomial::from_terms(terms)
    }

    pub fn neg(&self) -> Self {
        QPolynomial {
            terms: self
                .terms
                .iter()
                .map(|t| QMonomial::new(-t.coeff.clone(), t.expo.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(QMonomial::new(&a.coeff * &b.coeff, a.expo.add(&b.expo)));
            }
        }
        QPolynomial::from_terms(terms)
    }

    pub fn subst_s(&self, m: &[[BigRational; 2]; 2]) -> Self {
        QPolynomial::from_terms(
            self.terms
                .iter()
                .map(|t| QMonomial::new(t.coeff.clone(), t.expo.subst_s(m)))
                .collect(),
        )
    }

    /// Evaluate at `q` and a spectral point, returning the value along with
    /// the sum of term magnitudes (used for cancellation detection).
    pub fn eval_with_scale(&self, q: f64, pt: &SpectralPoint) -> (Complex64, f64) {
        let ln_q = q.ln();
        let mut val = Complex64::new(0.0, 0.0);
        let mut scale = 0.0f64;
        for t in &self.terms {
            let e = t.expo.value_at(pt);
            let term = (e * ln_q).exp() * rat_to_f64(&t.coeff);
            val += term;
            scale += term.norm();
        }
        (val, scale)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} * q^({})", t.coeff, t.expo)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A quotient of two `QPolynomial`s with nonzero denominator.
#[derive(Clone)]
pub struct QRational {
    pub num: QPolynomial,
    pub den: QPolynomial,
}

impl QRational {
    pub fn new(num: QPolynomial, den: QPolynomial) -> Self {
        assert!(!den.is_zero(), "QRational with zero denominator");
        QRational { num, den }
    }

    pub fn zero() -> Self {
        QRational::new(QPolynomial::zero(), QPolynomial::one())
    }

    pub fn one() -> Self {
        QRational::new(QPolynomial::one(), QPolynomial::one())
    }

    pub fn constant(n: i64) -> Self {
        QRational::new(QPolynomial::constant(n), QPolynomial::one())
    }

    pub fn constant_rat(r: BigRational) -> Self {
        QRational::new(
            QPolynomial::from_terms(vec![QMonomial::new(r, ExponentForm::zero())]),
            QPolynomial::one(),
        )
    }

    pub fn q_pow(e: ExponentForm) -> Self {
        QRational::new(QPolynomial::q_pow(e), QPolynomial::one())
    }

    pub fn from_poly(p: QPolynomial) -> Self {
        QRational::new(p, QPolynomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        QRational::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QRational::new(self.num.neg(), self.den.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        QRational::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.num.is_zero(), "inverting zero QRational");
        QRational::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn subst_s(&self, m: &[[BigRational; 2]; 2]) -> Self {
        QRational::new(self.num.subst_s(m), self.den.subst_s(m))
    }

    pub fn to_text(&self) -> String {
        format!("{} / {}", self.num, self.den)
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// The local zeta factor `zeta_q(e) = 1/(1 - q^(-e))` as an exact rational
/// function.
pub fn zeta_factor(e: &ExponentForm) -> QRational {
    let den = QPolynomial::one().sub(&QPolynomial::q_pow(e.neg()));
    QRational::new(QPolynomial::one(), den)
}

/// Closed form of `sum_{k >= a} q^(k*e) = q^(a*e) / (1 - q^e)`.
///
/// Convergence (`Re e < 0` at the evaluation point) is the caller's concern:
/// the identity holds as rational functions regardless.
pub fn geom_sum(e: &ExponentForm, a: i64) -> QRational {
    let num = QPolynomial::q_pow(e.scale_int(a));
    let den = QPolynomial::one().sub(&QPolynomial::q_pow(e.clone()));
    QRational::new(num, den)
}

/// Exact equality of rational functions by cross-multiplication.
pub fn eq_exact(a: &QRational, b: &QRational) -> bool {
    a.num.mul(&b.den).sub(&b.num.mul(&a.den)).is_zero()
}

/// Numeric evaluation at `q >= 2` and a spectral point, with pole detection
/// by catastrophic cancellation of the denominator.
pub fn eval_numeric(f: &QRational, q: f64, pt: &SpectralPoint) -> Result<Complex64, QsymError> {
    let (num, _num_scale) = f.num.eval_with_scale(q, pt);
    let (den, den_scale) = f.den.eval_with_scale(q, pt);
    let scale = den_scale.max(1e-300);
    if den.norm() < 1e-12 * scale {
        return Err(QsymError::PoleAtPoint {
            den_abs: den.norm(),
            scale,
        });
    }
    Ok(num / den)
}
