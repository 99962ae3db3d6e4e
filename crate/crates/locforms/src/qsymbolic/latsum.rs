//! Exact summation of multi-geometric lattice sums.
//!
//! The degenerate local integrals reduce to sums of `q^(affine form)` over
//! integer cones cut out by inequalities between the indices.  This module
//! evaluates such sums as exact `QRational`s by eliminating one index at a
//! time:
//!
//! * an unconstrained index `k >= 0` with per-step exponent `e` contributes a
//!   factor `1/(1 - q^e)`;
//! * an index bounded by an integer-affine expression in the remaining
//!   indices splits the sum into two geometric pieces via
//!   `sum_{k=0}^{U} x^k = (1 - x^{U+1})/(1 - x)`.
//!
//! Both steps keep every piece in the form
//! `coeff * q^(con + sum_j varc[j]*k_j) * prod (1 - q^{d})^{-1}`,
//! so the final result is a finite sum of explicit rational functions.

use num::{BigRational, One};

use super::{ExponentForm, QPolynomial, QRational};

#[derive(Clone)]
struct Piece {
    coeff: BigRational,
    negate: bool,
    con: ExponentForm,
    /// exponent coefficient per still-active summation index
    varc: Vec<Option<ExponentForm>>,
    /// factors (1 - q^d)^{-1} accumulated from eliminated indices
    dens: Vec<ExponentForm>,
}

/// A sum of `q^(affine form in lattice indices)` over a product of
/// nonnegative ranges, reduced index by index.
pub struct LatticeSum {
    pieces: Vec<Piece>,
    nvars: usize,
}

/// An integer-affine bound `c + sum_j coefs[j] * k_j` in the active indices.
#[derive(Clone)]
pub struct Bound {
    pub constant: i64,
    pub coefs: Vec<(usize, i64)>,
}

impl Bound {
    pub fn constant(c: i64) -> Self {
        Bound {
            constant: c,
            coefs: Vec::new(),
        }
    }

    pub fn affine(c: i64, coefs: &[(usize, i64)]) -> Self {
        Bound {
            constant: c,
            coefs: coefs.to_vec(),
        }
    }
}

impl LatticeSum {
    /// Start with a single term `q^con` summed over `nvars` indices whose
    /// per-step exponents are `varc`.
    pub fn new(con: ExponentForm, varc: Vec<ExponentForm>) -> Self {
        let nvars = varc.len();
        LatticeSum {
            pieces: vec![Piece {
                coeff: BigRational::one(),
                negate: false,
                con,
                varc: varc.into_iter().map(Some).collect(),
                dens: Vec::new(),
            }],
            nvars,
        }
    }

    /// Shift index `j` by an integer-affine lower bound: substitutes
    /// `k_j = bound + k_j'` with `k_j' >= 0`.  The caller asserts the bound is
    /// nonnegative over the summation region.
    pub fn shift_lower(&mut self, j: usize, bound: &Bound) {
        for p in &mut self.pieces {
            let e = p.varc[j].clone().expect("index already eliminated");
            p.con = p.con.add(&e.scale_int(bound.constant));
            for &(i, m) in &bound.coefs {
                let vi = p.varc[i].clone().expect("bound references eliminated index");
                p.varc[i] = Some(vi.add(&e.scale_int(m)));
            }
        }
    }

    /// Sum index `j` over `0..infinity`: each piece gains `1/(1 - q^e)`.
    pub fn sum_free(&mut self, j: usize) {
        for p in &mut self.pieces {
            let e = p.varc[j].take().expect("index already eliminated");
            p.dens.push(e);
        }
    }

    /// Sum index `j` over `0..=U` with `U` integer-affine in the active
    /// indices: `sum x^k = (1 - x^{U+1})/(1-x)` splits each piece in two.
    pub fn sum_bounded(&mut self, j: usize, upper: &Bound) {
        let mut out = Vec::with_capacity(self.pieces.len() * 2);
        for p in &self.pieces {
            let e = p.varc[j].clone().expect("index already eliminated");
            // first piece: 1/(1 - q^e), index j gone
            let mut a = p.clone();
            a.varc[j] = None;
            a.dens.push(e.clone());
            out.push(a);
            // second piece: -q^{e*(U+1)}/(1 - q^e)
            let mut b = p.clone();
            b.negate = !b.negate;
            b.varc[j] = None;
            b.dens.push(e.clone());
            b.con = b.con.add(&e.scale_int(upper.constant + 1));
            for &(i, m) in &upper.coefs {
                let vi = b.varc[i].clone().expect("bound references eliminated index");
                b.varc[i] = Some(vi.add(&e.scale_int(m)));
            }
            out.push(b);
        }
        self.pieces = out;
    }

    /// Multiply every piece by `q^e`.
    pub fn mul_q_pow(&mut self, e: &ExponentForm) {
        for p in &mut self.pieces {
            p.con = p.con.add(e);
        }
    }

    /// Add the pieces of another partial sum over the same index set.
    pub fn add_assign(&mut self, other: LatticeSum) {
        assert_eq!(self.nvars, other.nvars);
        self.pieces.extend(other.pieces);
    }

    /// Collapse to an exact rational function.  Panics if any index is still
    /// active.
    pub fn finish(&self) -> QRational {
        let mut total = QRational::zero();
        for p in &self.pieces {
            assert!(
                p.varc.iter().all(|v| v.is_none()),
                "finish called with active indices"
            );
            let mut num = QPolynomial::from_terms(vec![super::QMonomial::new(
                if p.negate {
                    -p.coeff.clone()
                } else {
                    p.coeff.clone()
                },
                p.con.clone(),
            )]);
            let mut den = QPolynomial::one();
            for d in &p.dens {
                den = den.mul(&QPolynomial::one().sub(&QPolynomial::q_pow(d.clone())));
            }
            // accumulate with a shared-denominator add
            let term = QRational::new(std::mem::replace(&mut num, QPolynomial::zero()), den);
            total = total.add(&term);
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsymbolic::{eq_exact, geom_sum, zeta_factor, ExponentForm};

    #[test]
    fn single_free_index_is_geom_sum() {
        let e = ExponentForm::affine(-1, -1, 0, 0, 1, 0);
        let mut s = LatticeSum::new(ExponentForm::zero(), vec![e.clone()]);
        s.sum_free(0);
        assert!(eq_exact(&s.finish(), &geom_sum(&e, 0)));
    }

    #[test]
    fn constrained_pair_collapses() {
        // sum_{i,j >= 0, i <= j} q^{-a i - b j}
        //   = zeta(a) * [zeta(b) - q^{-a} zeta(a+b)] with indices eliminated
        //     innermost-first.
        let a = ExponentForm::affine(1, 1, 0, 0, 0, 0);
        let b = ExponentForm::affine(1, 0, 1, 0, 0, 0);
        let mut s = LatticeSum::new(ExponentForm::zero(), vec![a.neg(), b.neg()]);
        s.sum_bounded(0, &Bound::affine(0, &[(1, 1)])); // i <= j
        s.sum_free(1);
        let got = s.finish();

        // independent closed form: sum_j q^{-bj} * (1 - q^{-a(j+1)})/(1 - q^{-a})
        let za = zeta_factor(&a);
        let direct = za.mul(&geom_sum(&b.neg(), 0).sub(
            &QRational::q_pow(a.neg()).mul(&geom_sum(&a.neg().add(&b.neg()), 0)),
        ));
        assert!(eq_exact(&got, &direct));
    }

    #[test]
    fn lower_shift_matches_geom_offset() {
        // sum_{k >= 3} q^{-2k} = geom_sum(-2, 3)
        let e = ExponentForm::constant(-2);
        let mut s = LatticeSum::new(ExponentForm::zero(), vec![e.clone()]);
        s.shift_lower(0, &Bound::constant(3));
        s.sum_free(0);
        assert!(eq_exact(&s.finish(), &geom_sum(&e, 3)));
    }
}
