//! Degenerate-orbit local integrals at finite places, for the three Weyl
//! elements and both sides of the reciprocity.
//!
//! Each branch is a multi-geometric lattice sum with explicit prefactors.
//! At an everywhere-unramified place the sums collapse to products of local
//! zeta factors; those collapses are certified exactly in the symbolic
//! engine.  Ramified data are evaluated numerically: all constrained finite
//! index ranges are summed in closed geometric form, and the remaining free
//! directions are truncated with a separable geometric tail certificate.
//! Dual-side values are obtained by the variable change
//! `s -> ((s2-s1)/2, (3 s1+s2)/2)` together with the exchange of the roles
//! of the level and twist exponents.

use num::complex::Complex64;

use super::local::{LocalDatum, NonArchError, TruncationSpec};
use crate::qsymbolic::{zeta_factor, Bound, ExponentForm, LatticeSum, QRational};
use crate::specfun::SpectralPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weyl {
    W2,
    W1W2,
    W1W2W1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Spec,
    Dual,
}

// affine-form shorthand
fn e(k0: i64, s1: i64, s2: i64, n1: i64, n2: i64, n3: i64) -> ExponentForm {
    ExponentForm::affine(k0, s1, s2, n1, n2, n3)
}

/// `L(pi_v)` as a symbolic zeta product:
/// `zeta(1+nu1-nu2) zeta(1+nu1-nu3) zeta(1+nu2-nu3)`.
fn big_l_symbolic() -> QRational {
    zeta_factor(&e(1, 0, 0, 1, -1, 0))
        .mul(&zeta_factor(&e(1, 0, 0, 1, 0, -1)))
        .mul(&zeta_factor(&e(1, 0, 0, 0, 1, -1)))
}

/// Exact value of the lattice sum at an everywhere-unramified place
/// (`r = n = d = 0`), including all prefactors.
pub fn degen_nonarch_exact(weyl: Weyl, side: Side) -> QRational {
    let spec = match weyl {
        Weyl::W2 => w2_exact_unramified(),
        Weyl::W1W2 => w1w2_exact_unramified(),
        Weyl::W1W2W1 => w1w2w1_exact_unramified(),
    };
    match side {
        Side::Spec => spec,
        Side::Dual => spec.subst_s(&crate::qsymbolic::dual_subst()),
    }
}

/// The closed zeta-factor product each unramified branch must equal.
pub fn degen_unramified_product(weyl: Weyl, side: Side) -> QRational {
    let spec = match weyl {
        Weyl::W2 => zeta_factor(&e(1, 0, 0, 0, 1, -1))
            .inv()
            .mul(&zeta_factor(&e(2, 2, 0, 2, 0, 0)).inv())
            .mul(&zeta_factor(&e(1, 2, 0, 1, 0, 1)))
            .mul(&zeta_factor(&e(1, 2, 0, 1, 1, 0)))
            .mul(&zeta_factor(&e(0, -1, 1, -1, 0, 0)))
            .mul(&zeta_factor(&e(1, 1, 1, 1, 0, 0))),
        Weyl::W1W2 => big_l_symbolic()
            .inv()
            .mul(&zeta_factor(&e(1, 1, 1, 1, 0, 0)))
            .mul(&zeta_factor(&e(2, 2, 0, 0, 2, 0)).inv())
            .mul(&zeta_factor(&e(1, 1, 1, 0, 1, 0)))
            .mul(&zeta_factor(&e(0, -1, 1, 0, -1, 0)))
            .mul(&zeta_factor(&e(1, 2, 0, 1, 1, 0)))
            .mul(&zeta_factor(&e(0, 0, 0, 1, -1, 0)))
            .mul(&zeta_factor(&e(1, 2, 0, 0, 1, 1)))
            .mul(&zeta_factor(&e(1, 0, 0, 0, 1, -1))),
        Weyl::W1W2W1 => big_l_symbolic()
            .inv()
            .mul(&zeta_factor(&e(2, 2, 0, 0, 0, 2)).inv())
            .mul(&zeta_factor(&e(1, 1, 1, 0, 0, 1)))
            .mul(&zeta_factor(&e(1, 2, 0, 1, 0, 1)))
            .mul(&zeta_factor(&e(1, 2, 0, 0, 1, 1)))
            .mul(&zeta_factor(&e(0, 0, 0, 1, 0, -1)))
            .mul(&zeta_factor(&e(0, -1, 1, 0, 0, -1)))
            .mul(&zeta_factor(&e(0, 0, 0, 0, 1, -1))),
    };
    match side {
        Side::Spec => spec,
        Side::Dual => spec.subst_s(&crate::qsymbolic::dual_subst()),
    }
}

// the five-index lattice at r = n = d = 0 for the first Weyl element:
// vars (r', j', i', i, j), constraint i <= i' + j
fn w2_exact_unramified() -> QRational {
    let mut lat = LatticeSum::new(
        ExponentForm::zero(),
        vec![
            e(0, 1, -1, 1, 0, 0),    // r': -(s2 - s1 - nu1)
            e(-1, -1, -1, -1, 0, 0), // j': -(1 + nu1 + s1 + s2)
            e(-1, 0, 0, -1, 1, 0),   // i': -(1 + nu1 - nu2)
            e(0, 0, 0, 0, -1, 1),    // i : -(nu2 - nu3)
            e(-1, -2, 0, -1, 0, -1), // j : -(1 + nu1 + nu3 + 2 s1)
        ],
    );
    lat.sum_bounded(3, &Bound::affine(0, &[(2, 1), (4, 1)])); // i <= i' + j
    lat.sum_free(0);
    lat.sum_free(1);
    lat.sum_free(2);
    lat.sum_free(4);
    big_l_symbolic().inv().mul(&lat.finish())
}

// vars (j, k, i): inner k <= j and i <= j, then j free
fn w1w2_exact_unramified() -> QRational {
    let mut lat = LatticeSum::new(
        ExponentForm::zero(),
        vec![
            e(-1, -1, -1, 0, -1, 0), // j: -(1 + nu2 + s1 + s2)
            e(1, 2, 0, 0, 2, 0),     // k: +(1 + 2 nu2 + 2 s1)
            e(0, -1, 1, -1, 0, 0),   // i: -(nu1 + s1 - s2)
        ],
    );
    lat.sum_bounded(1, &Bound::affine(0, &[(0, 1)])); // k <= j
    lat.sum_bounded(2, &Bound::affine(0, &[(0, 1)])); // i <= j
    lat.sum_free(0);
    // the normalization carries zeta(1+nu1+s1+s2) twice: once from the
    // unipotent layer and once from the section bundle (the printed
    // prefactor undercounts it; the unramified collapse pins the power)
    let w2_id = zeta_factor(&e(1, 1, 1, 1, 0, 0))
        .mul(&zeta_factor(&e(1, 1, 1, 1, 0, 0)))
        .mul(&zeta_factor(&e(1, 2, 0, 0, 1, 1)))
        .mul(&zeta_factor(&e(1, 0, 0, 0, 1, -1)))
        .mul(&zeta_factor(&e(2, 2, 0, 0, 2, 0)).inv());
    big_l_symbolic().inv().mul(&w2_id).mul(&lat.finish())
}

// T1 + T2 with T1 collapsing to zeta(1 - s2 + s1 + nu3) zeta(1 - nu1 + nu3)
fn w1w2w1_exact_unramified() -> QRational {
    let pref = zeta_factor(&e(1, 2, 0, 0, 1, 1))
        .mul(&zeta_factor(&e(0, 0, 0, 1, 0, -1)))
        .mul(&zeta_factor(&e(0, 0, 0, 0, 1, -1)))
        .mul(&zeta_factor(&e(0, -1, 1, 0, 0, -1)))
        .mul(&big_l_symbolic().inv())
        .mul(&zeta_factor(&e(1, 0, 0, -1, 0, 1)).inv())
        .mul(&zeta_factor(&e(1, 1, -1, 0, 0, 1)).inv());
    let t1 = zeta_factor(&e(1, 1, -1, 0, 0, 1)).mul(&zeta_factor(&e(1, 0, 0, -1, 0, 1)));
    // T2: i >= 1, j, k >= 0 with k + j >= i; substitute i = 1 + i0 so
    // i0 <= j + k - 1 (an empty range when j = k = 0, which the bounded
    // geometric split encodes exactly)
    let mut lat = LatticeSum::new(
        e(0, -1, -1, -1, 0, 0), // the i = 1 offset of -(nu1 + s1 + s2) i
        vec![
            e(0, -1, -1, -1, 0, 0), // i0: -(nu1 + s1 + s2)
            e(-1, 0, 0, 1, 0, -1),  // j : -(1 - nu1 + nu3)
            e(-1, -1, 1, 0, 0, -1), // k : -(1 - s2 + s1 + nu3)
        ],
    );
    lat.sum_bounded(0, &Bound::affine(-1, &[(1, 1), (2, 1)]));
    lat.sum_free(1);
    lat.sum_free(2);
    pref.mul(&t1.add(&lat.finish()))
}

// the level-side lattice of the first Weyl element at r = 0, d = 0:
// vars (i', i, j, j'), j' <= j, i <= i' + j - j'
pub(crate) fn w2_level_exact_r0() -> QRational {
    let mut lat = LatticeSum::new(
        ExponentForm::zero(),
        vec![
            e(-1, 0, 0, -1, 1, 0),   // i': -(1 + nu1 - nu2)
            e(0, 0, 0, 0, -1, 1),    // i : -(nu2 - nu3)
            e(-1, -2, 0, -1, 0, -1), // j : -(1 + nu1 + nu3 + 2 s1)
            e(0, 1, -1, 0, 0, 1),    // j': +(nu3 + s1 - s2)
        ],
    );
    lat.sum_bounded(1, &Bound::affine(0, &[(0, 1), (2, 1), (3, -1)])); // i <= i'+j-j'
    lat.sum_bounded(3, &Bound::affine(0, &[(2, 1)])); // j' <= j
    lat.sum_free(0);
    lat.sum_free(2);
    zeta_factor(&e(0, -1, 1, -1, 0, 0))
        .mul(&big_l_symbolic().inv())
        .mul(&lat.finish())
}

// the level-side lattice of the long Weyl element at r = 0, d = 0:
// vars (i, j, k) with 0 <= i <= j + k
pub(crate) fn w1w2w1_level_exact_r0() -> QRational {
    let pref = zeta_factor(&e(0, 0, 0, 0, 1, -1))
        .mul(&zeta_factor(&e(0, 0, 0, 1, 0, -1)))
        .mul(&zeta_factor(&e(1, 0, 0, -1, 0, 1)).inv())
        .mul(&zeta_factor(&e(1, 1, -1, 0, 0, 1)).inv())
        .mul(&zeta_factor(&e(1, 2, 0, 0, 1, 1)))
        .mul(&zeta_factor(&e(0, -1, 1, 0, 0, -1)))
        .mul(&big_l_symbolic().inv());
    let mut lat = LatticeSum::new(
        ExponentForm::zero(),
        vec![
            e(0, -1, -1, -1, 0, 0), // i: -(nu1 + s1 + s2)
            e(-1, 0, 0, 1, 0, -1),  // j: -(1 - nu1 + nu3)
            e(-1, -1, 1, 0, 0, -1), // k: -(1 - s2 + s1 + nu3)
        ],
    );
    lat.sum_bounded(0, &Bound::affine(0, &[(1, 1), (2, 1)]));
    lat.sum_free(1);
    lat.sum_free(2);
    pref.mul(&lat.finish())
}

// === numeric evaluation ===

struct Qp {
    ln_q: f64,
}

impl Qp {
    fn new(q: f64) -> Self {
        Qp { ln_q: q.ln() }
    }
    fn pow(&self, z: Complex64) -> Complex64 {
        (z * self.ln_q).exp()
    }
    fn powk(&self, z: Complex64, k: i64) -> Complex64 {
        (z * (k as f64) * self.ln_q).exp()
    }
    /// per-step magnitude ratio of `q^{e k}` along a summation direction
    fn ratio(&self, e: Complex64) -> f64 {
        (e.re * self.ln_q).exp()
    }
}

fn zeta_num(q: &Qp, z: Complex64) -> Complex64 {
    1.0 / (Complex64::new(1.0, 0.0) - q.pow(-z))
}

/// `sum_{k=0}^{m} x^k`, stable through `x = 1`.
fn geom_fin(x: Complex64, m: i64) -> Complex64 {
    if m < 0 {
        return Complex64::new(0.0, 0.0);
    }
    if (x - Complex64::new(1.0, 0.0)).norm() < 1e-9 {
        // short ranges only arise here; sum directly
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..=m {
            acc += p;
            p *= x;
        }
        return acc;
    }
    (Complex64::new(1.0, 0.0) - x.powc(Complex64::new((m + 1) as f64, 0.0)))
        / (Complex64::new(1.0, 0.0) - x)
}

/// `sum_{k >= k0} x^k = x^{k0}/(1-x)` for `|x| < 1`.
fn geom_inf(x: Complex64, k0: i64) -> Result<Complex64, NonArchError> {
    if x.norm() >= 1.0 - 1e-9 {
        return Err(NonArchError::Domain(format!(
            "geometric direction does not converge: |x| = {}",
            x.norm()
        )));
    }
    Ok(x.powc(Complex64::new(k0 as f64, 0.0)) / (Complex64::new(1.0, 0.0) - x))
}

/// `sum_{k=a}^{b} x^k`, exact, allowing negative endpoints; empty when b < a.
fn geom_range(x: Complex64, a: i64, b: i64) -> Complex64 {
    if b < a {
        return Complex64::new(0.0, 0.0);
    }
    let xa = x.powc(Complex64::new(a as f64, 0.0));
    if (x - Complex64::new(1.0, 0.0)).norm() < 1e-9 {
        return xa * (b - a + 1) as f64;
    }
    let xb1 = x.powc(Complex64::new((b + 1) as f64, 0.0));
    (xa - xb1) / (Complex64::new(1.0, 0.0) - x)
}

fn check_ratios(rhos: &[(f64, &str)]) -> Result<(), NonArchError> {
    for (rho, name) in rhos {
        if *rho >= 1.0 - 1e-9 {
            return Err(NonArchError::Domain(format!(
                "lattice direction {name} has per-step ratio {rho:.4} >= 1; point outside the convergence region"
            )));
        }
    }
    Ok(())
}

fn certify(tail: f64, scale: f64, trunc: &TruncationSpec) -> Result<(), NonArchError> {
    let tol = trunc.tail_tol * scale.max(1e-30);
    if tail > tol {
        return Err(NonArchError::TruncationInsufficient { tail, tol });
    }
    Ok(())
}

/// Numeric evaluation of the degenerate integral, with certified truncation
/// for the free directions.
///
/// The spec side reads the branch off the datum: `r >= 1` selects the
/// level-divisor lattice, otherwise the twist lattice with its depth sum.
/// The dual side exchanges the two roles and evaluates at the dual point;
/// the depth weights keep the original `s2` of the section.
pub fn degen_nonarch(
    weyl: Weyl,
    side: Side,
    datum: &LocalDatum,
    pt: &SpectralPoint,
    trunc: &TruncationSpec,
) -> Result<Complex64, NonArchError> {
    if pt.nu_sum_abs() > 1e-12 {
        return Err(NonArchError::Domain("nu1 + nu2 + nu3 must vanish".into()));
    }
    match side {
        Side::Spec => {
            if datum.r >= 1 {
                degen_level(weyl, datum, pt, datum.r, trunc)
            } else {
                let q = Qp::new(datum.qf());
                let n = datum.n as i64;
                let mut total = Complex64::new(0.0, 0.0);
                for ell in 0..=n {
                    let weight = q.pow(
                        Complex64::new(-(n as f64) / 2.0, 0.0) + pt.s2 * (2 * ell - n) as f64,
                    );
                    total += weight * degen_twist_layer(weyl, datum, pt, ell, trunc)?;
                }
                Ok(total)
            }
        }
        Side::Dual => {
            let dual_pt = pt.dual();
            if datum.r >= 1 {
                // the section moved across the long element contributes a
                // single twist layer of depth r at the dual point, unit weight
                degen_twist_layer(weyl, datum, &dual_pt, datum.r as i64, trunc)
            } else if datum.n >= 1 {
                let q = Qp::new(datum.qf());
                let n = datum.n as i64;
                let mut total = Complex64::new(0.0, 0.0);
                for ell in 0..=n {
                    let weight = q.pow(
                        Complex64::new(-(n as f64) / 2.0, 0.0) + pt.s2 * (2 * ell - n) as f64,
                    );
                    total += weight * degen_level(weyl, datum, &dual_pt, ell as u32, trunc)?;
                }
                Ok(total)
            } else {
                degen_twist_layer(weyl, datum, &dual_pt, 0, trunc)
            }
        }
    }
}

fn degen_twist_layer(
    weyl: Weyl,
    datum: &LocalDatum,
    pt: &SpectralPoint,
    ell: i64,
    trunc: &TruncationSpec,
) -> Result<Complex64, NonArchError> {
    match weyl {
        Weyl::W2 => w2_twist_layer(datum, pt, ell, trunc),
        Weyl::W1W2 => w1w2_twist_layer(datum, pt, ell, trunc),
        Weyl::W1W2W1 => w1w2w1_twist_layer(datum, pt, ell, trunc),
    }
}

fn degen_level(
    weyl: Weyl,
    datum: &LocalDatum,
    pt: &SpectralPoint,
    r: u32,
    trunc: &TruncationSpec,
) -> Result<Complex64, NonArchError> {
    match weyl {
        Weyl::W2 => w2_level(datum, pt, r, trunc),
        Weyl::W1W2 => w1w2_level(datum, pt, r, trunc),
        Weyl::W1W2W1 => w1w2w1_level(datum, pt, r, trunc),
    }
}

fn big_l_num(q: &Qp, pt: &SpectralPoint) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    zeta_num(q, one + pt.nu1 - pt.nu2)
        * zeta_num(q, one + pt.nu1 - pt.nu3)
        * zeta_num(q, one + pt.nu2 - pt.nu3)
}

// separable tail over the truncated free directions: for each direction,
// the slab beyond the cутoff times full geometric mass in the others
fn separable_tail(dirs: &[(f64, i64, i64)]) -> f64 {
    // (rho, lower, cutoff) triples
    let mut tail = 0.0;
    for (v, &(rho_v, _low_v, n_v)) in dirs.iter().enumerate() {
        let mut t = rho_v.powi(n_v as i32 + 1) / (1.0 - rho_v);
        for (u, &(rho_u, low_u, _)) in dirs.iter().enumerate() {
            if u != v {
                t *= rho_u.powi(low_u as i32) / (1.0 - rho_u);
            }
        }
        tail += t;
    }
    tail * 4.0 // headroom for the bounded inner geometric factors
}

// ---- first Weyl element ----

fn w2_twist_layer(
    datum: &LocalDatum,
    pt: &SpectralPoint,
    ell: i64,
    trunc: &TruncationSpec,
) -> Result<Complex64, NonArchError> {
    let q = Qp::new(datum.qf());
    let one = Complex64::new(1.0, 0.0);
    let d = datum.d as i64;
    let e_rp = -(pt.s2 - pt.s1 - pt.nu1);
    let e_jp = -(one + pt.nu1 + pt.s1 + pt.s2);
    let e_ip = -(one + pt.nu1 - pt.nu2);
    let e_i = -(pt.nu2 - pt.nu3);
    let e_j = -(one + pt.nu1 + pt.nu3 + pt.s1 * 2.0);
    let x_i = q.pow(e_i);
    check_ratios(&[
        (q.ratio(e_rp), "r'"),
        (q.ratio(e_jp), "j'"),
        (q.ratio(e_ip), "i'"),
        (q.ratio(e_j) * q.ratio(e_i).max(1.0), "j"),
        (q.ratio(e_i), "i"),
    ])?;
    let nn = trunc.n_max as i64;
    // block 1: r' >= -d, j' >= 0 with r' + j' >= ell; exact in both
    // directions (finite part below the depth, free geometric above)
    let mut block1 = Complex64::new(0.0, 0.0);
    for rp in -d..(ell.max(-d)) {
        block1 += q.powk(e_rp, rp) * geom_inf(q.pow(e_jp), ell - rp)?;
    }
    block1 += geom_inf(q.pow(e_rp), ell.max(-d))? * geom_inf(q.pow(e_jp), 0)?;
    // block 2: i' >= 0, j >= -d free, i summed exactly over 0..=i'+j+d
    let mut block2 = Complex64::new(0.0, 0.0);
    for ip in 0..=nn {
        let v_ip = q.powk(e_ip, ip);
        for j in -d..=nn {
            block2 += v_ip * q.powk(e_j, j) * geom_fin(x_i, ip + j + d);
        }
    }
    let tail = separable_tail(&[
        (q.ratio(e_ip), 0, nn),
        (q.ratio(e_j) * q.ratio(e_i).max(1.0), -d, nn),
    ]) * (1.0 / (1.0 - q.ratio(e_i)))
        * block1.norm().max(1.0);
    certify(tail, (block1 * block2).norm(), trunc)?;
    let head = q.powk(Complex64::new(1.0, 0.0), ell - 2 * d);
    Ok(head / big_l_num(&q, pt) * block1 * block2)
}

fn w2_level(
    datum: &LocalDatum,
    pt: &SpectralPoint,
    r: u32,
    trunc: &TruncationSpec,
) -> Result<Complex64, NonArchError> {
    let q = Qp::new(datum.qf());
    let one = Complex64::new(1.0, 0.0);
    let d = datum.d as i64;
    let r = r as i64;
    let e_ip = -(one + pt.nu1 - pt.nu2);
    let e_i = -(pt.nu2 - pt.nu3);
    let e_j = -(one + pt.nu1 + pt.nu3 + pt.s1 * 2.0);
    let e_jp = pt.nu3 + pt.s1 - pt.s2;
    let (x, y) = (q.pow(e_jp), q.pow(e_i));
    check_ratios(&[
        (q.ratio(e_ip) * q.ratio(e_i).max(1.0), "i'"),
        (
            q.ratio(e_j) * q.ratio(e_jp).max(1.0) * q.ratio(e_i).max(1.0),
            "j",
        ),
        (q.ratio(e_i), "i"),
        (q.ratio(e_jp), "j'"),
    ])?;
    let nn = trunc.n_max as i64;
    let mut lat = Complex64::new(0.0, 0.0);
    for ip in 0..=nn {
        let v_ip = q.powk(e_ip, ip);
        for j in r..=(r + nn) {
            // sum_{j'=0}^{j+d} x^{j'} * sum_{i=0}^{ip+j-j'+d} y^i
            //   = [geom_fin(x, j+d) - y^{ip+j+d+1} geom_fin(x/y, j+d)]/(1-y)
            let inner = if (y - one).norm() < 1e-9 {
                // nu2 ~ nu3: fall back to the direct j' loop
                let mut acc = Complex64::new(0.0, 0.0);
                for jp in 0..=(j + d) {
                    acc += q.powk(e_jp, jp) * geom_fin(y, ip + j - jp + d);
                }
                acc
            } else {
                (geom_fin(x, j + d)
                    - y.powc(Complex64::new((ip + j + d + 1) as f64, 0.0))
                        * geom_fin(x / y, j + d))
                    / (one - y)
            };
            lat += v_ip * q.powk(e_j, j) * inner;
        }
    }
    let rho_j_eff = q.ratio(e_j) * q.ratio(e_jp).max(1.0) * q.ratio(e_i).max(1.0);
    let tail = separable_tail(&[
        (q.ratio(e_ip) * q.ratio(e_i).max(1.0), 0, nn),
        (rho_j_eff, r, r + nn),
    ]) / (1.0 - q.ratio(e_i)).min(1.0 - q.ratio(e_jp));
    certify(tail, lat.norm(), trunc)?;
    let head = q.pow(Complex64::new(r as f64, 0.0) + (pt.s2 - pt.s1 - pt.nu1 - 2.0) * d as f64)
        * zeta_num(&q, pt.s2 - pt.s1 - pt.nu1);
    Ok(head / big_l_num(&q, pt) * lat)
}

// ---- second Weyl element ----

fn w1w2_w2prime_identity(q: &Qp, pt: &SpectralPoint, d: i64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    zeta_num(q, one + pt.nu1 + pt.s1 + pt.s2)
        * zeta_num(q, one + pt.nu2 + pt.nu3 + pt.s1 * 2.0)
        * zeta_num(q, one + pt.nu2 - pt.nu3)
        / zeta_num(q, one * 2.0 + pt.nu2 * 2.0 + pt.s1 * 2.0)
        / q.pow((one * 0.5 - pt.nu2 - pt.nu3 - pt.s1 * 2.0) * d as f64)
}

fn w1w2_twist_layer(
    datum: &LocalDatum,
    pt: &SpectralPoint,
    ell: i64,
    trunc: &TruncationSpec,
) -> Result<Complex64, NonArchError> {
    let q = Qp::new(datum.qf());
    let one = Complex64::new(1.0, 0.0);
    let d = datum.d as i64;
    let e_j = -(one + pt.nu2 + pt.s1 + pt.s2);
    let e_k = one + pt.nu2 * 2.0 + pt.s1 * 2.0;
    let e_i = -(pt.nu1 + pt.s1 - pt.s2);
    let e_p = -(one + pt.nu1 + pt.s1 + pt.s2); // defect payload
    let rho_j_eff = q.ratio(e_j) * q.ratio(e_k).max(1.0) * q.ratio(e_i).max(1.0);
    check_ratios(&[(rho_j_eff, "j")])?;
    let nn = trunc.n_max as i64;
    let (xk, xi, xp) = (q.pow(e_k), q.pow(e_i), q.pow(e_p));
    let q_ell = q.powk(Complex64::new(1.0, 0.0), ell);
    let mut lat = Complex64::new(0.0, 0.0);
    for j in -d..=nn {
        let m = j + d; // inner ranges 0..=m
        let ksum = geom_fin(xk, m);
        // i-sum with the kink at i = m - ell: plain below, defect above
        let isum = if ell == 0 {
            q_ell * geom_fin(xi, m)
        } else if m >= ell {
            let mut above = Complex64::new(0.0, 0.0);
            for t in 1..=ell {
                // i = m - ell + t, defect = t
                above += xp.powc(Complex64::new(t as f64, 0.0))
                    * xi.powc(Complex64::new((m - ell + t) as f64, 0.0));
            }
            q_ell * (geom_fin(xi, m - ell) + above)
        } else {
            // every i carries a defect ell + i - m
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..=m {
                acc += xp.powc(Complex64::new((ell + i - m) as f64, 0.0))
                    * xi.powc(Complex64::new(i as f64, 0.0));
            }
            q_ell * acc
        };
        lat += q.powk(e_j, j) * ksum * isum;
    }
    let tail = separable_tail(&[(rho_j_eff, -d, nn)]) * q_ell.norm();
    certify(tail, lat.norm(), trunc)?;
    let head = q.pow(Complex64::new(-(d as f64) / 2.0, 0.0));
    // the second zeta(1+nu1+s1+s2): see the exact-collapse normalization
    let zeta2 = zeta_num(&q, one + pt.nu1 + pt.s1 + pt.s2);
    Ok(head / big_l_num(&q, pt) * w1w2_w2prime_identity(&q, pt, d) * zeta2 * lat)
}

fn w1w2_level(
    datum: &LocalDatum,
    pt: &SpectralPoint,
    r: u32,
    trunc: &TruncationSpec,
) -> Result<Complex64, NonArchError> {
    let q = Qp::new(datum.qf());
    let one = Complex64::new(1.0, 0.0);
    let d = datum.d as i64;
    let r = r as i64;
    let e_l = -(one + pt.nu2 + pt.s1 + pt.s2);
    let e_k = -(pt.nu1 + pt.s1 - pt.s2);
    let e_i = -(one + pt.nu2 + pt.nu3 + pt.s1 * 2.0);
    let e_j = -(one + pt.nu2 - pt.nu3);
    let e_p = -(one + pt.nu1 + pt.s1 + pt.s2);
    // corner growth: the (i, j) lower bounds recede with l and the k-range
    // widens, so fold their worst factors into the l-ratio
    // each unit of corner recession in l also lowers min(i+d, j) by one,
    // contributing q^{-1}
    let rho_l_eff = q.ratio(e_l)
        * q.ratio(e_k).max(1.0)
        * (1.0 / q.ratio(e_i)).max(1.0)
        * (1.0 / q.ratio(e_j)).max(1.0)
        / q.ratio(Complex64::new(1.0, 0.0));
    check_ratios(&[
        (rho_l_eff, "l"),
        (q.ratio(e_i), "i"),
        (q.ratio(e_j), "j"),
    ])?;
    let nn = trunc.n_max as i64;
    let mut lat = Complex64::new(0.0, 0.0);
    for l in 0..=nn {
        let ksum = geom_fin(q.pow(e_k), l + d);
        let mut ij = Complex64::new(0.0, 0.0);
        for i in (-l - d)..=nn {
            for j in (-l)..=nn {
                let m = (i + d).min(j);
                if m > 0 {
                    continue;
                }
                let defect = (r - i - l).max(0);
                ij += q.pow(
                    Complex64::new((r + m) as f64, 0.0)
                        + e_p * defect as f64
                        + e_i * i as f64
                        + e_j * j as f64,
                );
            }
        }
        lat += q.powk(e_l, l) * ksum * ij;
    }
    let width = ((nn + 2 * d + 2) * (nn + 2 * d + 2)) as f64;
    let tail_rel = (rho_l_eff.powi(nn as i32 + 1) / (1.0 - rho_l_eff)
        + q.ratio(e_i).powi(nn as i32 + 1) / (1.0 - q.ratio(e_i))
        + q.ratio(e_j).powi(nn as i32 + 1) / (1.0 - q.ratio(e_j)))
        * width;
    certify(tail_rel * lat.norm(), lat.norm(), trunc)?;
    let head = q.pow(Complex64::new(-2.0 * d as f64, 0.0));
    let zeta = zeta_num(&q, one + pt.nu1 + pt.s1 + pt.s2);
    Ok(head / big_l_num(&q, pt) * zeta * zeta * lat)
}

// ---- long Weyl element ----

fn w1w2w1_twist_layer(
    datum: &LocalDatum,
    pt: &SpectralPoint,
    ell: i64,
    trunc: &TruncationSpec,
) -> Result<Complex64, NonArchError> {
    let _ = trunc; // every direction is summed in closed form
    let q = Qp::new(datum.qf());
    let one = Complex64::new(1.0, 0.0);
    let d = datum.d as i64;
    let e_j = -(one - pt.nu1 + pt.nu3);
    let e_k = -(one - pt.s2 + pt.s1 + pt.nu3);
    let e_i = -(pt.nu1 + pt.s1 + pt.s2);
    let e_x = pt.s2 - pt.s1 - pt.nu3;
    let (xj, xk, xi) = (q.pow(e_j), q.pow(e_k), q.pow(e_i));
    check_ratios(&[
        (q.ratio(e_j), "j"),
        (q.ratio(e_k), "k"),
        (q.ratio(e_i), "i"),
    ])?;
    // T1: 0 <= i <= ell + d; the j-line splits at j = ell where the defect
    // max(0, ell - j) switches off
    let mut t1 = Complex64::new(0.0, 0.0);
    for i in 0..=(ell + d) {
        let base = q.pow(-e_x * (ell - i) as f64 + e_i * i as f64);
        let mut jsum = Complex64::new(0.0, 0.0);
        for j in -d..(ell.max(-d)) {
            jsum += q.powk(e_j, j) * q.pow(Complex64::new(-((ell - j).max(0)) as f64, 0.0));
        }
        jsum += geom_inf(xj, ell.max(-d))?;
        t1 += base * jsum;
    }
    t1 *= zeta_num(&q, one - pt.s2 + pt.s1 + pt.nu3)
        / q.pow((one + pt.s2 - pt.s1 - pt.nu3) * d as f64);
    // T2: i > ell + d, j >= -d, k >= max(0, i - j - max(0, ell - j) - d),
    // summed exactly: the k-sum is geometric from its floor, and for each
    // j-regime the i-sum splits at the floor's activation point i = c_j.
    let i0 = ell + d + 1;
    let zk = one / (one - xk);
    let mut t2 = Complex64::new(0.0, 0.0);
    // finite j-regime: j < ell, defect m = ell - j, c_j = ell + d
    for j in -d..(ell.max(-d)) {
        let cj = ell + d;
        // i in (ell+d, c_j] is empty since c_j = ell + d; all i have k-floor
        // i - c_j > 0
        let series = xk.powc(Complex64::new(-cj as f64, 0.0))
            * geom_inf(xi * xk, i0.max(cj + 1))?;
        t2 += q.powk(e_j, j) * zk * series;
    }
    // free j-regime: j >= max(ell, -d), defect 0, c_j = j + d
    let j0 = ell.max(-d);
    // piece A: i in [i0, c_j] with k-floor 0:
    //   zk * sum_{j >= j0} xj^j [ xi^{i0} - xi^{j+d+1} ] / (1 - xi)
    let piece_a = zk / (one - xi)
        * (xi.powc(Complex64::new(i0 as f64, 0.0)) * geom_inf(xj, j0)?
            - xi.powc(Complex64::new((d + 1) as f64, 0.0)) * geom_inf(xj * xi, j0)?);
    // piece B: i > c_j: zk xk^{-c_j} (xi xk)^{c_j+1} geometric
    //   = zk xk (xi)^{j+d+1} ... summed over j
    let piece_b = zk * xk * xi.powc(Complex64::new((d + 1) as f64, 0.0)) / (one - xi * xk)
        * geom_inf(xj * xi, j0)?;
    t2 += piece_a + piece_b;
    t2 *= q.pow(Complex64::new(-(d as f64), 0.0));
    let pref = zeta_num(&q, one + pt.nu2 + pt.nu3 + pt.s1 * 2.0)
        * zeta_num(&q, pt.nu1 - pt.nu3)
        * zeta_num(&q, pt.nu2 - pt.nu3)
        * zeta_num(&q, pt.s2 - pt.s1 - pt.nu3)
        / (big_l_num(&q, pt)
            * zeta_num(&q, one - pt.nu1 + pt.nu3)
            * zeta_num(&q, one - pt.s2 + pt.s1 + pt.nu3));
    let head = q.pow(Complex64::new(ell as f64, 0.0) + (pt.nu2 + pt.nu3 + pt.s1 * 2.0) * d as f64);
    Ok(head * pref * (t1 + t2))
}

fn w1w2w1_level(
    datum: &LocalDatum,
    pt: &SpectralPoint,
    r: u32,
    trunc: &TruncationSpec,
) -> Result<Complex64, NonArchError> {
    let _ = trunc; // every direction is summed in closed form
    let q = Qp::new(datum.qf());
    let one = Complex64::new(1.0, 0.0);
    let d = datum.d as i64;
    let r = r as i64;
    let e_j = -(one - pt.nu1 + pt.nu3);
    let e_k = -(one - pt.s2 + pt.s1 + pt.nu3);
    let e_i = -(pt.nu1 + pt.s1 + pt.s2);
    let e_m = -(one + pt.nu2 + pt.nu3 + pt.s1 * 2.0);
    let (xj, xk, xi, xm) = (q.pow(e_j), q.pow(e_k), q.pow(e_i), q.pow(e_m));
    check_ratios(&[
        (q.ratio(e_j), "j"),
        (q.ratio(e_k), "k"),
        (q.ratio(e_i), "i"),
        (q.ratio(e_i) * q.ratio(e_j), "i+j corner"),
    ])?;
    let zk = one / (one - xk);
    // s_j(i) = sum_{j >= -d} xj^j geom_inf(xk, max(0, i - j - d))
    //        = xk^{i-d} sum_{j=-d..i-d-1} (xj/xk)^j  +  zk-free tail
    let sj = |i: i64| -> Result<Complex64, NonArchError> {
        let head = if i > 0 {
            xk.powc(Complex64::new((i - d) as f64, 0.0)) * geom_range(xj / xk, -d, i - d - 1) * zk
        } else {
            Complex64::new(0.0, 0.0)
        };
        Ok(head + zk * geom_inf(xj, (i - d).max(-d))?)
    };
    // payload m = max(-d, r - i): enumerate i <= r + d, then the constant
    // regime i > r + d in closed form
    let mut lat = Complex64::new(0.0, 0.0);
    for i in 0..=(r + d) {
        lat += q.powk(e_i, i) * xm.powc(Complex64::new((r - i).max(-d) as f64, 0.0)) * sj(i)?;
    }
    // i > r + d, m = -d: split s_j(i) into its two exact i-families
    let i1 = r + d + 1;
    let md = xm.powc(Complex64::new(-d as f64, 0.0));
    // family 1: zk * xk^{i-d} * sum_{j=-d}^{i-d-1} (xj/xk)^j; write the inner
    // finite geometric as [(xj/xk)^{-d} - (xj/xk)^{i-d}]/(1 - xj/xk)
    let w = xj / xk;
    if (w - one).norm() < 1e-9 {
        return Err(NonArchError::Domain(
            "degenerate coincidence xj = xk; perturb the spectral point".into(),
        ));
    }
    let fam1 = zk / (one - w)
        * (w.powc(Complex64::new(-d as f64, 0.0))
            * xk.powc(Complex64::new(-d as f64, 0.0))
            * geom_inf(xi * xk, i1)?
            - xj.powc(Complex64::new(-d as f64, 0.0)) * geom_inf(xi * xj, i1)?);
    // family 2: zk * xj^{i-d}/(1-xj) from the free geometric tail
    let fam2 = zk / (one - xj)
        * xj.powc(Complex64::new(-d as f64, 0.0))
        * geom_inf(xi * xj, i1)?;
    lat += md * (fam1 + fam2);
    let head = q.pow(Complex64::new(r as f64 - 2.5 * d as f64, 0.0));
    let pref = zeta_num(&q, pt.nu2 - pt.nu3)
        * zeta_num(&q, pt.nu1 - pt.nu3)
        * zeta_num(&q, one + pt.nu2 + pt.nu3 + pt.s1 * 2.0)
        * zeta_num(&q, pt.s2 - pt.s1 - pt.nu3)
        / (big_l_num(&q, pt)
            * zeta_num(&q, one - pt.nu1 + pt.nu3)
            * zeta_num(&q, one - pt.s2 + pt.s1 + pt.nu3));
    Ok(head * pref * lat)
}
