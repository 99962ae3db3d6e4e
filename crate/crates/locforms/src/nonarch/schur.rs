//! Schur/Casselman-Shalika values on GL(3) tori and the oldform expansion
//! coefficients on GL(2).

use num::complex::Complex64;

use super::local::{NonArchError, SatakeGL2, SatakeGL3};

/// Complete homogeneous symmetric values `h_m(alpha)` for `m <= max_m`,
/// through the three-term recursion driven by the elementary symmetric
/// functions.  `h_0 = 1`, `h_{-1} = h_{-2} = 0`.
pub fn homogeneous_values(a: &SatakeGL3, max_m: usize) -> Vec<Complex64> {
    let (e1, e2, e3) = a.elementary();
    let mut h = Vec::with_capacity(max_m + 1);
    h.push(Complex64::new(1.0, 0.0));
    for m in 1..=max_m {
        let hm1 = h[m - 1];
        let hm2 = if m >= 2 { h[m - 2] } else { Complex64::new(0.0, 0.0) };
        let hm3 = if m >= 3 { h[m - 3] } else { Complex64::new(0.0, 0.0) };
        h.push(e1 * hm1 - e2 * hm2 + e3 * hm3);
    }
    h
}

/// Schur value `s_{(i+j, j, 0)}(alpha1, alpha2, alpha3)` by the
/// division-free two-term determinant `h_{i+j} h_j - h_{i+j+1} h_{j-1}`,
/// valid for coincident parameters where the bialternant degenerates.
pub fn schur(i: i64, j: i64, a: &SatakeGL3) -> Complex64 {
    if i < 0 || j < 0 {
        return Complex64::new(0.0, 0.0);
    }
    let (i, j) = (i as usize, j as usize);
    let h = homogeneous_values(a, i + j + 1);
    let hj1 = if j >= 1 { h[j - 1] } else { Complex64::new(0.0, 0.0) };
    h[i + j] * h[j] - h[i + j + 1] * hj1
}

/// Spherical Whittaker torus value `q^{-i-j} lambda(p^{i+j}, p^j)`;
/// zero for negative indices.
pub fn cs_gl3(i: i64, j: i64, a: &SatakeGL3, q: f64) -> Complex64 {
    if i < 0 || j < 0 {
        return Complex64::new(0.0, 0.0);
    }
    schur(i, j, a) * q.powi(-((i + j) as i32))
}

/// Bialternant determinant form of `s_{(i+j,j,0)}`; only valid for pairwise
/// distinct parameters.  Retained as an independent oracle for `schur`.
pub fn schur_bialternant(i: i64, j: i64, a: &SatakeGL3) -> Complex64 {
    let [a1, a2, a3] = a.alpha;
    let vandermonde = (a1 - a2) * (a1 - a3) * (a2 - a3);
    let p = [(i + j + 2) as i32, (j + 1) as i32, 0];
    let col = |x: Complex64| [x.powi(p[0]), x.powi(p[1]), x.powi(p[2])];
    let (c1, c2, c3) = (col(a1), col(a2), col(a3));
    let det = c1[0] * (c2[1] * c3[2] - c2[2] * c3[1]) - c2[0] * (c1[1] * c3[2] - c1[2] * c3[1])
        + c3[0] * (c1[1] * c2[2] - c1[2] * c2[1]);
    det / vandermonde
}

/// Oldform expansion coefficients `xi(p^i, p^m)` of the orthonormal basis of
/// depth-`m` invariant vectors in terms of newform translates, for
/// `0 <= i <= m`.
pub fn atkin_lehner_xi(
    i: i64,
    m: i64,
    lambda_p: Complex64,
    q: f64,
) -> Result<Complex64, NonArchError> {
    if i < 0 || i > m {
        return Err(NonArchError::Domain(format!(
            "atkin_lehner_xi needs 0 <= i <= m, got ({i}, {m})"
        )));
    }
    let alpha = lambda_p / (q.sqrt() * (1.0 + 1.0 / q));
    let amp = 1.0 - alpha.norm_sqr();
    if amp <= 0.0 {
        return Err(NonArchError::Domain(format!(
            "oldform normalization breaks down: |alpha|^2 = {} >= 1",
            alpha.norm_sqr()
        )));
    }
    let root = amp.sqrt();
    let val = match (i, m) {
        (0, 0) => Complex64::new(1.0, 0.0),
        (0, 1) => -alpha / root,
        (1, 1) => Complex64::new(1.0 / root, 0.0),
        _ if i == m - 2 && m >= 2 => Complex64::new(1.0 / (q * (1.0 - q.powi(-2)).sqrt() * root), 0.0),
        _ if i == m - 1 && m >= 2 => -lambda_p / ((q * (1.0 - q.powi(-2))).sqrt() * root),
        _ if i == m && m >= 2 => Complex64::new(1.0 / ((1.0 - q.powi(-2)).sqrt() * root), 0.0),
        _ => Complex64::new(0.0, 0.0), // 0 <= i <= m-3, m >= 3
    };
    Ok(val)
}

/// Convenience wrapper taking the Satake parameter of an unramified sigma.
pub fn atkin_lehner_xi_unramified(
    i: i64,
    m: i64,
    b: &SatakeGL2,
    q: f64,
) -> Result<Complex64, NonArchError> {
    atkin_lehner_xi(i, m, super::local::hecke_gl2(1, b), q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn satake(a1: Complex64, a2: Complex64) -> SatakeGL3 {
        SatakeGL3::new([a1, a2, 1.0 / (a1 * a2)])
    }

    #[test]
    fn schur_base_cases() {
        let a = satake(Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.0));
        assert_eq!(schur(0, 0, &a), Complex64::new(1.0, 0.0));
        let h1 = a.alpha[0] + a.alpha[1] + a.alpha[2];
        assert!((schur(1, 0, &a) - h1).norm() < 1e-14);
    }

    #[test]
    fn schur_matches_bialternant_at_distinct_parameters() {
        let a = satake(Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.0));
        for i in 0..6 {
            for j in 0..6 {
                let jt = schur(i, j, &a);
                let det = schur_bialternant(i, j, &a);
                assert!(
                    (jt - det).norm() <= 1e-10 * det.norm().max(1.0),
                    "({i},{j}): {jt} vs {det}"
                );
            }
        }
    }

    #[test]
    fn cs_values() {
        // (1,0) at q=2, alpha=(1,1,1): h_1/q = 3/2
        let a = SatakeGL3::trivial();
        let v = cs_gl3(1, 0, &a, 2.0);
        assert!((v.re - 1.5).abs() < 1e-14);
        // (1,1) at q=3 against the determinant oracle
        let a = satake(Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.0));
        let v = cs_gl3(1, 1, &a, 3.0);
        let want = schur_bialternant(1, 1, &a) / 9.0;
        assert!((v - want).norm() < 1e-12);
        assert_eq!(cs_gl3(-1, 0, &a, 3.0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn schur_symmetric_under_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let t1 = rng.gen_range(0.0..std::f64::consts::TAU);
            let t2 = rng.gen_range(0.0..std::f64::consts::TAU);
            let a1 = Complex64::new(t1.cos(), t1.sin());
            let a2 = Complex64::new(t2.cos(), t2.sin());
            let a3 = 1.0 / (a1 * a2);
            let perms = [
                [a1, a2, a3],
                [a2, a1, a3],
                [a3, a2, a1],
                [a2, a3, a1],
                [a1, a3, a2],
                [a3, a1, a2],
            ];
            let i = rng.gen_range(0..=8);
            let j = rng.gen_range(0..=8);
            let base = schur(i, j, &SatakeGL3 { alpha: perms[0] });
            for p in &perms[1..] {
                let v = schur(i, j, &SatakeGL3 { alpha: *p });
                assert!((v - base).norm() <= 1e-9 * base.norm().max(1.0));
            }
        }
    }

    #[test]
    fn generating_series_of_one_row_schur() {
        // sum_i s_{(i,0,0)} x^i = prod_k (1 - alpha_k x)^{-1}, truncated at 60
        let a = satake(
            Complex64::new(0.0, 1.0).exp(),
            Complex64::new(0.0, -0.4).exp(),
        );
        let x = Complex64::new(0.31, 0.17);
        assert!(x.norm() < 1.0 / a.alpha.iter().map(|z| z.norm()).fold(0.0, f64::max));
        let mut sum = Complex64::new(0.0, 0.0);
        let mut xp = Complex64::new(1.0, 0.0);
        for i in 0..60 {
            sum += schur(i, 0, &a) * xp;
            xp *= x;
        }
        let one = Complex64::new(1.0, 0.0);
        let want = one
            / ((one - a.alpha[0] * x) * (one - a.alpha[1] * x) * (one - a.alpha[2] * x));
        assert!((sum - want).norm() < 1e-12 * want.norm());
    }

    #[test]
    fn oldform_coefficients() {
        let q = 2.0;
        // (0,0) -> 1
        let xi = atkin_lehner_xi(0, 0, Complex64::new(0.3, 0.0), q).unwrap();
        assert_eq!(xi, Complex64::new(1.0, 0.0));
        // the (i, m) = (0, 3) slot sits in the vanishing band
        let xi = atkin_lehner_xi(0, 3, Complex64::new(0.3, 0.0), q).unwrap();
        assert_eq!(xi, Complex64::new(0.0, 0.0));
        // i = m-1 >= 2 carries the factor -lambda(p): with beta = i we get
        // lambda(p) = 0 and the coefficient vanishes
        let b = SatakeGL2::new(Complex64::new(0.0, 1.0));
        let xi = atkin_lehner_xi_unramified(2, 3, &b, q).unwrap();
        assert!(xi.norm() < 1e-14);
        // while the neighbouring i = m-2 slot does not vanish
        let xi = atkin_lehner_xi_unramified(1, 3, &b, q).unwrap();
        let want = 1.0 / (q * (1.0 - q.powi(-2)).sqrt());
        assert!((xi.re - want).abs() < 1e-14 && xi.im.abs() < 1e-15);
        // out of range
        assert!(atkin_lehner_xi(4, 3, Complex64::new(0.1, 0.0), q).is_err());
        assert!(atkin_lehner_xi(-1, 3, Complex64::new(0.1, 0.0), q).is_err());
    }
}
