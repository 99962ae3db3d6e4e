use locforms::nonarch::*;
use locforms::qsymbolic::*;
use locforms::SpectralPoint;

fn main() {
    let pt = SpectralPoint::real(0.24, 0.70, 0.4, 0.0, -0.4);
    let lat = degen_nonarch_exact(Weyl::W1W2, Side::Spec);
    let prod = degen_unramified_product(Weyl::W1W2, Side::Spec);
    println!("lat terms: num={} den={}", lat.num.terms().len(), lat.den.terms().len());
    let lv = eval_numeric(&lat, 2.0, &pt).unwrap();
    let pv = eval_numeric(&prod, 2.0, &pt).unwrap();
    println!("exact-lattice eval : {lv}");
    println!("exact-product eval : {pv}");
    // python-style brute of the twist layer at l=0 for reference
    let q: f64 = 2.0;
    let one = num::complex::Complex64::new(1.0, 0.0);
    let (s1, s2) = (pt.s1, pt.s2);
    let (n1, n2, n3) = (pt.nu1, pt.nu2, pt.nu3);
    let mut l0 = num::complex::Complex64::new(0.0, 0.0);
    for j in 0..400i64 {
        let mut ks = num::complex::Complex64::new(0.0, 0.0);
        for k in 0..=j { ks += ((one + n2*2.0 + s1*2.0) * (k as f64) * q.ln()).exp(); }
        let mut is = num::complex::Complex64::new(0.0, 0.0);
        for i in 0..=j { is += (-(n1 + s1 - s2) * (i as f64) * q.ln()).exp(); }
        l0 += (-(one + n2 + s1 + s2) * (j as f64) * q.ln()).exp() * ks * is;
    }
    let z = |e: num::complex::Complex64| one / (one - (-e * q.ln()).exp());
    let w2p = z(one+n1+s1+s2)*z(one+n2+n3+s1*2.0)*z(one+n2-n3)/z(one*2.0+n2*2.0+s1*2.0);
    let lpi = z(one+n1-n2)*z(one+n1-n3)*z(one+n2-n3);
    println!("brute twist (with extra zeta): {}", l0 * w2p * z(one+n1+s1+s2) / lpi);
}
