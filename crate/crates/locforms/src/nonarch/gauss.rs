//! Gauss sums of Dirichlet characters over prime-power moduli, supplied as
//! explicit value tables.

use num::complex::Complex64;
use std::f64::consts::TAU;

use super::local::NonArchError;

/// An explicit multiplicative character on the units modulo `p^r_prime`,
/// stored as a table over unit-class representatives.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub p: u64,
    pub r_prime: u32,
    /// values[u] for unit representatives u in 0..modulus (zero entries at
    /// non-units)
    values: Vec<Complex64>,
}

impl CharacterTable {
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.r_prime)
    }

    pub fn value(&self, u: u64) -> Complex64 {
        self.values[(u % self.modulus()) as usize]
    }

    /// The character of index `k` on the cyclic unit group modulo `p^r` for
    /// odd `p` (any `r <= 3`), or for `p = 2` with `r <= 2`.  Index `k` runs
    /// modulo the group order.
    pub fn cyclic(p: u64, r_prime: u32, k: u64) -> Self {
        assert!(r_prime >= 1 && r_prime <= 3);
        assert!(p >= 2);
        assert!(p % 2 == 1 || r_prime <= 2, "p = 2 supported up to r' = 2");
        let modulus = p.pow(r_prime);
        let phi = modulus - modulus / p;
        let g = unit_group_generator(p, r_prime);
        let mut values = vec![Complex64::new(0.0, 0.0); modulus as usize];
        let mut u = 1u64;
        for j in 0..phi {
            let angle = TAU * ((k % phi) as f64) * (j as f64) / (phi as f64);
            values[u as usize] = Complex64::new(angle.cos(), angle.sin());
            u = u * g % modulus;
        }
        CharacterTable { p, r_prime, values }
    }

    /// True when the character does not factor through the units modulo
    /// `p^{r'-1}`, i.e. its conductor exponent is exactly `r_prime`.
    pub fn is_primitive(&self) -> bool {
        let modulus = self.modulus();
        let sub = modulus / self.p; // 1 + p^{r'-1} O generates the kernel test
        if self.r_prime == 1 {
            // primitive iff nontrivial
            (1..modulus)
                .filter(|u| u % self.p != 0)
                .any(|u| (self.value(u) - Complex64::new(1.0, 0.0)).norm() > 1e-9)
        } else {
            (1..self.p)
                .map(|t| 1 + t * sub)
                .any(|u| (self.value(u) - Complex64::new(1.0, 0.0)).norm() > 1e-9)
        }
    }
}

fn unit_group_generator(p: u64, r_prime: u32) -> u64 {
    if p == 2 {
        // (Z/2)^x trivial, (Z/4)^x = {1, 3}
        return if r_prime == 1 { 1 } else { 3 };
    }
    let modulus = p.pow(r_prime);
    let phi = modulus - modulus / p;
    'outer: for g in 2..modulus {
        if g % p == 0 {
            continue;
        }
        // g generates iff g^{phi/ell} != 1 for every prime ell | phi
        let mut m = phi;
        let mut primes = Vec::new();
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                primes.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for ell in primes {
            if pow_mod(g, phi / ell, modulus) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("no generator found");
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Gauss sum `sum_{u unit mod p^{r'}} chi(u) e(u / p^{r'})` of a primitive
/// character; satisfies `|G|^2 = p^{r'}`.
pub fn gauss_sum(chi: &CharacterTable) -> Result<Complex64, NonArchError> {
    if !chi.is_primitive() {
        return Err(NonArchError::NotPrimitive);
    }
    let modulus = chi.modulus();
    let mut g = Complex64::new(0.0, 0.0);
    for u in 1..modulus {
        if u % chi.p == 0 {
            continue;
        }
        let angle = TAU * (u as f64) / (modulus as f64);
        g += chi.value(u) * Complex64::new(angle.cos(), angle.sin());
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_character_mod_3() {
        // the quadratic character mod 3 has |G| = sqrt(3)
        let chi = CharacterTable::cyclic(3, 1, 1);
        let g = gauss_sum(&chi).unwrap();
        assert!((g.norm() - 3.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn quartic_character_mod_5() {
        let chi = CharacterTable::cyclic(5, 1, 1);
        let g = gauss_sum(&chi).unwrap();
        assert!((g.norm() - 5.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn trivial_character_rejected() {
        let chi = CharacterTable::cyclic(5, 1, 0);
        assert!(matches!(gauss_sum(&chi), Err(NonArchError::NotPrimitive)));
    }

    #[test]
    fn imprimitive_character_rejected() {
        // index-0 character mod 9 is trivial, index multiples of 3 lift from
        // mod 3: phi(9) = 6, characters with k = 2 or 4 have order 3 and are
        // primitive; k = 3 has order 2 and factors through mod 3
        let chi = CharacterTable::cyclic(3, 2, 3);
        assert!(!chi.is_primitive());
        let chi = CharacterTable::cyclic(3, 2, 2);
        assert!(chi.is_primitive());
    }

    #[test]
    fn magnitude_exact_over_small_moduli() {
        for &p in &[2u64, 3, 5, 7, 11, 13] {
            for r in 1..=2u32 {
                if p == 2 && r == 1 {
                    continue; // unit group trivial mod 2
                }
                let modulus = p.pow(r);
                let phi = modulus - modulus / p;
                for k in 1..phi {
                    let chi = CharacterTable::cyclic(p, r, k);
                    if !chi.is_primitive() {
                        continue;
                    }
                    let g = gauss_sum(&chi).unwrap();
                    let want = (modulus as f64).sqrt();
                    assert!(
                        (g.norm() - want).abs() < 1e-9,
                        "p = {p}, r' = {r}, k = {k}: |G| = {} vs {}",
                        g.norm(),
                        want
                    );
                }
            }
        }
    }
}
