//! The even, rapidly decaying test spectrum parameterizing every archimedean
//! weight: the function `beta(t)` standing for the spherical transform of the
//! (never constructed) bi-invariant test function.

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

/// `beta(t)` families.  The spectral-plane value is `at_s(s) = beta(-i s)`,
/// so `at_it(t) = at_s(i t)` on the unitary axis.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TestSpectrum {
    /// `beta(t) = exp(-(t/width)^2)`
    Gaussian { width: f64 },
    /// the zero spectrum
    Zero,
}

impl Default for TestSpectrum {
    fn default() -> Self {
        TestSpectrum::Gaussian { width: 1.0 }
    }
}

impl TestSpectrum {
    /// `beta(t)` for complex `t` (the argument of `S h(i t)`).
    pub fn at_it(&self, t: Complex64) -> Complex64 {
        match self {
            TestSpectrum::Gaussian { width } => (-(t * t) / (width * width)).exp(),
            TestSpectrum::Zero => Complex64::new(0.0, 0.0),
        }
    }

    /// The spectral-plane value `S h(s) = beta(-i s)`.
    pub fn at_s(&self, s: Complex64) -> Complex64 {
        match self {
            TestSpectrum::Gaussian { width } => (s * s / (width * width)).exp(),
            TestSpectrum::Zero => Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, TestSpectrum::Zero)
    }

    /// Decay cutoff: |beta(t)| < 1e-30 outside [-t_cut, t_cut].
    pub fn t_cut(&self) -> f64 {
        match self {
            TestSpectrum::Gaussian { width } => 8.4 * width,
            TestSpectrum::Zero => 1.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evenness_and_consistency() {
        let beta = TestSpectrum::default();
        for &t in &[0.3, 1.7, 4.0] {
            let plus = beta.at_it(Complex64::new(t, 0.0));
            let minus = beta.at_it(Complex64::new(-t, 0.0));
            assert_eq!(plus, minus);
            // at_s(i t) = at_it(t)
            let via_s = beta.at_s(Complex64::new(0.0, t));
            assert!((via_s - plus).norm() < 1e-15);
        }
        // the spectral value on the real axis grows (Gaussian in s)
        let v = beta.at_s(Complex64::new(0.5, 0.0));
        assert!((v.re - (0.25f64).exp()).abs() < 1e-15);
    }
}
