use num::complex::Complex64;
use serde::{Deserialize, Serialize};

/// Complex values of the spectral parameters at which identities are
/// evaluated numerically.  For principal-series data the `nu` entries must
/// sum to zero.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SpectralPoint {
    #[serde(with = "cplx")]
    pub s1: Complex64,
    #[serde(with = "cplx")]
    pub s2: Complex64,
    #[serde(with = "cplx")]
    pub nu1: Complex64,
    #[serde(with = "cplx")]
    pub nu2: Complex64,
    #[serde(with = "cplx")]
    pub nu3: Complex64,
    #[serde(default, with = "cplx_opt")]
    pub lam: Option<Complex64>,
    #[serde(default, with = "cplx_opt")]
    pub lam1: Option<Complex64>,
    #[serde(default, with = "cplx_opt")]
    pub lam2: Option<Complex64>,
    #[serde(default, with = "cplx_opt")]
    pub t: Option<Complex64>,
}

impl SpectralPoint {
    pub fn new(s1: Complex64, s2: Complex64, nu1: Complex64, nu2: Complex64, nu3: Complex64) -> Self {
        SpectralPoint {
            s1,
            s2,
            nu1,
            nu2,
            nu3,
            lam: None,
            lam1: None,
            lam2: None,
            t: None,
        }
    }

    pub fn real(s1: f64, s2: f64, nu1: f64, nu2: f64, nu3: f64) -> Self {
        Self::new(
            Complex64::new(s1, 0.0),
            Complex64::new(s2, 0.0),
            Complex64::new(nu1, 0.0),
            Complex64::new(nu2, 0.0),
            Complex64::new(nu3, 0.0),
        )
    }

    /// Zero point: all spectral parameters vanish.
    pub fn origin() -> Self {
        Self::real(0.0, 0.0, 0.0, 0.0, 0.0)
    }

    pub fn nus(&self) -> [Complex64; 3] {
        [self.nu1, self.nu2, self.nu3]
    }

    /// `nu1 + nu2 + nu3` must vanish for trivial-central-character data.
    pub fn nu_sum_abs(&self) -> f64 {
        (self.nu1 + self.nu2 + self.nu3).norm()
    }

    /// The dual point `s -> ((s2 - s1)/2, (3 s1 + s2)/2)`, nus unchanged.
    pub fn dual(&self) -> Self {
        let mut p = self.clone();
        p.s1 = (self.s2 - self.s1) / 2.0;
        p.s2 = (self.s1 * 3.0 + self.s2) / 2.0;
        p
    }

    pub fn with_lam(mut self, lam: Complex64) -> Self {
        self.lam = Some(lam);
        self
    }
}

mod cplx {
    use num::complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

mod cplx_opt {
    use num::complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        z.map(|z| [z.re, z.im]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
        Ok(Option::<[f64; 2]>::deserialize(d)?.map(|[re, im]| Complex64::new(re, im)))
    }
}
