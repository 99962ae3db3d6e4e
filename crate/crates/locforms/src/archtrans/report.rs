//! The record produced by one identity check.

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

/// Result of comparing two evaluation routes for one identity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub lhs: (f64, f64),
    pub rhs: (f64, f64),
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// free-form quadrature / truncation metadata
    pub detail: String,
    pub millis: u128,
}

impl IdentityReport {
    /// Build a report from two complex values; when `|rhs|` is tiny the
    /// absolute error is compared against the tolerance instead.
    pub fn compare(id: &str, lhs: Complex64, rhs: Complex64, tol: f64, detail: String) -> Self {
        let abs_err = (lhs - rhs).norm();
        let scale = rhs.norm();
        let rel_err = if scale > 1e-14 { abs_err / scale } else { abs_err };
        IdentityReport {
            id: id.to_string(),
            lhs: (lhs.re, lhs.im),
            rhs: (rhs.re, rhs.im),
            abs_err,
            rel_err,
            tolerance: tol,
            pass: rel_err <= tol,
            detail,
            millis: 0,
        }
    }

    pub fn failed(id: &str, tol: f64, detail: String) -> Self {
        IdentityReport {
            id: id.to_string(),
            lhs: (f64::NAN, f64::NAN),
            rhs: (f64::NAN, f64::NAN),
            abs_err: f64::INFINITY,
            rel_err: f64::INFINITY,
            tolerance: tol,
            pass: false,
            detail,
            millis: 0,
        }
    }
}
