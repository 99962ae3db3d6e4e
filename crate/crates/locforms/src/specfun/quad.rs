//! Quadrature primitives: Gauss-Legendre panels and truncated vertical-line
//! integrals with explicit cutoff parameters.

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

/// Contour and line-integral parameters: cutoff `t_max`, node budget, target
/// relative tolerance, and the real part used for vertical contours.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub t_max: f64,
    pub nodes: usize,
    pub tol: f64,
    pub shift: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            t_max: 12.0,
            nodes: 480,
            tol: 1e-8,
            shift: 0.4,
        }
    }
}

impl QuadratureSpec {
    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.nodes = nodes;
        self
    }

    pub fn with_t_max(mut self, t_max: f64) -> Self {
        self.t_max = t_max;
        self
    }

    pub fn with_shift(mut self, shift: f64) -> Self {
        self.shift = shift;
        self
    }
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_p(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_p(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrate a complex-valued function over `[a, b]` with `panels` composite
/// Gauss-Legendre panels of `order` nodes each.
pub fn integrate<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
) -> Complex64 {
    let (xs, ws) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        for (x, w) in xs.iter().zip(&ws) {
            total += f(mid + half * x) * *w * half;
        }
    }
    total
}

/// Truncated integral over the real line `t in [-t_max, t_max]` of an
/// integrand given on the line; panel count derives from the node budget.
pub fn line_integral<F: FnMut(f64) -> Complex64>(f: F, quad: &QuadratureSpec) -> Complex64 {
    let order = 16;
    let panels = (quad.nodes / order).max(4);
    integrate(f, -quad.t_max, quad.t_max, panels, order)
}

/// Truncated vertical contour integral `(1/2 pi i) \int_{(c)} f(c + i tau) d lambda`
/// over `tau in [-t_max, t_max]`.
pub fn contour_integral<F: FnMut(Complex64) -> Complex64>(
    mut f: F,
    c: f64,
    quad: &QuadratureSpec,
) -> Complex64 {
    let order = 16;
    let panels = (quad.nodes / order).max(4);
    // d lambda = i d tau, and the 1/(2 pi i) prefactor leaves 1/(2 pi).
    integrate(
        |tau| f(Complex64::new(c, tau)),
        -quad.t_max,
        quad.t_max,
        panels,
        order,
    ) / (2.0 * std::f64::consts::PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_exactness() {
        // 16-point rule integrates x^20 poorly but x^28 exactly up to degree 31
        let (xs, ws) = gauss_legendre(16);
        let int_x2: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x * x).sum();
        assert!((int_x2 - 2.0 / 3.0).abs() < 1e-14);
        let int_x30: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x.powi(30)).sum();
        assert!((int_x30 - 2.0 / 31.0).abs() < 1e-13);
    }

    #[test]
    fn gaussian_integral() {
        let v = integrate(
            |x| Complex64::new((-x * x).exp(), 0.0),
            -8.0,
            8.0,
            32,
            16,
        );
        assert!((v.re - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }
}
