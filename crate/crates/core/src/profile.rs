//! Step profiles used for all smooth edges: a C2 polynomial quintic and a
//! Gevrey-2 step (normalized integral of exp(-1/t - 1/(1-t))), plus the
//! machinery to certify the Gevrey derivative bounds.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmoothnessClass {
    /// Piecewise-polynomial edges (quintic smoothstep), C2 across junctions.
    C2,
    /// exp(-1/t - 1/(1-t)) integral step; Fourier tails exp(-c sqrt(k)).
    Gevrey2,
}

/// Quintic smoothstep: 0 at 0, 1 at 1, first and second derivatives zero at
/// both ends, so the extension by constants is C2.
pub fn quintic_step(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        t * t * t * (10.0 + t * (-15.0 + 6.0 * t))
    }
}

/// Quintic step coefficients in powers of t: 10 t^3 - 15 t^4 + 6 t^5.
pub const QUINTIC_COEFFS: [f64; 6] = [0.0, 0.0, 0.0, 10.0, -15.0, 6.0];

fn bump_kernel(t: f64) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        0.0
    } else {
        (-1.0 / t - 1.0 / (1.0 - t)).exp()
    }
}

/// Gauss-Legendre nodes/weights on [-1,1], computed by Newton iteration on
/// the Legendre recurrence (deterministic, machine precision).
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre P_n(x) and derivative via recurrence
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0f64, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// The Gevrey-2 step: psi(t) = (1/Z) * integral_0^t exp(-1/s - 1/(1-s)) ds,
/// evaluated from a per-cell Gauss-Legendre cumulative table.
#[derive(Debug, Clone)]
pub struct GevreyStep {
    cells: usize,
    cum: Vec<f64>, // cum[k] = integral over [0, k/cells], unnormalized
    z: f64,
    gl_nodes: Vec<f64>,
    gl_weights: Vec<f64>,
}

impl GevreyStep {
    pub fn new() -> Self {
        let cells = 2048usize;
        let (gl_nodes, gl_weights) = gauss_legendre(16);
        let mut cum = Vec::with_capacity(cells + 1);
        cum.push(0.0);
        let h = 1.0 / cells as f64;
        let mut total = 0.0;
        for k in 0..cells {
            let a = k as f64 * h;
            let mut s = 0.0;
            for (x, w) in gl_nodes.iter().zip(&gl_weights) {
                let t = a + (x + 1.0) * 0.5 * h;
                s += w * bump_kernel(t);
            }
            total += s * 0.5 * h;
            cum.push(total);
        }
        GevreyStep {
            cells,
            cum,
            z: total,
            gl_nodes,
            gl_weights,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        if t >= 1.0 {
            return 1.0;
        }
        let h = 1.0 / self.cells as f64;
        let k = ((t / h) as usize).min(self.cells - 1);
        let a = k as f64 * h;
        let mut s = 0.0;
        let w2 = (t - a) * 0.5;
        for (x, w) in self.gl_nodes.iter().zip(&self.gl_weights) {
            let u = a + (x + 1.0) * w2;
            s += w * bump_kernel(u);
        }
        (self.cum[k] + s * w2) / self.z
    }

    pub fn normalizer(&self) -> f64 {
        self.z
    }

    /// Sup of |psi^(k)| for k = 1..=cap, computed from closed-form
    /// derivatives of the kernel (polynomials in 1/t and 1/(1-t)).
    pub fn derivative_sups(&self, cap: usize) -> Vec<f64> {
        // kernel g = exp(u), u = -1/t - 1/(1-t). Represent g^(j) = g * h_j
        // with h_j a polynomial in s = 1/t, v = 1/(1-t):
        //   s' = -s^2, v' = v^2, u' = s^2 - v^2.
        // psi^(k) = g^(k-1) / Z.
        type Poly = BTreeMap<(u32, u32), f64>;
        fn differentiate(p: &Poly) -> Poly {
            let mut out = Poly::new();
            for (&(a, b), &c) in p {
                if a > 0 {
                    *out.entry((a + 1, b)).or_insert(0.0) += -(a as f64) * c;
                }
                if b > 0 {
                    *out.entry((a, b + 1)).or_insert(0.0) += b as f64 * c;
                }
            }
            out
        }
        fn mul_uprime(p: &Poly) -> Poly {
            // multiply by u' = s^2 - v^2
            let mut out = Poly::new();
            for (&(a, b), &c) in p {
                *out.entry((a + 2, b)).or_insert(0.0) += c;
                *out.entry((a, b + 2)).or_insert(0.0) -= c;
            }
            out
        }
        fn eval(p: &Poly, s: f64, v: f64) -> f64 {
            p.iter()
                .map(|(&(a, b), &c)| c * s.powi(a as i32) * v.powi(b as i32))
                .sum()
        }

        let mut h: Poly = BTreeMap::new();
        h.insert((0, 0), 1.0);
        let mut sups = Vec::with_capacity(cap);
        let grid = 1 << 14;
        for k in 1..=cap {
            // h for g^(k-1): after (k-1) differentiations
            let mut worst = 0.0f64;
            for j in 1..grid {
                let t = j as f64 / grid as f64;
                let s = 1.0 / t;
                let v = 1.0 / (1.0 - t);
                let val = bump_kernel(t) * eval(&h, s, v) / self.z;
                if val.abs() > worst {
                    worst = val.abs();
                }
            }
            sups.push(worst);
            let mut next = differentiate(&h);
            for (kk, vv) in mul_uprime(&h) {
                *next.entry(kk).or_insert(0.0) += vv;
            }
            h = next;
            let _ = k;
        }
        sups
    }

    /// Smallest C with sup|psi^(k)| <= C * (k!)^2 for k = 1..=cap.
    pub fn gevrey_constant(&self, cap: usize) -> f64 {
        let sups = self.derivative_sups(cap);
        let mut c = 0.0f64;
        let mut fact = 1.0f64;
        for (i, s) in sups.iter().enumerate() {
            let k = i + 1;
            fact *= k as f64;
            let ratio = s / (fact * fact);
            if ratio > c {
                c = ratio;
            }
        }
        c
    }
}

impl Default for GevreyStep {
    fn default() -> Self {
        Self::new()
    }
}

/// Evaluate the selected step profile at t (0 before 0, 1 after 1).
pub fn step_value(class: SmoothnessClass, psi: &GevreyStep, t: f64) -> f64 {
    match class {
        SmoothnessClass::C2 => quintic_step(t),
        SmoothnessClass::Gevrey2 => psi.value(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quintic_endpoints_and_symmetry() {
        assert_eq!(quintic_step(0.0), 0.0);
        assert_eq!(quintic_step(1.0), 1.0);
        assert!((quintic_step(0.5) - 0.5).abs() < 1e-15);
        for &t in &[0.1, 0.3, 0.45] {
            assert!((quintic_step(t) + quintic_step(1.0 - t) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn gevrey_step_boundary_and_monotone() {
        let psi = GevreyStep::new();
        assert_eq!(psi.value(0.0), 0.0);
        assert_eq!(psi.value(1.0), 1.0);
        let n = 1 << 12;
        let mut prev = -1.0;
        for j in 0..=n {
            let v = psi.value(j as f64 / n as f64);
            assert!(v >= prev - 1e-15, "not monotone at {j}");
            assert!((0.0..=1.0).contains(&v));
            prev = v;
        }
        // symmetric kernel => psi(1/2) = 1/2
        assert!((psi.value(0.5) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn gevrey_derivative_bounds() {
        let psi = GevreyStep::new();
        let sups = psi.derivative_sups(8);
        let c = psi.gevrey_constant(8);
        assert!(c > 0.0);
        // spot check: ||psi''|| <= C * (2!)^2
        assert!(sups[1] <= c * 4.0 + 1e-9);
        // first derivative sup = max kernel / Z
        let g_max = (-4.0f64).exp(); // kernel max at t=1/2
        assert!((sups[0] - g_max / psi.normalizer()).abs() < 1e-9);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(16);
        // integral of t^10 over [-1,1] = 2/11
        let s: f64 = x.iter().zip(&w).map(|(t, w)| w * t.powi(10)).sum();
        assert!((s - 2.0 / 11.0).abs() < 1e-14);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-13);
    }
}
