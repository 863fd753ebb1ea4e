//! Closed-form Fourier coefficients of piecewise polynomials on [0,1] —
//! the exact path for all C2 (quintic-edge) building blocks.

use num_complex::Complex64;

use crate::coeffs::CoeffSeq;
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct Piece {
    pub a: f64,
    pub b: f64,
    /// coefficients c_d of sum_d c_d (x - a)^d
    pub coeffs: Vec<f64>,
}

#[derive(Debug, Clone, Default)]
pub struct PiecewisePoly {
    pub pieces: Vec<Piece>,
}

/// I_d(w, theta) = integral_0^w t^d e^{-i theta t} dt for d = 0..=dmax.
fn oscillatory_moments(w: f64, theta: f64, dmax: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dmax + 1];
    if w == 0.0 {
        return out;
    }
    if (theta * w).abs() < 1.0 {
        // Taylor: I_d = sum_m (-i theta)^m w^(d+m+1) / (m! (d+m+1))
        for d in 0..=dmax {
            let mut term = Complex64::new(w.powi(d as i32 + 1), 0.0);
            let it = Complex64::new(0.0, -theta);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut mfact = 1.0f64;
            let mut pw = term.re; // w^(d+m+1)
            for m in 0..40 {
                let coeff = pw / (mfact * (d as f64 + m as f64 + 1.0));
                term = it.powu(m as u32) * coeff;
                acc += term;
                if term.norm() < 1e-18 * acc.norm().max(1e-300) {
                    break;
                }
                mfact *= (m + 1) as f64;
                pw *= w;
            }
            out[d] = acc;
        }
        return out;
    }
    // upward recurrence: I_0 = (1 - e^{-i theta w}) / (i theta);
    // I_d = (d I_{d-1} - w^d e^{-i theta w}) / (i theta)
    let it = Complex64::new(0.0, theta);
    let e = Complex64::from_polar(1.0, -theta * w);
    out[0] = (Complex64::new(1.0, 0.0) - e) / it;
    let mut wd = 1.0;
    for d in 1..=dmax {
        wd *= w;
        out[d] = (out[d - 1] * d as f64 - e * wd) / it;
    }
    out
}

impl PiecewisePoly {
    pub fn value(&self, x: f64) -> f64 {
        for p in &self.pieces {
            if x >= p.a && x <= p.b {
                let t = x - p.a;
                return p.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c);
            }
        }
        0.0
    }

    /// Fourier coefficient hat{f}(l) = integral f(x) e(-l x) dx, closed form.
    pub fn fourier_coeff(&self, l: i64) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI * l as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for p in &self.pieces {
            let w = p.b - p.a;
            if w <= 0.0 {
                continue;
            }
            let moments = oscillatory_moments(w, theta, p.coeffs.len().saturating_sub(1));
            let mut s = Complex64::new(0.0, 0.0);
            for (d, &c) in p.coeffs.iter().enumerate() {
                s += moments[d] * c;
            }
            acc += s * Complex64::from_polar(1.0, -theta * p.a);
        }
        acc
    }

    /// All coefficients |l| <= degree as a CoeffSeq.
    pub fn fourier_coeffs(&self, degree: usize) -> Result<CoeffSeq> {
        let n = degree as i64;
        let mut entries = Vec::with_capacity(2 * degree + 1);
        for l in -n..=n {
            entries.push(self.fourier_coeff(l));
        }
        CoeffSeq::from_entries(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_coefficients() {
        // indicator of [0, 1/2]: hat(0) = 1/2, hat(l) = (1 - (-1)^l)/(2 pi i l)
        let f = PiecewisePoly {
            pieces: vec![Piece {
                a: 0.0,
                b: 0.5,
                coeffs: vec![1.0],
            }],
        };
        assert!((f.fourier_coeff(0).re - 0.5).abs() < 1e-15);
        let c1 = f.fourier_coeff(1);
        // integral_0^{1/2} e^{-2 pi i x} dx = (1 - e^{-pi i})/(2 pi i) = 2/(2 pi i) = -i/pi
        assert!((c1 - Complex64::new(0.0, -1.0 / std::f64::consts::PI)).norm() < 1e-14);
        let c2 = f.fourier_coeff(2);
        assert!(c2.norm() < 1e-15);
    }

    #[test]
    fn linear_ramp_against_quadrature() {
        // f(x) = x on [0,1]: hat(l) = -1/(2 pi i l)... check via direct Riemann sum
        let f = PiecewisePoly {
            pieces: vec![Piece {
                a: 0.0,
                b: 1.0,
                coeffs: vec![0.0, 1.0],
            }],
        };
        for l in [1i64, 3, 17] {
            let want = Complex64::new(0.0, 1.0 / (2.0 * std::f64::consts::PI * l as f64));
            assert!((f.fourier_coeff(l) - want).norm() < 1e-12, "l={l}");
        }
    }

    #[test]
    fn small_theta_branch_matches_recurrence() {
        // pick w, theta near the branch switch and compare both paths via a
        // Riemann-sum oracle
        let w = 0.3;
        for &theta in &[0.5 / w * 0.99, 1.01 / w] {
            let m = oscillatory_moments(w, theta, 5);
            for d in 0..=5usize {
                let n = 200000;
                let mut s = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    let t = (j as f64 + 0.5) * w / n as f64;
                    s += Complex64::from_polar(t.powi(d as i32), -theta * t);
                }
                s *= w / n as f64;
                assert!((m[d] - s).norm() < 1e-9, "d={d} theta={theta}");
            }
        }
    }

    #[test]
    fn quintic_plateau_tail_decay() {
        // plateau with quintic edges of width 1/8: coefficients ~ k^-4
        use crate::profile::QUINTIC_COEFFS;
        let w: f64 = 0.125;
        // rising edge: s(x/w) on [0, w]; shift to local powers of x
        let rise: Vec<f64> = (0..6).map(|d| QUINTIC_COEFFS[d] / w.powi(d as i32)).collect();
        // falling edge on [1-w, 1]: s((1-x)/w) with local t = x-(1-w):
        // s((w-t)/w) — expand via binomial
        let mut fall = vec![0.0f64; 6];
        for d in 0..6 {
            // ((w-t)/w)^d = sum_j C(d,j) (-t/w)^j
            let mut bin = 1.0;
            for j in 0..=d {
                fall[j] += QUINTIC_COEFFS[d] * bin * (-1.0f64 / w).powi(j as i32) * 1.0;
                bin = bin * (d - j) as f64 / (j + 1) as f64;
            }
        }
        let f = PiecewisePoly {
            pieces: vec![
                Piece { a: 0.0, b: w, coeffs: rise },
                Piece { a: w, b: 1.0 - w, coeffs: vec![1.0] },
                Piece { a: 1.0 - w, b: 1.0, coeffs: fall },
            ],
        };
        // continuity at junctions
        assert!((f.value(w) - 1.0).abs() < 1e-12);
        assert!((f.value(1.0 - w) - 1.0).abs() < 1e-12);
        assert!(f.value(0.0).abs() < 1e-12);
        // decay: |hat(k)| at k=400 well below k=50 by ~ (8)^4
        let a = f.fourier_coeff(50).norm();
        let b = f.fourier_coeff(400).norm();
        assert!(b < a / 1000.0, "a={a} b={b}");
    }
}
