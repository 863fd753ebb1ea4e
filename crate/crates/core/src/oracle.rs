//! Independent recomputation paths used by `verify` and by oracle tests.
//! Nothing here touches the FFT: partial sums are direct summations with a
//! periodically resynchronized phasor recurrence.

use num_complex::Complex64;

use crate::coeffs::CoeffSeq;

/// S_n(c; x) by direct summation over l = -band..band (ascending).
///
/// The phasor e(l x) advances by multiplication and is recomputed from
/// sin/cos every 1024 steps, keeping the drift ~1e-13 even at degree 1e7.
pub fn direct_partial_sum(c: &CoeffSeq, n: usize, x: f64) -> Complex64 {
    let band = n.min(c.degree()) as i64;
    let tau = 2.0 * std::f64::consts::PI;
    let step = Complex64::from_polar(1.0, tau * x);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut l = -band;
    while l <= band {
        let chunk_end = (l + 1024).min(band + 1);
        let mut ph = Complex64::from_polar(1.0, tau * (l as f64) * x);
        for ll in l..chunk_end {
            acc += c.get(ll) * ph;
            ph *= step;
        }
        l = chunk_end;
    }
    acc
}

/// Direct sum of squared moduli (independent of CoeffSeq::l2_norm's
/// iterator pipeline; kept deliberately plain).
pub fn direct_l2_sq(c: &CoeffSeq) -> f64 {
    let mut s = 0.0;
    for v in c.entries() {
        s += v.re * v.re + v.im * v.im;
    }
    s
}

/// (1/M) sum over sample points of |S_n|^2 with direct summation per point.
/// O(M * degree) — only for modest sizes.
pub fn direct_quadrature_l2_sq(c: &CoeffSeq, n: usize, m: usize) -> f64 {
    let mut s = 0.0;
    for j in 0..m {
        let x = j as f64 / m as f64;
        s += direct_partial_sum(c, n, x).norm_sqr();
    }
    s / m as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_sum_matches_closed_form() {
        // Dirichlet kernel D_2 at x: sin(5 pi x)/sin(pi x).
        let d2 = CoeffSeq::from_entries(vec![Complex64::new(1.0, 0.0); 5]).unwrap();
        for &x in &[0.1, 0.37, 0.5, 0.93] {
            let got = direct_partial_sum(&d2, 2, x);
            let want = (5.0 * std::f64::consts::PI * x).sin() / (std::f64::consts::PI * x).sin();
            assert!((got.re - want).abs() < 1e-12, "x={x}");
            assert!(got.im.abs() < 1e-12);
        }
    }

    #[test]
    fn phasor_resync_long_band() {
        // degree 30000 single far mode: value must equal e(l x) exactly-ish
        let deg = 30000usize;
        let mut e = vec![Complex64::new(0.0, 0.0); 2 * deg + 1];
        e[2 * deg] = Complex64::new(1.0, 0.0); // index +deg
        let c = CoeffSeq::from_entries(e).unwrap();
        let x = 0.123456789;
        let got = direct_partial_sum(&c, deg, x);
        let ang = 2.0 * std::f64::consts::PI * (deg as f64) * x;
        let want = Complex64::from_polar(1.0, ang);
        assert!((got - want).norm() < 1e-9);
    }
}
