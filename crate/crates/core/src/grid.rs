//! Uniform-grid evaluation of partial sums via FFT.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::coeffs::CoeffSeq;
use crate::error::{Error, Result};

/// Values of a partial sum on the grid x_j = j/M, M a power of two, together
/// with the recorded evaluation error bound.
#[derive(Debug, Clone)]
pub struct GridSamples {
    m: usize,
    values: Vec<Complex64>,
    error_bound: f64,
}

impl GridSamples {
    pub fn grid_size(&self) -> usize {
        self.m
    }
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
    /// Pointwise product, used by product-duality checks.
    pub fn pointwise_mul(&self, other: &GridSamples) -> Result<GridSamples> {
        if self.m != other.m {
            return Err(Error::invalid("grid sizes differ"));
        }
        Ok(GridSamples {
            m: self.m,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
            error_bound: f64::NAN, // composite; callers recompute if needed
        })
    }
}

/// Smallest power of two >= 4*(2N+1): the default oversampling for sup-norm
/// work on a degree-N polynomial.
pub fn grid_size_for(degree: usize) -> usize {
    let need = 4 * (2 * degree + 1);
    need.next_power_of_two()
}

/// Evaluate S_n(c) at x_j = j/M for all j by zero-padded inverse FFT.
///
/// Requires M a power of two with M >= 2*min(n, N)+1 so the truncated band
/// embeds without aliasing.
pub fn partial_sum_eval(c: &CoeffSeq, n: usize, m: usize) -> Result<GridSamples> {
    if !m.is_power_of_two() {
        return Err(Error::invalid(format!("grid size {m} is not a power of two")));
    }
    let band = n.min(c.degree());
    if m < 2 * band + 1 {
        return Err(Error::invalid(format!(
            "grid size {m} too small for partial-sum band {band} (needs >= {})",
            2 * band + 1
        )));
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    let bi = band as i64;
    for l in -bi..=bi {
        let idx = l.rem_euclid(m as i64) as usize;
        buf[idx] += c.get(l);
    }
    let fft = FftPlanner::new().plan_fft_inverse(m);
    fft.process(&mut buf);
    // a-posteriori error model: each sample is a length-(2n+1) accumulation.
    let u = (2.0f64).powi(-53);
    let error_bound = (2 * band + 1) as f64 * c.sup_coeff_norm() * u * (m as f64).log2().max(1.0);
    Ok(GridSamples {
        m,
        values: buf,
        error_bound,
    })
}

/// (1/M) * sum_j |v_j|^2 — the grid L2 quadrature.
pub fn quadrature_l2_sq(g: &GridSamples) -> f64 {
    g.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / g.m as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_function_everywhere_one() {
        let g = partial_sum_eval(&CoeffSeq::delta(), 5, 8).unwrap();
        assert_eq!(g.values().len(), 8);
        for v in g.values() {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn dirichlet_kernel_at_zero() {
        let d1 = CoeffSeq::from_entries(vec![Complex64::new(1.0, 0.0); 3]).unwrap();
        let g = partial_sum_eval(&d1, 1, 8).unwrap();
        assert!((g.values()[0].re - 3.0).abs() < 1e-13);
        assert!(g.values()[0].im.abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_grid() {
        let d1 = CoeffSeq::from_entries(vec![Complex64::new(1.0, 0.0); 3]).unwrap();
        assert!(partial_sum_eval(&d1, 1, 12).is_err()); // not a power of two
        assert!(partial_sum_eval(&d1, 1, 2).is_err()); // aliasing
    }

    #[test]
    fn grid_size_rule() {
        assert_eq!(grid_size_for(0), 4);
        assert_eq!(grid_size_for(200), 2048); // 4*401 = 1604 -> 2048
    }
}
