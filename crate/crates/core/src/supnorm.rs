//! Certified suprema of trigonometric partial sums.
//!
//! A grid maximum alone is not a bound; every certificate here adds the
//! derivative correction |S_n'| <= 2*pi*n*sum|c_l| times half the cell width,
//! taken over every grid cell that meets the target set, so the result is a
//! true supremum bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::coeffs::CoeffSeq;
use crate::error::{Error, Result};
use crate::grid::{partial_sum_eval, GridSamples};
use crate::interval::IntervalUnion;

#[derive(Debug, Clone, PartialEq)]
pub struct SupBound {
    /// Maximum of |S_n| over the sampled grid points.
    pub grid_max: f64,
    /// Certified bound on |S_n'| used for the correction.
    pub deriv_bound: f64,
    /// deriv_bound * (cell width)/2.
    pub correction: f64,
    /// grid_max + correction: a rigorous supremum bound.
    pub bound: f64,
    pub grid: usize,
    /// Number of grid points that entered the maximum.
    pub points: usize,
}

/// 2*pi*n*sum_{|l|<=n}|c_l| bounds |S_n'| uniformly.
pub fn bernstein_derivative_bound(c: &CoeffSeq, n: usize) -> f64 {
    let band = n.min(c.degree());
    let l1 = c.truncate(band).l1_coeff_norm();
    2.0 * std::f64::consts::PI * band as f64 * l1
}

/// Certified sup of |S_n(c)| over the whole circle.
pub fn certified_sup(c: &CoeffSeq, n: usize, m: usize) -> Result<SupBound> {
    let g = partial_sum_eval(c, n, m)?;
    let deriv = bernstein_derivative_bound(c, n);
    let grid_max = g.max_abs();
    let correction = deriv / (2.0 * m as f64) + g.error_bound();
    Ok(SupBound {
        grid_max,
        deriv_bound: deriv,
        correction,
        bound: grid_max + correction,
        grid: m,
        points: m,
    })
}

/// Grid indices j such that the cell [j/M, (j+1)/M] meets the set, with both
/// cell endpoints included (indices mod M). Sorted, deduplicated.
fn covering_indices(set: &IntervalUnion, m: usize) -> Vec<usize> {
    let mm = BigInt::from(m);
    let mut idx: Vec<usize> = Vec::new();
    for (a, b) in set.parts() {
        let lo = (a * BigRational::from(mm.clone())).floor().to_integer();
        let hi = (b * BigRational::from(mm.clone())).ceil().to_integer();
        let lo = lo.to_i64().unwrap_or(0).max(0) as usize;
        let hi = hi.to_i64().unwrap_or(m as i64).min(m as i64) as usize;
        for j in lo..=hi {
            idx.push(j % m);
        }
    }
    idx.sort_unstable();
    idx.dedup();
    idx
}

/// Grid indices j with j/M inside the set exactly.
pub fn member_indices(set: &IntervalUnion, m: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = Vec::new();
    let mm = BigInt::from(m);
    for (a, b) in set.parts() {
        let lo = (a * BigRational::from(mm.clone())).ceil().to_integer();
        let hi = (b * BigRational::from(mm.clone())).floor().to_integer();
        let lo = lo.to_i64().unwrap_or(0).max(0);
        let hi = hi.to_i64().unwrap_or(-1).min(m as i64);
        let mut j = lo;
        while j <= hi {
            idx.push((j as usize) % m);
            j += 1;
        }
    }
    idx.sort_unstable();
    idx.dedup();
    idx
}

/// Certified sup of |S_n(c)| over an interval union.
pub fn certified_sup_on(
    c: &CoeffSeq,
    n: usize,
    m: usize,
    set: &IntervalUnion,
) -> Result<SupBound> {
    if set.is_empty() {
        return Ok(SupBound {
            grid_max: 0.0,
            deriv_bound: 0.0,
            correction: 0.0,
            bound: 0.0,
            grid: m,
            points: 0,
        });
    }
    let g = partial_sum_eval(c, n, m)?;
    let idx = covering_indices(set, m);
    let deriv = bernstein_derivative_bound(c, n);
    let mut grid_max = 0.0f64;
    for &j in &idx {
        let v = g.values()[j].norm();
        if v > grid_max {
            grid_max = v;
        }
    }
    let correction = deriv / (2.0 * m as f64) + g.error_bound();
    Ok(SupBound {
        grid_max,
        deriv_bound: deriv,
        correction,
        bound: grid_max + correction,
        grid: m,
        points: idx.len(),
    })
}

/// Plain measured max over grid points lying inside the set (no correction);
/// the reporting quantity "max over grid intersected with support".
pub fn measured_max_on(g: &GridSamples, set: &IntervalUnion) -> Result<(f64, usize)> {
    let m = g.grid_size();
    let idx = member_indices(set, m);
    if idx.is_empty() {
        return Err(Error::invalid("set contains no grid point"));
    }
    let mut mx = 0.0f64;
    for &j in &idx {
        let v = g.values()[j].norm();
        if v > mx {
            mx = v;
        }
    }
    Ok((mx, idx.len()))
}
