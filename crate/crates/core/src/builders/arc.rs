//! Minimax polynomials on the arc [0, 1/2].
//!
//! Two related problems, both solved by Lawson's iteratively-reweighted
//! least squares on a Chebyshev-spaced discretization and certified by a
//! fine direct-evaluation grid plus the Bernstein derivative correction:
//!
//! * the constrained problem — minimize sup |P| over real trigonometric
//!   polynomials of degree n with hat{P}(0) = 1 (the node-interpolation
//!   target used by the staged construction); its minimum decays roughly
//!   like 0.2^n, much faster than any capacity power; and
//! * the monic-modulus probe — minimize sup_{x in [0,1/2]} |Q(e(x))| over
//!   monic algebraic polynomials Q of degree n. Its n-th root converges to
//!   the logarithmic capacity of the half circle, 2^{-1/2} ~ 0.707, which is
//!   what the capacity probe measures.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::cert::Certificate;
use crate::coeffs::{coeff_convolve, CoeffSeq};
use crate::error::{Error, Result};

/// A degree-n real trig polynomial with hat{P}(0) = 1 and a certified sup
/// bound on the arc [0, 1/2].
#[derive(Debug, Clone)]
pub struct ArcPoly {
    pub coeffs: CoeffSeq,
    pub degree: usize,
    /// Certified sup_{[0,1/2]} |P|.
    pub arc_sup: f64,
    pub certificate: Certificate,
    /// Empirical constant in degree = C * log(1/eps), when eps-driven.
    pub fitted_log_constant: Option<f64>,
}

/// Direct evaluation of P (real part; P is Hermitian) at x: one sin/cos per
/// point, successive powers for the modes.
fn eval_real(c: &CoeffSeq, x: f64) -> f64 {
    let n = c.degree() as i64;
    let tau = 2.0 * std::f64::consts::PI;
    let z = Complex64::from_polar(1.0, tau * x);
    let mut zp = Complex64::new(1.0, 0.0);
    let mut acc = c.get(0).re;
    for l in 1..=n {
        zp *= z;
        acc += 2.0 * (c.get(l) * zp).re;
    }
    acc
}

/// Certified sup of |P| over [0, 1/2] by uniform sampling + Bernstein.
/// `target_correction` controls the grid density.
pub fn arc_sup_certificate(c: &CoeffSeq, target_correction: f64) -> Certificate {
    let n = c.degree();
    let l1 = c.l1_coeff_norm();
    let deriv = 2.0 * std::f64::consts::PI * n as f64 * l1;
    // spacing h with deriv*h/2 <= target_correction
    let points = if n == 0 {
        64
    } else {
        let h = (2.0 * target_correction / deriv).max(1e-9);
        ((0.5 / h).ceil() as usize).clamp(1024, 1 << 26)
    };
    let mut grid_max = 0.0f64;
    let h = 0.5 / points as f64;
    for j in 0..=points {
        let v = eval_real(c, j as f64 * h).abs();
        if v > grid_max {
            grid_max = v;
        }
    }
    let correction = deriv * h / 2.0;
    Certificate::new(
        "arc_sup",
        grid_max + correction,
        grid_max,
        correction,
        points as u64,
        "direct-grid+bernstein",
    )
}

/// Lawson IRLS for the fixed-degree problem. Returns the coefficient
/// sequence (hat{P}(0) = 1 exactly) without certification.
fn lawson_fixed_degree(n: usize, iters: usize) -> CoeffSeq {
    if n == 0 {
        return CoeffSeq::delta();
    }
    let pts = (16 * n + 64).max(160);
    let xs: Vec<f64> = (0..pts)
        .map(|i| 0.25 * (1.0 - (std::f64::consts::PI * i as f64 / (pts - 1) as f64).cos()))
        .collect();
    let tau = 2.0 * std::f64::consts::PI;
    // design matrix: P(x) = 1 + sum_l ( a_l * 2cos(tau l x) - b_l * 2sin(tau l x) )
    let mut a = DMatrix::<f64>::zeros(pts, 2 * n);
    for (i, &x) in xs.iter().enumerate() {
        for l in 1..=n {
            a[(i, 2 * (l - 1))] = 2.0 * (tau * l as f64 * x).cos();
            a[(i, 2 * l - 1)] = -2.0 * (tau * l as f64 * x).sin();
        }
    }
    let ones = DVector::<f64>::from_element(pts, 1.0);
    let mut w = DVector::<f64>::from_element(pts, 1.0 / pts as f64);
    let mut best: Option<(f64, DVector<f64>)> = None;
    for _ in 0..iters {
        let sw = w.map(|v: f64| v.sqrt());
        let mut aw = a.clone();
        for i in 0..pts {
            for j in 0..2 * n {
                aw[(i, j)] *= sw[i];
            }
        }
        let bw = -ones.component_mul(&sw);
        let svd = aw.svd(true, true);
        let theta = match svd.solve(&bw, 1e-13) {
            Ok(t) => t,
            Err(_) => break,
        };
        let resid = &a * &theta + &ones;
        let e = resid.amax();
        if best.as_ref().map_or(true, |(be, _)| e < *be) {
            best = Some((e, theta));
        }
        // Lawson update, normalized
        let mut total = 0.0;
        for i in 0..pts {
            w[i] *= resid[i].abs().max(1e-300);
            total += w[i];
        }
        if !(total > 0.0) {
            break;
        }
        w /= total;
    }
    let (_, theta) = best.expect("at least one Lawson iterate");
    let mut entries = vec![Complex64::new(0.0, 0.0); 2 * n + 1];
    entries[n] = Complex64::new(1.0, 0.0);
    for l in 1..=n {
        let p = Complex64::new(theta[2 * (l - 1)], theta[2 * l - 1]);
        entries[n + l] = p;
        entries[n - l] = p.conj();
    }
    CoeffSeq::from_entries(entries).expect("odd length")
}

/// Best-effort minimax solution at exactly degree n with a certified arc sup.
pub fn arc_poly_fixed_degree(n: usize) -> ArcPoly {
    let coeffs = lawson_fixed_degree(n, 600);
    // aim for a correction well below the achieved level, which decays like
    // ~0.2 per degree for the constrained problem (grid size is clamped, so
    // deep degrees certify with a correction at the clamp resolution)
    let scale = (0.2f64).powi(n as i32 - 1).max(1e-12);
    let certificate = arc_sup_certificate(&coeffs, 0.05 * scale);
    ArcPoly {
        arc_sup: certificate.bound,
        degree: n,
        coeffs,
        certificate,
        fitted_log_constant: None,
    }
}

/// Square a solution: P^2 renormalized to hat = 1 at 0. Doubles the degree,
/// squares the sup (up to the renormalization factor sum |p_l|^2 >= 1).
fn squared(p: &CoeffSeq) -> Result<CoeffSeq> {
    let sq = coeff_convolve(p, p)?;
    let z = sq.get(0);
    if z.norm() == 0.0 {
        return Err(Error::numeric("squared polynomial lost its mean"));
    }
    Ok(sq.scale(Complex64::new(1.0, 0.0) / z))
}

/// Find P with certified sup_{[0,1/2]}|P| <= eps and hat{P}(0) = 1.
///
/// Primary path: Lawson at increasing degree. Fallback when the iteration
/// stalls: square an easier solution (always available, with provably
/// squared sup), so the builder cannot fail for small eps short of the
/// degree cap.
pub fn build_arc_poly(eps: f64) -> Result<ArcPoly> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::invalid("arc polynomial target must be positive"));
    }
    let log_inv = (1.0 / eps).ln();
    if eps >= 1.0 {
        let coeffs = CoeffSeq::delta();
        let certificate = Certificate::new("arc_sup", eps, 1.0, 0.0, 0, "exact");
        return Ok(ArcPoly {
            coeffs,
            degree: 0,
            arc_sup: 1.0,
            certificate,
            fitted_log_constant: Some(0.0),
        });
    }
    // internal headroom so downstream consumers keep slack
    let target = 0.95 * eps;
    // the constrained minimum decays like ~0.2 per degree, i.e.
    // ln(1/minsup) ~ 1.5 n; start just below the expected degree
    let mut n = (((1.0 / target).ln() / 1.5).ceil() as usize).max(1);
    for _attempt in 0..24 {
        let cand = arc_poly_fixed_degree(n);
        if cand.arc_sup <= target {
            // try to shrink the degree while the target still holds
            let mut best = cand;
            while best.degree > 1 {
                let smaller = arc_poly_fixed_degree(best.degree - 1);
                if smaller.arc_sup <= target {
                    best = smaller;
                } else {
                    break;
                }
            }
            let c = best.degree as f64 / log_inv.max(1e-9);
            best.fitted_log_constant = Some(c);
            return Ok(best);
        }
        // fallback: square a half-target solution
        if n >= 6 {
            if let Ok(half) = build_arc_poly((eps).sqrt() * 0.9) {
                if let Ok(sq) = squared(&half.coeffs) {
                    let cert = arc_sup_certificate(&sq, 0.02 * eps);
                    if cert.bound <= target {
                        let deg = sq.degree();
                        return Ok(ArcPoly {
                            coeffs: sq,
                            degree: deg,
                            arc_sup: cert.bound,
                            certificate: cert,
                            fitted_log_constant: Some(deg as f64 / log_inv.max(1e-9)),
                        });
                    }
                }
            }
        }
        n += (n / 4).max(1);
    }
    Err(Error::numeric(format!(
        "arc minimax did not reach eps = {eps} after degree escalation"
    )))
}

/// One data point of the capacity probe at degree n.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CapacityPoint {
    pub degree: usize,
    /// Dense-grid measurement of sup_{[0,1/2]} |Q(e(x))| for the computed
    /// near-minimax monic Q. The minimizer carries coefficient mass off the
    /// arc ~1e5 times its arc sup, so a Bernstein-certified bound would need
    /// ~1e10 samples; this value is a measurement, not a certificate.
    pub minsup_bound: f64,
    /// minsup_bound^(1/n); approaches the half-circle capacity 1/sqrt(2).
    pub root: f64,
    /// Theoretical lower bound (1/sqrt 2)^n from logarithmic capacity.
    pub capacity_floor: f64,
}

/// Maximum over a dense uniform grid of [0, 1/2] of |sum_k c_k e(k x)| for a
/// one-sided (algebraic) polynomial given by `coeffs[k]`, via Horner.
fn dense_arc_max(coeffs: &[Complex64], points: usize) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    let mut grid_max = 0.0f64;
    let h = 0.5 / points as f64;
    for j in 0..=points {
        let z = Complex64::from_polar(1.0, tau * j as f64 * h);
        let v = coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        let m = v.norm();
        if m > grid_max {
            grid_max = m;
        }
    }
    grid_max
}

/// Lawson IRLS for the monic-modulus problem: minimize
/// sup_{x in [0,1/2]} |e(n x) + sum_{k<n} c_k e(k x)| over complex c.
///
/// The monomial basis is first orthonormalized on the sample grid (modified
/// Gram-Schmidt); the weighted least-squares steps then run through tiny,
/// well-conditioned normal equations in the orthonormal basis, and the
/// triangular factor maps the winner back to monomial coefficients once.
pub fn monic_arc_minsup(n: usize) -> Result<CapacityPoint> {
    if n == 0 {
        return Err(Error::invalid("monic probe needs degree >= 1"));
    }
    let pts = 1600usize;
    let iters = 2000usize;
    let xs: Vec<f64> = (0..pts)
        .map(|i| 0.25 * (1.0 - (std::f64::consts::PI * i as f64 / (pts - 1) as f64).cos()))
        .collect();
    let tau = 2.0 * std::f64::consts::PI;
    // Column-major design matrix: q[k][i] = e(k x_i), to be orthonormalized.
    let zero = Complex64::new(0.0, 0.0);
    let mut q: Vec<Vec<Complex64>> = (0..n)
        .map(|k| {
            xs.iter()
                .map(|&x| Complex64::from_polar(1.0, tau * k as f64 * x))
                .collect()
        })
        .collect();
    let b: Vec<Complex64> = xs
        .iter()
        .map(|&x| Complex64::from_polar(1.0, tau * n as f64 * x))
        .collect();
    let mut r = vec![vec![zero; n]; n]; // upper triangular: monomials = Q * R
    for k in 0..n {
        for j in 0..k {
            let rjk: Complex64 = (0..pts).map(|i| q[j][i].conj() * q[k][i]).sum();
            r[j][k] = rjk;
            for i in 0..pts {
                let t = q[j][i];
                q[k][i] -= rjk * t;
            }
        }
        let nrm = (0..pts).map(|i| q[k][i].norm_sqr()).sum::<f64>().sqrt();
        if nrm == 0.0 {
            return Err(Error::numeric("degenerate monic design matrix"));
        }
        r[k][k] = Complex64::new(nrm, 0.0);
        for v in q[k].iter_mut() {
            *v /= nrm;
        }
    }
    let mut w = vec![1.0f64 / pts as f64; pts];
    let mut best: Option<(f64, DVector<Complex64>)> = None;
    let mut stale = 0usize;
    for _ in 0..iters {
        // Weighted normal equations in the orthonormal basis.
        let mut g = DMatrix::<Complex64>::zeros(n, n);
        let mut rhs = DVector::<Complex64>::zeros(n);
        for i in 0..pts {
            let wi = w[i];
            for p in 0..n {
                let ap = q[p][i].conj() * wi;
                for t in p..n {
                    g[(p, t)] += ap * q[t][i];
                }
                rhs[p] -= ap * b[i];
            }
        }
        for p in 0..n {
            for t in 0..p {
                g[(p, t)] = g[(t, p)].conj();
            }
        }
        let d = match g.lu().solve(&rhs) {
            Some(d) => d,
            None => break,
        };
        let resid: Vec<Complex64> = (0..pts)
            .map(|i| (0..n).map(|p| d[p] * q[p][i]).sum::<Complex64>() + b[i])
            .collect();
        let e = resid.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if best.as_ref().is_none_or(|(be, _)| e < *be) {
            best = Some((e, d));
            stale = 0;
        } else {
            stale += 1;
            if stale > 300 {
                break;
            }
        }
        let mut total = 0.0;
        for (wi, ri) in w.iter_mut().zip(&resid) {
            *wi *= ri.norm().max(1e-300);
            total += *wi;
        }
        if !(total > 0.0) {
            break;
        }
        for wi in w.iter_mut() {
            *wi /= total;
        }
    }
    let (_, d) = best.ok_or_else(|| Error::numeric("monic Lawson produced no iterate"))?;
    // Back-substitute R c = d to recover monomial coefficients.
    let mut c: Vec<Complex64> = d.iter().copied().collect();
    for i in (0..n).rev() {
        for j in i + 1..n {
            let t = c[j];
            c[i] -= r[i][j] * t;
        }
        c[i] /= r[i][i];
    }
    let mut coeffs = c;
    coeffs.push(Complex64::new(1.0, 0.0)); // monic leading coefficient
    let minsup_bound = dense_arc_max(&coeffs, 1 << 20);
    Ok(CapacityPoint {
        degree: n,
        minsup_bound,
        root: minsup_bound.powf(1.0 / n as f64),
        capacity_floor: (0.5f64).powf(n as f64 / 2.0),
    })
}

/// The capacity probe: monic-modulus minima at the requested degrees.
pub fn capacity_probe(degrees: &[usize]) -> Result<Vec<CapacityPoint>> {
    degrees.iter().map(|&n| monic_arc_minsup(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_target() {
        let p = build_arc_poly(1.5).unwrap();
        assert_eq!(p.degree, 0);
        assert_eq!(p.coeffs.get(0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn moderate_target_certified() {
        let p = build_arc_poly(0.25).unwrap();
        assert!(p.arc_sup <= 0.25, "sup={}", p.arc_sup);
        assert_eq!(p.coeffs.get(0), Complex64::new(1.0, 0.0));
        assert!(p.coeffs.is_real_valued(1e-12));
    }

    #[test]
    fn eps_tenth_degree_bound() {
        let p = build_arc_poly(0.1).unwrap();
        assert!(p.arc_sup <= 0.1);
        assert!(p.degree <= 40, "degree={}", p.degree);
    }

    #[test]
    fn capacity_probe_bracket() {
        // monic-modulus roots decreasing toward the half-circle capacity
        // 1/sqrt(2); the n = 24 root must land in [0.68, 0.74].
        // Frozen oracle (independent least-squares + Lawson solver):
        // n=8: 1.06695e-1 (root 0.755993), n=16: 6.66842e-3 (0.731142),
        // n=24: 4.16782e-4 (root 0.723041)
        let points = capacity_probe(&[8, 16, 24]).unwrap();
        assert!((points[0].minsup_bound - 1.06695e-1).abs() < 2e-4);
        assert!((points[1].minsup_bound - 6.66842e-3).abs() < 5e-5);
        assert!((points[2].minsup_bound - 4.16782e-4).abs() < 5e-6);
        let mut prev = f64::INFINITY;
        for p in &points {
            assert!(p.root < prev + 1e-9, "n={} root={} prev={prev}", p.degree, p.root);
            assert!(
                p.minsup_bound > p.capacity_floor,
                "measurement under the capacity floor at n={}",
                p.degree
            );
            prev = p.root;
        }
        assert!((0.68..=0.74).contains(&points[2].root), "n=24 root={}", points[2].root);
    }

    #[test]
    fn constrained_minimum_decays_much_faster_than_capacity() {
        // the hat{P}(0)=1 problem at n=5 already sits near 1.5e-3, far below
        // the monic level at the same degree — the two probes are distinct.
        let p = arc_poly_fixed_degree(5);
        assert!(p.arc_sup < 3e-3, "sup={}", p.arc_sup);
        let m = monic_arc_minsup(5).unwrap();
        assert!(m.minsup_bound > 0.05, "monic={}", m.minsup_bound);
    }
}
