//! Smooth building blocks: the plateau function u, the narrow window q, the
//! Gevrey step profile, and interval cutoffs. Every builder returns exact or
//! certified Fourier coefficients together with the certificates downstream
//! constructions re-verify.

pub mod arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::cert::Certificate;
use crate::coeffs::CoeffSeq;
use crate::error::{Error, Result};
use crate::grid::partial_sum_eval;
use crate::interval::{IntervalUnion, Rat};
use crate::profile::{GevreyStep, SmoothnessClass, QUINTIC_COEFFS};
use crate::pwpoly::{Piece, PiecewisePoly};

/// The Gevrey-2 step profile with its verified derivative data.
#[derive(Debug, Clone)]
pub struct BumpProfile {
    step: GevreyStep,
    /// sup |psi^(k)| for k = 1..=8.
    pub derivative_sups: Vec<f64>,
    /// Smallest C with sup|psi^(k)| <= C (k!)^2 over the verified range.
    pub c_psi: f64,
}

impl BumpProfile {
    pub fn value(&self, t: f64) -> f64 {
        self.step.value(t)
    }
    pub fn step(&self) -> &GevreyStep {
        &self.step
    }
}

/// Build and verify the standard Gevrey-2 step.
pub fn build_gevrey_step() -> BumpProfile {
    let step = GevreyStep::new();
    let derivative_sups = step.derivative_sups(8);
    let c_psi = step.gevrey_constant(8);
    BumpProfile {
        step,
        derivative_sups,
        c_psi,
    }
}

/// Certified model of the coefficient decay beyond the stored band.
#[derive(Debug, Clone, Copy)]
pub enum TailModel {
    /// |c_k| <= tv3 / (2 pi k)^4 — exact for C2 piecewise polynomials.
    PowerFour { tv3: f64 },
    /// |c_k| <= c_big * exp(-rate * sqrt(k * w)) — fitted Gevrey envelope.
    Gevrey { c_big: f64, rate: f64, w: f64 },
}

impl TailModel {
    /// Upper bound on the ell-1 coefficient mass at indices |k| > d.
    pub fn l1_tail_beyond(&self, d: usize) -> f64 {
        match *self {
            TailModel::PowerFour { tv3 } => c2_l1_tail_bound(tv3, d.max(1)),
            TailModel::Gevrey { c_big, rate, w } => {
                // sum 2 C exp(-rate sqrt(k w)) <= integral comparison:
                // int_d^inf exp(-rate sqrt(t w)) dt = 2(1+rate sqrt(d w))
                //   * exp(-rate sqrt(d w)) / (rate^2 w)
                let d = d.max(1) as f64;
                let s = rate * (d * w).sqrt();
                if s > 700.0 {
                    return 0.0;
                }
                2.0 * c_big * ((-s).exp() + 2.0 * (1.0 + s) * (-s).exp() / (rate * rate * w))
            }
        }
    }
}

/// A plateau (or bump) function with certified coefficients.
#[derive(Debug, Clone)]
pub struct SmoothBlock {
    pub coeffs: CoeffSeq,
    /// Exact support within [0,1].
    pub support: IntervalUnion,
    pub class: SmoothnessClass,
    /// Decay of the true coefficients beyond the stored band.
    pub tail_model: TailModel,
    pub certificates: Vec<Certificate>,
}

/// Quintic rise piece on [x0, x0+w] as local polynomial coefficients.
fn quintic_rise(x0: f64, w: f64) -> Piece {
    let coeffs: Vec<f64> = (0..6).map(|d| QUINTIC_COEFFS[d] / w.powi(d as i32)).collect();
    Piece {
        a: x0,
        b: x0 + w,
        coeffs,
    }
}

/// Quintic fall piece on [x0, x0+w]: s((w-t)/w) expanded in local powers of t.
fn quintic_fall(x0: f64, w: f64) -> Piece {
    let mut coeffs = vec![0.0f64; 6];
    for d in 0..6 {
        // ((w-t)/w)^d = sum_j C(d,j) (-t/w)^j
        let mut bin = 1.0;
        for j in 0..=d {
            coeffs[j] += QUINTIC_COEFFS[d] * bin * (-1.0f64 / w).powi(j as i32);
            bin = bin * (d - j) as f64 / (j + 1) as f64;
        }
    }
    Piece {
        a: x0,
        b: x0 + w,
        coeffs,
    }
}

/// Total variation of the third derivative of a piecewise polynomial,
/// including junction jumps against the zero extension. Drives the rigorous
/// coefficient tail bound |f^(k)| <= TV3 / (2 pi k)^4.
fn third_derivative_tv(p: &PiecewisePoly) -> f64 {
    let d3 = |c: &[f64], t: f64| -> f64 {
        // third derivative of sum c_d t^d
        let mut acc = 0.0;
        for (d, &cd) in c.iter().enumerate().skip(3) {
            let k = (d * (d - 1) * (d - 2)) as f64;
            acc += cd * k * t.powi(d as i32 - 3);
        }
        acc
    };
    let d4_abs_integral = |c: &[f64], w: f64| -> f64 {
        // integral of |fourth derivative| over [0,w] by fine sampling (the
        // integrand is a low-degree polynomial; 1024 panels are plenty).
        let n = 1024;
        let mut s = 0.0;
        for j in 0..n {
            let t = (j as f64 + 0.5) * w / n as f64;
            let mut acc = 0.0;
            for (d, &cd) in c.iter().enumerate().skip(4) {
                let k = (d * (d - 1) * (d - 2) * (d - 3)) as f64;
                acc += cd * k * t.powi(d as i32 - 4);
            }
            s += acc.abs();
        }
        s * w / n as f64
    };
    let mut tv = 0.0;
    let mut prev_end_val = 0.0f64; // third derivative of the zero function
    let mut prev_b = f64::NEG_INFINITY;
    for piece in &p.pieces {
        let w = piece.b - piece.a;
        if w <= 0.0 {
            continue;
        }
        let start = d3(&piece.coeffs, 0.0);
        if piece.a > prev_b {
            // gap: previous segment ended against zero
            tv += prev_end_val.abs();
            prev_end_val = 0.0;
        }
        tv += (start - prev_end_val).abs();
        tv += d4_abs_integral(&piece.coeffs, w);
        prev_end_val = d3(&piece.coeffs, w);
        prev_b = piece.b;
    }
    tv + prev_end_val.abs()
}

/// ell-1 coefficient mass of a C2 piecewise polynomial beyond degree d,
/// from the integration-by-parts envelope |f^(k)| <= TV3/(2 pi k)^4.
pub fn c2_l1_tail_bound(tv3: f64, d: usize) -> f64 {
    if d == 0 {
        return f64::INFINITY;
    }
    // 2 * sum_{k > d} TV3/(2 pi k)^4 <= 2 TV3 / (2 pi)^4 / (3 (d)^3) * (1 + small)
    let tau = 2.0 * std::f64::consts::PI;
    2.0 * tv3 / (tau.powi(4) * 3.0 * (d as f64).powi(3)) * (1.0 + 1.0 / d as f64).powi(3)
}

/// Exact coefficients of a C2 piecewise polynomial up to the smallest degree
/// whose certified ell-1 tail is below `tail_budget` (absolute).
fn c2_coeffs_with_tail(p: &PiecewisePoly, tail_budget: f64, cap: usize) -> Result<(CoeffSeq, f64, f64)> {
    let tv3 = third_derivative_tv(p);
    let mut d = 16usize;
    while c2_l1_tail_bound(tv3, d) > tail_budget {
        d *= 2;
        if 2 * d + 1 > cap {
            return Err(Error::resource(format!(
                "C2 tail budget {tail_budget:.3e} needs degree > {d}, beyond the cap"
            )));
        }
    }
    let coeffs = p.fourier_coeffs(d)?;
    Ok((coeffs, c2_l1_tail_bound(tv3, d), tv3))
}

/// Sample a real function on a power-of-two grid and return band-limited
/// coefficients by FFT; the aliasing error per coefficient is bounded by the
/// ell-1 tail of the true coefficients beyond M - degree, which the caller
/// certifies via a decay-envelope fit.
fn sampled_coeffs(f: impl Fn(f64) -> f64, degree: usize, oversample: usize) -> Result<CoeffSeq> {
    let need = oversample * (2 * degree + 1);
    let m = need.next_power_of_two();
    let mut buf: Vec<Complex64> = (0..m)
        .map(|j| Complex64::new(f(j as f64 / m as f64), 0.0))
        .collect();
    let fft = rustfft::FftPlanner::new().plan_fft_forward(m);
    fft.process(&mut buf);
    let scale = 1.0 / m as f64;
    let n = degree as i64;
    let mut entries = Vec::with_capacity(2 * degree + 1);
    for l in -n..=n {
        entries.push(buf[l.rem_euclid(m as i64) as usize] * scale);
    }
    CoeffSeq::from_entries(entries)
}

/// Fit the Gevrey decay envelope |c_l| <= C exp(-c sqrt(|l| w)) over the
/// computed band; returns (C, c, worst measured ratio at the fitted pair).
pub fn fit_gevrey_envelope(c: &CoeffSeq, w: f64) -> (f64, f64, f64) {
    // fix C = max(|c_0|, 1e-300) * margin, then take the largest rate c_rate
    // that keeps every computed coefficient under the envelope.
    let big_c = c.sup_coeff_norm().max(1e-300) * 2.0;
    let mut rate = f64::INFINITY;
    for (l, v) in c.iter_indexed() {
        if l == 0 {
            continue;
        }
        let m = v.norm();
        if m < 1e-300 {
            continue;
        }
        let s = (l.unsigned_abs() as f64 * w).sqrt();
        if s > 0.0 {
            let r = (big_c / m).ln() / s;
            if r < rate {
                rate = r;
            }
        }
    }
    if !rate.is_finite() {
        rate = 1.0;
    }
    let mut worst = 0.0f64;
    for (l, v) in c.iter_indexed() {
        if l == 0 {
            continue;
        }
        let env = big_c * (-rate * (l.unsigned_abs() as f64 * w).sqrt()).exp();
        let ratio = v.norm() / env.max(1e-300);
        if ratio > worst {
            worst = ratio;
        }
    }
    (big_c, rate, worst)
}

/// The plateau u of the coefficient-flatness lemma: u(0) = u(1) = 0,
/// u in [0,1], u = 1 on [eps/2, 1 - eps/2], with the certified bound
/// ||u-hat minus the delta at 0||_inf <= ||u - 1||_{L1} < eps. The truncation
/// keeps the coefficient ell-1 tail under eps/10.
pub fn build_plateau(eps: f64, class: SmoothnessClass) -> Result<SmoothBlock> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::invalid("plateau parameter must be in (0,1)"));
    }
    let w = eps / 2.0;
    let (coeffs, tail, l1_dist, tail_model) = match class {
        SmoothnessClass::C2 => {
            let p = PiecewisePoly {
                pieces: vec![
                    quintic_rise(0.0, w),
                    Piece {
                        a: w,
                        b: 1.0 - w,
                        coeffs: vec![1.0],
                    },
                    quintic_fall(1.0 - w, w),
                ],
            };
            let (coeffs, tail, tv3) = c2_coeffs_with_tail(&p, eps / 10.0, crate::coeffs::DEFAULT_COEFF_CAP)?;
            // ||u - 1||_{L1}: exactly the two edge integrals of 1 - step.
            // quintic step integrates to 1/2 over [0,1], so each edge holds w/2.
            (coeffs, tail, w, TailModel::PowerFour { tv3 })
        }
        SmoothnessClass::Gevrey2 => {
            let psi = build_gevrey_step();
            let uf = move |x: f64| -> f64 {
                if x <= 0.0 || x >= 1.0 {
                    0.0
                } else if x < w {
                    psi.value(x / w)
                } else if x > 1.0 - w {
                    psi.value((1.0 - x) / w)
                } else {
                    1.0
                }
            };
            // degree escalation until the measured envelope tail is safely
            // below eps/10
            let mut degree = 64usize;
            loop {
                let c = sampled_coeffs(&uf, degree, 8)?;
                let (big_c, rate, _) = fit_gevrey_envelope(&c, w);
                let model = TailModel::Gevrey {
                    c_big: big_c,
                    rate,
                    w,
                };
                let t = model.l1_tail_beyond(degree);
                if t <= eps / 10.0 || 2 * degree + 1 > crate::coeffs::DEFAULT_COEFF_CAP / 4 {
                    // symmetric step: the two edges each integrate to w/2
                    break (c, t, w, model);
                }
                degree *= 2;
            }
        }
    };
    let mut certs = vec![
        Certificate::new(
            "plateau_coeff_flatness",
            eps,
            l1_dist,
            tail,
            0,
            "l1-distance+tail",
        ),
        Certificate::new("plateau_l1_tail", eps / 10.0, tail, 0.0, 0, "envelope"),
    ];
    // range check u in [0,1] on a grid (reported, values are exact by
    // construction of the profiles)
    let g = partial_sum_eval(&coeffs, coeffs.degree(), (4 * (2 * coeffs.degree() + 1)).next_power_of_two())?;
    let max_excursion = g
        .values()
        .iter()
        .map(|v| {
            let r = v.re;
            (r.max(1.0) - 1.0).max(-r.min(0.0))
        })
        .fold(0.0, f64::max);
    certs.push(Certificate::new(
        "plateau_range",
        (eps / 10.0) * 1.5,
        max_excursion,
        0.0,
        g.grid_size() as u64,
        "grid",
    ));
    Ok(SmoothBlock {
        coeffs,
        support: IntervalUnion::full(),
        class,
        tail_model,
        certificates: certs,
    })
}

/// The narrow window q of the node-interpolation lemma: nonnegative, C2 (or
/// Gevrey), supported strictly inside [0, 1/(2 m_nodes)], with q-hat(k) != 0
/// certified for |k| <= n and relative coefficient tail <= 1e-3.
pub fn build_window(m_nodes: usize, n: usize, class: SmoothnessClass) -> Result<SmoothBlock> {
    if m_nodes == 0 || m_nodes < 2 * n + 1 {
        return Err(Error::invalid("window needs m_nodes >= 2n+1 >= 1"));
    }
    let w = 1.0 / (2.0 * m_nodes as f64);
    // strict interior margin and edge widths
    let delta = w / 16.0;
    let inner = w - 2.0 * delta;
    let edge = 0.375 * inner;
    // support [delta, w - delta] = [1/(32 m), 15/(32 m)] exactly
    let support = IntervalUnion::interval(
        BigRational::new(1.into(), (32 * m_nodes).into()),
        BigRational::new(15.into(), (32 * m_nodes).into()),
    )?;
    let (coeffs, rel_tail, tail_model) = match class {
        SmoothnessClass::C2 => {
            // rise, plateau, fall — all inside [delta, w - delta]
            let p = PiecewisePoly {
                pieces: vec![
                    quintic_rise(delta, edge),
                    Piece {
                        a: delta + edge,
                        b: w - delta - edge,
                        coeffs: vec![1.0],
                    },
                    quintic_fall(w - delta - edge, edge),
                ],
            };
            let tv3 = third_derivative_tv(&p);
            // q-hat(0) = integral of q ~ inner width; absolute budget from the
            // relative one
            let mass = inner - edge; // plateau + two half-edges
            let budget = 1e-3 * mass * 0.5;
            let mut d = 64usize;
            while c2_l1_tail_bound(tv3, d) > budget {
                d *= 2;
                if 2 * d + 1 > crate::coeffs::DEFAULT_COEFF_CAP / 8 {
                    return Err(Error::resource("window tail budget unreachable"));
                }
            }
            let coeffs = p.fourier_coeffs(d)?;
            let rel = c2_l1_tail_bound(tv3, d) / coeffs.get(0).norm();
            (coeffs, rel, TailModel::PowerFour { tv3 })
        }
        SmoothnessClass::Gevrey2 => {
            let psi = build_gevrey_step();
            let qf = move |x: f64| -> f64 {
                if x <= delta || x >= w - delta {
                    0.0
                } else {
                    psi.value((x - delta) / edge) * psi.value((w - delta - x) / edge)
                }
            };
            let mut degree = (8.0 / w) as usize;
            loop {
                let c = sampled_coeffs(&qf, degree, 8)?;
                let (big_c, rate, _) = fit_gevrey_envelope(&c, edge);
                let model = TailModel::Gevrey {
                    c_big: big_c,
                    rate,
                    w: edge,
                };
                let t = model.l1_tail_beyond(degree);
                let rel = t / c.get(0).norm().max(1e-300);
                if rel <= 1e-3 || 2 * degree + 1 > crate::coeffs::DEFAULT_COEFF_CAP / 8 {
                    break (c, rel, model);
                }
                degree *= 2;
            }
        }
    };
    // q-hat floor over |k| <= n
    let mut floor = f64::INFINITY;
    for l in -(n as i64)..=(n as i64) {
        floor = floor.min(coeffs.get(l).norm());
    }
    if !(floor > 0.0) {
        return Err(Error::numeric("window has a vanishing low coefficient"));
    }
    let certs = vec![
        Certificate::new(
            "window_qhat_floor",
            floor,
            floor,
            0.0,
            0,
            "exact-coefficients",
        ),
        Certificate::new("window_rel_tail", 1e-3, rel_tail, 0.0, 0, "envelope"),
    ];
    Ok(SmoothBlock {
        coeffs,
        support,
        class,
        tail_model,
        certificates: certs,
    })
}

/// Smooth cutoff equal to 1 on the margin-shrunk interior of I, supported on
/// I, built from the Gevrey step mapped linearly onto each half of I.
pub fn build_smooth_cutoff(i: &IntervalUnion, margin: &Rat, s_scale: u64) -> Result<SmoothBlock> {
    if i.count() != 1 {
        return Err(Error::invalid("cutoff wants a single interval"));
    }
    let (a, b) = (&i.parts()[0].0, &i.parts()[0].1);
    let len = b - a;
    if len <= margin + margin {
        return Err(Error::invalid("interval too short for the margin"));
    }
    let af = a.to_f64().ok_or_else(|| Error::numeric("endpoint"))?;
    let bf = b.to_f64().ok_or_else(|| Error::numeric("endpoint"))?;
    let mf = margin.to_f64().ok_or_else(|| Error::numeric("margin"))?;
    let psi = build_gevrey_step();
    let f = move |x: f64| -> f64 {
        if x <= af || x >= bf {
            0.0
        } else if x < af + mf {
            psi.value((x - af) / mf)
        } else if x > bf - mf {
            psi.value((bf - x) / mf)
        } else {
            1.0
        }
    };
    // degree from the margin: resolve the edge with headroom, scaled by
    // s_scale for analysis-driven builds
    let base = (32.0 / mf).ceil() as usize;
    let degree = base.max(s_scale as usize).min(crate::coeffs::DEFAULT_COEFF_CAP / 8);
    let coeffs = sampled_coeffs(&f, degree, 8)?;
    let (big_c, rate, worst) = fit_gevrey_envelope(&coeffs, mf);
    let certs = vec![Certificate::new(
        "cutoff_envelope",
        1.0,
        worst,
        0.0,
        0,
        format!("fit C={big_c:.3e} c={rate:.3}"),
    )];
    Ok(SmoothBlock {
        coeffs,
        support: i.clone(),
        class: SmoothnessClass::Gevrey2,
        tail_model: TailModel::Gevrey {
            c_big: big_c,
            rate,
            w: mf,
        },
        certificates: certs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;
    use crate::oracle::direct_partial_sum;

    #[test]
    fn gevrey_step_profile_certified() {
        let p = build_gevrey_step();
        assert_eq!(p.value(0.0), 0.0);
        assert_eq!(p.value(1.0), 1.0);
        // second-derivative bound against the reported constant
        assert!(p.derivative_sups[1] <= p.c_psi * 4.0 + 1e-9);
        // finite-difference oracle for psi'' at a few points
        let h = 1e-4;
        for &t in &[0.3, 0.5, 0.7] {
            let dd = (p.value(t + h) - 2.0 * p.value(t) + p.value(t - h)) / (h * h);
            assert!(dd.abs() <= p.c_psi * 4.0 * 1.01 + 1e-6, "t={t} dd={dd}");
        }
    }

    #[test]
    fn plateau_c2_flatness_certificate() {
        let eps = 0.25;
        let u = build_plateau(eps, SmoothnessClass::C2).unwrap();
        // u-hat(0) = integral u = 1 - eps/2 area deficit... direct check:
        // coefficient at 0 equals 1 - w (two half edges), w = eps/2
        let u0 = u.coeffs.get(0).re;
        assert!((u0 - (1.0 - eps / 2.0)).abs() < 1e-12, "u0={u0}");
        // ||u-hat - delta||_inf < eps certified
        let mut worst = (u0 - 1.0f64).abs();
        for (l, v) in u.coeffs.iter_indexed() {
            if l != 0 {
                worst = worst.max(v.norm());
            }
        }
        assert!(worst < eps, "worst={worst}");
        // values: 1 on the flat middle, ~0 at the ends
        let mid = direct_partial_sum(&u.coeffs, u.coeffs.degree(), 0.5).re;
        assert!((mid - 1.0).abs() < eps / 10.0 + 1e-9, "mid={mid}");
        let end = direct_partial_sum(&u.coeffs, u.coeffs.degree(), 0.0).re;
        assert!(end.abs() < eps / 10.0 + 1e-9, "end={end}");
        for c in &u.certificates {
            assert!(c.holds(), "{c:?}");
        }
    }

    #[test]
    fn plateau_gevrey_flatness() {
        let eps = 0.25;
        let u = build_plateau(eps, SmoothnessClass::Gevrey2).unwrap();
        let mut worst = (u.coeffs.get(0).re - 1.0f64).abs();
        for (l, v) in u.coeffs.iter_indexed() {
            if l != 0 {
                worst = worst.max(v.norm());
            }
        }
        assert!(worst < eps, "worst={worst}");
        for c in &u.certificates {
            assert!(c.holds(), "{c:?}");
        }
    }

    #[test]
    fn window_floor_and_tail() {
        let q = build_window(5, 2, SmoothnessClass::C2).unwrap();
        for c in &q.certificates {
            assert!(c.holds(), "{c:?}");
        }
        // nonnegative on a fine grid, zero outside its support
        let d = q.coeffs.degree();
        for j in 0..1000 {
            let x = j as f64 / 1000.0;
            let v = direct_partial_sum(&q.coeffs, d, x).re;
            assert!(v > -2e-3, "x={x} v={v}");
            if x > 0.105 && x < 0.99 {
                assert!(v.abs() < 2e-3, "leak at x={x}: {v}");
            }
        }
        // support strictly inside [0, 1/10]
        let cell = IntervalUnion::interval(rat(0, 1), rat(1, 10)).unwrap();
        assert!(q.support.subset_of(&cell));
    }

    #[test]
    fn window_rejects_bad_params() {
        assert!(build_window(3, 2, SmoothnessClass::C2).is_err());
    }

    #[test]
    fn cutoff_plateau_and_envelope() {
        let i = IntervalUnion::interval(rat(0, 1), rat(1, 1)).unwrap();
        let phi = build_smooth_cutoff(&i, &rat(1, 4), 1).unwrap();
        let d = phi.coeffs.degree();
        // identically 1 on [1/4, 3/4], ~0 near the endpoints
        for &x in &[0.25, 0.4, 0.5, 0.75] {
            let v = direct_partial_sum(&phi.coeffs, d, x).re;
            assert!((v - 1.0).abs() < 1e-6, "x={x} v={v}");
        }
        for &x in &[0.004, 0.996] {
            let v = direct_partial_sum(&phi.coeffs, d, x).re;
            assert!(v.abs() < 1e-3, "x={x} v={v}");
        }
        // values within [0,1] up to tolerance on the full grid
        let g = partial_sum_eval(&phi.coeffs, d, (4 * (2 * d + 1)).next_power_of_two()).unwrap();
        for v in g.values() {
            assert!(v.re > -1e-6 && v.re < 1.0 + 1e-6);
        }
        // measured envelope: decay below fitted C exp(-c sqrt(l * margin))
        let (_, _, worst) = fit_gevrey_envelope(&phi.coeffs, 0.25);
        assert!(worst <= 1.0 + 1e-12);
        // too-short interval is rejected
        let short = IntervalUnion::interval(rat(0, 1), rat(1, 3)).unwrap();
        assert!(build_smooth_cutoff(&short, &rat(1, 4), 1).is_err());
    }

    #[test]
    fn c2_tail_bound_is_rigorous() {
        // plateau at eps = 1/4: exact coefficients stay under the envelope
        // that drives the tail bound, even far beyond the stored band
        let p = PiecewisePoly {
            pieces: vec![
                quintic_rise(0.0, 0.125),
                Piece {
                    a: 0.125,
                    b: 0.875,
                    coeffs: vec![1.0],
                },
                quintic_fall(0.875, 0.125),
            ],
        };
        let tv3 = third_derivative_tv(&p);
        let tau = 2.0 * std::f64::consts::PI;
        for l in [20i64, 50, 100, 313] {
            let truth = p.fourier_coeff(l).norm();
            let env = tv3 / (tau * l as f64).powi(4);
            assert!(truth <= env * 1.0001, "l={l}: {truth} vs {env}");
        }
    }
}
