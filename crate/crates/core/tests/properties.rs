//! Property tests for the coefficient, grid, and interval kernels: identities
//! that must hold for arbitrary inputs, checked against independent oracles
//! (direct summation, exact rational arithmetic) rather than the production
//! code paths.

use num_complex::Complex64;
use proptest::prelude::*;

use nullseries_core::interval::rat;
use nullseries_core::oracle::{direct_partial_sum, direct_quadrature_l2_sq};
use nullseries_core::{coeff_convolve, dilate, grid_size_for, partial_sum_eval, CoeffSeq, IntervalUnion};

fn coeff_entry() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn coeff_seq(max_degree: usize) -> impl Strategy<Value = CoeffSeq> {
    (0..=max_degree).prop_flat_map(|n| {
        proptest::collection::vec(coeff_entry(), 2 * n + 1)
            .prop_map(|v| CoeffSeq::from_entries(v).unwrap())
    })
}

/// Sorted rational endpoints in [0,1] with denominator 64, turned into a
/// valid interval union.
fn interval_union() -> impl Strategy<Value = IntervalUnion> {
    proptest::collection::vec((0i64..=64, 0i64..=64), 0..5).prop_map(|pairs| {
        let parts = pairs
            .into_iter()
            .map(|(a, b)| {
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                (rat(lo, 64), rat(hi, 64))
            })
            .collect();
        IntervalUnion::from_intervals(parts).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Parseval: the coefficient l2 norm squared equals the grid quadrature
    /// of |S_n|^2 once the grid resolves the full band.
    #[test]
    fn parseval_identity(c in coeff_seq(200)) {
        let n = c.degree();
        let lhs = c.l2_norm().powi(2);
        let rhs = direct_quadrature_l2_sq(&c, n, grid_size_for(n));
        let scale = lhs.max(1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale, "lhs={lhs} rhs={rhs}");
    }

    /// FFT partial-sum evaluation agrees with direct phasor summation.
    #[test]
    fn fft_matches_direct_summation(c in coeff_seq(96), n_frac in 0.0f64..1.0) {
        let n = ((c.degree() as f64) * n_frac) as usize;
        let m = grid_size_for(c.degree());
        let vals = partial_sum_eval(&c, n, m).unwrap();
        for &i in &[0usize, m / 7, m / 3, m - 1] {
            let x = i as f64 / m as f64;
            let direct = direct_partial_sum(&c, n, x);
            let d = (vals.values()[i] - direct).norm();
            prop_assert!(d <= 1e-9 * c.l1_coeff_norm().max(1.0), "mismatch {d} at {x}");
        }
    }

    /// Convolution is the coefficient side of pointwise multiplication.
    #[test]
    fn convolution_product_duality(a in coeff_seq(40), b in coeff_seq(40)) {
        let conv = coeff_convolve(&a, &b).unwrap();
        let m = grid_size_for(conv.degree());
        let va = partial_sum_eval(&a, a.degree(), m).unwrap();
        let vb = partial_sum_eval(&b, b.degree(), m).unwrap();
        let vc = partial_sum_eval(&conv, conv.degree(), m).unwrap();
        let scale = a.l1_coeff_norm() * b.l1_coeff_norm() + 1.0;
        for &i in &[0usize, 1, m / 5, m / 2] {
            let d = (vc.values()[i] - va.values()[i] * vb.values()[i]).norm();
            prop_assert!(d <= 1e-9 * scale, "product mismatch {d}");
        }
    }

    /// Dilation is x -> r x on the circle: values repeat with period 1/r.
    #[test]
    fn dilate_is_composition_with_rx(c in coeff_seq(24), r in 1u64..8) {
        let d = dilate(&c, r).unwrap();
        let m = grid_size_for(d.degree());
        let vd = partial_sum_eval(&d, d.degree(), m).unwrap();
        for &i in &[0usize, 3, m / 4 + 1, m - 2] {
            let x = i as f64 / m as f64;
            let direct = direct_partial_sum(&c, c.degree(), (x * r as f64).fract());
            let diff = (vd.values()[i] - direct).norm();
            prop_assert!(diff <= 1e-8 * c.l1_coeff_norm().max(1.0), "dilate mismatch {diff}");
        }
    }

    /// Convolution and dilation commute: dilate(a * b) = dilate(a) * dilate(b).
    #[test]
    fn dilate_commutes_with_convolution(a in coeff_seq(16), b in coeff_seq(16), r in 1u64..6) {
        let lhs = dilate(&coeff_convolve(&a, &b).unwrap(), r).unwrap();
        let rhs = coeff_convolve(&dilate(&a, r).unwrap(), &dilate(&b, r).unwrap()).unwrap();
        prop_assert!(lhs.coeff_distance(&rhs) <= 1e-12);
    }

    /// Convolving Hermitian (real-valued) sequences preserves Hermitian
    /// symmetry.
    #[test]
    fn convolution_preserves_hermitian(a in coeff_seq(24), b in coeff_seq(24)) {
        let sym = |c: &CoeffSeq| {
            let n = c.degree() as i64;
            let entries: Vec<Complex64> = (-n..=n)
                .map(|l| (c.get(l) + c.get(-l).conj()) * 0.5)
                .collect();
            CoeffSeq::from_entries(entries).unwrap()
        };
        let (ha, hb) = (sym(&a), sym(&b));
        prop_assert!(ha.hermitian_defect() <= 1e-12);
        let conv = coeff_convolve(&ha, &hb).unwrap();
        let scale = ha.l1_coeff_norm() * hb.l1_coeff_norm() + 1.0;
        prop_assert!(conv.hermitian_defect() <= 1e-12 * scale);
    }

    /// Exact inclusion-exclusion of interval measures.
    #[test]
    fn interval_inclusion_exclusion(a in interval_union(), b in interval_union()) {
        let lhs = a.union(&b).measure() + a.intersect(&b).measure();
        let rhs = a.measure() + b.measure();
        prop_assert_eq!(lhs, rhs);
    }

    /// Complement measure, double complement, and subset relations.
    #[test]
    fn interval_complement_laws(a in interval_union()) {
        let comp = a.complement();
        prop_assert_eq!(a.measure() + comp.measure(), rat(1, 1));
        prop_assert!(a.subset_of(&comp.complement()));
        prop_assert!(a.intersect(&comp).measure() == rat(0, 1));
    }

    /// Inflation grows the set and never shrinks the measure; the periodic
    /// preimage under x -> r x preserves measure exactly.
    #[test]
    fn interval_inflate_and_preimage(a in interval_union(), r in 1u64..9) {
        let inflated = a.inflate(&rat(1, 128)).unwrap();
        prop_assert!(a.subset_of(&inflated));
        prop_assert!(inflated.measure() >= a.measure());
        let pre = a.periodic_preimage(r).unwrap();
        prop_assert_eq!(pre.measure(), a.measure());
    }

    /// l1 tails are nonincreasing in the cut and vanish past the band.
    #[test]
    fn l1_tail_monotone(c in coeff_seq(48)) {
        let mut prev = f64::INFINITY;
        for k in 0..=c.degree() + 2 {
            let t = c.l1_tail(k);
            prop_assert!(t <= prev + 1e-15);
            prev = t;
        }
        prop_assert_eq!(c.l1_tail(c.degree() + 1), 0.0);
    }
}
