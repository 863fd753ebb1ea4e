//! Finite symmetric sequences of Fourier coefficients, indexed -N..N.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default cap on the number of stored coefficients (2N+1). Spectra in the
/// block assembly grow like r^3, so every degree-expanding operation checks
/// against this before allocating.
pub const DEFAULT_COEFF_CAP: usize = 1 << 26;

/// Trigonometric-polynomial coefficients c_l for l in [-N, N], stored densely
/// as entries[l + N].
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq {
    degree: usize,
    entries: Vec<Complex64>,
}

impl CoeffSeq {
    /// Build from a dense vector of length 2N+1 ordered -N..N.
    pub fn from_entries(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() || entries.len() % 2 == 0 {
            return Err(Error::invalid(format!(
                "coefficient vector length must be odd and positive, got {}",
                entries.len()
            )));
        }
        let degree = (entries.len() - 1) / 2;
        Ok(CoeffSeq { degree, entries })
    }

    /// The unit at index 0 (Dirac delta in coefficient space, constant 1 as a
    /// function).
    pub fn delta() -> Self {
        CoeffSeq {
            degree: 0,
            entries: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn zero() -> Self {
        CoeffSeq {
            degree: 0,
            entries: vec![Complex64::new(0.0, 0.0)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always holds 2N+1 >= 1 entries
    }

    /// Coefficient at signed index l (0 outside the stored band).
    #[inline]
    pub fn get(&self, l: i64) -> Complex64 {
        let n = self.degree as i64;
        if l < -n || l > n {
            Complex64::new(0.0, 0.0)
        } else {
            self.entries[(l + n) as usize]
        }
    }

    #[inline]
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [Complex64] {
        &mut self.entries
    }

    /// Iterate as (signed index, value) in ascending index order.
    pub fn iter_indexed(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let n = self.degree as i64;
        self.entries.iter().enumerate().map(move |(i, &v)| (i as i64 - n, v))
    }

    /// Drop zero outer bands so that either N = 0 or (c_N, c_-N) != (0,0).
    pub fn trim(mut self) -> Self {
        let mut n = self.degree;
        while n > 0 {
            let hi = self.entries[2 * n];
            let lo = self.entries[0];
            if hi.norm_sqr() == 0.0 && lo.norm_sqr() == 0.0 {
                self.entries.pop();
                self.entries.remove(0);
                n -= 1;
            } else {
                break;
            }
        }
        self.degree = n;
        self
    }

    /// Hermitian-symmetry defect max_l |c_{-l} - conj(c_l)|; zero iff the
    /// function is real-valued.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.degree as i64;
        let mut worst = 0.0f64;
        for l in 0..=n {
            let d = (self.get(-l) - self.get(l).conj()).norm();
            if d > worst {
                worst = d;
            }
        }
        worst
    }

    pub fn is_real_valued(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// Truncation to |l| <= n (the coefficients of the partial sum S_n).
    pub fn truncate(&self, n: usize) -> CoeffSeq {
        if n >= self.degree {
            return self.clone();
        }
        let c = self.degree - n; // entries to drop on each side
        CoeffSeq {
            degree: n,
            entries: self.entries[c..self.entries.len() - c].to_vec(),
        }
    }

    /// sqrt(sum |c_l|^2); by Parseval this is the L2 norm of the function.
    pub fn l2_norm(&self) -> f64 {
        self.entries.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// L2 norm of the truncation to |l| <= n.
    pub fn l2_norm_truncated(&self, n: usize) -> f64 {
        let nn = n.min(self.degree) as i64;
        let mut s = 0.0;
        for l in -nn..=nn {
            s += self.get(l).norm_sqr();
        }
        s.sqrt()
    }

    /// sum |c_l| in ascending index order.
    pub fn l1_coeff_norm(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).sum()
    }

    /// max |c_l|.
    pub fn sup_coeff_norm(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// max_{l != 0} |c_l|.
    pub fn sup_coeff_norm_offcenter(&self) -> f64 {
        let n = self.degree as i64;
        self.iter_indexed()
            .filter(|(l, _)| *l != 0 && l.abs() <= n)
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// ell-1 mass at indices |l| >= k.
    pub fn l1_tail(&self, k: usize) -> f64 {
        if k > self.degree {
            return 0.0;
        }
        let n = self.degree as i64;
        let k = k as i64;
        let mut s = 0.0;
        for l in -n..=n {
            if l.abs() >= k {
                s += self.get(l).norm();
            }
        }
        s
    }

    pub fn scale(&self, t: Complex64) -> CoeffSeq {
        CoeffSeq {
            degree: self.degree,
            entries: self.entries.iter().map(|c| c * t).collect(),
        }
    }

    /// max_l |c_l - d_l| over the union of supports.
    pub fn coeff_distance(&self, other: &CoeffSeq) -> f64 {
        let n = self.degree.max(other.degree) as i64;
        let mut worst = 0.0f64;
        for l in -n..=n {
            let d = (self.get(l) - other.get(l)).norm();
            if d > worst {
                worst = d;
            }
        }
        worst
    }
}

/// Coefficients of the pointwise product: full discrete convolution, degree
/// N_c + N_d, accumulated in fixed ascending-index order.
pub fn coeff_convolve(c: &CoeffSeq, d: &CoeffSeq) -> Result<CoeffSeq> {
    coeff_convolve_with_cap(c, d, DEFAULT_COEFF_CAP)
}

pub fn coeff_convolve_with_cap(c: &CoeffSeq, d: &CoeffSeq, cap: usize) -> Result<CoeffSeq> {
    let n_out = c.degree() + d.degree();
    let len = 2 * n_out + 1;
    if len > cap {
        return Err(Error::resource(format!(
            "convolution degree {n_out} needs {len} coefficients, cap is {cap}"
        )));
    }
    // Iterate the sparser factor outside so delta-like inputs stay cheap.
    let (small, big) = if c.len() <= d.len() { (c, d) } else { (d, c) };
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    let n_out = n_out as i64;
    for (ls, vs) in small.iter_indexed() {
        if vs.norm_sqr() == 0.0 {
            continue;
        }
        for (lb, vb) in big.iter_indexed() {
            let l = ls + lb;
            out[(l + n_out) as usize] += vs * vb;
        }
    }
    CoeffSeq::from_entries(out)
}

/// Coefficients of x -> c(r x): entry c_l moves to index r*l.
pub fn dilate(c: &CoeffSeq, r: u64) -> Result<CoeffSeq> {
    dilate_with_cap(c, r, DEFAULT_COEFF_CAP)
}

pub fn dilate_with_cap(c: &CoeffSeq, r: u64, cap: usize) -> Result<CoeffSeq> {
    if r < 1 {
        return Err(Error::invalid("dilation factor must be >= 1"));
    }
    let n_out = c.degree() * r as usize;
    let len = 2 * n_out + 1;
    if len > cap {
        return Err(Error::resource(format!(
            "dilation by {r} needs {len} coefficients, cap is {cap}"
        )));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (l, v) in c.iter_indexed() {
        out[(l * r as i64 + n_out as i64) as usize] = v;
    }
    CoeffSeq::from_entries(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(vals: &[(f64, f64)]) -> CoeffSeq {
        CoeffSeq::from_entries(vals.iter().map(|&(r, i)| Complex64::new(r, i)).collect()).unwrap()
    }

    #[test]
    fn delta_is_convolution_identity() {
        let c = seq(&[(1.0, 0.5), (2.0, 0.0), (3.0, -0.5)]);
        let r = coeff_convolve(&c, &CoeffSeq::delta()).unwrap().trim();
        assert_eq!(r, c);
    }

    #[test]
    fn dirichlet_kernel_self_convolution() {
        // D_1 * D_1 = (1, 2, 3, 2, 1): five-term hand convolution.
        let d1 = seq(&[(1.0, 0.0), (1.0, 0.0), (1.0, 0.0)]);
        let r = coeff_convolve(&d1, &d1).unwrap();
        let want = [1.0, 2.0, 3.0, 2.0, 1.0];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(r.entries()[k], Complex64::new(*w, 0.0));
        }
    }

    #[test]
    fn dilate_places_single_mode() {
        // Only c_1 = 1; after dilation by 3 only index 3 is set.
        let c = seq(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let d = dilate(&c, 3).unwrap();
        assert_eq!(d.degree(), 3);
        assert_eq!(d.get(3), Complex64::new(1.0, 0.0));
        for l in -3..3 {
            assert_eq!(d.get(l), Complex64::new(0.0, 0.0));
        }
        assert_eq!(dilate(&CoeffSeq::delta(), 7).unwrap(), CoeffSeq::delta());
    }

    #[test]
    fn norms_on_dirichlet() {
        let d1 = seq(&[(1.0, 0.0), (1.0, 0.0), (1.0, 0.0)]);
        assert!((d1.l2_norm() - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(d1.l1_coeff_norm(), 3.0);
        assert_eq!(d1.sup_coeff_norm(), 1.0);
        let z = CoeffSeq::zero();
        assert_eq!(z.l2_norm(), 0.0);
        assert_eq!(z.l1_coeff_norm(), 0.0);
        assert_eq!(z.sup_coeff_norm(), 0.0);
    }

    #[test]
    fn trim_normalizes_outer_zeros() {
        let c = seq(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        let t = c.trim();
        assert_eq!(t.degree(), 0);
        assert_eq!(t.get(0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn caps_are_enforced() {
        let c = seq(&[(1.0, 0.0), (1.0, 0.0), (1.0, 0.0)]);
        assert!(matches!(
            dilate_with_cap(&c, 100, 50),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            coeff_convolve_with_cap(&c, &c, 3),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn hermitian_checks() {
        let real = seq(&[(2.0, -1.0), (5.0, 0.0), (2.0, 1.0)]);
        assert!(real.is_real_valued(0.0));
        let not = seq(&[(2.0, 1.0), (5.0, 0.0), (2.0, 1.0)]);
        assert!(!not.is_real_valued(1e-12));
    }
}
