//! Finite unions of closed subintervals of [0,1] with exact rational
//! endpoints. All operations are exact; nothing here rounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Sorted, pairwise-disjoint list of closed intervals [a_i, b_i] within [0,1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalUnion {
    parts: Vec<(Rat, Rat)>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    pub fn full() -> Self {
        IntervalUnion {
            parts: vec![(Rat::zero(), Rat::one())],
        }
    }

    /// Build from arbitrary closed intervals; clamps to [0,1], drops empties,
    /// sorts and merges overlapping or touching parts.
    pub fn from_intervals(raw: Vec<(Rat, Rat)>) -> Result<Self> {
        let zero = Rat::zero();
        let one = Rat::one();
        let mut parts: Vec<(Rat, Rat)> = Vec::with_capacity(raw.len());
        for (a, b) in raw {
            if a > b {
                return Err(Error::invalid("interval with a > b"));
            }
            let a = if a < zero { zero.clone() } else { a };
            let b = if b > one { one.clone() } else { b };
            if a > one || b < zero || a > b {
                continue;
            }
            parts.push((a, b));
        }
        parts.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        let mut merged: Vec<(Rat, Rat)> = Vec::with_capacity(parts.len());
        for (a, b) in parts {
            match merged.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        Ok(IntervalUnion { parts: merged })
    }

    pub fn interval(a: Rat, b: Rat) -> Result<Self> {
        Self::from_intervals(vec![(a, b)])
    }

    pub fn parts(&self) -> &[(Rat, Rat)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn count(&self) -> usize {
        self.parts.len()
    }

    /// Exact total measure.
    pub fn measure(&self) -> Rat {
        let mut s = Rat::zero();
        for (a, b) in &self.parts {
            s += b - a;
        }
        s
    }

    pub fn contains(&self, x: &Rat) -> bool {
        // binary search on the sorted parts
        let mut lo = 0usize;
        let mut hi = self.parts.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            let (a, b) = &self.parts[mid];
            if x < a {
                hi = mid;
            } else if x > b {
                lo = mid + 1;
            } else {
                return true;
            }
        }
        false
    }

    /// Is every point of self inside other?
    pub fn subset_of(&self, other: &IntervalUnion) -> bool {
        // each part must sit inside a single part of other
        let mut j = 0usize;
        'outer: for (a, b) in &self.parts {
            while j < other.parts.len() {
                let (oa, ob) = &other.parts[j];
                if b < oa {
                    return false;
                }
                if a >= oa && b <= ob {
                    continue 'outer;
                }
                if ob < b {
                    j += 1;
                } else {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut raw = self.parts.clone();
        raw.extend(other.parts.iter().cloned());
        IntervalUnion::from_intervals(raw).expect("valid parts")
    }

    pub fn intersect(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut out = Vec::new();
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.parts.len() && j < other.parts.len() {
            let (a1, b1) = &self.parts[i];
            let (a2, b2) = &other.parts[j];
            let lo = if a1 > a2 { a1 } else { a2 };
            let hi = if b1 < b2 { b1 } else { b2 };
            if lo <= hi {
                out.push((lo.clone(), hi.clone()));
            }
            if b1 < b2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalUnion { parts: out }
    }

    /// Closure of the complement within [0,1].
    pub fn complement(&self) -> IntervalUnion {
        let mut out = Vec::new();
        let mut cursor = Rat::zero();
        for (a, b) in &self.parts {
            if *a > cursor {
                out.push((cursor.clone(), a.clone()));
            }
            if *b > cursor {
                cursor = b.clone();
            }
        }
        if cursor < Rat::one() {
            out.push((cursor, Rat::one()));
        }
        IntervalUnion { parts: out }
    }

    /// Minkowski inflation by [-delta, delta], clamped to [0,1].
    pub fn inflate(&self, delta: &Rat) -> Result<IntervalUnion> {
        if delta.is_negative() {
            return Err(Error::invalid("inflation radius must be nonnegative"));
        }
        IntervalUnion::from_intervals(
            self.parts
                .iter()
                .map(|(a, b)| (a - delta, b + delta))
                .collect(),
        )
    }

    /// Shift by a rational t (no wraparound; parts leaving [0,1] are clipped).
    pub fn shift(&self, t: &Rat) -> IntervalUnion {
        IntervalUnion::from_intervals(self.parts.iter().map(|(a, b)| (a + t, b + t)).collect())
            .expect("valid parts")
    }

    /// {x in [0,1] : r*x mod 1 in self} — r translated copies scaled by 1/r.
    pub fn periodic_preimage(&self, r: u64) -> Result<IntervalUnion> {
        if r < 1 {
            return Err(Error::invalid("preimage factor must be >= 1"));
        }
        let rr = Rat::from(BigInt::from(r));
        let mut raw = Vec::with_capacity(self.parts.len() * r as usize);
        for t in 0..r {
            let tt = Rat::from(BigInt::from(t));
            for (a, b) in &self.parts {
                raw.push(((a + &tt) / &rr, (b + &tt) / &rr));
            }
        }
        IntervalUnion::from_intervals(raw)
    }

    /// The longest interval of the complement, if any: (a, b).
    pub fn largest_gap(&self) -> Option<(Rat, Rat)> {
        self.complement()
            .parts
            .into_iter()
            .max_by(|x, y| (&x.1 - &x.0).cmp(&(&y.1 - &y.0)))
    }

    /// Middle-thirds Cantor approximation at the given level (level 0 = [0,1]).
    pub fn cantor(level: u32) -> IntervalUnion {
        let mut cur = IntervalUnion::full();
        let third = rat(1, 3);
        let two_thirds = rat(2, 3);
        for _ in 0..level {
            let mut raw = Vec::with_capacity(cur.parts.len() * 2);
            for (a, b) in &cur.parts {
                let w = b - a;
                raw.push((a.clone(), a + &w * &third));
                raw.push((a + &w * &two_thirds, b.clone()));
            }
            cur = IntervalUnion::from_intervals(raw).expect("valid parts");
        }
        cur
    }
}
