//! Minimal software big-float: sign/magnitude `BigUint` mantissa with a
//! binary exponent, rounded to a configurable number of bits after every
//! operation. Only what the node-matrix solver needs: +, -, *, /, abs
//! comparison, f64 round trips. Round-to-nearest (ties away from zero) —
//! plenty for residual-certified solves, no IEEE edge-case semantics.

use num_bigint::BigUint;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq)]
pub struct MpFloat {
    neg: bool,
    mant: BigUint, // zero mantissa <=> value 0, exp then irrelevant
    exp: i64,      // value = (-1)^neg * mant * 2^exp
}

fn nbits(x: &BigUint) -> u64 {
    x.bits()
}

impl MpFloat {
    pub fn zero() -> Self {
        MpFloat {
            neg: false,
            mant: BigUint::zero(),
            exp: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            return Self::zero();
        }
        assert!(v.is_finite(), "MpFloat::from_f64 on non-finite value");
        let bits = v.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        MpFloat {
            neg,
            mant: BigUint::from(mant),
            exp,
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let nb = nbits(&self.mant) as i64;
        // Keep the top 54 bits, round the rest.
        let (top, shift) = if nb > 54 {
            let s = nb - 54;
            let shifted = &self.mant >> ((s - 1) as u64);
            let half = shifted.bit(0);
            let mut t = shifted >> 1u64;
            if half {
                t += 1u32;
            }
            (t, s)
        } else {
            (self.mant.clone(), 0)
        };
        let digs = top.to_u64_digits();
        let m = if digs.is_empty() { 0 } else { digs[0] } as f64;
        let e = (self.exp + shift) as i32;
        let v = m * pow2(e);
        if self.neg {
            -v
        } else {
            v
        }
    }

    fn round(mut self, prec: u32) -> Self {
        let nb = nbits(&self.mant);
        if nb <= prec as u64 {
            return self;
        }
        let s = nb - prec as u64;
        let shifted = &self.mant >> (s - 1);
        let half = shifted.bit(0);
        let mut t = shifted >> 1u64;
        if half {
            t += 1u32;
        }
        self.exp += s as i64;
        self.mant = t;
        // Carry may have added a bit; one more shift keeps prec bits.
        if nbits(&self.mant) > prec as u64 {
            self.mant = &self.mant >> 1u64;
            self.exp += 1;
        }
        self
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            self.clone()
        } else {
            MpFloat {
                neg: !self.neg,
                mant: self.mant.clone(),
                exp: self.exp,
            }
        }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Align to the smaller exponent.
        let (a, b) = (self, other);
        let e = a.exp.min(b.exp);
        // If one operand is negligible at this precision, keep the other.
        let guard = prec as i64 + 4;
        let (ahi, bhi) = (a.exp + nbits(&a.mant) as i64, b.exp + nbits(&b.mant) as i64);
        if ahi < bhi - guard - (nbits(&b.mant) as i64) - 4 {
            // still do exact path below; cheap enough for our sizes
        }
        let ma = &a.mant << ((a.exp - e) as u64);
        let mb = &b.mant << ((b.exp - e) as u64);
        let _ = (ahi, bhi);
        let (neg, mant) = if a.neg == b.neg {
            (a.neg, ma + mb)
        } else {
            match ma.cmp(&mb) {
                std::cmp::Ordering::Equal => return Self::zero(),
                std::cmp::Ordering::Greater => (a.neg, ma - mb),
                std::cmp::Ordering::Less => (b.neg, mb - ma),
            }
        };
        MpFloat { neg, mant, exp: e }.round(prec)
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        MpFloat {
            neg: self.neg != other.neg,
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
        .round(prec)
    }

    pub fn div(&self, other: &Self, prec: u32) -> Self {
        assert!(!other.is_zero(), "MpFloat division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        // Scale the numerator so the quotient carries prec + 2 guard bits.
        let na = nbits(&self.mant) as i64;
        let nb = nbits(&other.mant) as i64;
        let shift = (nb - na + prec as i64 + 2).max(0) as u64;
        let num = &self.mant << shift;
        let q = num / &other.mant;
        MpFloat {
            neg: self.neg != other.neg,
            mant: q,
            exp: self.exp - other.exp - shift as i64,
        }
        .round(prec)
    }

    /// |self| > |other|
    pub fn abs_gt(&self, other: &Self) -> bool {
        if self.is_zero() {
            return false;
        }
        if other.is_zero() {
            return true;
        }
        let ha = self.exp + nbits(&self.mant) as i64;
        let hb = other.exp + nbits(&other.mant) as i64;
        if ha != hb {
            return ha > hb;
        }
        let e = self.exp.min(other.exp);
        (&self.mant << ((self.exp - e) as u64)) > (&other.mant << ((other.exp - e) as u64))
    }
}

fn pow2(e: i32) -> f64 {
    // 2^e without transcendental rounding; handles subnormal range.
    if e >= -1022 && e <= 1023 {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else if e > 1023 {
        f64::INFINITY
    } else {
        // subnormal territory
        f64::from_bits(1) * pow2((e + 1074).max(0)) // 2^-1074 * 2^(e+1074)
    }
}

/// Complex number over MpFloat, just enough for LU solves.
#[derive(Debug, Clone)]
pub struct MpComplex {
    pub re: MpFloat,
    pub im: MpFloat,
}

impl MpComplex {
    pub fn zero() -> Self {
        MpComplex {
            re: MpFloat::zero(),
            im: MpFloat::zero(),
        }
    }
    pub fn from_f64(re: f64, im: f64) -> Self {
        MpComplex {
            re: MpFloat::from_f64(re),
            im: MpFloat::from_f64(im),
        }
    }
    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
    pub fn add(&self, o: &Self, p: u32) -> Self {
        MpComplex {
            re: self.re.add(&o.re, p),
            im: self.im.add(&o.im, p),
        }
    }
    pub fn sub(&self, o: &Self, p: u32) -> Self {
        MpComplex {
            re: self.re.sub(&o.re, p),
            im: self.im.sub(&o.im, p),
        }
    }
    pub fn mul(&self, o: &Self, p: u32) -> Self {
        MpComplex {
            re: self.re.mul(&o.re, p).sub(&self.im.mul(&o.im, p), p),
            im: self.re.mul(&o.im, p).add(&self.im.mul(&o.re, p), p),
        }
    }
    pub fn div(&self, o: &Self, p: u32) -> Self {
        let den = o.re.mul(&o.re, p).add(&o.im.mul(&o.im, p), p);
        let re = self.re.mul(&o.re, p).add(&self.im.mul(&o.im, p), p);
        let im = self.im.mul(&o.re, p).sub(&self.re.mul(&o.im, p), p);
        MpComplex {
            re: re.div(&den, p),
            im: im.div(&den, p),
        }
    }
    /// |re| + |im|, a cheap magnitude proxy for pivoting.
    pub fn mag1(&self) -> MpFloat {
        let ar = MpFloat {
            neg: false,
            ..self.re.clone()
        };
        let ai = MpFloat {
            neg: false,
            ..self.im.clone()
        };
        ar.add(&ai, 64)
    }
    pub fn abs_f64(&self) -> f64 {
        let (r, i) = self.to_c64();
        r.hypot(i)
    }
}
