use serde::{Deserialize, Serialize};

/// Working-precision description attached to every certified computation.
///
/// `bits = 53` is native f64. Anything above that routes the linear-algebra
/// kernels through the software big-float in [`crate::mpfloat`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct PrecisionContext {
    /// Mantissa bits p >= 53.
    pub bits: u32,
    /// Condition-estimate threshold beyond which solvers escalate precision.
    pub escalation_threshold: f64,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            bits: 53,
            escalation_threshold: 1e8,
        }
    }
}

impl PrecisionContext {
    pub fn new(bits: u32) -> Self {
        PrecisionContext {
            bits: bits.max(53),
            ..Default::default()
        }
    }

    /// Unit roundoff 2^-p.
    pub fn unit_roundoff(&self) -> f64 {
        (2.0f64).powi(-(self.bits.min(1074) as i32))
    }

    /// Precision tier used after escalation (>= 128 bits as required for the
    /// ill-conditioned node systems).
    pub fn escalated(&self) -> Self {
        PrecisionContext {
            bits: self.bits.max(192),
            escalation_threshold: self.escalation_threshold,
        }
    }

    pub fn is_native(&self) -> bool {
        self.bits <= 53
    }
}
