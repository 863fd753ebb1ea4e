use serde::{Deserialize, Serialize};

/// A named numeric certificate: a claimed bound together with the measured
/// quantity and whatever correction was added to make the grid measurement
/// rigorous. `slack = bound - (measured + correction)`; nonnegative slack
/// means the certificate holds.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Certificate {
    pub name: String,
    pub bound: f64,
    pub measured: f64,
    /// Additive rigor term (Bernstein correction, truncation tail, residual).
    pub correction: f64,
    /// Grid size used for the measurement, 0 when not grid-based.
    pub grid: u64,
    /// How the certificate was obtained (grid+bernstein, exact, composite...).
    pub method: String,
}

impl Certificate {
    pub fn new(
        name: impl Into<String>,
        bound: f64,
        measured: f64,
        correction: f64,
        grid: u64,
        method: impl Into<String>,
    ) -> Self {
        Certificate {
            name: name.into(),
            bound,
            measured,
            correction,
            grid,
            method: method.into(),
        }
    }

    pub fn exact(name: impl Into<String>, bound: f64, measured: f64) -> Self {
        Certificate::new(name, bound, measured, 0.0, 0, "exact")
    }

    pub fn slack(&self) -> f64 {
        self.bound - (self.measured + self.correction)
    }

    pub fn holds(&self) -> bool {
        self.slack() >= 0.0 && self.bound.is_finite() && self.measured.is_finite()
    }
}

/// Convenience: check a whole batch, returning the first violated one.
pub fn first_violation(certs: &[Certificate]) -> Option<&Certificate> {
    certs.iter().find(|c| !c.holds())
}
