//! Numerical policy: working precision, truncation limits, tolerances.

/// All numerical-control knobs, threaded explicitly through every
/// floating-point operation in the crate. No ambient global state.
#[derive(Clone, Debug)]
pub struct PrecisionContext {
    /// Working mantissa precision in bits (>= 53).
    pub bits: u32,
    /// Override for the initial truncation limit of sums over c.
    /// `None` selects the per-operation default policy.
    pub c_max_initial: Option<u64>,
    /// Hard cap on the truncation limit before a precision error.
    pub c_max_cap: u64,
    /// Threshold for high-precision residual checks (multiplier snapping
    /// consistency, symmetry relations). Defaults to 2^(-bits/2).
    pub tolerance: f64,
    /// Accepted distance from an analytic value to the nearest integer.
    pub rounding_margin: f64,
    /// Sample point in the upper half plane used for multiplier snapping.
    pub sample_point: (f64, f64),
}

impl PrecisionContext {
    pub fn new(bits: u32) -> Self {
        assert!(bits >= 53, "working precision must be at least 53 bits");
        PrecisionContext {
            bits,
            c_max_initial: None,
            c_max_cap: 1_000_000,
            tolerance: 2f64.powi(-((bits / 2) as i32)),
            rounding_margin: 0.25,
            sample_point: (0.1, 0.7),
        }
    }

    /// Double the working precision and the initial truncation limit.
    /// Callers allow at most [`MAX_ESCALATIONS`] rounds before failing.
    pub fn escalate(&self) -> Self {
        let bits = self.bits * 2;
        PrecisionContext {
            bits,
            c_max_initial: self.c_max_initial.map(|c| c * 2),
            tolerance: 2f64.powi(-((bits / 2) as i32)),
            ..self.clone()
        }
    }

    pub fn with_bits(&self, bits: u32) -> Self {
        PrecisionContext {
            bits,
            tolerance: 2f64.powi(-((bits / 2) as i32)),
            ..self.clone()
        }
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::new(128)
    }
}

/// Maximum number of escalation rounds before a hard precision failure.
pub const MAX_ESCALATIONS: u32 = 6;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_values() {
        let ctx = PrecisionContext::default();
        assert_eq!(ctx.bits, 128);
        assert_eq!(ctx.rounding_margin, 0.25);
        assert_eq!(ctx.c_max_cap, 1_000_000);
        assert_eq!(ctx.sample_point, (0.1, 0.7));
        assert_eq!(ctx.tolerance, 2f64.powi(-64));
    }

    #[test]
    fn escalation_doubles() {
        let ctx = PrecisionContext::default().with_bits(128);
        let mut c = ctx.clone();
        c.c_max_initial = Some(64);
        let e = c.escalate();
        assert_eq!(e.bits, 256);
        assert_eq!(e.c_max_initial, Some(128));
        assert!(e.tolerance < c.tolerance);
    }
}
