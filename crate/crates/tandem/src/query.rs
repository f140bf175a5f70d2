//! Query and result types for the two-cache tandem analysis.

use crate::error::{Result, TandemError};

/// One per-content question: a content of this age and volume is requested
/// now; can that request hit the second cache of a tandem?
///
/// The observation time itself never appears: with multiplicative request
/// intensities `z h(age)` the answer depends on the observation time only
/// through the age.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TandemQuery {
    /// Age of the content at the probe: observation time minus entry time.
    pub age: f64,
    /// Volume mark `z` of the content.
    pub volume: f64,
    /// Characteristic time of the first cache.
    pub t_c1: f64,
    /// Characteristic time of the second cache.
    pub t_c2: f64,
}

impl TandemQuery {
    pub fn new(age: f64, volume: f64, t_c1: f64, t_c2: f64) -> Result<Self> {
        if !age.is_finite() {
            return Err(TandemError::InvalidParameter(format!(
                "age must be finite, got {age}"
            )));
        }
        if !(volume.is_finite() && volume > 0.0) {
            return Err(TandemError::InvalidParameter(format!(
                "volume must be positive and finite, got {volume}"
            )));
        }
        if !(t_c1.is_finite() && t_c1 > 0.0 && t_c2.is_finite() && t_c2 > 0.0) {
            return Err(TandemError::InvalidParameter(format!(
                "characteristic times must be positive and finite, got ({t_c1}, {t_c2})"
            )));
        }
        Ok(Self {
            age,
            volume,
            t_c1,
            t_c2,
        })
    }
}

/// Bracketing of the second-cache hit probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TandemBounds {
    /// Number of partition cells; 0 encodes `t_C2 <= t_C1` (probability 0).
    pub k: usize,
    pub lower: f64,
    pub upper: f64,
    /// True when the bracket is a single point (`k <= 1`).
    pub exact: bool,
}

/// Number of partition cells: 0 if `t_c2 <= t_c1`, otherwise the unique
/// `k >= 1` with `k t_c1 < t_c2 <= (k + 1) t_c1`.
pub fn tandem_k(t_c1: f64, t_c2: f64) -> Result<usize> {
    if !(t_c1.is_finite() && t_c1 > 0.0 && t_c2.is_finite() && t_c2 > 0.0) {
        return Err(TandemError::InvalidParameter(format!(
            "characteristic times must be positive and finite, got ({t_c1}, {t_c2})"
        )));
    }
    if t_c2 <= t_c1 {
        return Ok(0);
    }
    Ok((t_c2 / t_c1).ceil() as usize - 1)
}
