use crate::error::{Result, SnmError};
use crate::profile::ProfileSpec;
use crate::volume::VolumeSpec;

/// Shot-noise request model: contents enter as a Poisson process of rate
/// `lambda`, each requesting at intensity `z * h(age)` with volume `z` drawn
/// from the volume law.
#[derive(Debug, Clone, PartialEq)]
pub struct SnmModel {
    /// Content arrival rate (contents per unit time), strictly positive.
    pub lambda: f64,
    pub profile: ProfileSpec,
    pub volume: VolumeSpec,
}

impl SnmModel {
    pub fn new(lambda: f64, profile: ProfileSpec, volume: VolumeSpec) -> Result<Self> {
        let model = Self {
            lambda,
            profile,
            volume,
        };
        model.validate()?;
        Ok(model)
    }

    /// Re-checks every construction invariant.
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(SnmError::InvalidParameter(format!(
                "arrival rate lambda must be positive and finite, got {}",
                self.lambda
            )));
        }
        self.profile.validate()?;
        self.volume.validate()
    }

    /// Mean number of requests a content receives over its whole life.
    pub fn mean_volume(&self) -> f64 {
        self.volume.mean() * self.profile.mass()
    }
}
