//! Content volume (total expected request count) distributions.
//!
//! The volume `Z` scales each content's request intensity. Analytics only ever
//! need the moment generating function `phi(theta) = E[exp(theta Z)]` and its
//! derivative on `theta <= 0`, plus samples for simulation.
//!
//! Pareto expectations have no elementary closed form. They are evaluated by
//! adaptive quadrature after the substitution `z = a / v`, which maps the
//! infinite tail onto `(0, 1]` exactly: for bounded `f`,
//! `E[f(Z)] = alpha * integral_0^1 f(a/v) v^(alpha-1) dv`. Mean-weighted
//! expectations `E[Z f(Z)]` get an extra power substitution `v = w^m` that
//! removes the endpoint singularity when `alpha < 2`.

use rand::Rng;

use crate::error::{Result, SnmError};
use crate::numerics::{integrate, NumericsConfig};

/// Distribution of the content volume `Z > 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum VolumeSpec {
    /// Every content has the same volume `z0`.
    Deterministic { z0: f64 },
    /// Pareto density `alpha a^alpha / z^(alpha+1)` on `[a, infinity)`.
    Pareto { scale: f64, exponent: f64 },
}

impl VolumeSpec {
    /// Point mass at `z0 > 0`.
    pub fn deterministic(z0: f64) -> Result<Self> {
        if !(z0.is_finite() && z0 > 0.0) {
            return Err(SnmError::InvalidParameter(format!(
                "deterministic volume must be positive and finite, got {z0}"
            )));
        }
        Ok(Self::Deterministic { z0 })
    }

    /// Pareto volume with scale `a > 0` and exponent `alpha > 1` (finite mean).
    pub fn pareto(scale: f64, exponent: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(SnmError::InvalidParameter(format!(
                "pareto scale must be positive and finite, got {scale}"
            )));
        }
        if !(exponent.is_finite() && exponent > 1.0) {
            return Err(SnmError::InvalidParameter(format!(
                "pareto exponent must exceed 1 for a finite mean, got {exponent}"
            )));
        }
        Ok(Self::Pareto { scale, exponent })
    }

    /// Re-checks construction invariants.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Deterministic { z0 } => Self::deterministic(z0).map(|_| ()),
            Self::Pareto { scale, exponent } => Self::pareto(scale, exponent).map(|_| ()),
        }
    }

    /// Mean volume `E[Z]`.
    pub fn mean(&self) -> f64 {
        match *self {
            Self::Deterministic { z0 } => z0,
            Self::Pareto { scale, exponent } => exponent * scale / (exponent - 1.0),
        }
    }
}

/// Regularising power for the tail substitution: chosen so the transformed
/// integrand of `E[Z f(Z)]` stays bounded at the origin.
fn tail_power(exponent: f64) -> f64 {
    (1.0 / (exponent - 1.0)).ceil().clamp(1.0, 64.0)
}

/// Expectation `E[f(Z)]` of a bounded function under the volume law.
pub fn volume_expectation<F>(f: F, volume: &VolumeSpec, cfg: &NumericsConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    match *volume {
        VolumeSpec::Deterministic { z0 } => Ok(f(z0)),
        VolumeSpec::Pareto { scale, exponent } => {
            let q = integrate(
                |v| {
                    if v <= 0.0 {
                        return Ok(0.0);
                    }
                    Ok(f(scale / v) * v.powf(exponent - 1.0))
                },
                0.0,
                1.0,
                &[],
                cfg,
                "volume expectation",
            )?;
            Ok(exponent * q.value)
        }
    }
}

/// Mean-weighted expectation `E[Z f(Z)]` of a bounded function.
pub fn volume_weighted_expectation<F>(
    f: F,
    volume: &VolumeSpec,
    cfg: &NumericsConfig,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    try_volume_weighted_expectation(|z| Ok(f(z)), volume, cfg)
}

/// As [`volume_weighted_expectation`], for integrands that can themselves
/// fail (e.g. nested quadratures).
pub fn try_volume_weighted_expectation<F>(
    f: F,
    volume: &VolumeSpec,
    cfg: &NumericsConfig,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    match *volume {
        VolumeSpec::Deterministic { z0 } => Ok(z0 * f(z0)?),
        VolumeSpec::Pareto { scale, exponent } => {
            let m = tail_power(exponent);
            let power = m * (exponent - 1.0) - 1.0;
            let q = integrate(
                |w| {
                    if w <= 0.0 {
                        return Ok(0.0);
                    }
                    let z = scale * w.powf(-m);
                    if !z.is_finite() {
                        // Deep tail: f is bounded and the weight underflows.
                        return Ok(0.0);
                    }
                    Ok(f(z)? * w.powf(power))
                },
                0.0,
                1.0,
                &[],
                cfg,
                "weighted volume expectation",
            )?;
            Ok(exponent * scale * m * q.value)
        }
    }
}

/// Moment generating function `phi(theta) = E[exp(theta Z)]` for `theta <= 0`.
pub fn volume_mgf(theta: f64, volume: &VolumeSpec, cfg: &NumericsConfig) -> Result<f64> {
    if !theta.is_finite() || theta > 0.0 {
        return Err(SnmError::MgfDomain { theta });
    }
    if theta == 0.0 {
        return Ok(1.0);
    }
    match *volume {
        VolumeSpec::Deterministic { z0 } => Ok((theta * z0).exp()),
        VolumeSpec::Pareto { .. } => volume_expectation(|z| (theta * z).exp(), volume, cfg),
    }
}

/// Derivative `phi'(theta) = E[Z exp(theta Z)]` for `theta <= 0`.
pub fn volume_mgf_deriv(theta: f64, volume: &VolumeSpec, cfg: &NumericsConfig) -> Result<f64> {
    if !theta.is_finite() || theta > 0.0 {
        return Err(SnmError::MgfDomain { theta });
    }
    if theta == 0.0 {
        return Ok(volume.mean());
    }
    match *volume {
        VolumeSpec::Deterministic { z0 } => Ok(z0 * (theta * z0).exp()),
        VolumeSpec::Pareto { .. } => {
            volume_weighted_expectation(|z| (theta * z).exp(), volume, cfg)
        }
    }
}

/// Draws one volume; Pareto uses inverse-CDF sampling `a * U^(-1/alpha)`.
pub fn sample_volume<R: Rng + ?Sized>(volume: &VolumeSpec, rng: &mut R) -> f64 {
    match *volume {
        VolumeSpec::Deterministic { z0 } => z0,
        VolumeSpec::Pareto { scale, exponent } => {
            // 1 - random() lies in (0, 1], keeping the power finite.
            let u = 1.0 - rng.random::<f64>();
            scale * u.powf(-1.0 / exponent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> NumericsConfig {
        NumericsConfig::default()
    }

    #[test]
    fn mgf_rejects_positive_theta() {
        let v = VolumeSpec::pareto(1.5, 2.0).unwrap();
        assert!(matches!(
            volume_mgf(0.1, &v, &cfg()),
            Err(SnmError::MgfDomain { .. })
        ));
        assert!(matches!(
            volume_mgf_deriv(1.0, &v, &cfg()),
            Err(SnmError::MgfDomain { .. })
        ));
    }

    #[test]
    fn mgf_at_zero_is_one() {
        let det = VolumeSpec::deterministic(2.0).unwrap();
        let par = VolumeSpec::pareto(1.5, 2.0).unwrap();
        assert_eq!(volume_mgf(0.0, &det, &cfg()).unwrap(), 1.0);
        assert_eq!(volume_mgf(0.0, &par, &cfg()).unwrap(), 1.0);
    }

    #[test]
    fn deterministic_mgf_matches_closed_form() {
        let v = VolumeSpec::deterministic(1.0).unwrap();
        assert_relative_eq!(
            volume_mgf(-1.0, &v, &cfg()).unwrap(),
            (-1.0_f64).exp(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn deriv_at_zero_is_the_mean() {
        let par = VolumeSpec::pareto(1.5, 2.0).unwrap();
        assert_relative_eq!(volume_mgf_deriv(0.0, &par, &cfg()).unwrap(), 3.0);
        assert_relative_eq!(par.mean(), 3.0);
    }

    #[test]
    fn deterministic_deriv_matches_closed_form() {
        let v = VolumeSpec::deterministic(0.5).unwrap();
        assert_relative_eq!(
            volume_mgf_deriv(-2.0, &v, &cfg()).unwrap(),
            0.5 * (-1.0_f64).exp(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn pareto_deriv_matches_finite_difference() {
        let v = VolumeSpec::pareto(1.5, 2.0).unwrap();
        let c = cfg();
        let eps = 1e-6;
        let plus = volume_mgf(-1.0 + eps, &v, &c).unwrap();
        let minus = volume_mgf(-1.0 - eps, &v, &c).unwrap();
        let fd = (plus - minus) / (2.0 * eps);
        let deriv = volume_mgf_deriv(-1.0, &v, &c).unwrap();
        assert_relative_eq!(deriv, fd, max_relative = 1e-6);
    }

    #[test]
    fn pareto_deriv_with_low_exponent_converges() {
        // alpha in (1, 2) exercises the power regularisation.
        let v = VolumeSpec::pareto(1.5, 1.5).unwrap();
        let c = cfg();
        let deriv = volume_mgf_deriv(-0.5, &v, &c).unwrap();
        let eps = 1e-6;
        let fd = (volume_mgf(-0.5 + eps, &v, &c).unwrap()
            - volume_mgf(-0.5 - eps, &v, &c).unwrap())
            / (2.0 * eps);
        assert_relative_eq!(deriv, fd, max_relative = 1e-5);
        assert!(deriv > 0.0 && deriv < v.mean());
    }

    #[test]
    fn samplers_respect_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let det = VolumeSpec::deterministic(3.0).unwrap();
        assert_eq!(sample_volume(&det, &mut rng), 3.0);
        let par = VolumeSpec::pareto(1.5, 2.0).unwrap();
        for _ in 0..10_000 {
            assert!(sample_volume(&par, &mut rng) >= 1.5);
        }
    }

    #[test]
    fn constructors_reject_bad_parameters() {
        assert!(VolumeSpec::deterministic(0.0).is_err());
        assert!(VolumeSpec::deterministic(f64::INFINITY).is_err());
        assert!(VolumeSpec::pareto(-1.0, 2.0).is_err());
        assert!(VolumeSpec::pareto(1.5, 1.0).is_err());
        assert!(VolumeSpec::pareto(1.5, f64::NAN).is_err());
    }
}
