//! In-cache and hit probabilities under the characteristic-time approximation.

use snm_core::{integrate, volume_mgf_deriv, NumericsConfig, SnmModel};

use crate::error::{CheError, Result};

fn check_timescale(theta: f64) -> Result<()> {
    if !(theta.is_finite() && theta >= 0.0) {
        return Err(CheError::InvalidParameter(format!(
            "cache timescale must be non-negative and finite, got {theta}"
        )));
    }
    Ok(())
}

/// Probability that a content of age `tau` and volume `z` sits in a cache with
/// timescale `theta`: it does iff it was requested in the last `theta` of time,
///
/// `p = 1 - exp(-z * (H(tau) - H(tau - theta)))`.
///
/// Zero whenever the window misses the profile support (young or expired
/// contents alike).
pub fn in_prob_che(tau: f64, z: f64, theta: f64, model: &SnmModel) -> Result<f64> {
    check_timescale(theta)?;
    if !(z.is_finite() && z >= 0.0) {
        return Err(CheError::InvalidParameter(format!(
            "volume must be non-negative and finite, got {z}"
        )));
    }
    let window = model.profile.cumulative(tau) - model.profile.cumulative(tau - theta);
    Ok(-(-z * window).exp_m1())
}

/// Stationary per-request hit probability of a cache with timescale `theta`:
///
/// `p_hit = 1 - (1 / E[Z]) int_0^inf h(u) phi'(-(H(u) - H(u - theta))) du`.
///
/// Requests land on contents at ages distributed like `h`; conditioning on the
/// age and volume and averaging the in-probability gives the mgf-derivative
/// form above. Nondecreasing in `theta`, 0 at `theta = 0`, and saturating once
/// `theta` covers the whole support.
pub fn hit_prob_che(theta: f64, model: &SnmModel, cfg: &NumericsConfig) -> Result<f64> {
    check_timescale(theta)?;
    if theta == 0.0 {
        return Ok(0.0);
    }
    let profile = &model.profile;
    let volume = &model.volume;
    let end = profile.support_end();
    let mut cuts = profile.knots();
    cuts.extend(profile.knots().iter().map(|k| k + theta));

    let miss_mass = integrate(
        |u| {
            let h = profile.intensity(u);
            if h == 0.0 {
                return Ok(0.0);
            }
            let window = profile.cumulative(u) - profile.cumulative(u - theta);
            Ok(h * volume_mgf_deriv(-window, volume, cfg)?)
        },
        0.0,
        end,
        &cuts,
        cfg,
        "hit probability",
    )?;

    let normaliser = volume.mean() * profile.mass();
    Ok((1.0 - miss_mass.value / normaliser).clamp(0.0, 1.0))
}
