//! Expected number of distinct contents requested in a window.
//!
//! `g(t)` is the mean number of distinct contents (other than a tagged one)
//! requested during an interval of length `t` in the stationary regime,
//! normalised by the arrival rate: the cache sees on average `lambda * g(t)`
//! distinct competitors. Everything downstream (characteristic time, hit
//! probability, deviation bounds) is driven by this curve.

use snm_core::{
    integrate, volume_expectation, volume_mgf, NumericsConfig, ProfileSpec, SnmModel, VolumeSpec,
};

use crate::error::{CheError, Result};

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(CheError::InvalidParameter(format!(
            "window length must be non-negative and finite, got {t}"
        )));
    }
    Ok(())
}

/// `g(t)` for the rectangular profile, in closed form up to one volume
/// expectation:
///
/// `g(t) = 2(t^L) + (t v L - t^L) * (1 - phi(-(t^L)/L)) - 2 E[(L/Z)(1 - exp(-(t^L) Z / L))]`
///
/// where `t^L = min(t, L)` and `t v L = max(t, L)`. For `t > L` the curve is
/// affine with slope `1 - phi(-1)`.
pub fn g_rect_closed(
    t: f64,
    lifespan: f64,
    volume: &VolumeSpec,
    cfg: &NumericsConfig,
) -> Result<f64> {
    check_time(t)?;
    if !(lifespan.is_finite() && lifespan > 0.0) {
        return Err(CheError::InvalidParameter(format!(
            "lifespan must be positive, got {lifespan}"
        )));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let s = t.min(lifespan);
    let phi = volume_mgf(-s / lifespan, volume, cfg)?;
    // 1 - exp(-x) <= x keeps the weight bounded by s/L * z * L/z = s.
    let tail = volume_expectation(
        |z| (lifespan / z) * (-(-s * z / lifespan).exp_m1()),
        volume,
        cfg,
    )?;
    Ok(2.0 * s + (t.max(lifespan) - s) * (1.0 - phi) - 2.0 * tail)
}

/// `g(t)` by adaptive quadrature of the two-piece decomposition
///
/// `g(t) = int_0^t [1 - phi(-H(u))] du + int_0^inf [1 - phi(-(H(u+t) - H(u)))] du`.
///
/// Both pieces truncate exactly: the first integrand is constant once `u`
/// passes the support end `E`, the second vanishes there, so no improper
/// horizon is ever needed for compactly supported profiles.
pub fn expected_distinct_g_quadrature(
    t: f64,
    model: &SnmModel,
    cfg: &NumericsConfig,
) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let profile = &model.profile;
    let volume = &model.volume;
    let end = profile.support_end();
    let knots = profile.knots();

    let head_end = t.min(end);
    let head = integrate(
        |u| {
            let phi = volume_mgf(-profile.cumulative(u), volume, cfg)?;
            Ok(1.0 - phi)
        },
        0.0,
        head_end,
        &knots,
        cfg,
        "g head piece",
    )?;

    let saturated = if t > end {
        (t - end) * (1.0 - volume_mgf(-profile.mass(), volume, cfg)?)
    } else {
        0.0
    };

    let mut cuts = knots.clone();
    cuts.extend(knots.iter().map(|k| k - t));
    let body = integrate(
        |u| {
            let mass = profile.cumulative(u + t) - profile.cumulative(u);
            let phi = volume_mgf(-mass, volume, cfg)?;
            Ok(1.0 - phi)
        },
        0.0,
        end,
        &cuts,
        cfg,
        "g body piece",
    )?;

    Ok(head.value + saturated + body.value)
}

/// Expected distinct-content curve `g(t)`; dispatches to the rectangular
/// closed form when available, otherwise to quadrature.
pub fn expected_distinct_g(t: f64, model: &SnmModel, cfg: &NumericsConfig) -> Result<f64> {
    match model.profile {
        ProfileSpec::Rectangular { lifespan } => g_rect_closed(t, lifespan, &model.volume, cfg),
        ProfileSpec::Tabulated(_) => expected_distinct_g_quadrature(t, model, cfg),
    }
}
