//! Catalogue-level tandem bounds.
//!
//! The per-content bounds hold for one (age, volume) pair. Averaging them
//! over the stationary request stream — ages weighted by the request
//! intensity `z h(age)`, volumes by their law, normalised by the mean
//! request rate — yields bounds on the fraction of requests hitting the
//! second cache, in the same way the first-cache hit probability averages
//! its per-content counterpart.

use snm_core::{integrate, try_volume_weighted_expectation, NumericsConfig, SnmModel};

use crate::bounds::tandem_bounds;
use crate::error::{Result, TandemError};
use crate::query::{tandem_k, TandemQuery};

/// Which side of the bracket to aggregate.
#[derive(Clone, Copy)]
enum Side {
    Lower,
    Upper,
}

fn aggregate_side(
    side: Side,
    model: &SnmModel,
    t_c1: f64,
    t_c2: f64,
    k: usize,
    cfg: &NumericsConfig,
) -> Result<f64> {
    let profile = &model.profile;
    let end = profile.support_end();

    // The integrand kinks wherever a cell boundary (a fixed offset below the
    // age) crosses a profile knot, directly or shifted by the silent window.
    let mut cuts = profile.knots();
    for i in 0..=k {
        let offset = ((k - i) as f64 * t_c2 + i as f64 * t_c1) / k as f64;
        for knot in profile.knots() {
            cuts.push(knot + offset);
            cuts.push(knot + offset + t_c1);
        }
    }
    for knot in profile.knots() {
        cuts.push(knot + t_c1);
    }

    let weighted = try_volume_weighted_expectation(
        |z| {
            let inner = integrate(
                |age| {
                    let h = profile.intensity(age);
                    if h == 0.0 {
                        return Ok(0.0);
                    }
                    let query = TandemQuery::new(age, z, t_c1, t_c2)
                        .expect("aggregate arguments validated");
                    let bounds = tandem_bounds(&query, profile, cfg).map_err(|e| match e {
                        TandemError::Model(inner) => inner,
                        TandemError::InvalidParameter(msg) => {
                            snm_core::SnmError::InvalidParameter(msg)
                        }
                    })?;
                    let value = match side {
                        Side::Lower => bounds.lower,
                        Side::Upper => bounds.upper,
                    };
                    Ok(h * value)
                },
                0.0,
                end,
                &cuts,
                cfg,
                "tandem aggregate",
            )?;
            Ok(inner.value)
        },
        &model.volume,
        cfg,
    )?;
    Ok(weighted / (model.volume.mean() * profile.mass()))
}

/// Rate-weighted average of the per-content tandem bounds over the whole
/// catalogue: the bracket on the fraction of requests hitting cache 2.
pub fn tandem_hit_aggregate(
    model: &SnmModel,
    t_c1: f64,
    t_c2: f64,
    cfg: &NumericsConfig,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    let k = tandem_k(t_c1, t_c2)?;
    if k == 0 {
        return Ok((0.0, 0.0));
    }
    let lower = aggregate_side(Side::Lower, model, t_c1, t_c2, k, cfg)?;
    let upper = aggregate_side(Side::Upper, model, t_c1, t_c2, k, cfg)?;
    Ok((lower.clamp(0.0, 1.0), upper.clamp(0.0, 1.0)))
}
