//! Direct sampling of cache eviction times.
//!
//! The eviction time of a tagged content under LRU with capacity `C` is the
//! instant the `C`-th distinct other content is requested after the tagged
//! content's last request. Rather than replaying full traces, each sample
//! inverts the request process content by content: only the *first* request
//! after time zero matters for a distinct count, and for a Cox process with
//! cumulative intensity `z H(t - entry)` that first request is
//! `entry + H^{-1}(H(-entry) + W / z)` with `W` standard exponential (no
//! request at all if the target exceeds the profile mass).

use rand::Rng;
use rand_distr::{Distribution, Exp1, Poisson};
use rayon::prelude::*;
use snm_core::{sample_volume, SnmModel};

use crate::error::{Result, SimError};
use crate::rng::replication_rng;

/// Hard cap on horizon extensions before the sampler reports failure.
const MAX_DOUBLINGS: u32 = 64;

/// First request at or after time zero of one content, if any.
fn first_request<R: Rng>(entry: f64, volume: f64, model: &SnmModel, rng: &mut R) -> Option<f64> {
    let profile = &model.profile;
    let seen = profile.cumulative(-entry);
    let wait: f64 = Exp1.sample(rng);
    let target = seen + wait / volume;
    if target >= profile.mass() {
        None
    } else {
        Some((entry + profile.cumulative_inverse(target)).max(0.0))
    }
}

/// Appends contents arriving on `(from, to]` together with their first
/// post-zero request times.
fn extend_contents<R: Rng>(
    from: f64,
    to: f64,
    model: &SnmModel,
    rng: &mut R,
    firsts: &mut Vec<f64>,
) {
    let span = to - from;
    let count = Poisson::new(model.lambda * span)
        .expect("arrival mass is positive")
        .sample(rng) as u64;
    for _ in 0..count {
        let entry = from + rng.random::<f64>() * span;
        let volume = sample_volume(&model.volume, rng);
        if let Some(t) = first_request(entry, volume, model, rng) {
            firsts.push(t);
        }
    }
}

fn single_eviction_time<R: Rng>(cache_size: usize, model: &SnmModel, rng: &mut R) -> Result<f64> {
    let padding = model.profile.seed_padding();
    // Distinct contents cannot appear faster than requests, so lambda times
    // the mean volume bounds the distinct rate and twice the implied time is
    // a sensible first horizon.
    let mut horizon = (2.0 * cache_size as f64 / (model.lambda * model.mean_volume())).max(1e-3);
    let mut firsts: Vec<f64> = Vec::new();
    extend_contents(-padding, horizon, model, rng, &mut firsts);
    for round in 0..=MAX_DOUBLINGS {
        if firsts.len() >= cache_size {
            // Contents not yet generated enter after `horizon`, hence cannot
            // beat any first-request time at or below it.
            firsts.sort_unstable_by(f64::total_cmp);
            let kth = firsts[cache_size - 1];
            if kth <= horizon {
                return Ok(kth);
            }
        }
        if round < MAX_DOUBLINGS {
            extend_contents(horizon, 2.0 * horizon, model, rng, &mut firsts);
            horizon *= 2.0;
        }
    }
    Err(SimError::HorizonOverflow {
        cache_size,
        distinct: firsts.len(),
        doublings: MAX_DOUBLINGS,
        horizon,
    })
}

/// Draws `samples` independent eviction times for a cache of `cache_size`.
///
/// Sample `i` uses RNG stream `i` of `seed`, so results are reproducible,
/// independent of parallel scheduling, and stable under partial reruns.
pub fn sample_eviction_times(
    cache_size: usize,
    model: &SnmModel,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if cache_size == 0 || samples == 0 {
        return Err(SimError::InvalidParameter(
            "cache size and sample count must be at least 1".into(),
        ));
    }
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = replication_rng(seed, i as u64);
            single_eviction_time(cache_size, model, &mut rng)
        })
        .collect()
}

/// Counts, per replication, the distinct contents requested in `[0, t]`.
pub fn empirical_distinct_count(
    model: &SnmModel,
    t: f64,
    replications: usize,
    seed: u64,
) -> Result<Vec<u64>> {
    if !(t.is_finite() && t > 0.0) {
        return Err(SimError::InvalidParameter(format!(
            "window length must be positive and finite, got {t}"
        )));
    }
    if replications == 0 {
        return Err(SimError::InvalidParameter(
            "replication count must be at least 1".into(),
        ));
    }
    let padding = model.profile.seed_padding();
    Ok((0..replications)
        .into_par_iter()
        .map(|i| {
            let mut rng = replication_rng(seed, i as u64);
            let mut firsts = Vec::new();
            extend_contents(-padding, t, model, &mut rng, &mut firsts);
            firsts.iter().filter(|&&f| f <= t).count() as u64
        })
        .collect())
}
