//! Monte-Carlo oracle of the defining second-cache hit event.
//!
//! Whereas the bounds reason about the event analytically, this sampler
//! plays it out: draw the content's full request history (the probe itself
//! is excluded — conditioning a Poisson process on a point at the probe adds
//! exactly that point and nothing else) and check both clauses of the event
//! directly. Used to validate the bounds, never to replace them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use snm_core::ProfileSpec;

use crate::error::{Result, TandemError};
use crate::query::TandemQuery;

/// Draws the request ages of one content over its whole support, sorted.
fn request_ages<R: Rng>(volume: f64, profile: &ProfileSpec, rng: &mut R, out: &mut Vec<f64>) {
    out.clear();
    let mass = profile.mass();
    let count = Poisson::new(volume * mass)
        .expect("request mass is positive")
        .sample(rng) as u64;
    for _ in 0..count {
        out.push(profile.cumulative_inverse(mass * rng.random::<f64>()));
    }
    out.sort_unstable_by(f64::total_cmp);
}

/// Does this realisation hit the second cache?
fn is_hit(ages: &[f64], query: &TandemQuery) -> bool {
    let tau = query.age;
    // (a) the probe misses cache 1: no request in (age - t_C1, age].
    if ages.iter().any(|&a| a > tau - query.t_c1 && a <= tau) {
        return false;
    }
    // (b) some request in (age - t_C2, age - t_C1] had a backward gap above
    // t_C1 (first request ever counts as an infinite gap).
    let mut prev: Option<f64> = None;
    for &a in ages {
        let long_gap = prev.is_none_or(|p| a - p > query.t_c1);
        if a > tau - query.t_c2 && a <= tau - query.t_c1 && long_gap {
            return true;
        }
        prev = Some(a);
    }
    false
}

/// Monte-Carlo estimate (and standard error) of the second-cache hit
/// probability, over `samples` independent request histories.
pub fn tandem_hit_mc(
    query: &TandemQuery,
    profile: &ProfileSpec,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if samples == 0 {
        return Err(TandemError::InvalidParameter(
            "sample count must be at least 1".into(),
        ));
    }
    let hits: u64 = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let mut ages = Vec::new();
            request_ages(query.volume, profile, &mut rng, &mut ages);
            u64::from(is_hit(&ages, query))
        })
        .sum();
    let estimate = hits as f64 / samples as f64;
    let std_err = (estimate * (1.0 - estimate) / samples as f64).sqrt();
    Ok((estimate, std_err))
}
