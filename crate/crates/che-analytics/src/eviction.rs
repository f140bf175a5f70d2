//! Characteristic-time inversion: solve `lambda * g(t_C) = C`.
//!
//! Under the approximation, an LRU cache of capacity `C` evicts an idle
//! content after a deterministic time `t_C`, the unique root of
//! `lambda * g(t) = C`. `g` is strictly increasing with `g(t) <= E[Z] * t`,
//! which yields a guaranteed lower starting point for bracket expansion.

use snm_core::NumericsConfig;
use snm_core::SnmModel;

use crate::error::{CheError, Result};
use crate::g::expected_distinct_g;

const MAX_DOUBLINGS: usize = 128;
const MAX_ROOT_ITERATIONS: usize = 100;

/// Characteristic time `t_C` with `|lambda * g(t_C) - C| / C <= root_rel_tol`.
pub fn eviction_time_che(cache_size: f64, model: &SnmModel, cfg: &NumericsConfig) -> Result<f64> {
    if !(cache_size.is_finite() && cache_size > 0.0) {
        return Err(CheError::InvalidParameter(format!(
            "cache size must be positive and finite, got {cache_size}"
        )));
    }
    let lambda = model.lambda;
    let target = cache_size / lambda;
    let residual_tol = cfg.root_rel_tol * target;

    // g(t) <= mean_volume * t, so t_C >= target / mean_volume.
    let mut lo = target / model.mean_volume();
    let mut f_lo = expected_distinct_g(lo, model, cfg)? - target;
    if f_lo.abs() <= residual_tol {
        return Ok(lo);
    }
    if f_lo > 0.0 {
        // Quadrature noise put the lower bound above the target; fall back to
        // a bracket that provably undershoots.
        lo = 0.0;
        f_lo = -target;
    }

    let mut hi = 2.0 * lo.max(f64::MIN_POSITIVE.sqrt());
    let mut f_hi = expected_distinct_g(hi, model, cfg)? - target;
    let mut doublings = 0;
    while f_hi < 0.0 {
        if doublings >= MAX_DOUBLINGS {
            return Err(CheError::BracketExpansion {
                hi,
                reached: lambda * (f_hi + target),
                target: cache_size,
            });
        }
        lo = hi;
        f_lo = f_hi;
        hi *= 2.0;
        f_hi = expected_distinct_g(hi, model, cfg)? - target;
        doublings += 1;
    }
    if f_hi.abs() <= residual_tol {
        return Ok(hi);
    }

    // Safeguarded secant: accept the secant point only if it falls strictly
    // inside the bracket and keeps shrinking it, otherwise bisect.
    let mut width = hi - lo;
    for iteration in 0..MAX_ROOT_ITERATIONS {
        let mut t = hi - f_hi * (hi - lo) / (f_hi - f_lo);
        if !t.is_finite() || t <= lo || t >= hi || (iteration % 2 == 1 && hi - lo > 0.5 * width) {
            t = 0.5 * (lo + hi);
        }
        if iteration % 2 == 1 {
            width = hi - lo;
        }
        let f_t = expected_distinct_g(t, model, cfg)? - target;
        if f_t.abs() <= residual_tol {
            return Ok(t);
        }
        if f_t < 0.0 {
            lo = t;
            f_lo = f_t;
        } else {
            hi = t;
            f_hi = f_t;
        }
        if hi - lo <= f64::EPSILON * hi.abs() {
            break;
        }
    }

    let best = 0.5 * (lo + hi);
    let residual = (expected_distinct_g(best, model, cfg)? - target).abs() / target;
    Err(CheError::RootNoConvergence {
        best,
        residual,
        iterations: MAX_ROOT_ITERATIONS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use snm_core::{ProfileSpec, VolumeSpec};

    fn model(lambda: f64) -> SnmModel {
        SnmModel::new(
            lambda,
            ProfileSpec::rectangular(1.0).unwrap(),
            VolumeSpec::deterministic(1.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn known_characteristic_times_for_unit_rectangular_model() {
        let cfg = NumericsConfig::default();
        let e_inv = (-1.0_f64).exp();
        // g(2) = 1 + exp(-1) and g(L) = 2 L exp(-1), so these cache sizes
        // invert to t = 2 and t = L exactly.
        for lambda in [1.0, 3.0] {
            let m = model(lambda);
            let t = eviction_time_che(lambda * (1.0 + e_inv), &m, &cfg).unwrap();
            assert_relative_eq!(t, 2.0, max_relative = 1e-7);
            let t = eviction_time_che(lambda * 2.0 * e_inv, &m, &cfg).unwrap();
            assert_relative_eq!(t, 1.0, max_relative = 1e-7);
        }
    }

    #[test]
    fn monotone_in_cache_size() {
        let cfg = NumericsConfig::default();
        let m = model(10.0);
        let mut last = 0.0;
        for c in [1.0, 2.0, 5.0, 10.0, 20.0, 40.0] {
            let t = eviction_time_che(c, &m, &cfg).unwrap();
            assert!(t > last, "t_C must increase with C");
            last = t;
        }
    }

    #[test]
    fn round_trip_residual_within_tolerance() {
        let cfg = NumericsConfig::default();
        let m = SnmModel::new(
            100.0,
            ProfileSpec::rectangular(30.0).unwrap(),
            VolumeSpec::pareto(1.5, 2.0).unwrap(),
        )
        .unwrap();
        for c in [5.0, 50.0, 500.0] {
            let t = eviction_time_che(c, &m, &cfg).unwrap();
            let g = expected_distinct_g(t, &m, &cfg).unwrap();
            assert!(
                ((m.lambda * g - c) / c).abs() <= cfg.root_rel_tol,
                "residual too large at C = {c}"
            );
        }
    }

    #[test]
    fn rejects_non_positive_cache_size() {
        let cfg = NumericsConfig::default();
        let m = model(1.0);
        assert!(eviction_time_che(0.0, &m, &cfg).is_err());
        assert!(eviction_time_che(-3.0, &m, &cfg).is_err());
    }
}
