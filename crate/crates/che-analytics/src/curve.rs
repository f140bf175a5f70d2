//! One fully annotated point of the analytic hit-probability curve.

use snm_core::{NumericsConfig, SnmModel};

use crate::asymptotics::normal_approx_bounds;
use crate::bound::che_error_bound_at;
use crate::error::Result;
use crate::eviction::eviction_time_che;
use crate::hit::hit_prob_che;

/// Analytic curve point for one cache size.
///
/// Invariants: `lambda * g(t_c) = cache_size` within the root tolerance,
/// `kolmogorov = 2 * sqrt(wasserstein)`, `delta_star` in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheCurvePoint {
    /// Cache size `C` (real-valued in the analytics).
    pub cache_size: f64,
    /// Characteristic time `t_C`.
    pub t_c: f64,
    /// Hit probability `p_hit_che(t_C)`.
    pub p_hit_che: f64,
    /// Rigorous accuracy bound on the hit probability.
    pub err_bound: f64,
    /// The deviation radius that produced `err_bound`.
    pub delta_star: f64,
    /// Wasserstein bound on the distinct-count normal approximation at `t_C`.
    pub wasserstein: f64,
    /// Kolmogorov bound, always `2 sqrt(wasserstein)`.
    pub kolmogorov: f64,
}

/// Computes the full annotated curve point for cache size `cache_size`,
/// minimising the error bound over `delta` unless one is pinned.
pub fn che_curve_point(
    cache_size: f64,
    delta: Option<f64>,
    model: &SnmModel,
    cfg: &NumericsConfig,
) -> Result<CheCurvePoint> {
    let t_c = eviction_time_che(cache_size, model, cfg)?;
    let p_hit_che = hit_prob_che(t_c, model, cfg)?;
    let (err_bound, delta_star) = che_error_bound_at(cache_size, t_c, delta, model, cfg)?;
    let (wasserstein, kolmogorov) = normal_approx_bounds(t_c, model, cfg)?;
    Ok(CheCurvePoint {
        cache_size,
        t_c,
        p_hit_che,
        err_bound,
        delta_star,
        wasserstein,
        kolmogorov,
    })
}
