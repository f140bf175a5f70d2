//! Large-deviation, central-limit and normal-approximation regimes of the
//! eviction time.

use snm_core::{volume_mgf, NumericsConfig, SnmModel};

use crate::error::{CheError, Result};
use crate::eviction::eviction_time_che;
use crate::g::expected_distinct_g;

/// Arrival-rate context for the eviction-time rate function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFunctionCtx {
    pub lambda: f64,
}

impl RateFunctionCtx {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(CheError::InvalidParameter(format!(
                "lambda must be positive and finite, got {lambda}"
            )));
        }
        Ok(Self { lambda })
    }
}

/// Large-deviation rate `I(x) = lambda x - 1 - ln(lambda x)` of the scaled
/// eviction time, with `I(0) = +infinity`. Strictly convex, with its unique
/// zero at `x = 1 / lambda` and no other stationary points.
pub fn rate_function(ctx: &RateFunctionCtx, x: f64) -> f64 {
    debug_assert!(x >= 0.0, "rate function needs x >= 0");
    let lx = ctx.lambda * x;
    if lx <= 0.0 {
        return f64::INFINITY;
    }
    // Stable near the zero: I = e - ln(1 + e) with e = lambda x - 1.
    let e = lx - 1.0;
    e - e.ln_1p()
}

/// Leading exponents of the eviction-time deviation probabilities
/// `P(T_C > t_C (1 + delta))` and `P(T_C <= t_C (1 - delta))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LdExponents {
    /// Exponent of the upper (late eviction) tail: `C * I(g(t_C(1+delta))/C)`.
    pub upper: f64,
    /// Exponent of the lower (early eviction) tail: `C * I(g(t_C(1-delta))/C)`.
    pub lower: f64,
}

/// Deviation exponents of `T_C` around the characteristic time.
pub fn ld_deviation_exponents(
    cache_size: f64,
    delta: f64,
    model: &SnmModel,
    cfg: &NumericsConfig,
) -> Result<LdExponents> {
    if !(delta.is_finite() && delta > 0.0 && delta < 1.0) {
        return Err(CheError::InvalidParameter(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let t_c = eviction_time_che(cache_size, model, cfg)?;
    let ctx = RateFunctionCtx::new(model.lambda)?;
    let g_hi = expected_distinct_g(t_c * (1.0 + delta), model, cfg)?;
    let g_lo = expected_distinct_g(t_c * (1.0 - delta), model, cfg)?;
    Ok(LdExponents {
        upper: cache_size * rate_function(&ctx, g_hi / cache_size),
        lower: cache_size * rate_function(&ctx, g_lo / cache_size),
    })
}

/// CLT scale of the eviction time: `f(x) = sqrt(x / (lambda (1 - phi(-1))))`,
/// so that `(T_C - t_C) / f(t_C)` is asymptotically standard normal.
pub fn clt_scale(x: f64, model: &SnmModel, cfg: &NumericsConfig) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(CheError::InvalidParameter(format!(
            "clt scale needs x >= 0, got {x}"
        )));
    }
    let phi = volume_mgf(-model.profile.mass(), &model.volume, cfg)?;
    let slope = 1.0 - phi;
    if slope <= f64::EPSILON {
        return Err(CheError::DegenerateVolume);
    }
    Ok((x / (model.lambda * slope)).sqrt())
}

/// Normal-approximation error for the distinct-count process at window `t`:
/// Wasserstein distance at most `1 / sqrt(lambda g(t))` and Kolmogorov
/// distance at most twice its square root.
pub fn normal_approx_bounds(t: f64, model: &SnmModel, cfg: &NumericsConfig) -> Result<(f64, f64)> {
    if !(t.is_finite() && t > 0.0) {
        return Err(CheError::InvalidParameter(format!(
            "normal approximation needs t > 0, got {t}"
        )));
    }
    let mass = model.lambda * expected_distinct_g(t, model, cfg)?;
    let wasserstein = mass.sqrt().recip();
    Ok((wasserstein, 2.0 * wasserstein.sqrt()))
}
