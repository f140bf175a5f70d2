//! Analytic LRU cache performance under the shot noise request model.
//!
//! The central object is the characteristic time `t_C`: the unique solution
//! of `lambda * g(t) = C`, where `g(t)` is the expected number of distinct
//! contents requested in a window of length `t` by all content processes
//! other than the one under study. Once `t_C` is known, the stationary hit
//! probability of an LRU cache of size `C` is approximated by the
//! probability that a content is requested again within `t_C` of its
//! previous request.
//!
//! The crate provides:
//!
//! * [`expected_distinct_g`] — the window function `g(t)`, with a closed
//!   form for rectangular popularity profiles and adaptive quadrature for
//!   tabulated ones;
//! * [`eviction_time_che`] — the characteristic time solver;
//! * [`hit_prob_che`] / [`in_prob_che`] — stationary hit probabilities;
//! * [`che_error_bound`] — a rigorous bound on the approximation error,
//!   optimised over the deviation radius `delta`;
//! * [`rate_function`], [`ld_deviation_exponents`], [`clt_scale`],
//!   [`normal_approx_bounds`] — large-deviation and central-limit regime
//!   descriptions of the eviction time;
//! * [`che_curve_point`] — one cache size fully annotated with all of the
//!   above.
//!
//! Numerical behaviour (quadrature and root-finder tolerances) is governed
//! by [`NumericsConfig`], re-exported from the model crate.

mod asymptotics;
mod bound;
mod curve;
mod error;
mod eviction;
mod g;
mod hit;

pub use asymptotics::{
    clt_scale, ld_deviation_exponents, normal_approx_bounds, rate_function, LdExponents,
    RateFunctionCtx,
};
pub use bound::{che_error_bound, chernoff_rate};
pub use curve::{che_curve_point, CheCurvePoint};
pub use error::{CheError, Result};
pub use eviction::eviction_time_che;
pub use g::{expected_distinct_g, expected_distinct_g_quadrature, g_rect_closed};
pub use hit::{hit_prob_che, in_prob_che};
pub use snm_core::NumericsConfig;
