//! Monte-Carlo ground truth for shot-noise cache models.
//!
//! Three layers, all deterministic per seed:
//!
//! * [`generate_trace`] draws a full request trace of the shot noise model
//!   over an observation window (contents as a Poisson process, requests as
//!   per-content Cox processes) — see [`TraceConfig`] / [`RequestTrace`];
//! * [`simulate_lru`] replays a trace through an exact LRU cache
//!   ([`LruState`]) and reports hit counts ([`SimResult`], pooled across
//!   replications by [`aggregate`]);
//! * [`sample_eviction_times`] and [`empirical_distinct_count`] sample the
//!   cache eviction time and the distinct-content count directly, without
//!   building traces, for validating the analytic law of the eviction time.
//!
//! [`ks_statistic`] measures the empirical distance to any analytic law.
//! Replications use per-index ChaCha streams of one base seed: results do
//! not depend on thread scheduling and replication `i` of a long run equals
//! replication `i` of a short one.

mod error;
mod eviction;
mod lru;
mod rng;
mod stats;
mod trace;

pub use error::{Result, SimError};
pub use eviction::{empirical_distinct_count, sample_eviction_times};
pub use lru::{aggregate, simulate_lru, LruState, SimResult};
pub use stats::{ks_statistic, sample_mean_variance};
pub use trace::{generate_trace, ContentRecord, RequestTrace, TraceConfig};
