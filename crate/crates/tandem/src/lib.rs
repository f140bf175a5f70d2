//! Hit-probability bounds for two LRU caches in tandem.
//!
//! Requests first probe a small cache 1; misses fall through to a larger
//! cache 2, which therefore only sees the miss stream. Under the working
//! approximation each cache evicts an idle content after a deterministic
//! window (`t_c1`, `t_c2` with `t_c1 < t_c2`), a request hits cache 2 and
//! misses cache 1 exactly when, looking backwards from the request,
//!
//! * no request fell in the last `t_c1` units (cache 1 has evicted), and
//! * some earlier request kept cache 2 warm: it arrived within the last
//!   `t_c2` units and was itself a miss of cache 1, i.e. followed a silent
//!   gap longer than `t_c1`.
//!
//! Writing the second event as a union over at most
//! `k = ceil(t_c2 / t_c1) - 1` cells of width at most `t_c1` (each cell can
//! contribute only its first request) gives computable lower/upper bounds
//! — exact for `k = 1` — from one-dimensional integrals of the request
//! profile:
//!
//! * [`tandem_bounds`] brackets the conditional probability for one content
//!   of known age and volume ([`TandemQuery`]);
//! * [`tandem_hit_aggregate`] averages the bracket over the stationary
//!   request stream of a whole [`snm_core::SnmModel`] catalogue;
//! * [`tandem_hit_mc`] estimates the same per-content probability by Monte
//!   Carlo for validation.

mod aggregate;
mod bounds;
mod error;
mod mc;
mod query;

pub use aggregate::tandem_hit_aggregate;
pub use bounds::tandem_bounds;
pub use error::{Result, TandemError};
pub use mc::tandem_hit_mc;
pub use query::{tandem_k, TandemBounds, TandemQuery};
