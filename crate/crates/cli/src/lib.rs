//! Config-driven experiment runner for LRU cache analytics under
//! shot-noise traffic.
//!
//! The `snm-cache` binary reads one TOML config describing a traffic model
//! and an experiment, runs it, and writes a CSV artifact plus a JSON mirror
//! with identical values. Five experiments are available, selected by
//! `experiment.name` in the config:
//!
//! * `g-curve` — the expected-distinct-contents window function, closed
//!   form against quadrature;
//! * `hit-curve` — characteristic time, approximate hit probability, and
//!   the rigorous accuracy bound per cache size, with optional trace
//!   simulation columns;
//! * `eviction-dist` — eviction-time samples plus law-of-large-numbers,
//!   central-limit and tail summary statistics;
//! * `tandem` — second-cache hit-probability brackets over a grid of
//!   characteristic-time pairs, with optional Monte Carlo;
//! * `validate` — the built-in acceptance suite of nine cross-checks
//!   (see [`validation`] for the one intentionally strict check).
//!
//! Artifacts are byte-deterministic: rerunning the same config and seed
//! reproduces every output file exactly. The library layer is exposed so
//! integration tests (and downstream tooling) can drive experiments
//! without shelling out.

pub mod artifact;
pub mod config;
pub mod error;
pub mod experiments;
pub mod validation;
