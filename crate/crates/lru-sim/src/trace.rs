//! Shot-noise request-trace generation.
//!
//! Contents arrive as a homogeneous Poisson process; each carries a volume
//! mark and emits requests from an inhomogeneous Poisson process with
//! intensity `z * h(t - entry)`. To observe the stationary regime inside the
//! window, content arrivals are seeded back one profile padding before the
//! window start, so every content that could still be requested at
//! `window_start` exists in the trace.

use std::collections::BTreeMap;
use std::io::Write;

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use snm_core::{sample_volume, ProfileSpec, SnmModel};

use crate::error::{Result, SimError};
use crate::rng::replication_rng;

/// Observation window and seed for one generated trace.
///
/// `window_start <= warmup_end < window_end`. Requests before `warmup_end`
/// warm the cache but are not counted. For stationary measurements the
/// warm-up period should cover at least one profile lifespan; that is the
/// caller's responsibility since the window does not know the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceConfig {
    pub window_start: f64,
    pub warmup_end: f64,
    pub window_end: f64,
    pub seed: u64,
}

impl TraceConfig {
    pub fn new(window_start: f64, warmup_end: f64, window_end: f64, seed: u64) -> Result<Self> {
        if !(window_start.is_finite() && warmup_end.is_finite() && window_end.is_finite()) {
            return Err(SimError::InvalidParameter(format!(
                "window times must be finite, got [{window_start}, {warmup_end}, {window_end}]"
            )));
        }
        if !(window_start <= warmup_end && warmup_end < window_end) {
            return Err(SimError::InvalidParameter(format!(
                "window must satisfy start <= warmup_end < end, got \
                 [{window_start}, {warmup_end}, {window_end}]"
            )));
        }
        Ok(Self {
            window_start,
            warmup_end,
            window_end,
            seed,
        })
    }
}

/// One content process: entry time and volume mark.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContentRecord {
    pub entry_time: f64,
    pub volume: f64,
}

/// A generated request trace: time-ordered events over identified contents.
#[derive(Debug, Clone, PartialEq)]
pub struct RequestTrace {
    /// `(time, content_id)`, sorted by time with ties broken by id.
    pub events: Vec<(f64, u64)>,
    /// Every generated content, including those that never fired in-window.
    pub contents: BTreeMap<u64, ContentRecord>,
    pub config: TraceConfig,
}

impl RequestTrace {
    /// Dumps the trace as CSV: header `time,content_id`, nine decimals.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "time,content_id")?;
        for (time, id) in &self.events {
            writeln!(out, "{time:.9},{id}")?;
        }
        Ok(())
    }
}

/// Samples the request times of one content over its whole lifespan.
fn content_requests<R: Rng>(
    entry: f64,
    volume: f64,
    profile: &ProfileSpec,
    rng: &mut R,
    out: &mut Vec<f64>,
) {
    match profile {
        ProfileSpec::Rectangular { lifespan } => {
            // Total requests are Poisson(z); given the count, times are
            // uniform order statistics over the lifespan.
            let count = Poisson::new(volume)
                .expect("volume is positive")
                .sample(rng) as u64;
            for _ in 0..count {
                out.push(entry + rng.random::<f64>() * lifespan);
            }
        }
        ProfileSpec::Tabulated(table) => {
            // Thinning against the flat majorant max h over the support.
            let end = profile.support_end();
            // Piecewise-linear intensity peaks at a knot.
            let bound = table
                .knots()
                .iter()
                .map(|&t| profile.intensity(t))
                .fold(0.0f64, f64::max);
            let count = Poisson::new(volume * bound * end)
                .expect("majorant rate is positive")
                .sample(rng) as u64;
            for _ in 0..count {
                let age = rng.random::<f64>() * end;
                if rng.random::<f64>() * bound < profile.intensity(age) {
                    out.push(entry + age);
                }
            }
        }
    }
}

/// Generates one reproducible trace of the model over the configured window.
///
/// Contents are drawn as a homogeneous Poisson process on
/// `[window_start - padding, window_end]` where the padding covers the
/// profile support; ids are assigned in entry order. Events outside the
/// window are discarded.
pub fn generate_trace(model: &SnmModel, config: &TraceConfig) -> RequestTrace {
    let mut rng = replication_rng(config.seed, 0);
    let padding = model.profile.seed_padding();
    let lo = config.window_start - padding;
    let span = config.window_end - lo;

    let n_contents = Poisson::new(model.lambda * span)
        .expect("arrival mass is positive")
        .sample(&mut rng) as usize;
    let mut entries: Vec<f64> = (0..n_contents)
        .map(|_| lo + rng.random::<f64>() * span)
        .collect();
    entries.sort_unstable_by(f64::total_cmp);

    let mut contents = BTreeMap::new();
    let mut events: Vec<(f64, u64)> = Vec::new();
    let mut times = Vec::new();
    for (id, &entry) in entries.iter().enumerate() {
        let id = id as u64;
        let volume = sample_volume(&model.volume, &mut rng);
        contents.insert(
            id,
            ContentRecord {
                entry_time: entry,
                volume,
            },
        );
        times.clear();
        content_requests(entry, volume, &model.profile, &mut rng, &mut times);
        events.extend(
            times
                .iter()
                .filter(|&&t| t >= config.window_start && t <= config.window_end)
                .map(|&t| (t, id)),
        );
    }
    events.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    RequestTrace {
        events,
        contents,
        config: *config,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use snm_core::VolumeSpec;

    fn model(lambda: f64) -> SnmModel {
        SnmModel::new(
            lambda,
            ProfileSpec::rectangular(2.0).unwrap(),
            VolumeSpec::pareto(1.5, 2.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn config_rejects_bad_windows() {
        assert!(TraceConfig::new(0.0, 1.0, 10.0, 1).is_ok());
        assert!(TraceConfig::new(0.0, 0.0, 10.0, 1).is_ok());
        assert!(TraceConfig::new(1.0, 0.5, 10.0, 1).is_err());
        assert!(TraceConfig::new(0.0, 10.0, 10.0, 1).is_err());
        assert!(TraceConfig::new(0.0, f64::NAN, 10.0, 1).is_err());
    }

    #[test]
    fn traces_are_deterministic_per_seed() {
        let config = TraceConfig::new(0.0, 2.0, 20.0, 42).unwrap();
        let a = generate_trace(&model(3.0), &config);
        let b = generate_trace(&model(3.0), &config);
        assert_eq!(a, b);
        let other = TraceConfig::new(0.0, 2.0, 20.0, 43).unwrap();
        let c = generate_trace(&model(3.0), &other);
        assert_ne!(a.events, c.events);
    }

    #[test]
    fn events_are_sorted_and_supported() {
        let config = TraceConfig::new(0.0, 2.0, 30.0, 7).unwrap();
        let trace = generate_trace(&model(5.0), &config);
        assert!(!trace.events.is_empty());
        for pair in trace.events.windows(2) {
            assert!((pair[0].0, pair[0].1) < (pair[1].0, pair[1].1));
        }
        for &(time, id) in &trace.events {
            let content = trace.contents[&id];
            assert!(time >= config.window_start && time <= config.window_end);
            assert!(
                time >= content.entry_time && time <= content.entry_time + 2.0,
                "event at {time} outside the lifespan of content entering at {}",
                content.entry_time
            );
        }
    }

    #[test]
    fn vanishing_window_yields_an_empty_trace() {
        let config = TraceConfig::new(0.0, 0.0, 1e-9, 5).unwrap();
        let trace = generate_trace(&model(0.5), &config);
        assert!(trace.events.is_empty());
    }

    #[test]
    fn csv_dump_has_header_and_nine_decimals() {
        let config = TraceConfig::new(0.0, 0.0, 10.0, 11).unwrap();
        let trace = generate_trace(&model(2.0), &config);
        let mut buf = Vec::new();
        trace.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("time,content_id"));
        let first = lines.next().expect("at least one event");
        let time_field = first.split(',').next().unwrap();
        let decimals = time_field.split('.').nth(1).unwrap();
        assert_eq!(decimals.len(), 9);
    }
}
