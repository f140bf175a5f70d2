//! The LRU engine and the eviction-time sampler agree on what "eviction"
//! means: a tagged content requested once leaves a cache of capacity `C`
//! exactly when the `C`-th distinct other content is first requested.

use lru_sim::{generate_trace, LruState, TraceConfig};
use snm_core::{ProfileSpec, SnmModel, VolumeSpec};
use std::collections::BTreeSet;

const TAG: u64 = u64::MAX;

/// Replays `events` after an initial request for [`TAG`]; returns the event
/// time at which the tag fell out of the cache, if it did.
fn tag_eviction_time(events: &[(f64, u64)], capacity: usize) -> Option<f64> {
    let mut cache = LruState::new(capacity).unwrap();
    cache.request(TAG);
    for &(time, id) in events {
        cache.request(id);
        if !cache.recency_order().contains(&TAG) {
            return Some(time);
        }
    }
    None
}

/// Time of the `C`-th distinct id's first occurrence, the sampler's notion
/// of the eviction time.
fn kth_distinct_first_time(events: &[(f64, u64)], k: usize) -> Option<f64> {
    let mut seen = BTreeSet::new();
    for &(time, id) in events {
        if seen.insert(id) && seen.len() == k {
            return Some(time);
        }
    }
    None
}

#[test]
fn constructed_trace_with_re_requests() {
    // Re-requests of already-seen contents refresh them but never push the
    // tag out: only the fourth distinct newcomer evicts it.
    let events = vec![
        (0.5, 1),
        (0.7, 2),
        (0.9, 1),
        (1.1, 3),
        (1.3, 2),
        (1.6, 4),
        (1.9, 5),
    ];
    assert_eq!(tag_eviction_time(&events, 4), Some(1.6));
    assert_eq!(kth_distinct_first_time(&events, 4), Some(1.6));
    // A bigger cache survives until the fifth newcomer.
    assert_eq!(tag_eviction_time(&events, 5), Some(1.9));
}

#[test]
fn generated_traces_agree_for_every_capacity() {
    let model = SnmModel::new(
        4.0,
        ProfileSpec::rectangular(2.0).unwrap(),
        VolumeSpec::pareto(1.0, 2.0).unwrap(),
    )
    .unwrap();
    for seed in [1, 2, 3] {
        let config = TraceConfig::new(0.0, 2.0, 25.0, seed).unwrap();
        let trace = generate_trace(&model, &config);
        assert!(trace.events.len() > 50, "trace unexpectedly sparse");
        for capacity in [1, 2, 5, 17] {
            assert_eq!(
                tag_eviction_time(&trace.events, capacity),
                kth_distinct_first_time(&trace.events, capacity),
                "definitions diverged at capacity {capacity} seed {seed}"
            );
        }
    }
}
