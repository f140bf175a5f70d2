//! Exact LRU cache engine and trace-driven simulation.

use std::collections::HashMap;

use crate::error::{Result, SimError};
use crate::trace::RequestTrace;

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, Copy)]
struct Node {
    id: u64,
    prev: usize,
    next: usize,
}

/// An LRU cache over content ids: a recency list with O(1) lookup.
///
/// The recency list lives in an arena of linked nodes; evicted slots are
/// recycled through a free list, so a cache of capacity `C` allocates at most
/// `C` nodes regardless of trace length.
#[derive(Debug, Clone)]
pub struct LruState {
    capacity: usize,
    slots: HashMap<u64, usize>,
    arena: Vec<Node>,
    free: Vec<usize>,
    head: usize,
    tail: usize,
}

impl LruState {
    pub fn new(capacity: usize) -> Result<Self> {
        if capacity == 0 {
            return Err(SimError::InvalidParameter(
                "cache capacity must be at least 1".into(),
            ));
        }
        Ok(Self {
            capacity,
            slots: HashMap::with_capacity(capacity.min(1 << 20)),
            arena: Vec::new(),
            free: Vec::new(),
            head: NIL,
            tail: NIL,
        })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    fn detach(&mut self, idx: usize) {
        let Node { prev, next, .. } = self.arena[idx];
        if prev == NIL {
            self.head = next;
        } else {
            self.arena[prev].next = next;
        }
        if next == NIL {
            self.tail = prev;
        } else {
            self.arena[next].prev = prev;
        }
    }

    fn push_front(&mut self, idx: usize) {
        self.arena[idx].prev = NIL;
        self.arena[idx].next = self.head;
        if self.head != NIL {
            self.arena[self.head].prev = idx;
        }
        self.head = idx;
        if self.tail == NIL {
            self.tail = idx;
        }
    }

    /// Processes one request; returns whether it hit.
    pub fn request(&mut self, id: u64) -> bool {
        if let Some(&idx) = self.slots.get(&id) {
            if self.head != idx {
                self.detach(idx);
                self.push_front(idx);
            }
            return true;
        }
        if self.slots.len() == self.capacity {
            let victim = self.tail;
            self.detach(victim);
            self.slots.remove(&self.arena[victim].id);
            self.free.push(victim);
        }
        let idx = match self.free.pop() {
            Some(idx) => {
                self.arena[idx].id = id;
                idx
            }
            None => {
                self.arena.push(Node {
                    id,
                    prev: NIL,
                    next: NIL,
                });
                self.arena.len() - 1
            }
        };
        self.slots.insert(id, idx);
        self.push_front(idx);
        false
    }

    /// Cached ids from most to least recently used.
    pub fn recency_order(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.slots.len());
        let mut cursor = self.head;
        while cursor != NIL {
            out.push(self.arena[cursor].id);
            cursor = self.arena[cursor].next;
        }
        out
    }
}

/// Hit counts over the measured part of one or more traces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimResult {
    pub requests: u64,
    pub hits: u64,
    pub hit_ratio: f64,
    /// Standard error of the hit ratio across replications (0 for a single one).
    pub std_err: f64,
    pub replications: u32,
}

/// Replays a trace through an LRU cache of `capacity` contents.
///
/// Every event updates the cache, but only events at or after the warm-up
/// end are counted. Errors if the measured window contains no events.
pub fn simulate_lru(trace: &RequestTrace, capacity: usize) -> Result<SimResult> {
    let mut cache = LruState::new(capacity)?;
    let mut requests = 0u64;
    let mut hits = 0u64;
    for &(time, id) in &trace.events {
        let hit = cache.request(id);
        if time >= trace.config.warmup_end {
            requests += 1;
            hits += u64::from(hit);
        }
    }
    if requests == 0 {
        return Err(SimError::DegenerateTrace(format!(
            "no events at or after warmup_end = {}",
            trace.config.warmup_end
        )));
    }
    Ok(SimResult {
        requests,
        hits,
        hit_ratio: hits as f64 / requests as f64,
        std_err: 0.0,
        replications: 1,
    })
}

/// Pools independent replication results.
///
/// The pooled hit ratio weights replications by their request counts; the
/// standard error is that of the mean of the per-replication ratios.
pub fn aggregate(results: &[SimResult]) -> Result<SimResult> {
    if results.is_empty() {
        return Err(SimError::InvalidParameter(
            "cannot aggregate zero replications".into(),
        ));
    }
    let requests: u64 = results.iter().map(|r| r.requests).sum();
    let hits: u64 = results.iter().map(|r| r.hits).sum();
    let replications: u32 = results.iter().map(|r| r.replications).sum();
    let n = results.len() as f64;
    let mean = results.iter().map(|r| r.hit_ratio).sum::<f64>() / n;
    let std_err = if results.len() > 1 {
        let var = results
            .iter()
            .map(|r| (r.hit_ratio - mean).powi(2))
            .sum::<f64>()
            / (n - 1.0);
        (var / n).sqrt()
    } else {
        results[0].std_err
    };
    Ok(SimResult {
        requests,
        hits,
        hit_ratio: hits as f64 / requests as f64,
        std_err,
        replications,
    })
}
