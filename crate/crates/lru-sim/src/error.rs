use thiserror::Error;

/// Errors from trace generation, simulation, and empirical statistics.
#[derive(Debug, Error)]
pub enum SimError {
    /// An argument violated a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The trace contains no events in the measured window.
    #[error("degenerate trace: {0}")]
    DegenerateTrace(String),

    /// The eviction-time sampler gave up extending its horizon.
    #[error(
        "eviction-time horizon overflow: {distinct} distinct contents after \
         {doublings} horizon doublings (reached {horizon}), need {cache_size}"
    )]
    HorizonOverflow {
        cache_size: usize,
        distinct: usize,
        doublings: u32,
        horizon: f64,
    },
}

pub type Result<T> = std::result::Result<T, SimError>;
