//! Empirical statistics for validating simulations against analytic laws.

use crate::error::{Result, SimError};

/// Two-sided Kolmogorov–Smirnov statistic of sorted `samples` against `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    if samples.is_empty() {
        return Err(SimError::InvalidParameter(
            "KS statistic needs at least one sample".into(),
        ));
    }
    if samples.windows(2).any(|w| w[0] > w[1]) {
        return Err(SimError::InvalidParameter(
            "KS samples must be sorted ascending".into(),
        ));
    }
    let n = samples.len() as f64;
    let mut dist = 0.0f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        dist = dist.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    Ok(dist)
}

/// Sample mean and unbiased variance.
pub fn sample_mean_variance(samples: &[f64]) -> Result<(f64, f64)> {
    if samples.is_empty() {
        return Err(SimError::InvalidParameter(
            "moments need at least one sample".into(),
        ));
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let variance = if samples.len() > 1 {
        samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Ok((mean, variance))
}
