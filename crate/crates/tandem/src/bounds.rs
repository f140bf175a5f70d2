//! Analytic bracketing of the second-cache hit probability.
//!
//! A probe request hits the second cache when (a) the content was silent
//! over the last `t_C1` (so the probe misses cache 1) and (b) some earlier
//! request in the window `(age - t_C2, age - t_C1]` itself missed cache 1 —
//! had a backward gap above `t_C1` — and so put the content into cache 2
//! recently enough to survive there.
//!
//! Partitioning that window into `k` cells no wider than `t_C1` makes the
//! per-cell events `A_i` (= "the first request of cell `i` has a long
//! backward gap") an exact cover of (b): within one cell, gaps cannot exceed
//! the cell width, so only the first request of a cell can qualify. The
//! union is bracketed by Bonferroni: the sum of `P(A_i)` from above, the sum
//! minus all pairwise products from below. For `k = 1` both collapse to the
//! exact value.

use snm_core::{integrate, NumericsConfig, ProfileSpec};

use crate::error::Result;
use crate::query::{tandem_k, TandemBounds, TandemQuery};

/// Probability that a request arrives at age `v` and was preceded by a gap
/// of at least `gap` — the per-cell integrand, integrated over `[lo, hi]`.
fn cell_integral(
    lo: f64,
    hi: f64,
    gap: f64,
    volume: f64,
    profile: &ProfileSpec,
    cfg: &NumericsConfig,
) -> Result<f64> {
    let end = profile.support_end();
    let lo = lo.max(0.0);
    let hi = hi.min(end);
    if hi <= lo {
        return Ok(0.0);
    }
    let mut cuts = profile.knots();
    cuts.extend(profile.knots().iter().map(|k| k + gap));
    let result = integrate(
        |v| {
            let h = profile.intensity(v);
            if h == 0.0 {
                return Ok(0.0);
            }
            let silent = profile.cumulative(v) - profile.cumulative(v - gap);
            Ok(volume * h * (-volume * silent).exp())
        },
        lo,
        hi,
        &cuts,
        cfg,
        "tandem cell",
    )?;
    Ok(result.value)
}

/// Bonferroni bracketing of the per-content second-cache hit probability.
pub fn tandem_bounds(
    query: &TandemQuery,
    profile: &ProfileSpec,
    cfg: &NumericsConfig,
) -> Result<TandemBounds> {
    cfg.validate()?;
    let k = tandem_k(query.t_c1, query.t_c2)?;
    if k == 0 {
        return Ok(TandemBounds {
            k,
            lower: 0.0,
            upper: 0.0,
            exact: true,
        });
    }
    let tau = query.age;
    let z = query.volume;
    let silent_at_probe = profile.cumulative(tau) - profile.cumulative(tau - query.t_c1);
    let leading = (-z * silent_at_probe).exp();

    // Cell boundaries beta_i from age - t_C2 up to age - t_C1.
    let beta = |i: usize| -> f64 {
        ((k - i) as f64 * (tau - query.t_c2) + i as f64 * (tau - query.t_c1)) / k as f64
    };
    let mut cells = Vec::with_capacity(k);
    for i in 0..k {
        cells.push(cell_integral(
            beta(i),
            beta(i + 1),
            query.t_c1,
            z,
            profile,
            cfg,
        )?);
    }

    let sum: f64 = cells.iter().sum();
    let squares: f64 = cells.iter().map(|j| j * j).sum();
    // Sum over unordered pairs of products, without the quadratic loop.
    let pairs = 0.5 * (sum * sum - squares);
    let capped = sum.min(1.0);
    let upper = (leading * capped).clamp(0.0, 1.0);
    let lower = (leading * (capped - pairs).max(0.0)).clamp(0.0, 1.0);
    Ok(TandemBounds {
        k,
        lower,
        upper,
        exact: k == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> NumericsConfig {
        NumericsConfig::default()
    }

    /// Closed-form cell integral for the rectangular profile with lifespan
    /// `L`: the backward-silent exponent is `z v / L` on the ramp `[0, gap]`
    /// and constant `z gap / L` on `[gap, L]`.
    fn rect_cell_closed(lo: f64, hi: f64, gap: f64, z: f64, lifespan: f64) -> f64 {
        let lo = lo.max(0.0);
        let hi = hi.min(lifespan);
        if hi <= lo {
            return 0.0;
        }
        let ramp_hi = hi.min(gap);
        let mut total = 0.0;
        if ramp_hi > lo {
            total += (-z * lo / lifespan).exp() - (-z * ramp_hi / lifespan).exp();
        }
        let flat_lo = lo.max(gap);
        if hi > flat_lo {
            total += z / lifespan * (-z * gap / lifespan).exp() * (hi - flat_lo);
        }
        total
    }

    #[test]
    fn degenerate_ordering_yields_zero() {
        let profile = ProfileSpec::rectangular(1.0).unwrap();
        let query = TandemQuery::new(0.9, 2.0, 0.7, 0.5).unwrap();
        let bounds = tandem_bounds(&query, &profile, &cfg()).unwrap();
        assert_eq!(bounds.k, 0);
        assert_eq!(bounds.lower, 0.0);
        assert_eq!(bounds.upper, 0.0);
        assert!(bounds.exact);
    }

    #[test]
    fn single_cell_case_matches_the_closed_pieces() {
        // L = 1, z = 2, age 0.9, t_C1 = 0.4, t_C2 = 0.7: one cell [0.2, 0.5]
        // split by the ramp at 0.4, leading factor e^{-0.8}.
        let profile = ProfileSpec::rectangular(1.0).unwrap();
        let query = TandemQuery::new(0.9, 2.0, 0.4, 0.7).unwrap();
        let bounds = tandem_bounds(&query, &profile, &cfg()).unwrap();
        assert_eq!(bounds.k, 1);
        assert!(bounds.exact);
        assert_eq!(bounds.lower, bounds.upper);
        let expected = (-0.8f64).exp() * rect_cell_closed(0.2, 0.5, 0.4, 2.0, 1.0);
        assert_relative_eq!(bounds.upper, expected, max_relative = 1e-11);
    }

    #[test]
    fn three_cell_case_matches_the_closed_pieces() {
        // L = 1, z = 2, age 0.9, t_C1 = 0.2, t_C2 = 0.7: k = 3 flat cells of
        // width 1/6 on [0.2, 0.7].
        let profile = ProfileSpec::rectangular(1.0).unwrap();
        let query = TandemQuery::new(0.9, 2.0, 0.2, 0.7).unwrap();
        let bounds = tandem_bounds(&query, &profile, &cfg()).unwrap();
        assert_eq!(bounds.k, 3);
        assert!(!bounds.exact);
        let width = 0.5 / 3.0;
        let j = rect_cell_closed(0.2, 0.2 + width, 0.2, 2.0, 1.0);
        let leading = (-0.4f64).exp();
        let upper = leading * 3.0 * j;
        let lower = leading * (3.0 * j - 3.0 * j * j);
        assert_relative_eq!(bounds.upper, upper, max_relative = 1e-10);
        assert_relative_eq!(bounds.lower, lower, max_relative = 1e-10);
        assert!(bounds.lower < bounds.upper);
    }

    #[test]
    fn window_off_the_support_gives_zero_upper_bound() {
        // Age far beyond the lifespan: the whole (b) window misses [0, L].
        let profile = ProfileSpec::rectangular(1.0).unwrap();
        let query = TandemQuery::new(5.0, 2.0, 0.5, 1.2).unwrap();
        let bounds = tandem_bounds(&query, &profile, &cfg()).unwrap();
        assert_eq!(bounds.upper, 0.0);
        assert_eq!(bounds.lower, 0.0);
        // Negative ages (content not yet entered) are likewise silent.
        let unborn = TandemQuery::new(-3.0, 2.0, 0.5, 1.2).unwrap();
        let bounds = tandem_bounds(&unborn, &profile, &cfg()).unwrap();
        assert_eq!(bounds.upper, 0.0);
    }

    #[test]
    fn cell_widths_never_exceed_the_first_eviction_time() {
        for (t_c1, t_c2) in [(0.2, 0.7), (0.4, 0.7), (0.3, 1.9), (1.0, 7.3)] {
            let k = tandem_k(t_c1, t_c2).unwrap();
            assert!(k >= 1);
            let width = (t_c2 - t_c1) / k as f64;
            assert!(
                width <= t_c1 + 1e-12,
                "cell width {width} exceeds t_C1 = {t_c1} at k = {k}"
            );
        }
    }
}
