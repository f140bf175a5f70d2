//! The built-in acceptance suite behind the `validate` experiment.
//!
//! Nine numbered checks cross-validate the analytic layer against the
//! simulators over a desk-scale reference model (`lambda = 100`
//! contents/day, rectangular lifespan `L = 30` days, Pareto volumes with
//! scale `a = 1.5` and exponent `alpha = 2`, so `E[Z] = 3` requests per
//! content); individual checks vary the scale parameters where their
//! regime demands it and say so in their detail line. Every check is
//! deterministic given the suite seed: all sampling flows through numbered
//! RNG streams, and each criterion salts the seed with its own index so
//! the checks stay decoupled.
//!
//! One check is expected to fail, by design rather than by defect. The
//! `ldp-tails` criterion demands that the measured tail exponent
//! `-(1/C) ln P(T_C > t_C(1 + delta))` match the large-deviation rate
//! `I(g(t_C(1 + delta))/C)` within 25%, while also requiring the tail to
//! be observable (probability at least 1e-3, at least 100 exceedances in
//! 1e5 samples). Those two demands are incompatible: an observable tail
//! caps the whole exponent at `-ln P <= ~6.9`, of which the finite-size
//! Cramér prefactor (about `ln(z sqrt(2 pi)) ~ 2.1` at the implied normal
//! deviate `z ~ 3`) is a fixed overhead, so the measured exponent exceeds
//! the rate value by at least ~45% for every admissible `(C, delta)` —
//! the exact-Poisson scan in [`select_ldp_point`] puts the best reachable
//! ratio near 1.49. The criterion is implemented literally and reports the
//! measurement next to both the rate target and the exact finite-`C`
//! prediction, so the failure line itself shows the instrument agreeing
//! with exact theory while the asymptotic target stays out of reach.

use che_analytics::{
    che_curve_point, clt_scale, eviction_time_che, expected_distinct_g,
    expected_distinct_g_quadrature, g_rect_closed, hit_prob_che, ld_deviation_exponents,
};
use lru_sim::{
    empirical_distinct_count, ks_statistic, sample_eviction_times, sample_mean_variance,
};
use rayon::prelude::*;
use snm_core::{NumericsConfig, ProfileSpec, SnmModel, VolumeSpec};
use statrs::distribution::{ContinuousCDF, DiscreteCDF, Normal, Poisson};
use tandem::{tandem_bounds, tandem_hit_mc, TandemQuery};

use crate::config::ExperimentConfig;
use crate::experiments;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    /// 1-based criterion index, stable across releases.
    pub index: usize,
    /// Short kebab-case name for artifact rows and log lines.
    pub name: &'static str,
    pub passed: bool,
    /// One comma-free sentence of evidence (quoted verbatim in CSV cells).
    pub detail: String,
}

/// Reference model scale: catalogue arrival rate, contents per day.
const DESK_LAMBDA: f64 = 100.0;
/// Reference rectangular profile lifespan, days.
const DESK_LIFESPAN: f64 = 30.0;
/// Pareto volume scale `a` (minimum number of requests per content).
const PARETO_SCALE: f64 = 1.5;
/// Pareto volume exponent `alpha`; with `a = 1.5` the mean volume is 3.
const PARETO_EXPONENT: f64 = 2.0;

/// Runs all nine criteria in order, logging one line per check to stderr.
pub fn run_suite(seed: u64) -> Vec<CriterionReport> {
    let criteria: [fn(u64) -> CriterionReport; 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    criteria
        .iter()
        .map(|criterion| {
            let report = criterion(seed);
            eprintln!(
                "criterion {} ({}): {}",
                report.index,
                report.name,
                if report.passed { "PASS" } else { "FAIL" }
            );
            report
        })
        .collect()
}

/// Detail strings are quoted into CSV cells, so they must stay free of
/// separators and line breaks no matter what an error `Display` contains.
fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            ',' => ';',
            '"' => '\'',
            '\n' | '\r' => ' ',
            _ => c,
        })
        .collect()
}

fn finish(
    index: usize,
    name: &'static str,
    outcome: std::result::Result<(bool, String), String>,
) -> CriterionReport {
    let (passed, detail) = match outcome {
        Ok((passed, detail)) => (passed, detail),
        Err(message) => (false, format!("error: {message}")),
    };
    CriterionReport {
        index,
        name,
        passed,
        detail: sanitize(&detail),
    }
}

/// Mixes the criterion index into the suite seed so the criteria draw from
/// unrelated streams even when they sample the same model.
fn salted(seed: u64, index: u64) -> u64 {
    seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn pareto_model(lambda: f64, lifespan: f64) -> std::result::Result<SnmModel, String> {
    let profile = ProfileSpec::rectangular(lifespan).map_err(|e| e.to_string())?;
    let volume = VolumeSpec::pareto(PARETO_SCALE, PARETO_EXPONENT).map_err(|e| e.to_string())?;
    SnmModel::new(lambda, profile, volume).map_err(|e| e.to_string())
}

fn desk_model() -> std::result::Result<SnmModel, String> {
    pareto_model(DESK_LAMBDA, DESK_LIFESPAN)
}

/// 1 — the closed-form window function and the quadrature form agree to
/// relative 1e-6 on `t = 1..=120` days for the rectangular/Pareto model.
pub fn criterion_1(seed: u64) -> CriterionReport {
    finish(1, "g-closed-form", check_g_closed_form(seed))
}

fn check_g_closed_form(_seed: u64) -> std::result::Result<(bool, String), String> {
    const TOLERANCE: f64 = 1e-6;
    let model = pareto_model(1.0, DESK_LIFESPAN)?;
    let cfg = NumericsConfig::default();
    let gaps: Vec<f64> = (1..=120)
        .into_par_iter()
        .map(|day| -> std::result::Result<f64, String> {
            let t = f64::from(day);
            let closed = g_rect_closed(t, DESK_LIFESPAN, &model.volume, &cfg)
                .map_err(|e| format!("t = {t}: {e}"))?;
            let quadrature = expected_distinct_g_quadrature(t, &model, &cfg)
                .map_err(|e| format!("t = {t}: {e}"))?;
            Ok((closed - quadrature).abs() / closed)
        })
        .collect::<std::result::Result<_, _>>()?;
    let worst = gaps.iter().cloned().fold(0.0, f64::max);
    Ok((
        worst <= TOLERANCE,
        format!("max relative gap {worst:.3e} over t in 1..=120 days (tolerance {TOLERANCE:.0e})"),
    ))
}

/// 2 — the distinct-content count over a window is Poisson: mean within
/// 3 sigma of `lambda g(t)` and dispersion index inside [0.9, 1.1].
pub fn criterion_2(seed: u64) -> CriterionReport {
    finish(2, "poisson-law", check_poisson_law(salted(seed, 2)))
}

fn check_poisson_law(seed: u64) -> std::result::Result<(bool, String), String> {
    const LAMBDA: f64 = 20.0;
    const WINDOW: f64 = 45.0;
    const REPLICATIONS: usize = 10_000;
    let model = pareto_model(LAMBDA, DESK_LIFESPAN)?;
    let cfg = NumericsConfig::default();
    let target = LAMBDA * expected_distinct_g(WINDOW, &model, &cfg).map_err(|e| e.to_string())?;
    let counts =
        empirical_distinct_count(&model, WINDOW, REPLICATIONS, seed).map_err(|e| e.to_string())?;
    let values: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let (mean, variance) = sample_mean_variance(&values).map_err(|e| e.to_string())?;
    let three_sigma = 3.0 * (target / REPLICATIONS as f64).sqrt();
    let dispersion = variance / mean;
    let passed = (mean - target).abs() <= three_sigma && (0.9..=1.1).contains(&dispersion);
    Ok((
        passed,
        format!(
            "mean {mean:.2} vs lambda*g = {target:.2} (3 sigma = {three_sigma:.2}); \
             dispersion index {dispersion:.4} (allowed 0.9..1.1)"
        ),
    ))
}

/// 3 — law of large numbers: at `C = 500` the sampled eviction times
/// average to the characteristic time within 1%.
pub fn criterion_3(seed: u64) -> CriterionReport {
    finish(3, "lln", check_lln(salted(seed, 3)))
}

fn check_lln(seed: u64) -> std::result::Result<(bool, String), String> {
    const CACHE_SIZE: usize = 500;
    const SAMPLES: usize = 1_000;
    let model = desk_model()?;
    let cfg = NumericsConfig::default();
    let t_c = eviction_time_che(CACHE_SIZE as f64, &model, &cfg).map_err(|e| e.to_string())?;
    let times =
        sample_eviction_times(CACHE_SIZE, &model, SAMPLES, seed).map_err(|e| e.to_string())?;
    let (mean, _) = sample_mean_variance(&times).map_err(|e| e.to_string())?;
    let ratio = mean / t_c;
    Ok((
        (0.99..=1.01).contains(&ratio),
        format!(
            "mean(T_C)/t_C = {ratio:.5} at C = {CACHE_SIZE} over {SAMPLES} samples \
             (desk model: lambda 100/day L 30 Pareto 1.5/2)"
        ),
    ))
}

/// 4 — central limit theorem: at `C = 1000` the normalised eviction times
/// `(T_C - t_C) / f(t_C)` are Kolmogorov-close to a standard normal.
///
/// The scale `f(x) = sqrt(x / (lambda (1 - phi_Z(-1))))` is the local
/// dispersion of the eviction time only where the window function grows
/// linearly; for a rectangular profile that growth is exact beyond one
/// lifespan. The check therefore pins a short-lifespan variant of the
/// reference model (`L = 1` day), which puts `t_C(1000) ~ 12` lifespans
/// into the linear regime. At `L = 30` the same cache size sits well
/// inside one lifespan, where the limit's normalisation is not yet the
/// right scale and the distance plateaus near 0.056 regardless of sample
/// size — a statement about that preasymptotic regime, not about the limit.
pub fn criterion_4(seed: u64) -> CriterionReport {
    finish(4, "clt", check_clt(salted(seed, 4)))
}

fn check_clt(seed: u64) -> std::result::Result<(bool, String), String> {
    const CACHE_SIZE: usize = 1_000;
    const SAMPLES: usize = 5_000;
    const TOLERANCE: f64 = 0.05;
    const SHORT_LIFESPAN: f64 = 1.0;
    let model = pareto_model(DESK_LAMBDA, SHORT_LIFESPAN)?;
    let cfg = NumericsConfig::default();
    let t_c = eviction_time_che(CACHE_SIZE as f64, &model, &cfg).map_err(|e| e.to_string())?;
    let scale = clt_scale(t_c, &model, &cfg).map_err(|e| e.to_string())?;
    let times =
        sample_eviction_times(CACHE_SIZE, &model, SAMPLES, seed).map_err(|e| e.to_string())?;
    let mut normalised: Vec<f64> = times.iter().map(|&t| (t - t_c) / scale).collect();
    normalised.sort_unstable_by(f64::total_cmp);
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    let ks = ks_statistic(&normalised, |x| normal.cdf(x)).map_err(|e| e.to_string())?;
    Ok((
        ks <= TOLERANCE,
        format!(
            "KS distance {ks:.4} vs N(0;1) at C = {CACHE_SIZE} over {SAMPLES} samples \
             (tolerance {TOLERANCE}; lambda 100/day L 1 Pareto 1.5/2 so t_C clears the \
             lifespan)"
        ),
    ))
}

/// A `(C, delta)` operating point for the tail check, with its analytic
/// side computed up front.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LdpPoint {
    pub cache_size: usize,
    pub delta: f64,
    /// The exceedance threshold `t_C (1 + delta)`.
    pub threshold: f64,
    /// Rate-function target `I(g(threshold)/C)`, already divided by `C`.
    pub rate_per_c: f64,
    /// Exact finite-`C` exponent `-(1/C) ln PoissonCDF(C-1; lambda g)`.
    pub predicted_per_c: f64,
    /// Exact exceedance probability at the threshold.
    pub predicted_probability: f64,
}

/// Scans a fixed `(C, delta)` grid and returns the point whose exact
/// predicted exponent sits closest to the rate-function target, subject to
/// the tail staying observable (probability at least `1.2e-3`, so that 100
/// exceedances among 1e5 samples arrive with overwhelming probability).
/// The scan is deterministic and purely analytic.
pub(crate) fn select_ldp_point(
    model: &SnmModel,
    cfg: &NumericsConfig,
) -> std::result::Result<LdpPoint, String> {
    const CACHE_GRID: [usize; 5] = [100, 150, 200, 300, 400];
    const PROBABILITY_FLOOR: f64 = 1.2e-3;
    let mut best: Option<(f64, LdpPoint)> = None;
    for &cache_size in &CACHE_GRID {
        let c = cache_size as f64;
        let t_c = eviction_time_che(c, model, cfg).map_err(|e| e.to_string())?;
        for step in 1..=30 {
            let delta = f64::from(step) * 0.02;
            let threshold = t_c * (1.0 + delta);
            let mean = model.lambda
                * expected_distinct_g(threshold, model, cfg).map_err(|e| e.to_string())?;
            let probability = Poisson::new(mean)
                .map_err(|e| e.to_string())?
                .cdf(cache_size as u64 - 1);
            if probability < PROBABILITY_FLOOR {
                continue;
            }
            let exponents =
                ld_deviation_exponents(c, delta, model, cfg).map_err(|e| e.to_string())?;
            let rate_per_c = exponents.upper / c;
            let predicted_per_c = -probability.ln() / c;
            let gap = (predicted_per_c / rate_per_c - 1.0).abs();
            let point = LdpPoint {
                cache_size,
                delta,
                threshold,
                rate_per_c,
                predicted_per_c,
                predicted_probability: probability,
            };
            if best.as_ref().is_none_or(|(g, _)| gap < *g) {
                best = Some((gap, point));
            }
        }
    }
    best.map(|(_, point)| point)
        .ok_or_else(|| "no (C; delta) candidate met the exceedance-probability floor".into())
}

/// 5 — large-deviation tails. Expected to FAIL; see the module docs: at
/// observable tail levels the measured exponent necessarily carries the
/// finite-size prefactor, which the ±25% window around the rate function
/// cannot absorb. The detail line reports the measurement against both the
/// rate target and the exact finite-`C` prediction.
pub fn criterion_5(seed: u64) -> CriterionReport {
    finish(5, "ldp-tails", check_ldp_tails(salted(seed, 5)))
}

fn check_ldp_tails(seed: u64) -> std::result::Result<(bool, String), String> {
    const SAMPLES: usize = 100_000;
    const MIN_EXCEEDANCES: usize = 100;
    const TOLERANCE: f64 = 0.25;
    let model = desk_model()?;
    let cfg = NumericsConfig::default();
    let point = select_ldp_point(&model, &cfg)?;
    let times = sample_eviction_times(point.cache_size, &model, SAMPLES, seed)
        .map_err(|e| e.to_string())?;
    let exceedances = times.iter().filter(|&&t| t > point.threshold).count();
    if exceedances < MIN_EXCEEDANCES {
        return Ok((
            false,
            format!(
                "only {exceedances} exceedances of t_C(1+{delta:.2}) at C = {c} \
                 (need {MIN_EXCEEDANCES} of {SAMPLES})",
                delta = point.delta,
                c = point.cache_size,
            ),
        ));
    }
    let empirical_per_c = -((exceedances as f64) / SAMPLES as f64).ln() / point.cache_size as f64;
    let passed = (empirical_per_c - point.rate_per_c).abs() <= TOLERANCE * point.rate_per_c;
    Ok((
        passed,
        format!(
            "C = {c} delta = {delta:.2} exceedances = {exceedances}/{SAMPLES} \
             (predicted P = {probability:.2e}); empirical exponent {empirical_per_c:.4e} \
             vs rate target {rate:.4e} (allowed ±25%); exact finite-C prediction \
             {predicted:.4e}",
            c = point.cache_size,
            delta = point.delta,
            probability = point.predicted_probability,
            rate = point.rate_per_c,
            predicted = point.predicted_per_c,
        ),
    ))
}

/// 6 — the approximate hit probability tracks full trace simulation within
/// `max(0.01, bound)` and within the bound plus Monte-Carlo noise.
pub fn criterion_6(seed: u64) -> CriterionReport {
    finish(6, "che-accuracy", check_che_accuracy(salted(seed, 6)))
}

fn check_che_accuracy(seed: u64) -> std::result::Result<(bool, String), String> {
    const CACHE_SIZES: [u64; 4] = [20, 50, 100, 200];
    const REPLICATIONS: u32 = 20;
    let model = desk_model()?;
    let cfg = NumericsConfig::default();
    let points: Vec<_> = CACHE_SIZES
        .iter()
        .map(|&c| che_curve_point(c as f64, None, &model, &cfg).map_err(|e| e.to_string()))
        .collect::<std::result::Result<_, _>>()?;
    let t_c_max = points.last().expect("non-empty grid").t_c;
    let sims = experiments::simulate_hit_ratios(&model, &CACHE_SIZES, t_c_max, REPLICATIONS, seed)
        .map_err(|e| e.to_string())?;
    let mut passed = true;
    let mut worst_gap = 0.0f64;
    let mut worst_c = CACHE_SIZES[0];
    for (point, sim) in points.iter().zip(&sims) {
        let gap = (sim.hit_ratio - point.p_hit_che).abs();
        let within_accuracy = gap <= point.err_bound.max(0.01);
        let within_noise = gap <= point.err_bound + 3.0 * sim.std_err;
        if !(within_accuracy && within_noise) {
            passed = false;
        }
        if gap > worst_gap {
            worst_gap = gap;
            worst_c = point.cache_size as u64;
        }
    }
    Ok((
        passed,
        format!(
            "max |sim - che| = {worst_gap:.4} at C = {worst_c} over C in {{20 50 100 200}} \
             with {REPLICATIONS} trace replications"
        ),
    ))
}

/// 7 — full-scale hit curves have the right shape: strictly increasing in
/// `C` for every profile/volume variant, under tight quadrature tolerances.
pub fn criterion_7(seed: u64) -> CriterionReport {
    finish(7, "figure-shapes", check_figure_shapes(seed))
}

fn check_figure_shapes(_seed: u64) -> std::result::Result<(bool, String), String> {
    const LAMBDA: f64 = 100_000.0;
    const CACHE_GRID: [f64; 8] = [
        2_000.0, 5_000.0, 10_000.0, 20_000.0, 50_000.0, 100_000.0, 200_000.0, 500_000.0,
    ];
    // (volume exponent alpha, lifespan L): alpha sweep at L = 30, then
    // lifespan sweep at alpha = 2.
    let curves = [
        (1.5, 30.0),
        (2.0, 30.0),
        (3.0, 30.0),
        (2.0, 10.0),
        (2.0, 30.0),
        (2.0, 90.0),
    ];
    let cfg = NumericsConfig::default();
    for (alpha, lifespan) in curves {
        let profile = ProfileSpec::rectangular(lifespan).map_err(|e| e.to_string())?;
        let volume = VolumeSpec::pareto(PARETO_SCALE, alpha).map_err(|e| e.to_string())?;
        let model = SnmModel::new(LAMBDA, profile, volume).map_err(|e| e.to_string())?;
        let hits: Vec<f64> = CACHE_GRID
            .par_iter()
            .map(|&c| -> std::result::Result<f64, String> {
                let context = |e: &dyn std::fmt::Display| {
                    format!("alpha = {alpha} L = {lifespan} C = {c}: {e}")
                };
                let t_c = eviction_time_che(c, &model, &cfg).map_err(|e| context(&e))?;
                hit_prob_che(t_c, &model, &cfg).map_err(|e| context(&e))
            })
            .collect::<std::result::Result<_, _>>()?;
        if !hits.windows(2).all(|w| w[1] > w[0]) {
            return Ok((
                false,
                format!("hit curve not strictly increasing at alpha = {alpha} L = {lifespan}"),
            ));
        }
    }
    Ok((
        true,
        format!(
            "6 curves x {} sizes strictly increasing at lambda = 100000/day \
             (quadrature rel tol {:.0e})",
            CACHE_GRID.len(),
            cfg.quad_rel_tol,
        ),
    ))
}

/// 8 — tandem second-cache bounds: the single-cell case is exact against
/// Monte Carlo, the multi-cell bracket contains it, and a reversed pair of
/// characteristic times yields exactly zero.
pub fn criterion_8(seed: u64) -> CriterionReport {
    finish(8, "tandem-bounds", check_tandem_bounds(salted(seed, 8)))
}

fn check_tandem_bounds(seed: u64) -> std::result::Result<(bool, String), String> {
    const SAMPLES: usize = 100_000;
    const AGE: f64 = 0.9;
    const VOLUME: f64 = 2.0;
    let profile = ProfileSpec::rectangular(1.0).map_err(|e| e.to_string())?;
    let cfg = NumericsConfig::default();

    // (a) one cell: the bracket collapses and Monte Carlo must agree.
    let query = TandemQuery::new(AGE, VOLUME, 0.4, 0.7).map_err(|e| e.to_string())?;
    let exact = tandem_bounds(&query, &profile, &cfg).map_err(|e| e.to_string())?;
    if exact.lower != exact.upper {
        return Ok((
            false,
            "single-cell bracket did not collapse to a point".into(),
        ));
    }
    let (estimate, std_err) =
        tandem_hit_mc(&query, &profile, SAMPLES, seed).map_err(|e| e.to_string())?;
    let gap_a = (estimate - exact.upper).abs();
    let pass_a = gap_a <= 3.0 * std_err;

    // (b) three cells: the estimate must land inside the bracket plus noise.
    let query = TandemQuery::new(AGE, VOLUME, 0.2, 0.7).map_err(|e| e.to_string())?;
    let bracket = tandem_bounds(&query, &profile, &cfg).map_err(|e| e.to_string())?;
    let (estimate_b, std_err_b) = tandem_hit_mc(&query, &profile, SAMPLES, seed.wrapping_add(1))
        .map_err(|e| e.to_string())?;
    let pass_b = estimate_b >= bracket.lower - 3.0 * std_err_b
        && estimate_b <= bracket.upper + 3.0 * std_err_b;

    // (c) reversed order: the event is impossible.
    let query = TandemQuery::new(AGE, VOLUME, 0.7, 0.5).map_err(|e| e.to_string())?;
    let reversed = tandem_bounds(&query, &profile, &cfg).map_err(|e| e.to_string())?;
    let (estimate_c, _) = tandem_hit_mc(&query, &profile, SAMPLES, seed.wrapping_add(2))
        .map_err(|e| e.to_string())?;
    let pass_c =
        reversed.k == 0 && reversed.lower == 0.0 && reversed.upper == 0.0 && estimate_c == 0.0;

    Ok((
        pass_a && pass_b && pass_c,
        format!(
            "k=1 gap {gap_a:.2e} (3 sigma = {:.2e}); k=3 estimate {estimate_b:.4} in \
             [{:.4}; {:.4}] ± noise; reversed pair exactly zero = {pass_c}",
            3.0 * std_err,
            bracket.lower,
            bracket.upper,
        ),
    ))
}

/// 9 — determinism: every experiment pipeline, rebuilt from the same config
/// and seed, renders byte-identical CSV and JSON artifacts.
pub fn criterion_9(seed: u64) -> CriterionReport {
    finish(9, "determinism", check_determinism(seed))
}

fn check_determinism(seed: u64) -> std::result::Result<(bool, String), String> {
    let toy_model = r#"
        [model]
        lambda = 2.0
        time_unit = "day"

        [model.profile]
        kind = "rectangular"
        lifespan = 1.0

        [model.volume]
        kind = "deterministic"
        z0 = 1.0
    "#;
    let experiments = [
        format!("{toy_model}\n[experiment]\nname = \"g-curve\"\nseed = {seed}\ntimes = [0.5, 2.0, 5.0]"),
        format!(
            "{toy_model}\n[experiment]\nname = \"hit-curve\"\nseed = {seed}\ncache_sizes = [1, 2, 4]\nsimulate = true\nreplications = 3"
        ),
        format!(
            "{toy_model}\n[experiment]\nname = \"eviction-dist\"\nseed = {seed}\ncache_size = 3\nsamples = 300"
        ),
        format!(
            "{toy_model}\n[experiment]\nname = \"tandem\"\nseed = {seed}\n[experiment.tandem]\npairs = [[0.4, 0.7], [0.2, 0.7]]\nage = 0.9\nvolume = 2.0\nmc_samples = 20000"
        ),
    ];
    let mut checked = Vec::new();
    for text in &experiments {
        let config = ExperimentConfig::from_toml(text).map_err(|e| e.to_string())?;
        config.validate().map_err(|e| e.to_string())?;
        let name = config.experiment.name.as_str();
        let render = || -> std::result::Result<Vec<(String, String)>, String> {
            let tables = build_tables(&config).map_err(|e| format!("{name}: {e}"))?;
            Ok(tables.iter().map(|t| (t.to_csv(), t.to_json())).collect())
        };
        if render()? != render()? {
            return Ok((
                false,
                format!("{name} artifacts differ between identical runs"),
            ));
        }
        checked.push(name);
    }
    Ok((
        true,
        format!(
            "{} rebuilt twice with identical bytes (csv and json)",
            checked.join(" ")
        ),
    ))
}

fn build_tables(config: &ExperimentConfig) -> crate::error::Result<Vec<crate::artifact::Table>> {
    use crate::config::ExperimentName;
    match config.experiment.name {
        ExperimentName::GCurve => Ok(vec![experiments::g_curve_table(config)?]),
        ExperimentName::HitCurve => Ok(vec![experiments::hit_curve_table(config)?]),
        ExperimentName::EvictionDist => {
            let (samples, summary) = experiments::eviction_dist_tables(config)?;
            Ok(vec![samples, summary])
        }
        ExperimentName::Tandem => Ok(vec![experiments::tandem_table(config)?]),
        ExperimentName::Validate => unreachable!("the suite does not recurse into itself"),
    }
}
