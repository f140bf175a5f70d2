//! The experiment runners behind each config `name`.
//!
//! Every runner computes its rows in a deterministic order (parallel where
//! points are independent, with an ordered reduce), assembles a
//! [`Table`](crate::artifact::Table), and writes the CSV/JSON pair. All
//! randomness flows from the config seed through numbered RNG streams, so
//! rerunning a config reproduces every artifact byte for byte.

use std::fs;
use std::path::PathBuf;

use che_analytics::{
    che_curve_point, clt_scale, eviction_time_che, expected_distinct_g_quadrature, g_rect_closed,
    ld_deviation_exponents, CheCurvePoint,
};
use lru_sim::{
    aggregate, generate_trace, ks_statistic, sample_eviction_times, sample_mean_variance,
    simulate_lru, SimResult, TraceConfig,
};
use rayon::prelude::*;
use snm_core::SnmModel;
use statrs::distribution::{ContinuousCDF, Normal};
use tandem::{tandem_bounds, tandem_hit_aggregate, tandem_hit_mc, tandem_k, TandemQuery};

use crate::artifact::{config_hash, read_config_hash, Cell, Metadata, Table};
use crate::config::{ExperimentConfig, ExperimentName, ProfileSection, TandemSection};
use crate::error::{CliError, Result};
use crate::validation;

/// What a run produced: the artifact files, plus the per-criterion reports
/// when the experiment was `validate` (empty otherwise).
#[derive(Debug)]
pub struct RunOutcome {
    pub files: Vec<PathBuf>,
    pub criteria: Vec<validation::CriterionReport>,
}

/// Dispatches on `experiment.name` and writes the artifacts.
pub fn run(config: &ExperimentConfig) -> Result<RunOutcome> {
    config.validate()?;
    let out_dir = config.experiment.output_dir.clone();
    let stem = config.experiment.name.file_stem();
    match config.experiment.name {
        ExperimentName::GCurve => {
            let table = g_curve_table(config)?;
            Ok(RunOutcome {
                files: table.write(&out_dir, stem)?,
                criteria: vec![],
            })
        }
        ExperimentName::HitCurve => {
            let table = hit_curve_table(config)?;
            Ok(RunOutcome {
                files: table.write(&out_dir, stem)?,
                criteria: vec![],
            })
        }
        ExperimentName::EvictionDist => {
            let (samples, summary) = eviction_dist_tables(config)?;
            let mut files = samples.write(&out_dir, stem)?;
            files.extend(summary.write(&out_dir, "eviction_dist_summary")?);
            Ok(RunOutcome {
                files,
                criteria: vec![],
            })
        }
        ExperimentName::Tandem => {
            let table = tandem_table(config)?;
            Ok(RunOutcome {
                files: table.write(&out_dir, stem)?,
                criteria: vec![],
            })
        }
        ExperimentName::Validate => {
            refuse_foreign_artifacts(config)?;
            let reports = validation::run_suite(config.experiment.seed);
            let mut table = Table::new(
                Metadata::new(config, vec![config.experiment.seed]),
                vec!["criterion", "name", "passed", "detail"],
            );
            for report in &reports {
                table.push(vec![
                    Cell::U64(report.index as u64),
                    Cell::Str(report.name.to_owned()),
                    Cell::Bool(report.passed),
                    Cell::Str(report.detail.clone()),
                ]);
            }
            Ok(RunOutcome {
                files: table.write(&out_dir, stem)?,
                criteria: reports,
            })
        }
    }
}

/// `validate` refuses to overwrite (and thereby compare against) artifacts
/// produced by a different config: same directory, different hash is an
/// error rather than a silent mix.
fn refuse_foreign_artifacts(config: &ExperimentConfig) -> Result<()> {
    let existing = config.experiment.output_dir.join("validate.csv");
    if !existing.exists() {
        return Ok(());
    }
    let text = fs::read_to_string(&existing)?;
    match read_config_hash(&text) {
        Some(old) if old != config_hash(config) => Err(CliError::Config(format!(
            "{} holds artifacts for config hash {}, current config hashes to {}; \
             refusing to compare across configs — use a fresh output directory",
            existing.display(),
            old,
            config_hash(config)
        ))),
        _ => Ok(()),
    }
}

fn build_model(config: &ExperimentConfig) -> Result<SnmModel> {
    config
        .build_model()
        .map_err(|e| CliError::Config(format!("model: {e}")))
}

/// `t,g_closed,g_quadrature,rel_diff` over the configured window grid.
pub(crate) fn g_curve_table(config: &ExperimentConfig) -> Result<Table> {
    let model = build_model(config)?;
    let cfg = config.numerics_config();
    let ProfileSection::Rectangular { lifespan } = config.model.profile else {
        unreachable!("validated: g-curve requires a rectangular profile");
    };
    let rows: Vec<Vec<Cell>> = config
        .experiment
        .times
        .par_iter()
        .map(|&t| -> Result<Vec<Cell>> {
            let closed = g_rect_closed(t, lifespan, &model.volume, &cfg)
                .map_err(|e| CliError::Numerics(format!("t = {t}: {e}")))?;
            let quadrature = expected_distinct_g_quadrature(t, &model, &cfg)
                .map_err(|e| CliError::Numerics(format!("t = {t}: {e}")))?;
            let rel_diff = (closed - quadrature).abs() / closed;
            Ok(vec![
                Cell::F64(t),
                Cell::F64(closed),
                Cell::F64(quadrature),
                Cell::F64(rel_diff),
            ])
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(
        Metadata::new(config, vec![]),
        vec!["t", "g_closed", "g_quadrature", "rel_diff"],
    );
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

/// Warm-up and window ends for trace simulation: the warm-up covers one
/// full profile lifespan plus twice the largest characteristic time (so
/// the cache reaches steady state), and the measured stretch is long
/// enough to average over many eviction cycles.
pub(crate) fn simulation_window(model: &SnmModel, t_c_max: f64) -> (f64, f64) {
    let lifespan = model.profile.support_end();
    let warmup_end = lifespan + 2.0 * t_c_max;
    let measured = (10.0 * t_c_max).max(3.0 * lifespan);
    (warmup_end, warmup_end + measured)
}

/// Pooled hit ratios per cache size over independent trace replications.
pub(crate) fn simulate_hit_ratios(
    model: &SnmModel,
    cache_sizes: &[u64],
    t_c_max: f64,
    replications: u32,
    base_seed: u64,
) -> Result<Vec<SimResult>> {
    let (warmup_end, window_end) = simulation_window(model, t_c_max);
    let per_rep: Vec<Vec<SimResult>> = (0..replications)
        .into_par_iter()
        .map(|r| -> Result<Vec<SimResult>> {
            let seed = base_seed.wrapping_add(u64::from(r));
            let trace_config = TraceConfig::new(0.0, warmup_end, window_end, seed)
                .map_err(|e| CliError::Numerics(format!("replication {r}: {e}")))?;
            let trace = generate_trace(model, &trace_config);
            cache_sizes
                .iter()
                .map(|&c| {
                    simulate_lru(&trace, c as usize)
                        .map_err(|e| CliError::Numerics(format!("C = {c}: {e}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    (0..cache_sizes.len())
        .map(|i| {
            let per_c: Vec<SimResult> = per_rep.iter().map(|rep| rep[i]).collect();
            aggregate(&per_c)
                .map_err(|e| CliError::Numerics(format!("C = {}: {e}", cache_sizes[i])))
        })
        .collect()
}

/// `C,t_C,p_hit_che,err_bound,delta_star,wasserstein,kolmogorov` plus
/// `sim_hit_ratio,sim_stderr` when simulation is on.
pub(crate) fn hit_curve_table(config: &ExperimentConfig) -> Result<Table> {
    let model = build_model(config)?;
    let cfg = config.numerics_config();
    let exp = &config.experiment;
    let points: Vec<CheCurvePoint> = exp
        .cache_sizes
        .par_iter()
        .map(|&c| {
            che_curve_point(c as f64, exp.delta, &model, &cfg)
                .map_err(|e| CliError::Numerics(format!("C = {c}: {e}")))
        })
        .collect::<Result<_>>()?;

    let mut columns = vec![
        "C",
        "t_C",
        "p_hit_che",
        "err_bound",
        "delta_star",
        "wasserstein",
        "kolmogorov",
    ];
    let mut seeds = Vec::new();
    let sim = if exp.simulate {
        columns.extend(["sim_hit_ratio", "sim_stderr"]);
        seeds = (0..exp.replications)
            .map(|r| exp.seed.wrapping_add(u64::from(r)))
            .collect();
        let t_c_max = points.last().expect("validated non-empty grid").t_c;
        Some(simulate_hit_ratios(
            &model,
            &exp.cache_sizes,
            t_c_max,
            exp.replications,
            exp.seed,
        )?)
    } else {
        None
    };

    let mut table = Table::new(Metadata::new(config, seeds), columns);
    for (i, point) in points.iter().enumerate() {
        let mut row = vec![
            Cell::U64(exp.cache_sizes[i]),
            Cell::F64(point.t_c),
            Cell::F64(point.p_hit_che),
            Cell::F64(point.err_bound),
            Cell::F64(point.delta_star),
            Cell::F64(point.wasserstein),
            Cell::F64(point.kolmogorov),
        ];
        if let Some(sim) = &sim {
            row.push(Cell::F64(sim[i].hit_ratio));
            row.push(Cell::F64(sim[i].std_err));
        }
        table.push(row);
    }
    Ok(table)
}

/// Sample table `sample_index,T_C` plus the sidecar
/// `mean_ratio,ks_clt,ld_upper_emp,ld_upper_theory`.
pub(crate) fn eviction_dist_tables(config: &ExperimentConfig) -> Result<(Table, Table)> {
    let model = build_model(config)?;
    let cfg = config.numerics_config();
    let exp = &config.experiment;
    let cache_size = exp.cache_size.expect("validated") as usize;
    let sample_count = exp.samples.expect("validated") as usize;
    let delta = exp.delta.unwrap_or(0.1);

    let t_c = eviction_time_che(cache_size as f64, &model, &cfg)
        .map_err(|e| CliError::Numerics(format!("C = {cache_size}: {e}")))?;
    let samples = sample_eviction_times(cache_size, &model, sample_count, exp.seed)
        .map_err(|e| CliError::Numerics(format!("C = {cache_size}: {e}")))?;

    let mut sample_table = Table::new(
        Metadata::new(config, vec![exp.seed]),
        vec!["sample_index", "T_C"],
    );
    for (i, &t) in samples.iter().enumerate() {
        sample_table.push(vec![Cell::U64(i as u64), Cell::F64(t)]);
    }

    let (mean, _) = sample_mean_variance(&samples)
        .map_err(|e| CliError::Numerics(format!("C = {cache_size}: {e}")))?;
    let scale = clt_scale(t_c, &model, &cfg)
        .map_err(|e| CliError::Numerics(format!("C = {cache_size}: {e}")))?;
    let mut normalised: Vec<f64> = samples.iter().map(|&t| (t - t_c) / scale).collect();
    normalised.sort_unstable_by(f64::total_cmp);
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    let ks_clt = ks_statistic(&normalised, |x| normal.cdf(x))
        .map_err(|e| CliError::Numerics(format!("C = {cache_size}: {e}")))?;

    let exceedances = samples.iter().filter(|&&t| t > t_c * (1.0 + delta)).count();
    let n = samples.len() as f64;
    let ld_upper_emp = if exceedances == 0 {
        f64::INFINITY
    } else {
        -(exceedances as f64 / n).ln() / cache_size as f64
    };
    let exponents = ld_deviation_exponents(cache_size as f64, delta, &model, &cfg)
        .map_err(|e| CliError::Numerics(format!("C = {cache_size}: {e}")))?;
    let ld_upper_theory = exponents.upper / cache_size as f64;

    let mut summary = Table::new(
        Metadata::new(config, vec![exp.seed]),
        vec!["mean_ratio", "ks_clt", "ld_upper_emp", "ld_upper_theory"],
    );
    summary.push(vec![
        Cell::F64(mean / t_c),
        Cell::F64(ks_clt),
        Cell::F64(ld_upper_emp),
        Cell::F64(ld_upper_theory),
    ]);
    Ok((sample_table, summary))
}

/// `t_C1,t_C2,k,lower,upper` per pair; per-content mode appends
/// `mc_estimate,mc_stderr` when Monte-Carlo samples are requested.
pub(crate) fn tandem_table(config: &ExperimentConfig) -> Result<Table> {
    let model = build_model(config)?;
    let cfg = config.numerics_config();
    let exp = &config.experiment;
    let section: &TandemSection = exp.tandem.as_ref().expect("validated");

    let mut columns = vec!["t_C1", "t_C2", "k", "lower", "upper"];
    let with_mc = section.mc_samples.is_some();
    if with_mc {
        columns.extend(["mc_estimate", "mc_stderr"]);
    }
    let seeds = if with_mc { vec![exp.seed] } else { vec![] };
    let mut table = Table::new(Metadata::new(config, seeds), columns);

    for &(t_c1, t_c2) in &section.pairs {
        let context = |e: &dyn std::fmt::Display| {
            CliError::Numerics(format!("(t_C1, t_C2) = ({t_c1}, {t_c2}): {e}"))
        };
        let k = tandem_k(t_c1, t_c2).map_err(|e| context(&e))? as u64;
        let mut row = vec![Cell::F64(t_c1), Cell::F64(t_c2), Cell::U64(k)];
        match (section.age, section.volume) {
            (Some(age), Some(volume)) => {
                let query = TandemQuery::new(age, volume, t_c1, t_c2).map_err(|e| context(&e))?;
                let bounds =
                    tandem_bounds(&query, &model.profile, &cfg).map_err(|e| context(&e))?;
                row.push(Cell::F64(bounds.lower));
                row.push(Cell::F64(bounds.upper));
                if let Some(mc_samples) = section.mc_samples {
                    let (estimate, std_err) =
                        tandem_hit_mc(&query, &model.profile, mc_samples as usize, exp.seed)
                            .map_err(|e| context(&e))?;
                    row.push(Cell::F64(estimate));
                    row.push(Cell::F64(std_err));
                }
            }
            _ => {
                let (lower, upper) =
                    tandem_hit_aggregate(&model, t_c1, t_c2, &cfg).map_err(|e| context(&e))?;
                row.push(Cell::F64(lower));
                row.push(Cell::F64(upper));
            }
        }
        table.push(row);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use snm_core::NumericsConfig;

    fn parse(text: &str) -> ExperimentConfig {
        ExperimentConfig::from_toml(text).unwrap()
    }

    fn desk_model_block() -> &'static str {
        r#"
            [model]
            lambda = 2.0
            time_unit = "day"

            [model.profile]
            kind = "rectangular"
            lifespan = 1.0

            [model.volume]
            kind = "deterministic"
            z0 = 1.0
        "#
    }

    #[test]
    fn g_curve_rows_match_direct_library_calls() {
        let config = parse(&format!(
            "{}\n[experiment]\nname = \"g-curve\"\ntimes = [0.5, 2.0]",
            desk_model_block()
        ));
        let table = g_curve_table(&config).unwrap();
        assert_eq!(table.rows.len(), 2);
        let Cell::F64(closed) = table.rows[1][1] else {
            panic!("expected float")
        };
        // Unit rectangular profile at t = 2: g = 1 + e^{-1}.
        assert_relative_eq!(closed, 1.0 + (-1.0f64).exp(), max_relative = 1e-12);
        let Cell::F64(rel_diff) = table.rows[1][3] else {
            panic!("expected float")
        };
        assert!(rel_diff <= 1e-6);
    }

    #[test]
    fn hit_curve_rows_are_ordered_and_consistent() {
        let config = parse(&format!(
            "{}\n[experiment]\nname = \"hit-curve\"\ncache_sizes = [1, 2, 4]",
            desk_model_block()
        ));
        let table = hit_curve_table(&config).unwrap();
        assert_eq!(table.columns.len(), 7);
        let p: Vec<f64> = table
            .rows
            .iter()
            .map(|row| match row[2] {
                Cell::F64(v) => v,
                _ => panic!("expected float"),
            })
            .collect();
        assert!(p.windows(2).all(|w| w[0] <= w[1]), "p_hit must grow with C");
    }

    #[test]
    fn simulated_columns_join_the_hit_curve() {
        let config = parse(&format!(
            "{}\n[experiment]\nname = \"hit-curve\"\ncache_sizes = [2, 4]\nsimulate = true\nreplications = 3\nseed = 9",
            desk_model_block()
        ));
        let table = hit_curve_table(&config).unwrap();
        assert_eq!(*table.columns.last().unwrap(), "sim_stderr");
        assert_eq!(table.metadata.seeds, vec![9, 10, 11]);
        for row in &table.rows {
            let Cell::F64(ratio) = row[7] else {
                panic!("expected float")
            };
            assert!((0.0..=1.0).contains(&ratio));
        }
    }

    #[test]
    fn tandem_rows_mirror_the_library_bounds() {
        let config = parse(&format!(
            "{}\n[experiment]\nname = \"tandem\"\n[experiment.tandem]\npairs = [[0.4, 0.7], [0.7, 0.5]]\nage = 0.9\nvolume = 2.0",
            desk_model_block()
        ));
        let table = tandem_table(&config).unwrap();
        let query = TandemQuery::new(0.9, 2.0, 0.4, 0.7).unwrap();
        let profile = snm_core::ProfileSpec::rectangular(1.0).unwrap();
        let bounds = tandem_bounds(&query, &profile, &NumericsConfig::default()).unwrap();
        let Cell::F64(lower) = table.rows[0][3] else {
            panic!("expected float")
        };
        assert_relative_eq!(lower, bounds.lower, max_relative = 1e-14);
        let Cell::U64(k) = table.rows[1][2] else {
            panic!("expected int")
        };
        assert_eq!(k, 0);
        let Cell::F64(upper) = table.rows[1][4] else {
            panic!("expected float")
        };
        assert_eq!(upper, 0.0);
    }

    #[test]
    fn eviction_summary_has_the_pinned_schema() {
        let config = parse(&format!(
            "{}\n[experiment]\nname = \"eviction-dist\"\ncache_size = 3\nsamples = 200\nseed = 5",
            desk_model_block()
        ));
        let (samples, summary) = eviction_dist_tables(&config).unwrap();
        assert_eq!(samples.rows.len(), 200);
        assert_eq!(
            summary.columns,
            vec!["mean_ratio", "ks_clt", "ld_upper_emp", "ld_upper_theory"]
        );
        let Cell::F64(mean_ratio) = summary.rows[0][0] else {
            panic!("expected float")
        };
        assert!(mean_ratio > 0.5 && mean_ratio < 2.0);
    }
}
