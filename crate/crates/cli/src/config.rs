//! Declarative experiment configuration.
//!
//! One TOML document describes the traffic model, the numerics tolerances,
//! and the experiment to run. Parsing is strict (unknown keys are errors)
//! and every parameter is re-validated against the library invariants, so
//! a config that loads is a config that runs.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use snm_core::{NumericsConfig, ProfileSpec, SnmModel, VolumeSpec};

use crate::error::{CliError, Result};

/// Top-level config: `[model]`, optional `[numerics]`, `[experiment]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelSection,
    #[serde(default)]
    pub numerics: NumericsSection,
    pub experiment: ExperimentSection,
}

/// Traffic model block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    /// Content arrival rate, in contents per time unit.
    pub lambda: f64,
    /// Label for the time unit (metadata only, e.g. "day").
    #[serde(default = "default_time_unit")]
    pub time_unit: String,
    pub profile: ProfileSection,
    pub volume: VolumeSection,
}

fn default_time_unit() -> String {
    "unit".to_owned()
}

/// Popularity profile block: `kind = "rectangular"` or `"tabulated"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSection {
    Rectangular { lifespan: f64 },
    Tabulated { knots: Vec<(f64, f64)> },
}

/// Volume law block: `kind = "deterministic"` or `"pareto"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum VolumeSection {
    Deterministic { z0: f64 },
    Pareto { scale: f64, exponent: f64 },
}

/// Numerics tolerances; every field defaults to the library default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NumericsSection {
    pub quad_rel_tol: f64,
    pub quad_abs_tol: f64,
    pub root_rel_tol: f64,
    pub truncation_horizon_factor: f64,
    pub max_subdivisions: usize,
}

impl Default for NumericsSection {
    fn default() -> Self {
        let cfg = NumericsConfig::default();
        Self {
            quad_rel_tol: cfg.quad_rel_tol,
            quad_abs_tol: cfg.quad_abs_tol,
            root_rel_tol: cfg.root_rel_tol,
            truncation_horizon_factor: cfg.truncation_horizon_factor,
            max_subdivisions: cfg.max_subdivisions,
        }
    }
}

/// Which experiment to run and with what knobs.
///
/// The grab-bag fields apply per experiment (see the repo README): `times`
/// to `g-curve`; `cache_sizes`, `delta`, `simulate`, `replications` to
/// `hit-curve`; `cache_size`, `samples`, `delta` to `eviction-dist`;
/// `[experiment.tandem]` to `tandem`. `validate` runs a pinned suite and
/// uses only `seed` and `output_dir`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub name: ExperimentName,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_replications")]
    pub replications: u32,
    #[serde(default)]
    pub simulate: bool,
    #[serde(default)]
    pub cache_sizes: Vec<u64>,
    #[serde(default)]
    pub times: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache_size: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tandem: Option<TandemSection>,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_seed() -> u64 {
    42
}

fn default_replications() -> u32 {
    20
}

/// The five experiments the runner dispatches on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentName {
    GCurve,
    HitCurve,
    EvictionDist,
    Tandem,
    Validate,
}

impl ExperimentName {
    /// Kebab-case name as written in configs and artifact metadata.
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentName::GCurve => "g-curve",
            ExperimentName::HitCurve => "hit-curve",
            ExperimentName::EvictionDist => "eviction-dist",
            ExperimentName::Tandem => "tandem",
            ExperimentName::Validate => "validate",
        }
    }

    /// Artifact file stem (kebab-case name with underscores).
    pub fn file_stem(self) -> &'static str {
        match self {
            ExperimentName::GCurve => "g_curve",
            ExperimentName::HitCurve => "hit_curve",
            ExperimentName::EvictionDist => "eviction_dist",
            ExperimentName::Tandem => "tandem",
            ExperimentName::Validate => "validate",
        }
    }
}

/// Tandem experiment block: a grid of characteristic-time pairs, probed
/// either per content (`age` + `volume` given, optional Monte-Carlo
/// columns) or catalogue-wide (both absent).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TandemSection {
    pub pairs: Vec<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub age: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub volume: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_samples: Option<u64>,
}

impl ExperimentConfig {
    /// Parses and fully validates a TOML document.
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: ExperimentConfig =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    /// Re-checks every invariant, with field-path error messages.
    pub fn validate(&self) -> Result<()> {
        self.build_model()
            .map_err(|e| CliError::Config(format!("model: {e}")))?;
        self.numerics_config()
            .validate()
            .map_err(|e| CliError::Config(format!("numerics: {e}")))?;
        let exp = &self.experiment;
        if let Some(d) = exp.delta {
            if !(d.is_finite() && d > 0.0 && d < 1.0) {
                return Err(CliError::Config(format!(
                    "experiment.delta: must lie in (0, 1), got {d}"
                )));
            }
        }
        if !exp.cache_sizes.windows(2).all(|w| w[0] < w[1]) {
            return Err(CliError::Config(
                "experiment.cache_sizes: must be strictly increasing".into(),
            ));
        }
        match exp.name {
            ExperimentName::GCurve => {
                if exp.times.is_empty() {
                    return Err(CliError::Config(
                        "experiment.times: g-curve needs at least one window".into(),
                    ));
                }
                if !exp.times.iter().all(|t| t.is_finite() && *t > 0.0) {
                    return Err(CliError::Config(
                        "experiment.times: windows must be positive and finite".into(),
                    ));
                }
                if !exp.times.windows(2).all(|w| w[0] < w[1]) {
                    return Err(CliError::Config(
                        "experiment.times: must be strictly increasing".into(),
                    ));
                }
                if !matches!(self.model.profile, ProfileSection::Rectangular { .. }) {
                    return Err(CliError::Config(
                        "experiment.name: g-curve compares against the rectangular \
                         closed form and needs model.profile.kind = \"rectangular\""
                            .into(),
                    ));
                }
            }
            ExperimentName::HitCurve => {
                if exp.cache_sizes.is_empty() {
                    return Err(CliError::Config(
                        "experiment.cache_sizes: hit-curve needs at least one size".into(),
                    ));
                }
                if exp.cache_sizes[0] == 0 {
                    return Err(CliError::Config(
                        "experiment.cache_sizes: sizes must be at least 1".into(),
                    ));
                }
                if exp.simulate && exp.replications < 2 {
                    return Err(CliError::Config(
                        "experiment.replications: simulation needs at least 2 \
                         replications for a standard error"
                            .into(),
                    ));
                }
            }
            ExperimentName::EvictionDist => {
                if exp.cache_size.unwrap_or(0) == 0 {
                    return Err(CliError::Config(
                        "experiment.cache_size: eviction-dist needs a cache size >= 1".into(),
                    ));
                }
                if exp.samples.unwrap_or(0) < 2 {
                    return Err(CliError::Config(
                        "experiment.samples: eviction-dist needs at least 2 samples".into(),
                    ));
                }
            }
            ExperimentName::Tandem => {
                let Some(tandem) = &exp.tandem else {
                    return Err(CliError::Config(
                        "experiment.tandem: the tandem experiment needs this block".into(),
                    ));
                };
                if tandem.pairs.is_empty() {
                    return Err(CliError::Config(
                        "experiment.tandem.pairs: needs at least one (t_C1, t_C2) pair".into(),
                    ));
                }
                if !tandem
                    .pairs
                    .iter()
                    .all(|(a, b)| a.is_finite() && b.is_finite() && *a > 0.0 && *b > 0.0)
                {
                    return Err(CliError::Config(
                        "experiment.tandem.pairs: characteristic times must be positive".into(),
                    ));
                }
                match (tandem.age, tandem.volume) {
                    (Some(age), Some(volume)) => {
                        if !age.is_finite() {
                            return Err(CliError::Config(
                                "experiment.tandem.age: must be finite".into(),
                            ));
                        }
                        if !(volume.is_finite() && volume > 0.0) {
                            return Err(CliError::Config(
                                "experiment.tandem.volume: must be positive".into(),
                            ));
                        }
                    }
                    (None, None) => {
                        if tandem.mc_samples.is_some() {
                            return Err(CliError::Config(
                                "experiment.tandem.mc_samples: Monte-Carlo columns need \
                                 a per-content query (set age and volume)"
                                    .into(),
                            ));
                        }
                    }
                    _ => {
                        return Err(CliError::Config(
                            "experiment.tandem: set both age and volume (per-content \
                             bounds) or neither (catalogue aggregate)"
                                .into(),
                        ));
                    }
                }
            }
            ExperimentName::Validate => {}
        }
        Ok(())
    }

    /// Builds the validated traffic model.
    pub fn build_model(&self) -> snm_core::Result<SnmModel> {
        let profile = match &self.model.profile {
            ProfileSection::Rectangular { lifespan } => ProfileSpec::rectangular(*lifespan)?,
            ProfileSection::Tabulated { knots } => ProfileSpec::tabulated(knots)?,
        };
        let volume = match &self.model.volume {
            VolumeSection::Deterministic { z0 } => VolumeSpec::deterministic(*z0)?,
            VolumeSection::Pareto { scale, exponent } => VolumeSpec::pareto(*scale, *exponent)?,
        };
        SnmModel::new(self.model.lambda, profile, volume)
    }

    /// Numerics tolerances as the library config type.
    pub fn numerics_config(&self) -> NumericsConfig {
        NumericsConfig {
            quad_rel_tol: self.numerics.quad_rel_tol,
            quad_abs_tol: self.numerics.quad_abs_tol,
            root_rel_tol: self.numerics.root_rel_tol,
            truncation_horizon_factor: self.numerics.truncation_horizon_factor,
            max_subdivisions: self.numerics.max_subdivisions,
        }
    }
}
