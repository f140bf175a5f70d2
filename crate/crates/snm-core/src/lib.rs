//! Core primitives of the shot-noise request model (SNM).
//!
//! Traffic is described by three ingredients:
//!
//! * a content arrival rate `lambda` (homogeneous Poisson entries),
//! * a popularity profile `h(t)` shared by all contents ([`ProfileSpec`]),
//! * a volume law for the per-content scale `Z` ([`VolumeSpec`]).
//!
//! A content that entered at time `xi` with volume `z` is requested according
//! to an inhomogeneous Poisson process of intensity `z * h(t - xi)`. Downstream
//! crates build cache analytics and simulators on top of these pieces; this
//! crate owns the model types, the volume moment generating function, and the
//! shared adaptive quadrature ([`numerics`]) they all use.

mod error;
mod model;
pub mod numerics;
mod profile;
mod volume;

pub use error::{Result, SnmError};
pub use model::SnmModel;
pub use numerics::{integrate, NumericsConfig, Quadrature};
pub use profile::{profile_intensity, ProfileSpec, TabulatedProfile, TABULATED_MASS_TOL};
pub use volume::{
    sample_volume, try_volume_weighted_expectation, volume_expectation, volume_mgf,
    volume_mgf_deriv, volume_weighted_expectation, VolumeSpec,
};
