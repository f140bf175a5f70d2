//! Request intensity profiles.
//!
//! A profile is the shared shape `h(t)` of the request intensity: every content
//! requests at rate `z * h(t - entry_time)` where `z` is its volume. Profiles
//! are supported on `[0, support_end]`, vanish elsewhere and integrate to one
//! (tabulated grids within a small mass tolerance).

use crate::error::{Result, SnmError};

/// Allowed deviation of a tabulated profile's total mass from one.
pub const TABULATED_MASS_TOL: f64 = 1e-6;

/// Quantile used to pad simulation windows for tabulated profiles.
const PADDING_QUANTILE: f64 = 0.9999;

/// Popularity profile shape `h(t)` shared by all contents.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileSpec {
    /// Constant intensity `1 / lifespan` on `[0, lifespan]`.
    Rectangular { lifespan: f64 },
    /// Piecewise-linear interpolation of a sampled intensity grid.
    Tabulated(TabulatedProfile),
}

/// Validated grid of `(t, h(t))` knots starting at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedProfile {
    ts: Vec<f64>,
    hs: Vec<f64>,
    /// Exact piecewise integral of the interpolant up to each knot.
    cum: Vec<f64>,
    mass: f64,
}

impl TabulatedProfile {
    fn new(points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(SnmError::InvalidParameter(
                "tabulated profile needs at least two knots".into(),
            ));
        }
        if points[0].0 != 0.0 {
            return Err(SnmError::InvalidParameter(format!(
                "tabulated profile grid must start at t = 0, got {}",
                points[0].0
            )));
        }
        for window in points.windows(2) {
            if !(window[1].0.is_finite() && window[1].0 > window[0].0) {
                return Err(SnmError::InvalidParameter(
                    "tabulated profile knots must be finite and strictly increasing".into(),
                ));
            }
        }
        if points.iter().any(|&(_, h)| !(h.is_finite() && h >= 0.0)) {
            return Err(SnmError::InvalidParameter(
                "tabulated profile intensities must be finite and non-negative".into(),
            ));
        }
        let ts: Vec<f64> = points.iter().map(|p| p.0).collect();
        let hs: Vec<f64> = points.iter().map(|p| p.1).collect();
        let mut cum = Vec::with_capacity(ts.len());
        cum.push(0.0);
        for i in 1..ts.len() {
            let segment = 0.5 * (hs[i] + hs[i - 1]) * (ts[i] - ts[i - 1]);
            cum.push(cum[i - 1] + segment);
        }
        let mass = *cum.last().expect("at least two knots");
        if (mass - 1.0).abs() > TABULATED_MASS_TOL {
            return Err(SnmError::InvalidParameter(format!(
                "tabulated profile must integrate to 1 within {TABULATED_MASS_TOL}, got {mass}"
            )));
        }
        Ok(Self { ts, hs, cum, mass })
    }

    fn segment_index(&self, t: f64) -> usize {
        // Largest i with ts[i] <= t; t is known to lie in [ts[0], ts[last]].
        match self.ts.binary_search_by(|knot| knot.total_cmp(&t)) {
            Ok(i) => i.min(self.ts.len() - 2),
            Err(i) => i - 1,
        }
    }

    fn intensity(&self, t: f64) -> f64 {
        if t < 0.0 || t > *self.ts.last().expect("non-empty") {
            return 0.0;
        }
        let i = self.segment_index(t);
        let w = (t - self.ts[i]) / (self.ts[i + 1] - self.ts[i]);
        self.hs[i] + w * (self.hs[i + 1] - self.hs[i])
    }

    fn cumulative(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        if t >= *self.ts.last().expect("non-empty") {
            return self.mass;
        }
        let i = self.segment_index(t);
        // Trapezoid between the knot and the interpolated intensity is exact
        // because h is linear on the segment.
        self.cum[i] + 0.5 * (self.hs[i] + self.intensity(t)) * (t - self.ts[i])
    }

    fn cumulative_inverse(&self, p: f64) -> f64 {
        if p <= 0.0 {
            return 0.0;
        }
        if p >= self.mass {
            return *self.ts.last().expect("non-empty");
        }
        let i = match self.cum.binary_search_by(|c| c.total_cmp(&p)) {
            Ok(i) => i.min(self.ts.len() - 2),
            Err(i) => i - 1,
        };
        let dp = p - self.cum[i];
        if dp == 0.0 {
            return self.ts[i];
        }
        let dt_seg = self.ts[i + 1] - self.ts[i];
        let slope = (self.hs[i + 1] - self.hs[i]) / dt_seg;
        // Solve 0.5*slope*dt^2 + h_i*dt = dp; the form below is stable for
        // slope -> 0 and exact on flat segments.
        let disc = (self.hs[i] * self.hs[i] + 2.0 * slope * dp).max(0.0);
        let dt = 2.0 * dp / (self.hs[i] + disc.sqrt());
        self.ts[i] + dt.min(dt_seg)
    }

    /// Grid knots, exposed as integration breakpoints.
    pub fn knots(&self) -> &[f64] {
        &self.ts
    }

    /// Actual integral of the interpolant (within [`TABULATED_MASS_TOL`] of 1).
    pub fn mass(&self) -> f64 {
        self.mass
    }
}

impl ProfileSpec {
    /// Uniform profile over `[0, lifespan]`.
    pub fn rectangular(lifespan: f64) -> Result<Self> {
        if !(lifespan.is_finite() && lifespan > 0.0) {
            return Err(SnmError::InvalidParameter(format!(
                "rectangular lifespan must be positive and finite, got {lifespan}"
            )));
        }
        Ok(Self::Rectangular { lifespan })
    }

    /// Piecewise-linear profile through the given `(t, h)` knots.
    pub fn tabulated(points: &[(f64, f64)]) -> Result<Self> {
        Ok(Self::Tabulated(TabulatedProfile::new(points)?))
    }

    /// Re-checks construction invariants (useful after deserialization).
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Rectangular { lifespan } => Self::rectangular(*lifespan).map(|_| ()),
            Self::Tabulated(tab) => {
                let points: Vec<(f64, f64)> =
                    tab.ts.iter().copied().zip(tab.hs.iter().copied()).collect();
                TabulatedProfile::new(&points).map(|_| ())
            }
        }
    }

    /// Profile shape `h(t)`; zero off the support.
    pub fn intensity(&self, t: f64) -> f64 {
        match self {
            Self::Rectangular { lifespan } => {
                if (0.0..=*lifespan).contains(&t) {
                    1.0 / lifespan
                } else {
                    0.0
                }
            }
            Self::Tabulated(tab) => tab.intensity(t),
        }
    }

    /// Cumulative mass `H(t) = integral of h over [0, t]`, clamped to `[0, mass]`.
    pub fn cumulative(&self, t: f64) -> f64 {
        match self {
            Self::Rectangular { lifespan } => (t / lifespan).clamp(0.0, 1.0),
            Self::Tabulated(tab) => tab.cumulative(t),
        }
    }

    /// Inverse of [`cumulative`](Self::cumulative) on `[0, mass]`.
    pub fn cumulative_inverse(&self, p: f64) -> f64 {
        match self {
            Self::Rectangular { lifespan } => (p * lifespan).clamp(0.0, *lifespan),
            Self::Tabulated(tab) => tab.cumulative_inverse(p),
        }
    }

    /// Total mass of the profile (exactly 1 for rectangular).
    pub fn mass(&self) -> f64 {
        match self {
            Self::Rectangular { .. } => 1.0,
            Self::Tabulated(tab) => tab.mass(),
        }
    }

    /// End of the support: requests never arrive later than this age.
    pub fn support_end(&self) -> f64 {
        match self {
            Self::Rectangular { lifespan } => *lifespan,
            Self::Tabulated(tab) => *tab.ts.last().expect("non-empty"),
        }
    }

    /// How far before a window contents must be seeded so the window sees the
    /// stationary regime: the lifespan, or a high quantile for tabulated grids.
    pub fn seed_padding(&self) -> f64 {
        match self {
            Self::Rectangular { lifespan } => *lifespan,
            Self::Tabulated(tab) => tab.cumulative_inverse(PADDING_QUANTILE * tab.mass()),
        }
    }

    /// Interior points where `h` is not smooth, used as quadrature breakpoints.
    pub fn knots(&self) -> Vec<f64> {
        match self {
            Self::Rectangular { lifespan } => vec![0.0, *lifespan],
            Self::Tabulated(tab) => tab.ts.clone(),
        }
    }
}

/// Request intensity `z * h(t)` of a content with volume `z` at age `t`.
pub fn profile_intensity(t: f64, z: f64, profile: &ProfileSpec) -> f64 {
    debug_assert!(z >= 0.0, "volume must be non-negative");
    z * profile.intensity(t)
}
