//! Shared numerical tolerances and an adaptive Gauss-Kronrod integrator.
//!
//! Every quadrature in the workspace routes through [`integrate`], so a single
//! [`NumericsConfig`] controls accuracy end to end. The integrator is a 15-point
//! Kronrod rule with a 7-point embedded Gauss rule, refined by bisecting the
//! segment with the largest error estimate until the global estimate meets the
//! requested tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Result, SnmError};

/// Tolerances shared by quadrature, root finding and series truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericsConfig {
    /// Relative tolerance for adaptive quadrature.
    pub quad_rel_tol: f64,
    /// Absolute tolerance floor for adaptive quadrature.
    pub quad_abs_tol: f64,
    /// Relative residual tolerance for characteristic-time inversion.
    pub root_rel_tol: f64,
    /// Multiple of the profile lifespan used to cap improper integration
    /// horizons; compact supports make the cap exact, it must still be >= 10.
    pub truncation_horizon_factor: f64,
    /// Hard cap on quadrature segment splits before giving up.
    pub max_subdivisions: usize,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self {
            quad_rel_tol: 1e-9,
            quad_abs_tol: 1e-12,
            root_rel_tol: 1e-8,
            truncation_horizon_factor: 60.0,
            max_subdivisions: 4096,
        }
    }
}

impl NumericsConfig {
    /// Checks every tolerance is positive and the horizon factor is sane.
    pub fn validate(&self) -> Result<()> {
        let pos = [
            ("quad_rel_tol", self.quad_rel_tol),
            ("quad_abs_tol", self.quad_abs_tol),
            ("root_rel_tol", self.root_rel_tol),
        ];
        for (name, value) in pos {
            if !(value.is_finite() && value > 0.0 && value <= 1e-2) {
                return Err(SnmError::InvalidParameter(format!(
                    "{name} must lie in (0, 1e-2], got {value}"
                )));
            }
        }
        if !(self.truncation_horizon_factor.is_finite() && self.truncation_horizon_factor >= 10.0) {
            return Err(SnmError::InvalidParameter(format!(
                "truncation_horizon_factor must be >= 10, got {}",
                self.truncation_horizon_factor
            )));
        }
        if self.max_subdivisions < 64 {
            return Err(SnmError::InvalidParameter(format!(
                "max_subdivisions must be >= 64, got {}",
                self.max_subdivisions
            )));
        }
        Ok(())
    }
}

/// Converged quadrature value with its error estimate and work counters.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    pub subdivisions: usize,
    pub evaluations: usize,
}

// 15-point Kronrod abscissae (positive half) with the embedded 7-point Gauss
// rule on the odd-indexed nodes. The published tables carry more digits than
// f64 keeps; they are reproduced verbatim so they can be checked against the
// reference, hence the `excessive_precision` allowance.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_2,
    0.949_107_912_342_758_524_5,
    0.864_864_423_359_769_072_8,
    0.741_531_185_599_394_439_9,
    0.586_087_235_467_691_130_3,
    0.405_845_151_377_397_166_9,
    0.207_784_955_007_898_467_6,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_96,
    0.063_092_092_629_978_553_29,
    0.104_790_010_322_250_183_8,
    0.140_653_259_715_525_918_7,
    0.169_004_726_639_267_902_8,
    0.190_350_578_064_785_409_9,
    0.204_432_940_075_298_892_4,
    0.209_482_141_084_727_828_0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_3,
    0.279_705_391_489_276_667_9,
    0.381_830_050_505_118_944_9,
    0.417_959_183_673_469_387_8,
];

struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    seq: u64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.seq == other.seq
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        // Largest error first; ties broken by insertion order for determinism.
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

fn kronrod_15<F>(f: &mut F, lo: f64, hi: f64, context: &'static str) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);

    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(SnmError::NonFiniteIntegrand { context, at: x })
        }
    };

    let fc = eval(centre)?;
    let mut fv1 = [0.0_f64; 7];
    let mut fv2 = [0.0_f64; 7];
    for j in 0..7 {
        let off = half * XGK[j];
        fv1[j] = eval(centre - off)?;
        fv2[j] = eval(centre + off)?;
    }

    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = resk.abs();
    for (j, &wg) in WG.iter().enumerate().take(3) {
        let jtw = 2 * j + 1;
        let fsum = fv1[jtw] + fv2[jtw];
        resg += wg * fsum;
        resk += WGK[jtw] * fsum;
        resabs += WGK[jtw] * (fv1[jtw].abs() + fv2[jtw].abs());
    }
    for j in 0..4 {
        let jtw = 2 * j;
        let fsum = fv1[jtw] + fv2[jtw];
        resk += WGK[jtw] * fsum;
        resabs += WGK[jtw] * (fv1[jtw].abs() + fv2[jtw].abs());
    }

    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }

    let value = resk * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let eps50 = 50.0 * f64::EPSILON;
    if resabs > f64::MIN_POSITIVE / eps50 {
        err = err.max(eps50 * resabs);
    }
    Ok((value, err))
}

/// Integrates `f` over `[lo, hi]`, pre-splitting at the supplied interior
/// breakpoints (known kinks of the integrand) before adapting.
///
/// Converges when the summed error estimate drops below
/// `max(quad_abs_tol, quad_rel_tol * |integral|)`.
pub fn integrate<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    breakpoints: &[f64],
    cfg: &NumericsConfig,
    context: &'static str,
) -> Result<Quadrature>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(SnmError::InvalidParameter(format!(
            "{context}: integration bounds must be finite, got [{lo}, {hi}]"
        )));
    }
    if hi <= lo {
        return Ok(Quadrature {
            value: 0.0,
            abs_error: 0.0,
            subdivisions: 0,
            evaluations: 0,
        });
    }

    let span = hi - lo;
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&x| x > lo + 1e-14 * span && x < hi - 1e-14 * span)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * span);

    let mut seq = 0_u64;
    let mut heap: BinaryHeap<Segment> = BinaryHeap::new();
    let mut frozen: Vec<Segment> = Vec::new();
    let mut evaluations = 0_usize;
    let mut total_value = 0.0;
    let mut total_error = 0.0;

    let push = |a: f64,
                b: f64,
                f: &mut F,
                heap: &mut BinaryHeap<Segment>,
                seq: &mut u64,
                evals: &mut usize|
     -> Result<(f64, f64)> {
        let (value, error) = kronrod_15(f, a, b, context)?;
        *evals += 15;
        heap.push(Segment {
            lo: a,
            hi: b,
            value,
            error,
            seq: *seq,
        });
        *seq += 1;
        Ok((value, error))
    };

    let mut start = lo;
    for &cut in cuts.iter().chain(std::iter::once(&hi)) {
        let (v, e) = push(start, cut, &mut f, &mut heap, &mut seq, &mut evaluations)?;
        total_value += v;
        total_error += e;
        start = cut;
    }

    let mut subdivisions = 0_usize;
    loop {
        let tolerance = cfg.quad_abs_tol.max(cfg.quad_rel_tol * total_value.abs());
        if total_error <= tolerance {
            break;
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(SnmError::QuadratureNoConvergence {
                context,
                estimate: total_value,
                abs_error: total_error,
                subdivisions,
            });
        }
        let Some(worst) = heap.pop() else {
            // Everything left is frozen at machine resolution.
            return Err(SnmError::QuadratureNoConvergence {
                context,
                estimate: total_value,
                abs_error: total_error,
                subdivisions,
            });
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            // Segment narrower than machine precision; accept its estimate.
            frozen.push(worst);
            continue;
        }
        total_value -= worst.value;
        total_error -= worst.error;
        let (v1, e1) = push(worst.lo, mid, &mut f, &mut heap, &mut seq, &mut evaluations)?;
        let (v2, e2) = push(mid, worst.hi, &mut f, &mut heap, &mut seq, &mut evaluations)?;
        total_value += v1 + v2;
        total_error += e1 + e2;
        subdivisions += 1;
    }

    // Deterministic final reduction: sum segments in positional order.
    let mut segments: Vec<Segment> = heap.into_vec();
    segments.extend(frozen);
    segments.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
    let mut value = 0.0;
    let mut abs_error = 0.0;
    for s in &segments {
        value += s.value;
        abs_error += s.error;
    }

    Ok(Quadrature {
        value,
        abs_error,
        subdivisions,
        evaluations,
    })
}
