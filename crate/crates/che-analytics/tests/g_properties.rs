//! Shape properties of the distinct-content curve `g(t)`.

use approx::assert_relative_eq;
use che_analytics::{expected_distinct_g, expected_distinct_g_quadrature, NumericsConfig};
use proptest::prelude::*;
use snm_core::{volume_mgf, ProfileSpec, SnmModel, VolumeSpec};

/// Triangle profile on `[0, 2]`; exactly normalised under the trapezoid rule.
fn triangle_profile() -> ProfileSpec {
    ProfileSpec::tabulated(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]).unwrap()
}

fn volumes() -> impl Strategy<Value = VolumeSpec> {
    prop_oneof![
        (0.1..10.0f64).prop_map(|z0| VolumeSpec::deterministic(z0).unwrap()),
        ((0.5..3.0f64), (1.1..4.0f64)).prop_map(|(a, alpha)| VolumeSpec::pareto(a, alpha).unwrap()),
    ]
}

#[test]
fn deterministic_rectangular_closed_piece() {
    // For deterministic unit volume and lifespan L the curve below L reduces
    // to g(t) = 2t - (L + t)(1 - exp(-t/L)), derived by hand from the window
    // decomposition; beyond L it continues affinely with slope 1 - exp(-1).
    let cfg = NumericsConfig::default();
    for lifespan in [1.0, 4.0] {
        let model = SnmModel::new(
            1.0,
            ProfileSpec::rectangular(lifespan).unwrap(),
            VolumeSpec::deterministic(1.0).unwrap(),
        )
        .unwrap();
        for frac in [0.1, 0.35, 0.7, 1.0] {
            let t = frac * lifespan;
            let expected = 2.0 * t - (lifespan + t) * (-(-t / lifespan).exp_m1());
            let g = expected_distinct_g(t, &model, &cfg).unwrap();
            assert_relative_eq!(g, expected, max_relative = 1e-12);
        }
    }
}

#[test]
fn affine_tail_beyond_the_support() {
    let cfg = NumericsConfig::default();
    let volume = VolumeSpec::pareto(1.5, 2.0).unwrap();
    let model = SnmModel::new(3.0, ProfileSpec::rectangular(5.0).unwrap(), volume.clone()).unwrap();
    let slope = 1.0 - volume_mgf(-1.0, &volume, &cfg).unwrap();
    let g1 = expected_distinct_g(7.0, &model, &cfg).unwrap();
    let g2 = expected_distinct_g(19.0, &model, &cfg).unwrap();
    assert_relative_eq!(g2 - g1, 12.0 * slope, max_relative = 1e-10);
}

#[test]
fn long_windows_grow_at_the_saturated_slope() {
    let cfg = NumericsConfig::default();
    let volume = VolumeSpec::pareto(1.0, 2.0).unwrap();
    let model = SnmModel::new(10.0, triangle_profile(), volume.clone()).unwrap();
    let slope = 1.0 - volume_mgf(-model.profile.mass(), &volume, &cfg).unwrap();
    let t = 1000.0 * model.profile.support_end();
    let g = expected_distinct_g(t, &model, &cfg).unwrap();
    assert_relative_eq!(g / t, slope, max_relative = 0.02);
}

#[test]
fn quadrature_handles_the_triangle_profile() {
    // The dispatching entry point and the raw quadrature must agree on a
    // tabulated profile (they are the same code path).
    let cfg = NumericsConfig::default();
    let model = SnmModel::new(
        1.0,
        triangle_profile(),
        VolumeSpec::deterministic(2.0).unwrap(),
    )
    .unwrap();
    for t in [0.3, 1.0, 2.0, 6.0] {
        let a = expected_distinct_g(t, &model, &cfg).unwrap();
        let b = expected_distinct_g_quadrature(t, &model, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a > 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn g_is_strictly_increasing(
        volume in volumes(),
        lifespan in 0.2..20.0f64,
        t in 0.05..40.0f64,
        step in 0.05..5.0f64,
    ) {
        let cfg = NumericsConfig::default();
        let model = SnmModel::new(
            1.0,
            ProfileSpec::rectangular(lifespan).unwrap(),
            volume,
        )
        .unwrap();
        let g1 = expected_distinct_g(t, &model, &cfg).unwrap();
        let g2 = expected_distinct_g(t + step, &model, &cfg).unwrap();
        prop_assert!(g2 > g1, "g must increase: g({t}) = {g1}, g({}) = {g2}", t + step);
    }

    #[test]
    fn g_is_bounded_by_the_request_rate(
        volume in volumes(),
        lifespan in 0.2..20.0f64,
        t in 0.01..60.0f64,
    ) {
        // Distinct contents cannot outnumber requests, whose stationary rate
        // per arrival is the mean volume.
        let cfg = NumericsConfig::default();
        let model = SnmModel::new(
            1.0,
            ProfileSpec::rectangular(lifespan).unwrap(),
            volume,
        )
        .unwrap();
        let g = expected_distinct_g(t, &model, &cfg).unwrap();
        prop_assert!(g <= model.mean_volume() * t * (1.0 + 1e-9));
        prop_assert!(g >= 0.0);
    }

    #[test]
    fn triangle_profile_matches_the_same_bounds(
        volume in volumes(),
        t in 0.01..20.0f64,
    ) {
        let cfg = NumericsConfig::default();
        let model = SnmModel::new(2.0, triangle_profile(), volume).unwrap();
        let g = expected_distinct_g(t, &model, &cfg).unwrap();
        prop_assert!(g > 0.0);
        prop_assert!(g <= model.mean_volume() * t * (1.0 + 1e-9));
    }
}
