//! End-to-end consistency of the characteristic-time pipeline.

use approx::assert_relative_eq;
use che_analytics::{
    che_curve_point, che_error_bound, eviction_time_che, expected_distinct_g, hit_prob_che,
    NumericsConfig,
};
use snm_core::{volume_mgf, ProfileSpec, SnmModel, VolumeSpec};

fn triangle_profile() -> ProfileSpec {
    ProfileSpec::tabulated(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]).unwrap()
}

fn tabulated_pareto_model() -> SnmModel {
    SnmModel::new(
        50.0,
        triangle_profile(),
        VolumeSpec::pareto(1.0, 2.0).unwrap(),
    )
    .unwrap()
}

#[test]
fn eviction_round_trip_on_a_tabulated_profile() {
    let cfg = NumericsConfig::default();
    let model = tabulated_pareto_model();
    for cache_size in [5.0, 20.0, 60.0] {
        let t_c = eviction_time_che(cache_size, &model, &cfg).unwrap();
        let g = expected_distinct_g(t_c, &model, &cfg).unwrap();
        let residual = (model.lambda * g - cache_size).abs() / cache_size;
        assert!(
            residual <= cfg.root_rel_tol,
            "residual {residual} exceeds tolerance at C = {cache_size}"
        );
    }
}

#[test]
fn hit_probability_is_nondecreasing_in_the_window() {
    let cfg = NumericsConfig::default();
    let model = tabulated_pareto_model();
    let mut last = 0.0;
    for theta in [0.0, 0.1, 0.4, 0.9, 1.5, 2.0, 5.0] {
        let p = hit_prob_che(theta, &model, &cfg).unwrap();
        assert!(
            p + 1e-10 >= last,
            "hit probability decreased: p({theta}) = {p} < {last}"
        );
        assert!((0.0..=1.0).contains(&p));
        last = p;
    }
}

#[test]
fn hit_probability_saturates_past_the_support() {
    let cfg = NumericsConfig::default();
    let model = tabulated_pareto_model();
    let volume = &model.volume;
    let saturated =
        1.0 - (1.0 - volume_mgf(-model.profile.mass(), volume, &cfg).unwrap()) / volume.mean();
    let end = model.profile.support_end();
    for theta in [end, 2.0 * end, 10.0 * end] {
        let p = hit_prob_che(theta, &model, &cfg).unwrap();
        assert_relative_eq!(p, saturated, max_relative = 1e-9);
    }
}

#[test]
fn error_bound_decays_along_a_geometric_grid() {
    // The bound is not monotone for small caches (the sensitivity term grows
    // while the hit curve is still steep), but once the characteristic time
    // clears the lifespan the hit curve is flat, the sensitivity term dies,
    // and pure concentration takes over: along this grid the bound must fall
    // monotonically and end up far below one. Here lambda g(L) ~ 736, so
    // every cache size sits in that saturated regime.
    let cfg = NumericsConfig::default();
    let model = SnmModel::new(
        1000.0,
        ProfileSpec::rectangular(1.0).unwrap(),
        VolumeSpec::deterministic(1.0).unwrap(),
    )
    .unwrap();
    let mut last = f64::INFINITY;
    let mut smallest = f64::INFINITY;
    for cache_size in [800.0, 1200.0, 1600.0, 2400.0] {
        let (bound, delta_star) = che_error_bound(cache_size, None, &model, &cfg).unwrap();
        assert!(bound > 0.0);
        assert!(delta_star > 0.0 && delta_star < 1.0);
        assert!(
            bound < last,
            "bound must decay along the grid: {bound} >= {last} at C = {cache_size}"
        );
        last = bound;
        smallest = bound;
    }
    assert!(
        smallest < 1e-6,
        "bound should be tiny at C = 2400, got {smallest}"
    );
}

#[test]
fn curve_point_is_internally_consistent() {
    let cfg = NumericsConfig::default();
    let model = tabulated_pareto_model();
    for cache_size in [10.0, 40.0] {
        let point = che_curve_point(cache_size, None, &model, &cfg).unwrap();
        assert_eq!(point.cache_size, cache_size);
        assert_eq!(
            point.t_c,
            eviction_time_che(cache_size, &model, &cfg).unwrap()
        );
        assert_eq!(
            point.p_hit_che,
            hit_prob_che(point.t_c, &model, &cfg).unwrap()
        );
        let (bound, delta_star) = che_error_bound(cache_size, None, &model, &cfg).unwrap();
        assert_eq!(point.err_bound, bound);
        assert_eq!(point.delta_star, delta_star);
        assert!(point.wasserstein > 0.0);
        assert_relative_eq!(
            point.kolmogorov,
            2.0 * point.wasserstein.sqrt(),
            max_relative = 1e-15
        );
    }
}

#[test]
fn pinned_delta_threads_through_the_curve_point() {
    let cfg = NumericsConfig::default();
    let model = tabulated_pareto_model();
    let point = che_curve_point(20.0, Some(0.25), &model, &cfg).unwrap();
    assert_eq!(point.delta_star, 0.25);
}
