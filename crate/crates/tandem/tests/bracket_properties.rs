//! Structural invariants of the tandem bracket under random queries.

use proptest::prelude::*;
use snm_core::{NumericsConfig, ProfileSpec, SnmModel, VolumeSpec};
use tandem::{tandem_bounds, tandem_hit_aggregate, tandem_k, TandemBounds, TandemQuery};

fn profiles() -> impl Strategy<Value = ProfileSpec> {
    prop_oneof![
        (0.5..4.0f64).prop_map(|l| ProfileSpec::rectangular(l).unwrap()),
        Just(ProfileSpec::tabulated(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]).unwrap()),
    ]
}

fn bounds_for(profile: &ProfileSpec, age: f64, volume: f64, t_c1: f64, t_c2: f64) -> TandemBounds {
    let query = TandemQuery::new(age, volume, t_c1, t_c2).unwrap();
    tandem_bounds(&query, profile, &NumericsConfig::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_ordered_and_capped_by_the_leading_factor(
        profile in profiles(),
        age in -1.0..6.0f64,
        volume in 0.05..8.0f64,
        t_c1 in 0.05..2.0f64,
        t_c2 in 0.05..3.0f64,
    ) {
        let bounds = bounds_for(&profile, age, volume, t_c1, t_c2);
        let leading =
            (-volume * (profile.cumulative(age) - profile.cumulative(age - t_c1))).exp();
        prop_assert!(bounds.lower >= 0.0);
        prop_assert!(bounds.lower <= bounds.upper);
        prop_assert!(bounds.upper <= leading + 1e-12);
        prop_assert!(bounds.upper <= 1.0);
    }

    #[test]
    fn reversed_eviction_order_collapses_to_zero(
        profile in profiles(),
        age in -1.0..6.0f64,
        volume in 0.05..8.0f64,
        t_c1 in 0.05..2.0f64,
        frac in 0.1..1.0f64,
    ) {
        let t_c2 = t_c1 * frac;
        prop_assert_eq!(tandem_k(t_c1, t_c2).unwrap(), 0);
        let bounds = bounds_for(&profile, age, volume, t_c1, t_c2);
        prop_assert_eq!(bounds.k, 0);
        prop_assert!(bounds.exact);
        prop_assert_eq!(bounds.lower, 0.0);
        prop_assert_eq!(bounds.upper, 0.0);
    }

    #[test]
    fn single_cell_bracket_is_bit_exact(
        profile in profiles(),
        age in -1.0..6.0f64,
        volume in 0.05..8.0f64,
        t_c1 in 0.05..2.0f64,
        frac in 0.001..1.0f64,
    ) {
        // t_C1 < t_C2 <= 2 t_C1: exactly one cell.
        let t_c2 = t_c1 * (1.0 + frac);
        let bounds = bounds_for(&profile, age, volume, t_c1, t_c2);
        prop_assert_eq!(bounds.k, 1);
        prop_assert!(bounds.exact);
        prop_assert_eq!(bounds.lower.to_bits(), bounds.upper.to_bits());
    }

    #[test]
    fn windows_off_the_support_have_zero_upper_bound(
        profile in profiles(),
        volume in 0.05..8.0f64,
        t_c1 in 0.05..2.0f64,
        t_c2_over in 1.01..4.0f64,
        slack in 0.0..3.0f64,
        before in proptest::bool::ANY,
    ) {
        let t_c2 = t_c1 * t_c2_over;
        // Either the whole window predates content entry or it postdates
        // the end of the popularity support.
        let age = if before {
            t_c1 - slack
        } else {
            profile.support_end() + t_c2 + slack
        };
        let bounds = bounds_for(&profile, age, volume, t_c1, t_c2);
        prop_assert_eq!(bounds.upper, 0.0);
        prop_assert_eq!(bounds.lower, 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn aggregate_bracket_is_ordered_and_bounded(
        lifespan in 0.5..2.0f64,
        z0 in 0.2..5.0f64,
        t_c1 in 0.05..1.0f64,
        ratio in 0.2..5.0f64,
    ) {
        let model = SnmModel::new(
            1.0,
            ProfileSpec::rectangular(lifespan).unwrap(),
            VolumeSpec::deterministic(z0).unwrap(),
        )
        .unwrap();
        let t_c2 = t_c1 * ratio;
        let (lower, upper) =
            tandem_hit_aggregate(&model, t_c1, t_c2, &NumericsConfig::default()).unwrap();
        prop_assert!(0.0 <= lower && lower <= upper && upper <= 1.0);
        if tandem_k(t_c1, t_c2).unwrap() == 0 {
            prop_assert_eq!(lower, 0.0);
            prop_assert_eq!(upper, 0.0);
        }
    }
}
