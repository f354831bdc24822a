mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use xdiscord::oracle::dense_spectrum;
use xdiscord::qstate::{
    correlation_params, mutual_information, reduced_a, reduced_b, validate_xstate,
    xstate_spectrum, ComplexScalar, CorrelationParams, StateFile, XState,
};

prop_compose! {
    fn xstate()(
        w in prop::array::uniform4(0.0f64..1.0),
        f14 in 0.0f64..=1.0,
        f23 in 0.0f64..=1.0,
        ph14 in 0.0..2.0 * PI,
        ph23 in 0.0..2.0 * PI,
    ) -> XState {
        let total: f64 = w.iter().sum::<f64>().max(1e-9);
        let a = [w[0] / total, w[1] / total, w[2] / total];
        let a44 = (1.0 - a[0] - a[1] - a[2]).max(0.0);
        let a14 = ComplexScalar::from_polar(f14 * (a[0] * a44).sqrt(), ph14);
        let a23 = ComplexScalar::from_polar(f23 * (a[1] * a[2]).sqrt(), ph23);
        XState::new(a[0], a[1], a[2], a44, a14, a23).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn spectrum_matches_dense(s in xstate()) {
        let closed = xstate_spectrum(&s);
        prop_assert!((closed.sum() - 1.0).abs() <= 1e-12);
        for (a, b) in closed.values().iter().zip(dense_spectrum(&s)) {
            prop_assert!((a - b).abs() <= 1e-10);
            prop_assert!(*a >= 0.0);
        }
    }

    #[test]
    fn mutual_information_nonnegative(s in xstate()) {
        prop_assert!(mutual_information(&s) >= -1e-10);
    }

    #[test]
    fn reduced_states_have_unit_trace(s in xstate()) {
        prop_assert!((reduced_a(&s).trace() - 1.0).abs() <= 1e-12);
        prop_assert!((reduced_b(&s).trace() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn params_round_trip(s in xstate()) {
        let p = correlation_params(&s);
        let back = CorrelationParams::from_components(p.a3, p.b3, p.c3, p.c1, p.c2)
            .reconstruct()
            .unwrap();
        prop_assert!((back.a11() - s.a11()).abs() <= 1e-12);
        prop_assert!((back.a22() - s.a22()).abs() <= 1e-12);
        prop_assert!((back.a33() - s.a33()).abs() <= 1e-12);
        prop_assert!((back.a44() - s.a44()).abs() <= 1e-12);
        prop_assert!((back.a14() - s.a14()).norm() <= 1e-12);
        prop_assert!((back.a23() - s.a23()).norm() <= 1e-12);
    }

    #[test]
    fn matrix_round_trip(s in xstate()) {
        prop_assert_eq!(validate_xstate(&s.to_matrix()).unwrap(), s);
    }

    #[test]
    fn json_round_trip(s in xstate()) {
        let text = serde_json::to_string(&StateFile::from(&s)).unwrap();
        let back: StateFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.into_xstate().unwrap(), s);
    }
}

#[test]
fn coherence_beyond_bound_is_rejected() {
    let a14 = ComplexScalar::new(0.0, 0.2500001);
    assert!(XState::new(0.25, 0.25, 0.25, 0.25, a14, ComplexScalar::new(0.0, 0.0)).is_err());
}
