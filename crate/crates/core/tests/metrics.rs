mod common;

use common::linspace;
use nfambig::closed_form::normalized_power_at_distance;
use nfambig::metrics::{
    alpha, beamdepth, beamdepth_result, d3db_points, first_null, geometry_metrics, max_nf_range, psl,
    sidelobe_peak, solve_x3db, PSL_X_MAX,
};
use nfambig::{Extent, GeometryKind, ProcessingMode};
use proptest::prelude::*;

#[test]
fn alpha_identity() {
    for kind in GeometryKind::ALL {
        for mode in ProcessingMode::ALL {
            let lhs = alpha(kind, mode).unwrap() * kind.scaling_coefficient();
            assert!((lhs - solve_x3db(kind, mode).unwrap()).abs() <= 1e-9);
        }
    }
}

#[test]
fn ratio_band_and_doubling() {
    for kind in GeometryKind::ALL {
        let m = geometry_metrics(kind).unwrap();
        assert!(
            (1.38..=1.41).contains(&m.alpha_ratio) && m.alpha_ratio < std::f64::consts::SQRT_2,
            "{kind}: {}",
            m.alpha_ratio
        );
        assert!((m.psl_mimo_db - 2.0 * m.psl_simo_db).abs() <= 1e-6, "{kind}");
    }
}

#[test]
fn sidelobe_window_is_wide_enough() {
    for kind in GeometryKind::ALL {
        let (x, p) = sidelobe_peak(kind, ProcessingMode::SimoMiso, PSL_X_MAX).unwrap();
        let (_, wide) = sidelobe_peak(kind, ProcessingMode::SimoMiso, 4.0 * PSL_X_MAX).unwrap();
        assert!(
            (p - wide).abs() <= 1e-9,
            "{kind}: peak {p} at {x}, wider scan {wide}"
        );
        assert!(x > first_null(kind).unwrap());
    }
}

#[test]
fn psl_is_negative() {
    for kind in GeometryKind::ALL {
        for mode in ProcessingMode::ALL {
            assert!(psl(kind, mode).unwrap() < 0.0);
        }
    }
}

#[test]
fn divergence_exactly_at_max_range() {
    let (d_fa, a) = (5000.0, 6.952);
    let edge = max_nf_range(d_fa, a);
    assert_eq!(beamdepth(edge, d_fa, a).unwrap(), Extent::Infinite);
    assert!(beamdepth(edge * (1.0 - 1e-9), d_fa, a).unwrap().is_finite());
    assert_eq!(beamdepth(2.0 * edge, d_fa, a).unwrap(), Extent::Infinite);
    let r = beamdepth_result(2.0 * edge, d_fa, a).unwrap();
    assert_eq!(r.d_high, Extent::Infinite);
    assert!(r.d_low.is_finite() && r.d_low < 2.0 * edge);
}

#[test]
fn invalid_inputs() {
    assert!(beamdepth(0.0, 5000.0, 7.0).is_err());
    assert!(beamdepth(100.0, -1.0, 7.0).is_err());
    assert!(d3db_points(100.0, 5000.0, f64::NAN).is_err());
}

#[test]
fn beamdepth_grows_with_distance() {
    let a = alpha(GeometryKind::Uca, ProcessingMode::Mimo).unwrap();
    let mut prev = 0.0;
    for d in linspace(1.0, max_nf_range(5000.0, a) * 0.999, 500) {
        let bd = beamdepth(d, 5000.0, a).unwrap().value();
        assert!(bd > prev);
        prev = bd;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn beamdepth_consistency(
        d_fa in 10.0f64..1e5,
        k in 0usize..4,
        mimo: bool,
        frac in 0.01f64..0.95,
    ) {
        let kind = GeometryKind::ALL[k];
        let mode = if mimo { ProcessingMode::Mimo } else { ProcessingMode::SimoMiso };
        let a = alpha(kind, mode).unwrap();
        let d = frac * max_nf_range(d_fa, a);
        let (low, high) = d3db_points(d, d_fa, a).unwrap();
        let high = high.value();
        let bd = beamdepth(d, d_fa, a).unwrap().value();
        prop_assert!(low <= d && d <= high);
        prop_assert!(((high - low) - bd).abs() <= 1e-9 * bd, "{} vs {bd}", high - low);
        for edge in [low, high] {
            let p = normalized_power_at_distance(kind, mode, d_fa, d, edge).unwrap();
            prop_assert!((p - 0.5).abs() <= 1e-6, "{kind} {mode}: {p} at {edge}");
        }
    }

    #[test]
    fn beyond_range_is_unbounded(d_fa in 10.0f64..1e5, a in 1.0f64..12.0, over in 1.0f64..10.0) {
        let d = over * max_nf_range(d_fa, a);
        prop_assert_eq!(beamdepth(d, d_fa, a).unwrap(), Extent::Infinite);
        prop_assert_eq!(d3db_points(d, d_fa, a).unwrap().1, Extent::Infinite);
    }
}
