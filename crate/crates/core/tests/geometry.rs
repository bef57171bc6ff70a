use nfambig::geometry::{build_uca, build_ula, distance, effective_aperture_ula};
use nfambig::{ArrayGeometry, Error, GeometryKind, Point3};
use proptest::prelude::*;
use std::f64::consts::PI;

fn norm(p: &Point3) -> f64 {
    distance(p, &[0.0; 3])
}

/// Extent the `aperture` field should report, recomputed from positions.
fn recomputed_aperture(g: &ArrayGeometry) -> f64 {
    let e = g.elements();
    match g.kind().unwrap() {
        GeometryKind::Ula => {
            let xs = e.iter().map(|p| p[0]);
            xs.clone().fold(f64::MIN, f64::max) - xs.fold(f64::MAX, f64::min)
        }
        GeometryKind::Uca | GeometryKind::Upca => 2.0 * e.iter().map(norm).fold(0.0, f64::max),
        GeometryKind::Ura => {
            let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
            for p in e {
                for i in 0..2 {
                    lo[i] = lo[i].min(p[i]);
                    hi[i] = hi[i].max(p[i]);
                }
            }
            (hi[0] - lo[0]).hypot(hi[1] - lo[1])
        }
    }
}

fn nearest_neighbor_spacings(g: &ArrayGeometry) -> Vec<f64> {
    let e = g.elements();
    (0..e.len())
        .map(|i| {
            (0..e.len())
                .filter(|&j| j != i)
                .map(|j| distance(&e[i], &e[j]))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

#[test]
fn element_counts() {
    assert_eq!(build_ula(5.0, 1.0).unwrap().len(), 11);
    assert_eq!(build_uca(10.0, 1.0).unwrap().len(), 63);
    let ura = ArrayGeometry::build(GeometryKind::Ura, 50.0, 1.0).unwrap();
    assert_eq!(ura.len(), 71 * 71);
    let upca = ArrayGeometry::build(GeometryKind::Upca, 2.0, 1.0).unwrap();
    // center + rings of radius 0.5 (7) and 1.0 (13)
    assert_eq!(upca.len(), 1 + 7 + 13);
}

#[test]
fn too_small_apertures_rejected() {
    let cases = [
        (GeometryKind::Ula, 0.4),
        (GeometryKind::Uca, 0.4),
        (GeometryKind::Ura, 0.7),
        (GeometryKind::Upca, 0.9),
    ];
    for (kind, d) in cases {
        assert!(
            matches!(ArrayGeometry::build(kind, d, 1.0), Err(Error::InvalidAperture(_))),
            "{kind}"
        );
    }
    assert!(ArrayGeometry::build(GeometryKind::Ula, 10.0, 0.0).is_err());
    assert!(ArrayGeometry::build(GeometryKind::Ula, f64::NAN, 1.0).is_err());
}

#[test]
fn effective_aperture() {
    assert_eq!(effective_aperture_ula(10.0, PI / 2.0), 10.0);
    assert!((effective_aperture_ula(10.0, PI / 6.0) - 5.0).abs() < 1e-12);
    assert!(effective_aperture_ula(10.0, 0.0).abs() < 1e-12);
}

#[test]
fn csv_export() {
    let g = build_ula(1.0, 1.0).unwrap();
    let mut buf = Vec::new();
    g.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,x,y,z");
    assert_eq!(lines.len(), 1 + g.len());
    assert!(lines[1].starts_with("0,-0.5,"));
}

#[test]
fn fraunhofer_distance_of_built_array() {
    let g = build_ula(50.0, 1.0).unwrap();
    assert_eq!(g.fraunhofer_distance(), 5000.0);
}

fn kind_strategy() -> impl Strategy<Value = GeometryKind> {
    (0usize..4).prop_map(|i| GeometryKind::ALL[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn centroid_at_origin(kind in kind_strategy(), d in 1.0f64..60.0, wl in 0.01f64..2.0) {
        let g = ArrayGeometry::build(kind, d * wl, wl).unwrap();
        prop_assert!(norm(&g.centroid()) <= 1e-9 * wl, "{:?}", g.centroid());
    }

    #[test]
    fn aperture_field_matches_positions(kind in kind_strategy(), d in 1.0f64..60.0, wl in 0.01f64..2.0) {
        let g = ArrayGeometry::build(kind, d * wl, wl).unwrap();
        let want = recomputed_aperture(&g);
        prop_assert!((g.aperture() - want).abs() <= 1e-9 * want.max(1.0), "{} vs {}", g.aperture(), want);
    }

    #[test]
    fn spacing_at_most_half_wavelength(kind in kind_strategy(), d in 1.0f64..10.0) {
        let g = ArrayGeometry::build(kind, d, 1.0).unwrap();
        for s in nearest_neighbor_spacings(&g) {
            prop_assert!(s > 1e-6 && s <= 0.5 + 1e-9, "{kind}: nearest neighbor {s}");
        }
    }

    #[test]
    fn uca_elements_on_one_circle(d in 0.5f64..80.0) {
        let g = build_uca(d, 1.0).unwrap();
        for p in g.elements() {
            prop_assert!((norm(p) - 0.5 * d).abs() <= 1e-9 * d);
            prop_assert_eq!(p[2], 0.0);
        }
    }

    #[test]
    fn sensing_axis_points(kind in kind_strategy(), r in 1.0f64..1e4) {
        let g = ArrayGeometry::build(kind, 5.0, 1.0).unwrap();
        let p = g.axis_point(r);
        prop_assert!((norm(&p) - r).abs() <= 1e-12 * r);
        let axis = kind.sensing_axis();
        prop_assert!((p[0] - r * axis[0]).abs() + (p[1] - r * axis[1]).abs() + (p[2] - r * axis[2]).abs() <= 1e-9 * r);
    }
}
