//! Cross-check of the closed-form axis response against direct summation.

use serde::Serialize;

use crate::closed_form::normalized_power_at_distance;
use crate::error::{Error, Result};
use crate::exact_af::{ambiguity_power_normalized, normalized_power_along_axis, SensingSetup};
use crate::geometry::ArrayGeometry;
use crate::kind::{GeometryKind, ProcessingMode};
use crate::metrics::{alpha, d3db_points, Extent};

/// Largest allowed relative power error inside the half-power mainlobe.
pub const MAINLOBE_REL_TOLERANCE: f64 = 0.02;
/// Largest allowed relative error of the −3 dB crossing distances.
pub const CROSSING_REL_TOLERANCE: f64 = 0.03;

const CROSSING_BISECTION_STEPS: usize = 60;

/// Comparison of exact and closed-form normalized power along the sensing
/// axis for one geometry and processing mode.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub kind: GeometryKind,
    pub mode: ProcessingMode,
    pub elements: usize,
    /// Realized aperture of the built array, used for `d_FA`.
    pub aperture_m: f64,
    pub fraunhofer_m: f64,
    pub target_m: f64,
    pub alpha: f64,
    /// Sweep samples where the closed form is at or above half power.
    pub mainlobe_samples: usize,
    /// Max of `|exact − closed| / closed` over those samples.
    pub max_mainlobe_rel_error: f64,
    pub d3db_low_exact_m: Option<f64>,
    pub d3db_low_predicted_m: f64,
    pub d3db_high_exact_m: Option<f64>,
    pub d3db_high_predicted_m: Option<f64>,
    pub max_crossing_rel_error: f64,
    pub passed: bool,
}

/// Sampled exact and closed-form curves behind a [`ValidationReport`].
#[derive(Debug, Clone)]
pub struct ValidationCurve {
    pub probe_m: Vec<f64>,
    pub exact: Vec<f64>,
    pub closed_form: Vec<f64>,
}

/// Builds the array, sweeps the exact normalized power over `probe_m` and
/// compares it with the closed form at the same distances.
pub fn validate(
    kind: GeometryKind,
    mode: ProcessingMode,
    aperture_m: f64,
    wavelength_m: f64,
    target_m: f64,
    probe_m: &[f64],
) -> Result<(ValidationReport, ValidationCurve)> {
    if probe_m.len() < 2 {
        return Err(Error::Domain("validation sweep needs at least two points".into()));
    }
    let geometry = ArrayGeometry::build(kind, aperture_m, wavelength_m)?;
    let elements = geometry.len();
    let aperture = geometry.aperture();
    let d_fa = geometry.fraunhofer_distance();
    let setup = SensingSetup::with_mode(geometry, mode)?;
    let alpha = alpha(kind, mode)?;

    let exact = normalized_power_along_axis(&setup, target_m, probe_m)?;
    let closed_form = probe_m
        .iter()
        .map(|&d| normalized_power_at_distance(kind, mode, d_fa, target_m, d))
        .collect::<Result<Vec<_>>>()?;

    let mut mainlobe_samples = 0;
    let mut max_mainlobe_rel_error: f64 = 0.0;
    for (e, c) in exact.iter().zip(&closed_form) {
        if *c >= 0.5 {
            mainlobe_samples += 1;
            max_mainlobe_rel_error = max_mainlobe_rel_error.max((e - c).abs() / c);
        }
    }

    let (low_pred, high_pred) = d3db_points(target_m, d_fa, alpha)?;
    let high_pred = match high_pred {
        Extent::Finite(v) => Some(v),
        Extent::Infinite => None,
    };
    let low_exact = exact_crossing(&setup, target_m, probe_m, &exact, Side::Near)?;
    let high_exact = exact_crossing(&setup, target_m, probe_m, &exact, Side::Far)?;

    let mut max_crossing_rel_error: f64 = 0.0;
    let mut crossings_ok = true;
    match low_exact {
        Some(e) => max_crossing_rel_error = max_crossing_rel_error.max((e - low_pred).abs() / low_pred),
        None => crossings_ok = false,
    }
    match (high_exact, high_pred) {
        (Some(e), Some(p)) => max_crossing_rel_error = max_crossing_rel_error.max((e - p).abs() / p),
        (None, None) => {}
        _ => crossings_ok = false,
    }
    if !crossings_ok {
        max_crossing_rel_error = f64::INFINITY;
    }

    let passed = mainlobe_samples > 0
        && max_mainlobe_rel_error <= MAINLOBE_REL_TOLERANCE
        && max_crossing_rel_error <= CROSSING_REL_TOLERANCE;

    let report = ValidationReport {
        kind,
        mode,
        elements,
        aperture_m: aperture,
        fraunhofer_m: d_fa,
        target_m,
        alpha,
        mainlobe_samples,
        max_mainlobe_rel_error,
        d3db_low_exact_m: low_exact,
        d3db_low_predicted_m: low_pred,
        d3db_high_exact_m: high_exact,
        d3db_high_predicted_m: high_pred,
        max_crossing_rel_error,
        passed,
    };
    let curve = ValidationCurve {
        probe_m: probe_m.to_vec(),
        exact,
        closed_form,
    };
    Ok((report, curve))
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Near,
    Far,
}

/// Walks outward from the target along the sweep to the first sample below
/// half power, then bisects the exact power between it and its neighbor.
fn exact_crossing(
    setup: &SensingSetup,
    target_m: f64,
    probe_m: &[f64],
    exact: &[f64],
    side: Side,
) -> Result<Option<f64>> {
    let mut indices: Vec<usize> = (0..probe_m.len())
        .filter(|&i| match side {
            Side::Near => probe_m[i] < target_m,
            Side::Far => probe_m[i] > target_m,
        })
        .collect();
    indices.sort_by(|&a, &b| {
        (probe_m[a] - target_m)
            .abs()
            .total_cmp(&(probe_m[b] - target_m).abs())
    });
    let Some(pos) = indices.iter().position(|&i| exact[i] < 0.5) else {
        return Ok(None);
    };
    let outside = probe_m[indices[pos]];
    let mut inside = if pos == 0 {
        target_m
    } else {
        probe_m[indices[pos - 1]]
    };
    let mut outside = outside;

    let aperture = setup.primary_aperture();
    let target = aperture.axis_point(target_m);
    for _ in 0..CROSSING_BISECTION_STEPS {
        let mid = 0.5 * (inside + outside);
        let p = ambiguity_power_normalized(setup, &target, &aperture.axis_point(mid))?;
        if p >= 0.5 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    Ok(Some(0.5 * (inside + outside)))
}
