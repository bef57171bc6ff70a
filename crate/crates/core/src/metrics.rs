//! Resolution, range and sidelobe metrics derived from the closed forms.

use std::f64::consts::SQRT_2;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::closed_form::{power_unchecked, quadratic_mainlobe_coefficient, simo_power_unchecked};
use crate::error::{Error, Result};
use crate::kind::{GeometryKind, ProcessingMode};

/// Upper end of the sidelobe search window in `x`.
pub const PSL_X_MAX: f64 = 50.0;
/// Grid points for the coarse sidelobe scan.
pub const PSL_GRID_POINTS: usize = 100_000;

const NULL_SCAN_STEP: f64 = 1e-3;
const X_TOLERANCE: f64 = 1e-12;

/// A length that may be unbounded (beamdepth beyond the near-field range).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extent {
    Finite(f64),
    Infinite,
}

impl Extent {
    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }

    /// The value, with `Infinite` mapped to `f64::INFINITY`.
    pub fn value(self) -> f64 {
        match self {
            Self::Finite(v) => v,
            Self::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v}"),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

/// Finite values serialize as numbers, `Infinite` as the string `"inf"`.
impl Serialize for Extent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(v) => serializer.serialize_f64(*v),
            Self::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// The −3 dB crossing distances around a target and their separation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeamdepthResult {
    pub d_low: f64,
    pub d_high: Extent,
    pub bd: Extent,
}

/// One row of the α / PSL tables.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryMetrics {
    pub kind: GeometryKind,
    pub a: f64,
    pub x3db_simo: f64,
    pub x3db_mimo: f64,
    pub alpha_simo: f64,
    pub alpha_mimo: f64,
    pub alpha_ratio: f64,
    pub psl_simo_db: f64,
    pub psl_mimo_db: f64,
}

/// Quadratic-mainlobe prediction of the MIMO gain against the exact roots.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticGainAnalysis {
    pub kind: GeometryKind,
    /// Mainlobe curvature `c` in `|AF(x)|² ≈ 1 − c x²`.
    pub c: f64,
    pub x3db_quad_simo: f64,
    pub x3db_quad_mimo: f64,
    pub predicted_ratio: f64,
    pub true_ratio: f64,
    /// `|x_quad − x_true| / x_true` for the SIMO/MISO half-power argument.
    pub rel_error_simo: f64,
    /// Same, MIMO.
    pub rel_error_mimo: f64,
    /// `|predicted_ratio − true_ratio| / true_ratio`.
    pub ratio_rel_error: f64,
}

fn check_positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// First local minimum of the SIMO power for `x > 0`.
///
/// For the UCA and UPCA this is a true zero (J₀ and sinc vanish). The
/// Fresnel-based ULA and URA patterns never reach zero on the axis; their
/// first trough sits near `x ≈ 3.654`.
pub fn first_null(kind: GeometryKind) -> Result<f64> {
    let p = |x: f64| simo_power_unchecked(kind, x);
    let steps = (PSL_X_MAX / NULL_SCAN_STEP) as usize;
    let mut prev = p(0.0);
    for i in 1..=steps {
        let x = i as f64 * NULL_SCAN_STEP;
        let cur = p(x);
        if cur > prev {
            let lo = (x - 2.0 * NULL_SCAN_STEP).max(0.0);
            return Ok(golden_section_max(|t| -p(t), lo, x, X_TOLERANCE));
        }
        prev = cur;
    }
    Err(Error::Internal(format!("no mainlobe null found for {kind}")))
}

/// Smallest positive `x` with normalized power 0.5, by bisection on
/// `[0, first_null]`.
pub fn solve_x3db(kind: GeometryKind, mode: ProcessingMode) -> Result<f64> {
    let f = |x: f64| power_unchecked(kind, mode, x) - 0.5;
    let mut lo = 0.0;
    let mut hi = first_null(kind)?;
    if !(f(lo) > 0.0 && f(hi) < 0.0) {
        return Err(Error::Internal(format!(
            "half-power point not bracketed for {kind} {mode}"
        )));
    }
    while hi - lo > X_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `α = x_3dB / a`.
pub fn alpha(kind: GeometryKind, mode: ProcessingMode) -> Result<f64> {
    Ok(solve_x3db(kind, mode)? / kind.scaling_coefficient())
}

/// −3 dB distances `d_FA·d' / (d_FA ± α·d')`. The far point is infinite once
/// `d' ≥ d_FA / α`.
pub fn d3db_points(d_target: f64, d_fa: f64, alpha: f64) -> Result<(f64, Extent)> {
    let d = check_positive("target distance", d_target)?;
    let d_fa = check_positive("Fraunhofer distance", d_fa)?;
    let alpha = check_positive("alpha", alpha)?;
    let low = d_fa * d / (d_fa + alpha * d);
    let high = if d >= max_nf_range(d_fa, alpha) {
        Extent::Infinite
    } else {
        Extent::Finite(d_fa * d / (d_fa - alpha * d))
    };
    Ok((low, high))
}

/// `BD = 2α·d_FA·d'² / (d_FA² − α²·d'²)` inside the near-field range,
/// infinite beyond it.
pub fn beamdepth(d_target: f64, d_fa: f64, alpha: f64) -> Result<Extent> {
    let d = check_positive("target distance", d_target)?;
    let d_fa = check_positive("Fraunhofer distance", d_fa)?;
    let alpha = check_positive("alpha", alpha)?;
    if d >= max_nf_range(d_fa, alpha) {
        return Ok(Extent::Infinite);
    }
    Ok(Extent::Finite(
        2.0 * alpha * d_fa * d * d / (d_fa * d_fa - alpha * alpha * d * d),
    ))
}

pub fn beamdepth_result(d_target: f64, d_fa: f64, alpha: f64) -> Result<BeamdepthResult> {
    let (d_low, d_high) = d3db_points(d_target, d_fa, alpha)?;
    Ok(BeamdepthResult {
        d_low,
        d_high,
        bd: beamdepth(d_target, d_fa, alpha)?,
    })
}

/// Largest target distance with finite beamdepth, `d_FA / α`.
pub fn max_nf_range(d_fa: f64, alpha: f64) -> f64 {
    d_fa / alpha
}

/// Peak-to-sidelobe level in dB over `x ∈ (first_null, PSL_X_MAX]`.
///
/// Coarse grid scan, then golden-section refinement of the highest local
/// maximum. Equal grid maxima resolve to the smallest `x`.
pub fn psl(kind: GeometryKind, mode: ProcessingMode) -> Result<f64> {
    Ok(10.0 * sidelobe_peak(kind, mode, PSL_X_MAX)?.1.log10())
}

/// Location and normalized power of the highest sidelobe in
/// `(first_null, x_max]`.
pub fn sidelobe_peak(kind: GeometryKind, mode: ProcessingMode, x_max: f64) -> Result<(f64, f64)> {
    let start = first_null(kind)?;
    let p = |x: f64| power_unchecked(kind, mode, x);
    let step = (x_max - start) / PSL_GRID_POINTS as f64;
    let xs = |i: usize| start + i as f64 * step;

    let mut best: Option<(usize, f64)> = None;
    let mut prev = p(xs(0));
    let mut cur = p(xs(1));
    for i in 1..PSL_GRID_POINTS {
        let next = p(xs(i + 1));
        if cur >= prev && cur > next && best.is_none_or(|(_, v)| cur > v) {
            best = Some((i, cur));
        }
        prev = cur;
        cur = next;
    }
    let (i, _) = best.ok_or_else(|| Error::Internal(format!("no sidelobe found for {kind} {mode}")))?;
    let x = golden_section_max(p, xs(i - 1), xs(i + 1), X_TOLERANCE);
    Ok((x, p(x)))
}

pub fn geometry_metrics(kind: GeometryKind) -> Result<GeometryMetrics> {
    let a = kind.scaling_coefficient();
    let x3db_simo = solve_x3db(kind, ProcessingMode::SimoMiso)?;
    let x3db_mimo = solve_x3db(kind, ProcessingMode::Mimo)?;
    let alpha_simo = x3db_simo / a;
    let alpha_mimo = x3db_mimo / a;
    Ok(GeometryMetrics {
        kind,
        a,
        x3db_simo,
        x3db_mimo,
        alpha_simo,
        alpha_mimo,
        alpha_ratio: alpha_simo / alpha_mimo,
        psl_simo_db: psl(kind, ProcessingMode::SimoMiso)?,
        psl_mimo_db: psl(kind, ProcessingMode::Mimo)?,
    })
}

/// Compares the quadratic-mainlobe half-power arguments `√2/(2√c)` and
/// `1/(2√c)` with the exact roots.
pub fn quadratic_gain_analysis(kind: GeometryKind) -> Result<QuadraticGainAnalysis> {
    let c = quadratic_mainlobe_coefficient(kind);
    let x3db_quad_simo = SQRT_2 / (2.0 * c.sqrt());
    let x3db_quad_mimo = 1.0 / (2.0 * c.sqrt());
    let simo = solve_x3db(kind, ProcessingMode::SimoMiso)?;
    let mimo = solve_x3db(kind, ProcessingMode::Mimo)?;
    let predicted_ratio = x3db_quad_simo / x3db_quad_mimo;
    let true_ratio = simo / mimo;
    Ok(QuadraticGainAnalysis {
        kind,
        c,
        x3db_quad_simo,
        x3db_quad_mimo,
        predicted_ratio,
        true_ratio,
        rel_error_simo: (x3db_quad_simo - simo).abs() / simo,
        rel_error_mimo: (x3db_quad_mimo - mimo).abs() / mimo,
        ratio_rel_error: (predicted_ratio - true_ratio).abs() / true_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::normalized_power_at_distance;
    use approx::assert_abs_diff_eq;

    #[test]
    fn x3db_examples() {
        let x = |k, m| solve_x3db(k, m).unwrap();
        assert_abs_diff_eq!(
            x(GeometryKind::Ula, ProcessingMode::SimoMiso),
            1.738,
            epsilon = 1e-3
        );
        assert_abs_diff_eq!(x(GeometryKind::Uca, ProcessingMode::Mimo), 0.815, epsilon = 1e-3);
        assert_abs_diff_eq!(x(GeometryKind::Ura, ProcessingMode::Mimo), 0.884, epsilon = 1e-3);
    }

    #[test]
    fn x3db_residual() {
        for kind in GeometryKind::ALL {
            for mode in ProcessingMode::ALL {
                let x = solve_x3db(kind, mode).unwrap();
                assert!((power_unchecked(kind, mode, x) - 0.5).abs() <= 1e-6);
            }
        }
    }

    #[test]
    fn first_nulls() {
        assert_abs_diff_eq!(
            first_null(GeometryKind::Uca).unwrap(),
            2.404_825_557_695_773,
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(first_null(GeometryKind::Upca).unwrap(), 1.0, epsilon = 1e-6);
        let ula = first_null(GeometryKind::Ula).unwrap();
        assert_abs_diff_eq!(ula, first_null(GeometryKind::Ura).unwrap(), epsilon = 1e-6);
        assert!((3.6..3.7).contains(&ula), "{ula}");
    }

    #[test]
    fn alpha_examples() {
        let a = |k, m| alpha(k, m).unwrap();
        assert_abs_diff_eq!(
            a(GeometryKind::Ula, ProcessingMode::SimoMiso),
            6.952,
            epsilon = 5e-3
        );
        assert_abs_diff_eq!(
            a(GeometryKind::Ura, ProcessingMode::SimoMiso),
            9.937,
            epsilon = 5e-3
        );
        assert_abs_diff_eq!(a(GeometryKind::Upca, ProcessingMode::Mimo), 5.103, epsilon = 5e-3);
    }

    #[test]
    fn crossing_points_example() {
        let (low, high) = d3db_points(100.0, 5000.0, 6.952).unwrap();
        assert_abs_diff_eq!(low, 500_000.0 / 5695.2, epsilon = 1e-9);
        assert_abs_diff_eq!(high.value(), 500_000.0 / 4304.8, epsilon = 1e-9);
        assert_abs_diff_eq!(low, 87.79, epsilon = 0.01);
        assert_abs_diff_eq!(high.value(), 116.15, epsilon = 0.01);
        for d in [low, high.value()] {
            let p =
                normalized_power_at_distance(GeometryKind::Ula, ProcessingMode::SimoMiso, 5000.0, 100.0, d)
                    .unwrap();
            assert_abs_diff_eq!(p, 0.5, epsilon = 1e-3);
        }
    }

    #[test]
    fn crossing_points_limits() {
        let (_, high) = d3db_points(5000.0 / 6.952, 5000.0, 6.952).unwrap();
        assert_eq!(high, Extent::Infinite);
        let (low, high) = d3db_points(1e-6, 5000.0, 6.952).unwrap();
        assert_abs_diff_eq!(low, 1e-6, epsilon = 1e-14);
        assert_abs_diff_eq!(high.value(), 1e-6, epsilon = 1e-14);
        assert!(d3db_points(0.0, 5000.0, 6.952).is_err());
        assert!(d3db_points(1.0, -1.0, 6.952).is_err());
        assert!(d3db_points(1.0, 5000.0, 0.0).is_err());
    }

    #[test]
    fn beamdepth_example() {
        let bd = beamdepth(100.0, 5000.0, 6.952).unwrap().value();
        assert_abs_diff_eq!(bd, 28.36, epsilon = 0.01);
        let (low, high) = d3db_points(100.0, 5000.0, 6.952).unwrap();
        assert!(((high.value() - low) - bd).abs() <= 1e-9 * bd);
        assert_eq!(beamdepth(800.0, 5000.0, 6.952).unwrap(), Extent::Infinite);
        let ratio =
            beamdepth(2.0, 5000.0, 6.952).unwrap().value() / beamdepth(1.0, 5000.0, 6.952).unwrap().value();
        assert_abs_diff_eq!(ratio, 4.0, epsilon = 1e-2);
    }

    #[test]
    fn max_range_boundary() {
        let r = max_nf_range(5000.0, 6.952);
        assert_abs_diff_eq!(r, 719.217, epsilon = 1e-3);
        assert!(beamdepth(0.999 * r, 5000.0, 6.952).unwrap().is_finite());
        assert_eq!(beamdepth(r, 5000.0, 6.952).unwrap(), Extent::Infinite);
        assert_abs_diff_eq!(max_nf_range(5000.0, 2.0 * 6.952), r / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn psl_examples() {
        assert_abs_diff_eq!(
            psl(GeometryKind::Ula, ProcessingMode::SimoMiso).unwrap(),
            -8.78,
            epsilon = 0.05
        );
        assert_abs_diff_eq!(
            psl(GeometryKind::Ura, ProcessingMode::Mimo).unwrap(),
            -35.13,
            epsilon = 0.1
        );
        let simo = psl(GeometryKind::Uca, ProcessingMode::SimoMiso).unwrap();
        let mimo = psl(GeometryKind::Uca, ProcessingMode::Mimo).unwrap();
        assert!((mimo - 2.0 * simo).abs() <= 1e-6);
    }

    #[test]
    fn psl_window_holds_global_maximum() {
        for kind in GeometryKind::ALL {
            let (x, v) = sidelobe_peak(kind, ProcessingMode::SimoMiso, PSL_X_MAX).unwrap();
            let (x_wide, v_wide) = sidelobe_peak(kind, ProcessingMode::SimoMiso, 4.0 * PSL_X_MAX).unwrap();
            assert!((v - v_wide).abs() <= 1e-9, "{kind}: {v} vs {v_wide}");
            assert!((x - x_wide).abs() <= 1e-5);
        }
    }

    #[test]
    fn quadratic_analysis_shape() {
        for kind in GeometryKind::ALL {
            let q = quadratic_gain_analysis(kind).unwrap();
            assert_abs_diff_eq!(q.predicted_ratio, SQRT_2, epsilon = 1e-12);
            assert!(
                (1.383 - 1e-3..=1.406 + 1e-3).contains(&q.true_ratio),
                "{kind}: {}",
                q.true_ratio
            );
        }
    }

    #[test]
    fn extent_serialization() {
        assert_eq!(serde_json::to_string(&Extent::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Extent::Finite(2.5)).unwrap(), "2.5");
        assert_eq!(Extent::Infinite.to_string(), "inf");
    }
}
