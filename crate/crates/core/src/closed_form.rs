//! Closed-form normalized near-field array-factor power on the array axis.
//!
//! Every geometry is expressed through the single argument
//! `x = a · d_FA · d_ver`. The formulas rest on the Fresnel (second-order)
//! distance approximation and lose accuracy when the probe or target is
//! closer than about one aperture; [`crate::exact_af`] is authoritative there.

use crate::error::{Error, Result};
use crate::kind::{GeometryKind, ProcessingMode};
use crate::specfun::{bessel_j0_unchecked, fresnel_unchecked, sinc_unchecked};

/// Absolute vergence difference `|1/d' − 1/d|` in 1/m.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Vergence(f64);

impl Vergence {
    pub fn value(self) -> f64 {
        self.0
    }
}

fn check_distance(name: &str, d: f64) -> Result<f64> {
    if d > 0.0 {
        Ok(d)
    } else {
        Err(Error::Domain(format!("{name} must be positive, got {d}")))
    }
}

/// `|1/d_target − 1/d_probe|`. A probe at `+∞` is allowed (far-field limit).
pub fn vergence_difference(d_target: f64, d_probe: f64) -> Result<Vergence> {
    let t = check_distance("target distance", d_target)?;
    let p = check_distance("probe distance", d_probe)?;
    Ok(Vergence((1.0 / t - 1.0 / p).abs()))
}

/// `x = a · d_FA · d_ver`.
pub fn af_argument(kind: GeometryKind, d_fa: f64, vergence: Vergence) -> Result<f64> {
    if !(d_fa > 0.0 && d_fa.is_finite()) {
        return Err(Error::Domain(format!(
            "Fraunhofer distance must be positive and finite, got {d_fa}"
        )));
    }
    Ok(kind.scaling_coefficient() * d_fa * vergence.0)
}

/// `(C²(√x) + S²(√x)) / x`, with the removable singularity at 0 set to 1.
fn fresnel_line_power(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let (c, s) = fresnel_unchecked(x.sqrt());
    (c * c + s * s) / x
}

/// Normalized single-aperture `|AF(x)|²` for `x ≥ 0`. No argument checks.
pub(crate) fn simo_power_unchecked(kind: GeometryKind, x: f64) -> f64 {
    match kind {
        GeometryKind::Ula => fresnel_line_power(x),
        GeometryKind::Uca => {
            let j = bessel_j0_unchecked(x);
            j * j
        }
        GeometryKind::Ura => {
            let p = fresnel_line_power(x);
            p * p
        }
        GeometryKind::Upca => {
            let s = sinc_unchecked(x);
            s * s
        }
    }
}

pub(crate) fn power_unchecked(kind: GeometryKind, mode: ProcessingMode, x: f64) -> f64 {
    let p = simo_power_unchecked(kind, x);
    match mode {
        ProcessingMode::SimoMiso => p,
        ProcessingMode::Mimo => p * p,
    }
}

/// Peak-normalized ambiguity power: `|AF(x)|²` for SIMO/MISO, `|AF(x)|⁴` for
/// MIMO.
pub fn normalized_af_power(kind: GeometryKind, mode: ProcessingMode, x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!("argument x must be non-negative, got {x}")));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    Ok(power_unchecked(kind, mode, x))
}

/// Normalized power at probe distance `d_probe` for a target at `d_target`.
pub fn normalized_power_at_distance(
    kind: GeometryKind,
    mode: ProcessingMode,
    d_fa: f64,
    d_target: f64,
    d_probe: f64,
) -> Result<f64> {
    let v = vergence_difference(d_target, d_probe)?;
    normalized_af_power(kind, mode, af_argument(kind, d_fa, v)?)
}

/// Curvature `c` of the SIMO mainlobe, `|AF(x)|² ≈ 1 − c x²`.
///
/// The power is even in `x`, so `c = (1 − P(h)) / h² + O(h²)`; one Richardson
/// step removes the `O(h²)` term.
pub fn quadratic_mainlobe_coefficient(kind: GeometryKind) -> f64 {
    const STEP: f64 = 1e-2;
    let estimate = |h: f64| (1.0 - simo_power_unchecked(kind, h)) / (h * h);
    let coarse = estimate(STEP);
    let fine = estimate(0.5 * STEP);
    (4.0 * fine - coarse) / 3.0
}
