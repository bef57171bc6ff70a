//! Ground-truth ambiguity function by direct summation over elements.
//!
//! Distances use the full Euclidean norm; nothing here relies on the Fresnel
//! approximation. Sums run in ascending element order with Neumaier
//! compensation so results are reproducible to the last few ulps.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{distance, ArrayGeometry, Point3};
use crate::kind::ProcessingMode;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Field points closer than this fraction of λ to an element are rejected.
const COINCIDENCE_FRACTION: f64 = 1e-6;

/// Transmit and receive apertures plus processing mode.
#[derive(Debug, Clone)]
pub struct SensingSetup {
    tx: ArrayGeometry,
    rx: ArrayGeometry,
    frequency: f64,
    mode: ProcessingMode,
}

impl SensingSetup {
    /// Validates the pairing: equal wavelengths; in MIMO the apertures must be
    /// identical and collocated, in SIMO/MISO one side is a single element.
    pub fn new(tx: ArrayGeometry, rx: ArrayGeometry, mode: ProcessingMode) -> Result<Self> {
        let wl = tx.wavelength();
        if (wl - rx.wavelength()).abs() > 1e-12 * wl {
            return Err(Error::Unsupported(format!(
                "tx wavelength {} m differs from rx wavelength {} m",
                wl,
                rx.wavelength()
            )));
        }
        match mode {
            ProcessingMode::Mimo if tx.elements() != rx.elements() => {
                return Err(Error::Unsupported(
                    "MIMO requires identical collocated tx and rx apertures".into(),
                ));
            }
            ProcessingMode::SimoMiso if tx.len() > 1 && rx.len() > 1 => {
                return Err(Error::Unsupported(
                    "SIMO/MISO requires a single element on one side of the link".into(),
                ));
            }
            _ => {}
        }
        Ok(Self {
            frequency: SPEED_OF_LIGHT / wl,
            tx,
            rx,
            mode,
        })
    }

    /// Single isotropic transmitter, `array` receives.
    pub fn simo(array: ArrayGeometry) -> Result<Self> {
        let tx = ArrayGeometry::isotropic(array.wavelength())?;
        Self::new(tx, array, ProcessingMode::SimoMiso)
    }

    /// `array` transmits to a single isotropic receiver.
    pub fn miso(array: ArrayGeometry) -> Result<Self> {
        let rx = ArrayGeometry::isotropic(array.wavelength())?;
        Self::new(array, rx, ProcessingMode::SimoMiso)
    }

    /// `array` used as both transmit and receive aperture.
    pub fn mimo(array: ArrayGeometry) -> Result<Self> {
        Self::new(array.clone(), array, ProcessingMode::Mimo)
    }

    /// SIMO setup for [`ProcessingMode::SimoMiso`], MIMO otherwise.
    pub fn with_mode(array: ArrayGeometry, mode: ProcessingMode) -> Result<Self> {
        match mode {
            ProcessingMode::SimoMiso => Self::simo(array),
            ProcessingMode::Mimo => Self::mimo(array),
        }
    }

    pub fn tx(&self) -> &ArrayGeometry {
        &self.tx
    }

    pub fn rx(&self) -> &ArrayGeometry {
        &self.rx
    }

    /// Carrier frequency `c / λ` in Hz.
    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    pub fn mode(&self) -> ProcessingMode {
        self.mode
    }

    /// The aperture that shapes the response (the larger of tx and rx).
    pub fn primary_aperture(&self) -> &ArrayGeometry {
        if self.tx.len() >= self.rx.len() {
            &self.tx
        } else {
            &self.rx
        }
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct ComplexAccumulator {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexAccumulator {
    fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

fn wavenumber(frequency: f64) -> f64 {
    2.0 * PI * frequency / SPEED_OF_LIGHT
}

/// `exp(-j 2π (f/c) d)` for a one-way path of `distance` meters.
pub fn path_phase(distance: f64, frequency: f64) -> Complex64 {
    Complex64::from_polar(1.0, -wavenumber(frequency) * distance)
}

fn check_separation(element: &Point3, point: &Point3, frequency: f64) -> Result<f64> {
    let d = distance(element, point);
    let wavelength = SPEED_OF_LIGHT / frequency;
    if !d.is_finite() || d < COINCIDENCE_FRACTION * wavelength {
        return Err(Error::DegenerateGeometry(format!(
            "field point {point:?} coincides with element {element:?}"
        )));
    }
    Ok(d)
}

/// One-way channel between an element and a field point.
pub fn channel_phase(element: &Point3, target: &Point3, frequency: f64) -> Result<Complex64> {
    let d = check_separation(element, target, frequency)?;
    Ok(path_phase(d, frequency))
}

/// `d(target) − d(probe)` from one element, computed as a difference of
/// squares to avoid cancellation when the two distances are close.
fn distance_difference(element: &Point3, target: &Point3, probe: &Point3, frequency: f64) -> Result<f64> {
    let dt = check_separation(element, target, frequency)?;
    let dp = check_separation(element, probe, frequency)?;
    let sq = |p: &Point3| {
        let dx = p[0] - element[0];
        let dy = p[1] - element[1];
        let dz = p[2] - element[2];
        dx * dx + dy * dy + dz * dz
    };
    Ok((sq(target) - sq(probe)) / (dt + dp))
}

/// `(1/√M) Σₘ exp(-j 2π (f/c) Δdₘ)` with `Δdₘ = dₘ(target) − dₘ(probe)`.
pub fn af_single_aperture(
    geometry: &ArrayGeometry,
    target: &Point3,
    probe: &Point3,
    frequency: f64,
) -> Result<Complex64> {
    let k = wavenumber(frequency);
    let mut acc = ComplexAccumulator::default();
    for element in geometry.elements() {
        let delta = distance_difference(element, target, probe, frequency)?;
        acc.add(Complex64::from_polar(1.0, -k * delta));
    }
    Ok(acc.value() / (geometry.len() as f64).sqrt())
}

/// Matched-filter response, evaluated as `AF_TX · AF_RX`.
pub fn ambiguity(setup: &SensingSetup, target: &Point3, probe: &Point3) -> Result<Complex64> {
    let tx = af_single_aperture(&setup.tx, target, probe, setup.frequency)?;
    let rx = if setup.mode == ProcessingMode::Mimo {
        tx
    } else {
        af_single_aperture(&setup.rx, target, probe, setup.frequency)?
    };
    Ok(tx * rx)
}

/// Matched-filter response from the full `M × N` double sum over bistatic
/// channels `h(target) · h*(probe)`. Quadratic cost; intended as a cross-check
/// of [`ambiguity`].
pub fn ambiguity_double_sum(setup: &SensingSetup, target: &Point3, probe: &Point3) -> Result<Complex64> {
    let f = setup.frequency;
    let k = wavenumber(f);
    let tx_paths = setup
        .tx
        .elements()
        .iter()
        .map(|e| Ok((check_separation(e, target, f)?, check_separation(e, probe, f)?)))
        .collect::<Result<Vec<_>>>()?;
    let rx_paths = setup
        .rx
        .elements()
        .iter()
        .map(|e| Ok((check_separation(e, target, f)?, check_separation(e, probe, f)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = ComplexAccumulator::default();
    for (tx_t, tx_p) in &tx_paths {
        for (rx_t, rx_p) in &rx_paths {
            let h_target = Complex64::from_polar(1.0, -k * (tx_t + rx_t));
            let h_probe = Complex64::from_polar(1.0, -k * (tx_p + rx_p));
            acc.add(h_target * h_probe.conj());
        }
    }
    Ok(acc.value() / ((tx_paths.len() * rx_paths.len()) as f64).sqrt())
}

/// `|A|² / (MN)`: equal to 1 at `probe = target`.
pub fn ambiguity_power_normalized(setup: &SensingSetup, target: &Point3, probe: &Point3) -> Result<f64> {
    let tx =
        af_single_aperture(&setup.tx, target, probe, setup.frequency)?.norm_sqr() / setup.tx.len() as f64;
    let rx = if setup.mode == ProcessingMode::Mimo {
        tx
    } else {
        af_single_aperture(&setup.rx, target, probe, setup.frequency)?.norm_sqr() / setup.rx.len() as f64
    };
    Ok(tx * rx)
}

/// Normalized power at each probe distance along the array's sensing axis,
/// target at `target_distance`. Evaluated in parallel; output order and
/// values match sequential evaluation.
pub fn normalized_power_along_axis(
    setup: &SensingSetup,
    target_distance: f64,
    probe_distances: &[f64],
) -> Result<Vec<f64>> {
    let aperture = setup.primary_aperture();
    let target = aperture.axis_point(target_distance);
    probe_distances
        .par_iter()
        .map(|&d| ambiguity_power_normalized(setup, &target, &aperture.axis_point(d)))
        .collect()
}
