//! Array geometries centered at the origin in the z = 0 plane.
//!
//! Every builder samples at exactly λ/2 wherever the geometry allows it. The
//! ULA lies on the x axis; planar arrays span x–y.

use std::f64::consts::{PI, SQRT_2};
use std::io::{self, Write};

use crate::error::{ensure_finite, Error, Result};
use crate::kind::GeometryKind;

/// Cartesian position in meters.
pub type Point3 = [f64; 3];

/// Slack on `floor`/`ceil` of ratios that are integral in exact arithmetic.
const ROUNDING_SLACK: f64 = 1e-9;

pub fn distance(a: &Point3, b: &Point3) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// An immutable set of isotropic element positions.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayGeometry {
    kind: Option<GeometryKind>,
    wavelength: f64,
    elements: Vec<Point3>,
    aperture: f64,
}

impl ArrayGeometry {
    /// Arbitrary element layout with no closed-form family. The aperture is
    /// the largest pairwise element distance.
    pub fn custom(wavelength: f64, elements: Vec<Point3>) -> Result<Self> {
        check_wavelength(wavelength)?;
        if elements.is_empty() {
            return Err(Error::InvalidAperture("array has no elements".into()));
        }
        for p in &elements {
            for c in p {
                ensure_finite("element coordinate", *c)?;
            }
        }
        let mut aperture: f64 = 0.0;
        for (i, a) in elements.iter().enumerate() {
            for b in &elements[i + 1..] {
                aperture = aperture.max(distance(a, b));
            }
        }
        Ok(Self {
            kind: None,
            wavelength,
            elements,
            aperture,
        })
    }

    /// A single isotropic element at the origin.
    pub fn isotropic(wavelength: f64) -> Result<Self> {
        Self::custom(wavelength, vec![[0.0; 3]])
    }

    /// Build one of the four closed-form families from its aperture `D`.
    pub fn build(kind: GeometryKind, aperture: f64, wavelength: f64) -> Result<Self> {
        match kind {
            GeometryKind::Ula => build_ula(aperture, wavelength),
            GeometryKind::Uca => build_uca(aperture, wavelength),
            GeometryKind::Ura => build_ura(aperture, wavelength),
            GeometryKind::Upca => build_upca(aperture, wavelength),
        }
    }

    pub fn kind(&self) -> Option<GeometryKind> {
        self.kind
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn elements(&self) -> &[Point3] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Aperture `D` in meters, recomputed from the realized element layout.
    pub fn aperture(&self) -> f64 {
        self.aperture
    }

    pub fn fraunhofer_distance(&self) -> f64 {
        fraunhofer_distance(self)
    }

    /// Point at `distance` meters along the kind's sensing axis.
    pub fn axis_point(&self, distance: f64) -> Point3 {
        let axis = self
            .kind
            .map(GeometryKind::sensing_axis)
            .unwrap_or([0.0, 0.0, 1.0]);
        [axis[0] * distance, axis[1] * distance, axis[2] * distance]
    }

    pub fn centroid(&self) -> Point3 {
        let n = self.elements.len() as f64;
        let mut c = [0.0; 3];
        for p in &self.elements {
            for (acc, v) in c.iter_mut().zip(p) {
                *acc += v;
            }
        }
        c.map(|v| v / n)
    }

    /// Writes `index,x,y,z` rows in meters, with a header line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "index,x,y,z")?;
        for (i, p) in self.elements.iter().enumerate() {
            writeln!(out, "{i},{},{},{}", p[0], p[1], p[2])?;
        }
        Ok(())
    }
}

fn check_wavelength(wavelength: f64) -> Result<()> {
    if wavelength.is_finite() && wavelength > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "wavelength must be positive and finite, got {wavelength}"
        )))
    }
}

fn check_aperture(kind: GeometryKind, aperture: f64, minimum: f64, what: &str) -> Result<()> {
    if !aperture.is_finite() || aperture < minimum * (1.0 - ROUNDING_SLACK) {
        return Err(Error::InvalidAperture(format!(
            "{kind} aperture {aperture} m is below the minimum {what} ({minimum} m)"
        )));
    }
    Ok(())
}

/// Uniform linear array along x with λ/2 spacing: `floor(2D/λ) + 1` elements.
pub fn build_ula(aperture: f64, wavelength: f64) -> Result<ArrayGeometry> {
    check_wavelength(wavelength)?;
    let spacing = 0.5 * wavelength;
    check_aperture(GeometryKind::Ula, aperture, spacing, "λ/2")?;
    let count = (aperture / spacing + ROUNDING_SLACK).floor() as usize + 1;
    let elements = centered_line(count, spacing).map(|x| [x, 0.0, 0.0]).collect();
    Ok(ArrayGeometry {
        kind: Some(GeometryKind::Ula),
        wavelength,
        elements,
        aperture: (count - 1) as f64 * spacing,
    })
}

/// Uniform circular array of diameter `D` with arc spacing ≤ λ/2.
pub fn build_uca(diameter: f64, wavelength: f64) -> Result<ArrayGeometry> {
    check_wavelength(wavelength)?;
    let spacing = 0.5 * wavelength;
    check_aperture(GeometryKind::Uca, diameter, spacing, "λ/2")?;
    let radius = 0.5 * diameter;
    let count = ring_population(radius, spacing);
    Ok(ArrayGeometry {
        kind: Some(GeometryKind::Uca),
        wavelength,
        elements: ring(radius, count).collect(),
        aperture: diameter,
    })
}

/// Square uniform rectangular array whose diagonal is `D`; λ/2 grid pitch.
pub fn build_ura(diagonal: f64, wavelength: f64) -> Result<ArrayGeometry> {
    check_wavelength(wavelength)?;
    let spacing = 0.5 * wavelength;
    check_aperture(GeometryKind::Ura, diagonal, wavelength / SQRT_2, "λ/√2")?;
    let side = diagonal / SQRT_2;
    let per_axis = (side / spacing + ROUNDING_SLACK).floor() as usize + 1;
    let coords: Vec<f64> = centered_line(per_axis, spacing).collect();
    let mut elements = Vec::with_capacity(per_axis * per_axis);
    for &y in &coords {
        for &x in &coords {
            elements.push([x, y, 0.0]);
        }
    }
    Ok(ArrayGeometry {
        kind: Some(GeometryKind::Ura),
        wavelength,
        elements,
        aperture: SQRT_2 * (per_axis - 1) as f64 * spacing,
    })
}

/// Filled disk: a center element plus rings at radial pitch λ/2, each ring
/// populated with `max(1, ceil(2πr / (λ/2)))` elements.
pub fn build_upca(diameter: f64, wavelength: f64) -> Result<ArrayGeometry> {
    check_wavelength(wavelength)?;
    let spacing = 0.5 * wavelength;
    check_aperture(GeometryKind::Upca, diameter, wavelength, "λ")?;
    let rings = (0.5 * diameter / spacing + ROUNDING_SLACK).floor() as usize;
    let mut elements = vec![[0.0; 3]];
    for k in 1..=rings {
        let radius = k as f64 * spacing;
        elements.extend(ring(radius, ring_population(radius, spacing)));
    }
    Ok(ArrayGeometry {
        kind: Some(GeometryKind::Upca),
        wavelength,
        elements,
        aperture: 2.0 * rings as f64 * spacing,
    })
}

/// `d_FA = 2D²/λ`.
pub fn fraunhofer_distance(geometry: &ArrayGeometry) -> f64 {
    2.0 * geometry.aperture * geometry.aperture / geometry.wavelength
}

/// Projected ULA aperture for a target at `azimuth` radians from the array
/// axis (`π/2` is broadside). Expects `0 ≤ azimuth ≤ π`.
pub fn effective_aperture_ula(aperture: f64, azimuth: f64) -> f64 {
    debug_assert!((0.0..=PI).contains(&azimuth));
    aperture * azimuth.sin()
}

fn centered_line(count: usize, spacing: f64) -> impl Iterator<Item = f64> {
    let half = 0.5 * (count as f64 - 1.0);
    (0..count).map(move |i| (i as f64 - half) * spacing)
}

fn ring_population(radius: f64, spacing: f64) -> usize {
    ((2.0 * PI * radius / spacing - ROUNDING_SLACK).ceil() as usize).max(1)
}

fn ring(radius: f64, count: usize) -> impl Iterator<Item = Point3> {
    (0..count).map(move |i| {
        let phi = 2.0 * PI * i as f64 / count as f64;
        [radius * phi.cos(), radius * phi.sin(), 0.0]
    })
}
