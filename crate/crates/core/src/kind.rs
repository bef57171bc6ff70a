use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Array geometry families with a closed-form near-field array factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GeometryKind {
    /// Uniform linear array.
    Ula,
    /// Uniform circular array (single ring).
    Uca,
    /// Square uniform rectangular array, aperture measured on the diagonal.
    Ura,
    /// Uniform planar circular array (filled disk of concentric rings).
    Upca,
}

impl GeometryKind {
    pub const ALL: [GeometryKind; 4] = [Self::Ula, Self::Uca, Self::Ura, Self::Upca];

    /// Argument scaling coefficient `a` in `x = a · d_FA · d_ver`.
    pub fn scaling_coefficient(self) -> f64 {
        match self {
            Self::Ula => 0.25,
            Self::Uca => PI / 16.0,
            Self::Ura => 0.125,
            Self::Upca => 0.0625,
        }
    }

    /// Unit direction along which the closed-form array factor holds.
    ///
    /// All arrays lie in the z = 0 plane. A ring is equidistant from every
    /// point on its own axis, so the UCA is probed in its plane (+y), where
    /// its aperture is the full diameter for every azimuth.
    pub fn sensing_axis(self) -> [f64; 3] {
        match self {
            Self::Uca => [0.0, 1.0, 0.0],
            _ => [0.0, 0.0, 1.0],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ula => "ULA",
            Self::Uca => "UCA",
            Self::Ura => "URA",
            Self::Upca => "UPCA",
        }
    }
}

impl fmt::Display for GeometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GeometryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ula" => Ok(Self::Ula),
            "uca" => Ok(Self::Uca),
            "ura" => Ok(Self::Ura),
            "upca" => Ok(Self::Upca),
            other => Err(Error::Domain(format!("unknown geometry kind '{other}'"))),
        }
    }
}

/// Single-aperture (SIMO/MISO) or identical collocated apertures (MIMO).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProcessingMode {
    #[serde(rename = "SIMO_MISO")]
    SimoMiso,
    #[serde(rename = "MIMO")]
    Mimo,
}

impl ProcessingMode {
    pub const ALL: [ProcessingMode; 2] = [Self::SimoMiso, Self::Mimo];

    /// Power applied to the normalized single-aperture `|AF|²`.
    pub fn exponent(self) -> i32 {
        match self {
            Self::SimoMiso => 1,
            Self::Mimo => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::SimoMiso => "SIMO_MISO",
            Self::Mimo => "MIMO",
        }
    }
}

impl fmt::Display for ProcessingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProcessingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "simo" | "miso" | "simo_miso" | "simo/miso" => Ok(Self::SimoMiso),
            "mimo" => Ok(Self::Mimo),
            other => Err(Error::Domain(format!("unknown processing mode '{other}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients() {
        assert_eq!(GeometryKind::Ula.scaling_coefficient(), 0.25);
        assert_eq!(GeometryKind::Uca.scaling_coefficient(), PI / 16.0);
        assert_eq!(GeometryKind::Ura.scaling_coefficient(), 0.125);
        assert_eq!(GeometryKind::Upca.scaling_coefficient(), 1.0 / 16.0);
    }

    #[test]
    fn parse_round_trip() {
        for kind in GeometryKind::ALL {
            assert_eq!(kind.as_str().parse::<GeometryKind>().unwrap(), kind);
        }
        for mode in ProcessingMode::ALL {
            assert_eq!(mode.as_str().parse::<ProcessingMode>().unwrap(), mode);
        }
        assert_eq!(
            "simo".parse::<ProcessingMode>().unwrap(),
            ProcessingMode::SimoMiso
        );
        assert!("hex".parse::<GeometryKind>().is_err());
    }
}
