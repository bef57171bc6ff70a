//! Range ambiguity function of narrowband near-field sensing arrays.
//!
//! The crate evaluates the matched-filter (ambiguity) response of a single
//! aperture (SIMO/MISO) or two identical collocated apertures (MIMO) for
//! uniform linear, circular, rectangular and planar-circular arrays, both by
//! direct summation over elements and through closed-form array factors, and
//! derives the half-power beamdepth, maximum near-field range and
//! peak-to-sidelobe level.
//!
//! ```
//! use nfambig::{metrics, GeometryKind, ProcessingMode};
//!
//! let a = metrics::alpha(GeometryKind::Ula, ProcessingMode::SimoMiso).unwrap();
//! assert!((a - 6.952).abs() < 5e-3);
//! ```

pub mod cli;
pub mod closed_form;
pub mod error;
pub mod exact_af;
pub mod geometry;
pub mod kind;
pub mod metrics;
pub mod specfun;
pub mod validation;

pub use error::{Error, Result};
pub use exact_af::SensingSetup;
pub use geometry::{ArrayGeometry, Point3};
pub use kind::{GeometryKind, ProcessingMode};
pub use metrics::{BeamdepthResult, Extent, GeometryMetrics};
