use thiserror::Error;

/// Errors raised by the numerical library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument was NaN, infinite, or outside the function's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Requested aperture is too small for the geometry at the given wavelength.
    #[error("invalid aperture: {0}")]
    InvalidAperture(String),

    /// A field point coincides with an array element.
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    /// Configuration outside what the model supports (e.g. bistatic MIMO).
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// Root bracketing or extremum search failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {value}")))
    }
}
