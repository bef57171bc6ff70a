//! C ABI over `nfambig`.
//!
//! Every fallible function returns an [`NfaStatus`] and writes results
//! through caller-provided pointers. Geometry and sensing setups are opaque
//! heap handles released with their `_free` function. The message of the
//! most recent error on the calling thread is available through
//! [`nfa_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nfambig::closed_form::{af_argument, normalized_af_power, vergence_difference};
use nfambig::exact_af::{ambiguity, ambiguity_power_normalized, normalized_power_along_axis};
use nfambig::metrics::{alpha, beamdepth_result, first_null, max_nf_range, psl, solve_x3db};
use nfambig::specfun::{bessel_j0, fresnel, sinc};
use nfambig::{ArrayGeometry, Error, GeometryKind, Point3, ProcessingMode, SensingSetup};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NfaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    InvalidAperture = 4,
    DegenerateGeometry = 5,
    Unsupported = 6,
    Internal = 7,
    Panic = 8,
}

/// Array family, passed as `uint32_t`.
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NfaKind {
    Ula = 0,
    Uca = 1,
    Ura = 2,
    Upca = 3,
}

/// Processing mode, passed as `uint32_t`.
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NfaMode {
    SimoMiso = 0,
    Mimo = 1,
}

/// Opaque array geometry.
pub struct NfaGeometry {
    inner: ArrayGeometry,
}

/// Opaque transmit/receive setup.
pub struct NfaSetup {
    inner: SensingSetup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: NfaStatus, msg: impl Into<String>) -> NfaStatus {
    set_last_error(msg);
    status
}

fn from_error(err: Error) -> NfaStatus {
    let status = match err {
        Error::Domain(_) => NfaStatus::Domain,
        Error::InvalidAperture(_) => NfaStatus::InvalidAperture,
        Error::DegenerateGeometry(_) => NfaStatus::DegenerateGeometry,
        Error::Unsupported(_) => NfaStatus::Unsupported,
        Error::Internal(_) => NfaStatus::Internal,
    };
    fail(status, err.to_string())
}

type FfiResult<T> = Result<T, NfaStatus>;

/// Runs `body`, converting panics into [`NfaStatus::Panic`].
fn guard(body: impl FnOnce() -> FfiResult<()>) -> NfaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => NfaStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(NfaStatus::Panic, "panic inside nfambig"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> FfiResult<T>;
}

impl<T> OrStatus<T> for nfambig::Result<T> {
    fn or_status(self) -> FfiResult<T> {
        self.map_err(from_error)
    }
}

fn kind_from(raw: u32) -> FfiResult<GeometryKind> {
    match raw {
        0 => Ok(GeometryKind::Ula),
        1 => Ok(GeometryKind::Uca),
        2 => Ok(GeometryKind::Ura),
        3 => Ok(GeometryKind::Upca),
        _ => Err(fail(
            NfaStatus::InvalidArgument,
            format!("unknown geometry kind {raw}"),
        )),
    }
}

fn mode_from(raw: u32) -> FfiResult<ProcessingMode> {
    match raw {
        0 => Ok(ProcessingMode::SimoMiso),
        1 => Ok(ProcessingMode::Mimo),
        _ => Err(fail(
            NfaStatus::InvalidArgument,
            format!("unknown processing mode {raw}"),
        )),
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, name: &str) -> FfiResult<&'a mut T> {
    p.as_mut()
        .ok_or_else(|| fail(NfaStatus::NullPointer, format!("{name} is null")))
}

unsafe fn in_ref<'a, T>(p: *const T, name: &str) -> FfiResult<&'a T> {
    p.as_ref()
        .ok_or_else(|| fail(NfaStatus::NullPointer, format!("{name} is null")))
}

unsafe fn point_in(p: *const f64, name: &str) -> FfiResult<Point3> {
    if p.is_null() {
        return Err(fail(NfaStatus::NullPointer, format!("{name} is null")));
    }
    let s = std::slice::from_raw_parts(p, 3);
    Ok([s[0], s[1], s[2]])
}

unsafe fn point_out(p: *mut f64, value: Point3, name: &str) -> FfiResult<()> {
    if p.is_null() {
        return Err(fail(NfaStatus::NullPointer, format!("{name} is null")));
    }
    ptr::copy_nonoverlapping(value.as_ptr(), p, 3);
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nfa_version() -> *const c_char {
    const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn nfa_status_message(status: NfaStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        NfaStatus::Ok => c"ok",
        NfaStatus::NullPointer => c"null pointer argument",
        NfaStatus::InvalidArgument => c"invalid argument",
        NfaStatus::Domain => c"argument outside the function domain",
        NfaStatus::InvalidAperture => c"invalid aperture",
        NfaStatus::DegenerateGeometry => c"degenerate geometry",
        NfaStatus::Unsupported => c"unsupported configuration",
        NfaStatus::Internal => c"internal error",
        NfaStatus::Panic => c"panic",
    };
    msg.as_ptr()
}

/// Copies the calling thread's last error message into `buf` (truncated and
/// NUL-terminated when `len > 0`). Returns the full message length without
/// the terminator, 0 if there is none.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn nfa_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Fresnel integrals `C(u)` and `S(u)`.
///
/// # Safety
/// `c` and `s` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_fresnel(u: f64, c: *mut f64, s: *mut f64) -> NfaStatus {
    guard(|| {
        let (c, s) = (out_ref(c, "c")?, out_ref(s, "s")?);
        (*c, *s) = fresnel(u).or_status()?;
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_bessel_j0(x: f64, out: *mut f64) -> NfaStatus {
    guard(|| {
        *out_ref(out, "out")? = bessel_j0(x).or_status()?;
        Ok(())
    })
}

/// Normalized sinc `sin(πx)/(πx)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_sinc(x: f64, out: *mut f64) -> NfaStatus {
    guard(|| {
        *out_ref(out, "out")? = sinc(x).or_status()?;
        Ok(())
    })
}

/// Unified argument `x` for a target at `d_target` and probe at `d_probe`
/// (meters; the probe may be `+INFINITY`).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_af_argument(
    kind: u32,
    d_fa: f64,
    d_target: f64,
    d_probe: f64,
    out: *mut f64,
) -> NfaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let v = vergence_difference(d_target, d_probe).or_status()?;
        *out = af_argument(kind_from(kind)?, d_fa, v).or_status()?;
        Ok(())
    })
}

/// Peak-normalized closed-form power at argument `x ≥ 0`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_normalized_af_power(kind: u32, mode: u32, x: f64, out: *mut f64) -> NfaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = normalized_af_power(kind_from(kind)?, mode_from(mode)?, x).or_status()?;
        Ok(())
    })
}

/// Half-power argument `x_3dB`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_x3db(kind: u32, mode: u32, out: *mut f64) -> NfaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = solve_x3db(kind_from(kind)?, mode_from(mode)?).or_status()?;
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_alpha(kind: u32, mode: u32, out: *mut f64) -> NfaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = alpha(kind_from(kind)?, mode_from(mode)?).or_status()?;
        Ok(())
    })
}

/// Peak-to-sidelobe level in dB.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_psl_db(kind: u32, mode: u32, out: *mut f64) -> NfaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = psl(kind_from(kind)?, mode_from(mode)?).or_status()?;
        Ok(())
    })
}

/// First minimum of the single-aperture power in `x`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_first_null(kind: u32, out: *mut f64) -> NfaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = first_null(kind_from(kind)?).or_status()?;
        Ok(())
    })
}

/// Beamdepth and −3 dB crossings for a target at `d_target`. Unbounded
/// values are written as `+INFINITY`.
///
/// # Safety
/// `bd`, `d_low` and `d_high` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_beamdepth(
    d_target: f64,
    d_fa: f64,
    alpha: f64,
    bd: *mut f64,
    d_low: *mut f64,
    d_high: *mut f64,
) -> NfaStatus {
    guard(|| {
        let (bd, d_low, d_high) = (
            out_ref(bd, "bd")?,
            out_ref(d_low, "d_low")?,
            out_ref(d_high, "d_high")?,
        );
        let r = beamdepth_result(d_target, d_fa, alpha).or_status()?;
        *bd = r.bd.value();
        *d_low = r.d_low;
        *d_high = r.d_high.value();
        Ok(())
    })
}

/// Largest target distance with finite beamdepth.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_max_nf_range(d_fa: f64, alpha: f64, out: *mut f64) -> NfaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if !(d_fa > 0.0 && d_fa.is_finite() && alpha > 0.0 && alpha.is_finite()) {
            return Err(fail(
                NfaStatus::Domain,
                "d_fa and alpha must be positive and finite",
            ));
        }
        *out = max_nf_range(d_fa, alpha);
        Ok(())
    })
}

/// Builds a λ/2-pitch array of the given family and aperture (meters).
///
/// # Safety
/// `out` must be valid for writes. On success `*out` owns a handle to be
/// released with [`nfa_geometry_free`].
#[no_mangle]
pub unsafe extern "C" fn nfa_geometry_build(
    kind: u32,
    aperture: f64,
    wavelength: f64,
    out: *mut *mut NfaGeometry,
) -> NfaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let inner = ArrayGeometry::build(kind_from(kind)?, aperture, wavelength).or_status()?;
        *out = Box::into_raw(Box::new(NfaGeometry { inner }));
        Ok(())
    })
}

/// Array from `count` packed `x, y, z` triples (meters).
///
/// # Safety
/// `xyz` must be valid for `3 * count` reads and `out` for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_geometry_custom(
    wavelength: f64,
    xyz: *const f64,
    count: usize,
    out: *mut *mut NfaGeometry,
) -> NfaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if xyz.is_null() {
            return Err(fail(NfaStatus::NullPointer, "xyz is null"));
        }
        let flat = std::slice::from_raw_parts(xyz, 3 * count);
        let elements = flat.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
        let inner = ArrayGeometry::custom(wavelength, elements).or_status()?;
        *out = Box::into_raw(Box::new(NfaGeometry { inner }));
        Ok(())
    })
}

/// Releases a geometry handle. Null is ignored.
///
/// # Safety
/// `geometry` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nfa_geometry_free(geometry: *mut NfaGeometry) {
    if !geometry.is_null() {
        drop(Box::from_raw(geometry));
    }
}

/// Number of elements, 0 for a null handle.
///
/// # Safety
/// `geometry` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nfa_geometry_len(geometry: *const NfaGeometry) -> usize {
    geometry.as_ref().map_or(0, |g| g.inner.len())
}

/// # Safety
/// `geometry` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_geometry_aperture(geometry: *const NfaGeometry, out: *mut f64) -> NfaStatus {
    guard(|| {
        let g = in_ref(geometry, "geometry")?;
        *out_ref(out, "out")? = g.inner.aperture();
        Ok(())
    })
}

/// `2D²/λ` of the realized aperture.
///
/// # Safety
/// `geometry` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_geometry_fraunhofer_distance(
    geometry: *const NfaGeometry,
    out: *mut f64,
) -> NfaStatus {
    guard(|| {
        let g = in_ref(geometry, "geometry")?;
        *out_ref(out, "out")? = g.inner.fraunhofer_distance();
        Ok(())
    })
}

/// Writes element `index` to `xyz[0..3]`.
///
/// # Safety
/// `geometry` must be a live handle and `xyz` valid for 3 writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_geometry_element(
    geometry: *const NfaGeometry,
    index: usize,
    xyz: *mut f64,
) -> NfaStatus {
    guard(|| {
        let g = in_ref(geometry, "geometry")?;
        let p = *g.inner.elements().get(index).ok_or_else(|| {
            fail(
                NfaStatus::InvalidArgument,
                format!(
                    "element index {index} out of range for {} elements",
                    g.inner.len()
                ),
            )
        })?;
        point_out(xyz, p, "xyz")
    })
}

/// Point at `distance` meters along the array's sensing axis.
///
/// # Safety
/// `geometry` must be a live handle and `xyz` valid for 3 writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_geometry_axis_point(
    geometry: *const NfaGeometry,
    distance: f64,
    xyz: *mut f64,
) -> NfaStatus {
    guard(|| {
        let g = in_ref(geometry, "geometry")?;
        point_out(xyz, g.inner.axis_point(distance), "xyz")
    })
}

/// SIMO/MISO (single isotropic element on the other side) or MIMO (the same
/// array transmits and receives) setup around a copy of `geometry`.
///
/// # Safety
/// `geometry` must be a live handle and `out` valid for writes. On success
/// `*out` owns a handle to be released with [`nfa_setup_free`].
#[no_mangle]
pub unsafe extern "C" fn nfa_setup_new(
    geometry: *const NfaGeometry,
    mode: u32,
    out: *mut *mut NfaSetup,
) -> NfaStatus {
    guard(|| {
        let g = in_ref(geometry, "geometry")?;
        let out = out_ref(out, "out")?;
        let inner = SensingSetup::with_mode(g.inner.clone(), mode_from(mode)?).or_status()?;
        *out = Box::into_raw(Box::new(NfaSetup { inner }));
        Ok(())
    })
}

/// Releases a setup handle. Null is ignored.
///
/// # Safety
/// `setup` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nfa_setup_free(setup: *mut NfaSetup) {
    if !setup.is_null() {
        drop(Box::from_raw(setup));
    }
}

/// Complex matched-filter response between two field points.
///
/// # Safety
/// `setup` must be a live handle, `target`/`probe` valid for 3 reads and
/// `re`/`im` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_setup_ambiguity(
    setup: *const NfaSetup,
    target: *const f64,
    probe: *const f64,
    re: *mut f64,
    im: *mut f64,
) -> NfaStatus {
    guard(|| {
        let s = in_ref(setup, "setup")?;
        let (t, p) = (point_in(target, "target")?, point_in(probe, "probe")?);
        let (re, im) = (out_ref(re, "re")?, out_ref(im, "im")?);
        let a = ambiguity(&s.inner, &t, &p).or_status()?;
        *re = a.re;
        *im = a.im;
        Ok(())
    })
}

/// Peak-normalized power between two field points.
///
/// # Safety
/// `setup` must be a live handle, `target`/`probe` valid for 3 reads and
/// `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_setup_power(
    setup: *const NfaSetup,
    target: *const f64,
    probe: *const f64,
    out: *mut f64,
) -> NfaStatus {
    guard(|| {
        let s = in_ref(setup, "setup")?;
        let (t, p) = (point_in(target, "target")?, point_in(probe, "probe")?);
        *out_ref(out, "out")? = ambiguity_power_normalized(&s.inner, &t, &p).or_status()?;
        Ok(())
    })
}

/// Normalized power at `count` probe distances along the sensing axis for a
/// target at `target_distance`.
///
/// # Safety
/// `setup` must be a live handle, `probes` valid for `count` reads and
/// `out` for `count` writes.
#[no_mangle]
pub unsafe extern "C" fn nfa_setup_power_along_axis(
    setup: *const NfaSetup,
    target_distance: f64,
    probes: *const f64,
    count: usize,
    out: *mut f64,
) -> NfaStatus {
    guard(|| {
        let s = in_ref(setup, "setup")?;
        if probes.is_null() || out.is_null() {
            return Err(fail(NfaStatus::NullPointer, "probes or out is null"));
        }
        let probes = std::slice::from_raw_parts(probes, count);
        let power = normalized_power_along_axis(&s.inner, target_distance, probes).or_status()?;
        ptr::copy_nonoverlapping(power.as_ptr(), out, count);
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_and_mode_codes() {
        for (raw, kind) in GeometryKind::ALL.iter().enumerate() {
            assert_eq!(kind_from(raw as u32).unwrap(), *kind);
        }
        assert_eq!(kind_from(NfaKind::Upca as u32).unwrap(), GeometryKind::Upca);
        assert_eq!(mode_from(NfaMode::Mimo as u32).unwrap(), ProcessingMode::Mimo);
        assert_eq!(kind_from(4), Err(NfaStatus::InvalidArgument));
        assert_eq!(mode_from(2), Err(NfaStatus::InvalidArgument));
    }

    #[test]
    fn guard_catches_panics() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, NfaStatus::Panic);
    }

    #[test]
    fn error_mapping() {
        assert_eq!(from_error(Error::Domain("x".into())), NfaStatus::Domain);
        assert_eq!(from_error(Error::Unsupported("x".into())), NfaStatus::Unsupported);
        let mut buf = [0 as c_char; 64];
        let n = unsafe { nfa_last_error(buf.as_mut_ptr(), buf.len()) };
        assert!(n > 0);
    }
}
