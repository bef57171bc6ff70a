#ifndef NFAMBIG_H
#define NFAMBIG_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Array family, passed as `uint32_t`.
 */
enum NfaKind
#ifdef __cplusplus
  : uint32_t
#endif // __cplusplus
 {
  NFA_KIND_ULA = 0,
  NFA_KIND_UCA = 1,
  NFA_KIND_URA = 2,
  NFA_KIND_UPCA = 3,
};
#ifndef __cplusplus
typedef uint32_t NfaKind;
#endif // __cplusplus

/**
 * Processing mode, passed as `uint32_t`.
 */
enum NfaMode
#ifdef __cplusplus
  : uint32_t
#endif // __cplusplus
 {
  NFA_MODE_SIMO_MISO = 0,
  NFA_MODE_MIMO = 1,
};
#ifndef __cplusplus
typedef uint32_t NfaMode;
#endif // __cplusplus

/**
 * Result code of every fallible call.
 */
typedef enum NfaStatus {
  NFA_STATUS_OK = 0,
  NFA_STATUS_NULL_POINTER = 1,
  NFA_STATUS_INVALID_ARGUMENT = 2,
  NFA_STATUS_DOMAIN = 3,
  NFA_STATUS_INVALID_APERTURE = 4,
  NFA_STATUS_DEGENERATE_GEOMETRY = 5,
  NFA_STATUS_UNSUPPORTED = 6,
  NFA_STATUS_INTERNAL = 7,
  NFA_STATUS_PANIC = 8,
} NfaStatus;

/**
 * Opaque array geometry.
 */
typedef struct NfaGeometry NfaGeometry;

/**
 * Opaque transmit/receive setup.
 */
typedef struct NfaSetup NfaSetup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *nfa_version(void);

/**
 * Static description of a status code.
 */
const char *nfa_status_message(enum NfaStatus status);

/**
 * Copies the calling thread's last error message into `buf` (truncated and
 * NUL-terminated when `len > 0`). Returns the full message length without
 * the terminator, 0 if there is none.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t nfa_last_error(char *buf, size_t len);

/**
 * Fresnel integrals `C(u)` and `S(u)`.
 *
 * # Safety
 * `c` and `s` must be valid for writes.
 */
enum NfaStatus nfa_fresnel(double u, double *c, double *s);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum NfaStatus nfa_bessel_j0(double x, double *out);

/**
 * Normalized sinc `sin(πx)/(πx)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum NfaStatus nfa_sinc(double x, double *out);

/**
 * Unified argument `x` for a target at `d_target` and probe at `d_probe`
 * (meters; the probe may be `+INFINITY`).
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum NfaStatus nfa_af_argument(uint32_t kind,
                               double d_fa,
                               double d_target,
                               double d_probe,
                               double *out);

/**
 * Peak-normalized closed-form power at argument `x ≥ 0`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum NfaStatus nfa_normalized_af_power(uint32_t kind, uint32_t mode, double x, double *out);

/**
 * Half-power argument `x_3dB`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum NfaStatus nfa_x3db(uint32_t kind, uint32_t mode, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum NfaStatus nfa_alpha(uint32_t kind, uint32_t mode, double *out);

/**
 * Peak-to-sidelobe level in dB.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum NfaStatus nfa_psl_db(uint32_t kind, uint32_t mode, double *out);

/**
 * First minimum of the single-aperture power in `x`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum NfaStatus nfa_first_null(uint32_t kind, double *out);

/**
 * Beamdepth and −3 dB crossings for a target at `d_target`. Unbounded
 * values are written as `+INFINITY`.
 *
 * # Safety
 * `bd`, `d_low` and `d_high` must be valid for writes.
 */
enum NfaStatus nfa_beamdepth(double d_target,
                             double d_fa,
                             double alpha,
                             double *bd,
                             double *d_low,
                             double *d_high);

/**
 * Largest target distance with finite beamdepth.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum NfaStatus nfa_max_nf_range(double d_fa, double alpha, double *out);

/**
 * Builds a λ/2-pitch array of the given family and aperture (meters).
 *
 * # Safety
 * `out` must be valid for writes. On success `*out` owns a handle to be
 * released with [`nfa_geometry_free`].
 */
enum NfaStatus nfa_geometry_build(uint32_t kind,
                                  double aperture,
                                  double wavelength,
                                  struct NfaGeometry **out);

/**
 * Array from `count` packed `x, y, z` triples (meters).
 *
 * # Safety
 * `xyz` must be valid for `3 * count` reads and `out` for writes.
 */
enum NfaStatus nfa_geometry_custom(double wavelength,
                                   const double *xyz,
                                   size_t count,
                                   struct NfaGeometry **out);

/**
 * Releases a geometry handle. Null is ignored.
 *
 * # Safety
 * `geometry` must come from this library and not be used afterwards.
 */
void nfa_geometry_free(struct NfaGeometry *geometry);

/**
 * Number of elements, 0 for a null handle.
 *
 * # Safety
 * `geometry` must be null or a live handle.
 */
size_t nfa_geometry_len(const struct NfaGeometry *geometry);

/**
 * # Safety
 * `geometry` must be a live handle and `out` valid for writes.
 */
enum NfaStatus nfa_geometry_aperture(const struct NfaGeometry *geometry, double *out);

/**
 * `2D²/λ` of the realized aperture.
 *
 * # Safety
 * `geometry` must be a live handle and `out` valid for writes.
 */
enum NfaStatus nfa_geometry_fraunhofer_distance(const struct NfaGeometry *geometry, double *out);

/**
 * Writes element `index` to `xyz[0..3]`.
 *
 * # Safety
 * `geometry` must be a live handle and `xyz` valid for 3 writes.
 */
enum NfaStatus nfa_geometry_element(const struct NfaGeometry *geometry, size_t index, double *xyz);

/**
 * Point at `distance` meters along the array's sensing axis.
 *
 * # Safety
 * `geometry` must be a live handle and `xyz` valid for 3 writes.
 */
enum NfaStatus nfa_geometry_axis_point(const struct NfaGeometry *geometry,
                                       double distance,
                                       double *xyz);

/**
 * SIMO/MISO (single isotropic element on the other side) or MIMO (the same
 * array transmits and receives) setup around a copy of `geometry`.
 *
 * # Safety
 * `geometry` must be a live handle and `out` valid for writes. On success
 * `*out` owns a handle to be released with [`nfa_setup_free`].
 */
enum NfaStatus nfa_setup_new(const struct NfaGeometry *geometry,
                             uint32_t mode,
                             struct NfaSetup **out);

/**
 * Releases a setup handle. Null is ignored.
 *
 * # Safety
 * `setup` must come from this library and not be used afterwards.
 */
void nfa_setup_free(struct NfaSetup *setup);

/**
 * Complex matched-filter response between two field points.
 *
 * # Safety
 * `setup` must be a live handle, `target`/`probe` valid for 3 reads and
 * `re`/`im` valid for writes.
 */
enum NfaStatus nfa_setup_ambiguity(const struct NfaSetup *setup,
                                   const double *target,
                                   const double *probe,
                                   double *re,
                                   double *im);

/**
 * Peak-normalized power between two field points.
 *
 * # Safety
 * `setup` must be a live handle, `target`/`probe` valid for 3 reads and
 * `out` valid for writes.
 */
enum NfaStatus nfa_setup_power(const struct NfaSetup *setup,
                               const double *target,
                               const double *probe,
                               double *out);

/**
 * Normalized power at `count` probe distances along the sensing axis for a
 * target at `target_distance`.
 *
 * # Safety
 * `setup` must be a live handle, `probes` valid for `count` reads and
 * `out` for `count` writes.
 */
enum NfaStatus nfa_setup_power_along_axis(const struct NfaSetup *setup,
                                          double target_distance,
                                          const double *probes,
                                          size_t count,
                                          double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NFAMBIG_H */
