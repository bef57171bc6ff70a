//! Special functions used by the closed-form array factors.
//!
//! Fresnel integrals use the `π t² / 2` kernel:
//!
//! ```text
//! C(u) = ∫₀ᵘ cos(π t² / 2) dt        S(u) = ∫₀ᵘ sin(π t² / 2) dt
//! ```
//!
//! All public entry points reject non-finite arguments. The `*_unchecked`
//! variants are used internally on hot paths where inputs were already
//! validated.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{ensure_finite, Result};

/// Switch-over between the power series and the continued fraction.
const FRESNEL_SERIES_LIMIT: f64 = 1.5;
const MAX_ITER: usize = 500;

/// Fresnel cosine integral `C(u)`.
pub fn fresnel_c(u: f64) -> Result<f64> {
    Ok(fresnel_unchecked(ensure_finite("u", u)?).0)
}

/// Fresnel sine integral `S(u)`.
pub fn fresnel_s(u: f64) -> Result<f64> {
    Ok(fresnel_unchecked(ensure_finite("u", u)?).1)
}

/// Both Fresnel integrals `(C(u), S(u))` from a single evaluation.
pub fn fresnel(u: f64) -> Result<(f64, f64)> {
    Ok(fresnel_unchecked(ensure_finite("u", u)?))
}

/// Zero-order Bessel function of the first kind.
pub fn bessel_j0(x: f64) -> Result<f64> {
    Ok(bessel_j0_unchecked(ensure_finite("x", x)?))
}

/// Normalized sinc, `sin(πx) / (πx)`, equal to exactly 1 at the origin.
pub fn sinc(x: f64) -> Result<f64> {
    Ok(sinc_unchecked(ensure_finite("x", x)?))
}

pub(crate) fn fresnel_unchecked(u: f64) -> (f64, f64) {
    let ax = u.abs();
    let (c, s) = if ax <= FRESNEL_SERIES_LIMIT {
        fresnel_series(ax)
    } else {
        fresnel_continued_fraction(ax)
    };
    if u < 0.0 {
        (-c, -s)
    } else {
        (c, s)
    }
}

/// Maclaurin series in `t = π u² / 2`: term `tⁿ / n!` feeds `C` for even
/// `n` and `S` for odd `n`, each divided by `2n + 1` with alternating sign.
fn fresnel_series(ax: f64) -> (f64, f64) {
    if ax == 0.0 {
        return (0.0, 0.0);
    }
    let t = FRAC_PI_2 * ax * ax;
    let mut term = 1.0;
    let mut c = 1.0;
    let mut s = 0.0;
    for n in 1..MAX_ITER {
        term *= t / n as f64;
        let contrib = term / (2 * n + 1) as f64;
        let negative = (n / 2) % 2 == 1;
        let signed = if negative { -contrib } else { contrib };
        if n % 2 == 0 {
            c += signed;
        } else {
            s += signed;
        }
        if contrib < f64::EPSILON * 1e-2 * c.abs().max(s.abs()) {
            break;
        }
    }
    (ax * c, ax * s)
}

/// Modified Lentz evaluation of the continued fraction for the complementary
/// complex error function, valid for `ax > 1.5`.
fn fresnel_continued_fraction(ax: f64) -> (f64, f64) {
    let tiny = 1e-300;
    let pix2 = PI * ax * ax;
    let one = Complex64::new(1.0, 0.0);
    let mut b = Complex64::new(1.0, -pix2);
    let mut cc = Complex64::new(1.0 / tiny, 0.0);
    let mut d = one / b;
    let mut h = d;
    let mut n = -1.0;
    for _ in 2..MAX_ITER {
        n += 2.0;
        let a = -n * (n + 1.0);
        b += Complex64::new(4.0, 0.0);
        d = one / (d * a + b);
        cc = b + Complex64::new(a, 0.0) / cc;
        let del = cc * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < f64::EPSILON {
            break;
        }
    }
    h *= Complex64::new(ax, -ax);
    let phase = Complex64::from_polar(1.0, 0.5 * pix2);
    let cs = Complex64::new(0.5, 0.5) * (one - phase * h);
    (cs.re, cs.im)
}

/// Miller backward recurrence normalized by `1 = J₀ + 2 Σ J₂ₖ`.
pub(crate) fn bessel_j0_unchecked(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-4 {
        let q = 0.25 * ax * ax;
        return 1.0 - q + 0.25 * q * q;
    }
    let start = (ax + 30.0 + 12.0 * ax.sqrt()) as usize;
    let start = start + start % 2;
    let two_over_x = 2.0 / ax;

    let mut next = 0.0; // J_{k+1}
    let mut current = 1e-30; // J_k
    let mut even_sum = 0.0;
    for k in (1..=start).rev() {
        let prev = k as f64 * two_over_x * current - next;
        next = current;
        current = prev;
        // `current` is now J_{k-1}
        if (k - 1) % 2 == 0 && k > 1 {
            even_sum += current;
        }
        if current.abs() > 1e250 {
            current *= 1e-250;
            next *= 1e-250;
            even_sum *= 1e-250;
        }
    }
    current / (current + 2.0 * even_sum)
}

/// `sin(πx)` with the argument reduced to `[-¼, ¼]` first, so integers give
/// exact zeros.
fn sin_pi(x: f64) -> f64 {
    let n = (2.0 * x).round();
    let r = PI * (x - 0.5 * n);
    match (n as i64).rem_euclid(4) {
        0 => r.sin(),
        1 => r.cos(),
        2 => -r.sin(),
        _ => -r.cos(),
    }
}

pub(crate) fn sinc_unchecked(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        sin_pi(x) / (PI * x)
    }
}
