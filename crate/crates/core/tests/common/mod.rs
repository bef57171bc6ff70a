//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, eps: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let left = simpson(f, a, m);
    let right = simpson(f, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, m, left, 0.5 * eps, depth - 1) + adaptive(f, m, b, right, 0.5 * eps, depth - 1)
}

/// Adaptive Simpson over short panels so the oscillation never spans a panel.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    let panels = ((b - a).abs() / 0.05).ceil().max(1.0) as usize;
    let h = (b - a) / panels as f64;
    let f: &dyn Fn(f64) -> f64 = &f;
    (0..panels)
        .map(|i| {
            let lo = a + i as f64 * h;
            let hi = lo + h;
            adaptive(f, lo, hi, simpson(f, lo, hi), eps / panels as f64, 40)
        })
        .sum()
}

/// Fresnel integrals by quadrature of `cos(πt²/2)` and `sin(πt²/2)`.
pub fn fresnel_quadrature(u: f64) -> (f64, f64) {
    let c = integrate(|t| (0.5 * PI * t * t).cos(), 0.0, u, 1e-13);
    let s = integrate(|t| (0.5 * PI * t * t).sin(), 0.0, u, 1e-13);
    (c, s)
}

/// `J0(x) = (1/π) ∫₀^π cos(x sin t) dt` by the trapezoid rule, which converges
/// geometrically for this periodic integrand.
pub fn j0_trapezoid(x: f64) -> f64 {
    let n = 400;
    let h = PI / n as f64;
    let mut sum = 0.5 * (1.0 + (x * PI.sin()).cos());
    for i in 1..n {
        sum += (x * (i as f64 * h).sin()).cos();
    }
    sum * h / PI
}

/// Power series `Σ (-x²/4)^k / (k!)²`, accurate for moderate `x`.
pub fn j0_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        term *= q / (k as f64 * k as f64);
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid).signum() == flo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}
