//! Default truncation length for series attached to a pole configuration.
//!
//! Malmquist elements, their derivatives and the kernels built from them are
//! rational functions with poles at `1/conj(λ_j)`. On a circle `|z| = R` with
//! `1 < R < 1/r` every element is bounded by
//!
//! ```text
//! M(R) = (1/R) · Π_j (|λ_j| + R) / (1 - |λ_j| R)
//! ```
//!
//! so Cauchy's estimate gives `|c_m| <= M(R) R^{-m}`. The policy picks the
//! smallest `N` for which `Σ_{m>N} (m+1)² |c_m|²` is below the tolerance for
//! some admissible `R`, and never goes below the baseline
//! `max(n + ⌈log(tol·(1-r))/log r⌉, 64)`.

use crate::error::{Error, Result};

/// Target for the weighted tail `(Σ_{m>N} (m+1)² |c_m|²)^(1/2)`.
pub const POLICY_TOLERANCE: f64 = 1e-14;

/// Hard cap on the number of stored coefficients.
pub const MAX_TRUNCATION: usize = 1 << 16;

const RADIUS_GRID: usize = 96;

/// Baseline `N` ignoring the spread of Malmquist elements over frequencies.
pub fn baseline_truncation(n: usize, r: f64) -> usize {
    if r <= 0.0 {
        return n + 2;
    }
    let decay = libm::log(POLICY_TOLERANCE * (1.0 - r)) / libm::log(r);
    (n + libm::ceil(decay).max(0.0) as usize).max(64)
}

/// `ln M(R)` for the given pole moduli.
fn log_element_bound(moduli: &[f64], radius: f64) -> f64 {
    moduli
        .iter()
        .map(|&rho| libm::log((rho + radius) / (1.0 - rho * radius)))
        .sum::<f64>()
        - libm::log(radius)
}

/// Natural log of the bound on `Σ_{m>N} (m+1)² |c_m|²` given
/// `|c_m| <= exp(log_m) R^{-m}`; `None` while the terms are still growing.
pub fn log_weighted_tail(log_m: f64, radius: f64, n: usize) -> Option<f64> {
    let q = 1.0 / (radius * radius);
    let n = n as f64;
    let ratio = ((n + 3.0) / (n + 2.0)) * ((n + 3.0) / (n + 2.0)) * q;
    if ratio >= 1.0 {
        return None;
    }
    Some(2.0 * log_m + 2.0 * libm::log(n + 2.0) + (n + 1.0) * libm::log(q) - libm::log(1.0 - ratio))
}

fn truncation_for_radius(moduli: &[f64], radius: f64, tol: f64) -> Option<usize> {
    let log_m = log_element_bound(moduli, radius);
    let target = 2.0 * libm::log(tol);
    let ok = |n: usize| log_weighted_tail(log_m, radius, n).is_some_and(|t| t <= target);
    // Terms (m+1)² R^{-2m} decrease once m > 1/ln R.
    let mut lo = (libm::ceil(1.0 / libm::log(radius)) as usize).max(moduli.len());
    if lo > MAX_TRUNCATION {
        return None;
    }
    if ok(lo) {
        return Some(lo);
    }
    let mut hi = lo.max(1) * 2;
    while !ok(hi) {
        if hi > MAX_TRUNCATION {
            return None;
        }
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Smallest `N` certified by the Cauchy estimate at tolerance `tol`,
/// optimized over the circle radius. `moduli` are the `|λ_j|`.
pub fn cauchy_truncation(moduli: &[f64], tol: f64) -> Result<usize> {
    let r = moduli.iter().copied().fold(0.0, f64::max);
    if r <= 0.0 {
        return Ok(moduli.len() + 2);
    }
    let log_span = libm::log(1.0 / r);
    (0..RADIUS_GRID)
        .filter_map(|i| {
            let t = (i as f64 + 0.5) / RADIUS_GRID as f64;
            truncation_for_radius(moduli, libm::exp(t * log_span), tol)
        })
        .min()
        .ok_or(Error::TruncationTooLarge(MAX_TRUNCATION))
}

/// Default `N` (series carry `N + 1` coefficients) for poles with moduli
/// `moduli`.
pub fn policy_truncation(moduli: &[f64]) -> Result<usize> {
    let n = moduli.len();
    let r = moduli.iter().copied().fold(0.0, f64::max);
    if r <= 0.0 {
        return Ok(n + 2);
    }
    let n_cauchy = cauchy_truncation(moduli, POLICY_TOLERANCE)?;
    Ok(baseline_truncation(n, r).max(n_cauchy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn origin_configurations_are_polynomial() {
        assert_eq!(policy_truncation(&[0.0, 0.0, 0.0]).unwrap(), 5);
        assert_eq!(baseline_truncation(7, 0.0), 9);
    }

    #[test]
    fn baseline_floor_is_64() {
        assert_eq!(baseline_truncation(1, 0.01), 64);
        // log(1e-14 * 0.5)/log(0.5) = 47.5 -> 48
        assert_eq!(baseline_truncation(200, 0.5), 248);
    }

    #[test]
    fn policy_grows_with_spread() {
        let small = policy_truncation(&[0.5; 25]).unwrap();
        let large = policy_truncation(&vec![0.5; 200]).unwrap();
        assert!(large > small);
        // Elements b_r^{n-1}/(1-rz) reach frequencies ~ n(1+r)/(1-r) = 600.
        assert!(large > 600, "{large}");
        assert!(large <= 4096, "{large}");
    }

    #[test]
    fn single_kernel_bound_is_sound() {
        // For one pole at r, e_1 = sqrt(1-r²)/(1-rz): compare the certified
        // weighted tail against the exact sum.
        let r = 0.6_f64;
        let n = cauchy_truncation(&[r], 1e-12).unwrap();
        let exact: f64 = (n + 1..n + 4000)
            .map(|m| {
                let c = libm::sqrt(1.0 - r * r) * libm::pow(r, m as f64);
                (m as f64 + 1.0) * (m as f64 + 1.0) * c * c
            })
            .sum();
        assert!(libm::sqrt(exact) <= 1e-12);
    }
}
