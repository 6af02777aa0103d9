//! Area and circle integrals on the unit disc, independent of coefficient
//! identities.
//!
//! In the radial variable `s = ρ²` the normalized area measure `dA/π` becomes
//! `ds·dθ/2π`, so `(1/π)∫|f|² dA = ∫_0^1 mean_θ |f(√s e^{iθ})|² ds`. Gauss–Legendre
//! in `s` with `K` nodes is exact for polynomial `f` of degree `N` once
//! `2K - 1 ≥ N`, and a uniform angular rule is exact once it resolves `|f|²`.

use std::f64::consts::PI;
use std::sync::Arc;

use modelspace_core::{Complex64, TaylorSeries};
use rustfft::{Fft, FftPlanner};

use crate::error::LabError;

/// Gauss–Legendre nodes and weights on `[0, 1]`; weights sum to one.
pub fn gauss_legendre_unit(k: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let mut x = (PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(k, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(k, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((x + 1.0) / 2.0, w / 2.0));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// `(P_k(x), P_k'(x))` by the three-term recurrence.
fn legendre(k: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if k == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=k {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = k as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Product rule on the disc: Gauss–Legendre in `s = ρ²` times `M` uniform
/// angles.
#[derive(Clone)]
pub struct DiscQuadrature {
    radial: Vec<(f64, f64)>,
    angular: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for DiscQuadrature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DiscQuadrature")
            .field("radial_count", &self.radial.len())
            .field("angular_count", &self.angular)
            .finish()
    }
}

/// Radial count needed for polynomials of degree `degree`.
pub fn radial_order(degree: usize) -> usize {
    (degree + 1).div_ceil(2) + 1
}

/// Angular count needed for polynomials of degree `degree`.
pub fn angular_order(degree: usize) -> usize {
    2 * degree + 2
}

impl DiscQuadrature {
    /// Rule exact for polynomials of degree at most `degree`; the angular
    /// count is rounded up to a power of two.
    pub fn for_degree(degree: usize) -> Self {
        Self::with_orders(radial_order(degree), angular_order(degree).next_power_of_two())
    }

    /// Rule with explicit orders and no exactness guarantee.
    pub fn with_orders(radial_count: usize, angular_count: usize) -> Self {
        let angular = angular_count.max(1);
        Self {
            radial: gauss_legendre_unit(radial_count.max(1)),
            angular,
            fft: FftPlanner::new().plan_fft_inverse(angular),
        }
    }

    pub fn radial_nodes(&self) -> &[(f64, f64)] {
        &self.radial
    }

    pub fn radial_count(&self) -> usize {
        self.radial.len()
    }

    pub fn angular_count(&self) -> usize {
        self.angular
    }

    /// Largest polynomial degree integrated exactly.
    pub fn exact_degree(&self) -> usize {
        let by_radial = 2 * self.radial.len().saturating_sub(1);
        let by_angular = (self.angular.saturating_sub(2)) / 2;
        by_radial.saturating_sub(1).min(by_angular)
    }

    /// `mean_θ |p(ρ e^{iθ})|²` for the stored polynomial, via one inverse FFT.
    fn circle_mean_sqr(&self, coeffs: &[Complex64], rho: f64) -> f64 {
        let m = self.angular;
        let mut buf = vec![Complex64::default(); m];
        let mut scale = 1.0;
        for (k, &c) in coeffs.iter().enumerate() {
            buf[k % m] += c * scale;
            scale *= rho;
        }
        self.fft.process(&mut buf);
        buf.iter().map(|v| v.norm_sqr()).sum::<f64>() / m as f64
    }

    /// `Σ_i w_i mean_j F(√s_i e^{2πij/M})` for a pointwise integrand.
    pub fn integrate_area(&self, mut integrand: impl FnMut(Complex64) -> f64) -> f64 {
        let m = self.angular as f64;
        self.radial
            .iter()
            .map(|&(s, w)| {
                let rho = s.sqrt();
                let mean = (0..self.angular)
                    .map(|j| integrand(Complex64::from_polar(rho, 2.0 * PI * j as f64 / m)))
                    .sum::<f64>()
                    / m;
                w * mean
            })
            .sum()
    }
}

fn degree(f: &TaylorSeries) -> usize {
    f.coeffs()
        .iter()
        .rposition(|c| *c != Complex64::default())
        .unwrap_or(0)
}

/// `((1/π)∫_𝔻 |f|² dA)^{1/2}` for the stored polynomial.
pub fn bergman_norm_quadrature(f: &TaylorSeries, q: &DiscQuadrature) -> Result<f64, LabError> {
    let d = degree(f);
    if q.radial_count() < radial_order(d) || q.angular_count() < angular_order(d) {
        return Err(LabError::Quadrature(format!(
            "rule ({} radial, {} angular) too small for degree {d}",
            q.radial_count(),
            q.angular_count()
        )));
    }
    Ok(bergman_norm_unchecked(f, q))
}

/// Same sum without the exactness check; used for negative controls.
pub fn bergman_norm_unchecked(f: &TaylorSeries, q: &DiscQuadrature) -> f64 {
    q.radial
        .iter()
        .map(|&(s, w)| w * q.circle_mean_sqr(f.coeffs(), s.sqrt()))
        .sum::<f64>()
        .sqrt()
}

/// `(mean_θ |f(e^{iθ})|²)^{1/2}` with `m` uniform angles.
pub fn hardy_norm_circle(f: &TaylorSeries, m: usize) -> Result<f64, LabError> {
    let d = degree(f);
    if m < angular_order(d) {
        return Err(LabError::Quadrature(format!(
            "{m} angles too few for degree {d}"
        )));
    }
    Ok(DiscQuadrature::with_orders(1, m).circle_mean_sqr(f.coeffs(), 1.0).sqrt())
}

/// Dense rule for smooth non-polynomial integrands (rational functions with
/// poles outside the disc of radius about `1/0.8`).
pub fn smooth_rule() -> DiscQuadrature {
    DiscQuadrature::with_orders(256, 2048)
}

/// `(1/π)∫|(g∘b_λ)'|² dA` against `(1/π)∫|g'|² dA`, both by quadrature of
/// pointwise values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusQuadratureReport {
    pub composed: f64,
    pub original: f64,
    pub relative_gap: f64,
}

pub fn moebius_invariance_check(
    g: &TaylorSeries,
    lambda: Complex64,
    q: &DiscQuadrature,
) -> Result<MoebiusQuadratureReport, LabError> {
    if !(lambda.norm() < 1.0) {
        return Err(LabError::Core(modelspace_core::Error::OutsideDisc {
            re: lambda.re,
            im: lambda.im,
            modulus: lambda.norm(),
        }));
    }
    let dg = g.differentiate();
    let one = Complex64::new(1.0, 0.0);
    let lc = lambda.conj();
    let r2 = lambda.norm_sqr();
    let composed = q.integrate_area(|z| {
        let den = one - lc * z;
        let b = (lambda - z) / den;
        let db = Complex64::new(r2 - 1.0, 0.0) / (den * den);
        let v = horner(dg.coeffs(), b) * db;
        v.norm_sqr()
    });
    let original = q.integrate_area(|z| horner(dg.coeffs(), z).norm_sqr());
    let scale = original.abs().max(f64::MIN_POSITIVE);
    Ok(MoebiusQuadratureReport {
        composed,
        original,
        relative_gap: (composed - original).abs() / scale,
    })
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::default(), |acc, &c| acc * z + c)
}

/// `e_n'(z)` for the one-point configuration of radius `r`, from the rational
/// closed form `sqrt(1-r²)[r b^{n-1}/(1-rz)² + (n-1) b' b^{n-2}/(1-rz)]`.
pub fn last_element_derivative_at(n: usize, r: f64, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let den = one - z * r;
    let b = (Complex64::new(r, 0.0) - z) / den;
    let db = Complex64::new(r * r - 1.0, 0.0) / (den * den);
    let k = (1.0 - r * r).sqrt();
    let mut out = b.powu(n as u32 - 1) * (r / (den * den)) * k;
    if n >= 2 {
        out += db * b.powu(n as u32 - 2) * ((n as f64 - 1.0) * k) / den;
    }
    out
}

/// `‖e_n'‖²` in the Bergman norm by quadrature of the closed form.
pub fn last_element_derivative_quadrature(n: usize, r: f64, q: &DiscQuadrature) -> f64 {
    q.integrate_area(|z| last_element_derivative_at(n, r, z).norm_sqr())
}
