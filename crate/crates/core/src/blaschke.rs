//! Blaschke factors and products, Malmquist bases and model spaces.
//!
//! For `σ = (λ_1, …, λ_n)` the Malmquist family is
//!
//! ```text
//! e_1 = k_1,   e_k = b_{λ_1} ⋯ b_{λ_{k-1}} · k_k,   k_j = sqrt(1-|λ_j|²)/(1 - conj(λ_j) z)
//! ```
//!
//! and is an orthonormal basis of the model space `K_B = H² ⊖ B_σ H²`.
//! Repeated points are allowed; the same formula covers the confluent case.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{check_in_disc, compose_with_blaschke_factor, NormKind, TaylorSeries};
use crate::truncation;

/// Largest propagated l² tail accepted on any basis element.
pub const BASIS_TAIL_TOLERANCE: f64 = 1e-11;

/// Points closer than this are treated as the same interpolation node.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-14;

/// An ordered finite sequence of points of the open unit disc.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleConfiguration {
    points: Vec<Complex64>,
    radius: f64,
}

impl PoleConfiguration {
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        for &p in &points {
            check_in_disc(p)?;
        }
        let radius = points.iter().map(|p| p.norm()).fold(0.0, f64::max);
        Ok(Self { points, radius })
    }

    /// `σ_{n,λ}`: the point `λ` repeated `n` times.
    pub fn one_point(n: usize, lambda: Complex64) -> Result<Self> {
        Self::new(alloc::vec![lambda; n])
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `r = max |λ_j|`.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.norm()).collect()
    }

    /// `e^{iθ} σ`.
    pub fn rotated(&self, theta: f64) -> Self {
        let w = Complex64::from_polar(1.0, theta);
        Self {
            points: self.points.iter().map(|&p| p * w).collect(),
            radius: self.radius,
        }
    }

    /// The common point when every entry coincides.
    pub fn single_point(&self) -> Option<Complex64> {
        let first = self.points[0];
        self.points
            .iter()
            .all(|p| (p - first).norm() <= COINCIDENCE_TOLERANCE)
            .then_some(first)
    }

    /// Distinct nodes with multiplicities, in order of first appearance.
    pub fn nodes(&self) -> Vec<(Complex64, usize)> {
        let mut out: Vec<(Complex64, usize)> = Vec::new();
        for &p in &self.points {
            match out
                .iter_mut()
                .find(|(q, _)| (p - *q).norm() <= COINCIDENCE_TOLERANCE)
            {
                Some((_, m)) => *m += 1,
                None => out.push((p, 1)),
            }
        }
        out
    }

    pub fn policy_truncation(&self) -> Result<usize> {
        truncation::policy_truncation(&self.moduli())
    }
}

/// `b_λ(z) = (λ - z)/(1 - conj(λ) z)`.
pub fn blaschke_factor_eval(lambda: Complex64, z: Complex64) -> Result<Complex64> {
    check_in_disc(lambda)?;
    let den = Complex64::new(1.0, 0.0) - lambda.conj() * z;
    if den.norm() <= f64::EPSILON * (1.0 + z.norm()) {
        return Err(Error::BlaschkePole);
    }
    Ok((lambda - z) / den)
}

/// `B_σ(z) = Π_j b_{λ_j}(z)`.
pub fn blaschke_product_eval(sigma: &PoleConfiguration, z: Complex64) -> Result<Complex64> {
    sigma
        .points
        .iter()
        .try_fold(Complex64::new(1.0, 0.0), |acc, &l| {
            Ok(acc * blaschke_factor_eval(l, z)?)
        })
}

/// Orthonormal basis of `K_{B_σ}` stored as truncated series of a common length.
#[derive(Debug, Clone)]
pub struct MalmquistBasis {
    sigma: PoleConfiguration,
    elements: Vec<TaylorSeries>,
}

/// Builds the Malmquist family with `n + 1` stored coefficients per element.
///
/// Each element is the running Blaschke prefix product times a normalized
/// Cauchy kernel, both applied through exact O(N) recurrences. Fails with
/// [`Error::TruncationTooSmall`] when some element's tail bound exceeds
/// [`BASIS_TAIL_TOLERANCE`].
pub fn malmquist_basis(sigma: &PoleConfiguration, n: usize) -> Result<MalmquistBasis> {
    let len = n + 1;
    let mut prefix = TaylorSeries::constant(Complex64::new(1.0, 0.0), len);
    let mut elements = Vec::with_capacity(sigma.len());
    for &lambda in sigma.points() {
        let norm = libm::sqrt(1.0 - lambda.norm_sqr());
        let e = prefix
            .mul_cauchy_kernel(lambda)?
            .scale(Complex64::new(norm, 0.0));
        if e.tail_bound() > BASIS_TAIL_TOLERANCE {
            return Err(Error::TruncationTooSmall {
                trunc: n,
                tail: e.tail_bound(),
                tolerance: BASIS_TAIL_TOLERANCE,
            });
        }
        elements.push(e);
        prefix = prefix.mul_blaschke_factor(lambda)?;
    }
    Ok(MalmquistBasis {
        sigma: sigma.clone(),
        elements,
    })
}

impl MalmquistBasis {
    /// Basis at the default truncation for `sigma`.
    pub fn with_policy(sigma: &PoleConfiguration) -> Result<Self> {
        malmquist_basis(sigma, sigma.policy_truncation()?)
    }

    pub fn sigma(&self) -> &PoleConfiguration {
        &self.sigma
    }

    pub fn elements(&self) -> &[TaylorSeries] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Shared `N + 1`.
    pub fn trunc_len(&self) -> usize {
        self.elements[0].trunc_len()
    }

    pub fn max_tail_bound(&self) -> f64 {
        self.elements
            .iter()
            .map(TaylorSeries::tail_bound)
            .fold(0.0, f64::max)
    }

    /// `((f, e_k)_{H²})_k`.
    pub fn coordinates(&self, f: &TaylorSeries) -> Vec<Complex64> {
        let f = f.resize(self.trunc_len());
        self.elements
            .iter()
            .map(|e| f.inner_product(e, NormKind::Hardy))
            .collect()
    }

    /// `Σ_k a_k e_k`.
    pub fn combine(&self, coords: &[Complex64]) -> Result<TaylorSeries> {
        if coords.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: coords.len(),
            });
        }
        Ok(coords
            .iter()
            .zip(&self.elements)
            .fold(TaylorSeries::zeros(self.trunc_len()), |acc, (&a, e)| {
                acc.add(&e.scale(a))
            }))
    }

    /// Orthogonal projection `P_B f = Σ_k (f, e_k)_{H²} e_k`.
    pub fn project(&self, f: &TaylorSeries) -> TaylorSeries {
        let coords = self.coordinates(f);
        let mut p = self
            .combine(&coords)
            .expect("coordinates have basis length");
        // Coordinates inherit the tails of f and of every element.
        let f_norm = f.norm(NormKind::Hardy);
        let coord_err = f.tail_bound() + f_norm * self.max_tail_bound();
        let extra = coord_err * libm::sqrt(self.len() as f64);
        p = TaylorSeries::with_tail(p.coeffs().to_vec(), p.tail_bound() + extra)
            .expect("finite projection");
        p
    }
}

/// Free-function form of [`MalmquistBasis::project`].
pub fn model_projection(f: &TaylorSeries, basis: &MalmquistBasis) -> TaylorSeries {
    basis.project(f)
}

/// The first `m` Taylor coefficients of `f ∘ b_μ`, i.e. the expansion of
/// `f` recentered at `μ`. They all vanish iff `f` has a zero of order `m` at
/// `μ`.
pub fn recentered_coefficients(
    f: &TaylorSeries,
    mu: Complex64,
    m: usize,
) -> Result<Vec<Complex64>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    Ok(compose_with_blaschke_factor(f, mu, m - 1)?.into_coeffs())
}
