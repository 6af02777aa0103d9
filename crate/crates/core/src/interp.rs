//! Constrained interpolation constants `I(σ, H², D)` with `D` the Dirichlet
//! space (coefficient weights `k+1`).
//!
//! `I(σ)` is the worst ratio, over the H² unit ball, of the smallest Dirichlet
//! norm of a function matching `f` on `σ` (values and, at repeated points,
//! derivatives). Traces on `σ` only see `P_B f` and the projection is
//! contractive, so the supremum may be taken over `K_B` alone. For each
//! Malmquist element the minimum-norm interpolant is found by a weighted
//! least-norm solve, and `I(σ)²` is the top eigenvalue of the Dirichlet Gram
//! matrix of those interpolants.
//!
//! Constraints at a node `μ` of multiplicity `m` are the first `m`
//! coefficients of `g ∘ b_μ`, which span the same functionals as
//! `g(μ), …, g^{(m-1)}(μ)` and stay well conditioned as `|μ| → 1`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::bernstein::{bernstein_constant_with_basis, BoundEnvelope, EnvelopeKind};
use crate::blaschke::{malmquist_basis, MalmquistBasis, PoleConfiguration};
use crate::error::{Error, Result};
use crate::hermitian::{gram_matrix, max_eigenpair, MinNormSolution, MinNormSolver};
use crate::series::{check_in_disc, NormKind, TaylorSeries};
use crate::truncation;

/// Distinct nodes closer than this are rejected as ill conditioned.
pub const MIN_NODE_SEPARATION: f64 = 1e-8;

/// Below this modulus the Dirichlet kernel diagonal is replaced by its limit.
pub const KERNEL_ORIGIN_CUTOFF: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct InterpResult {
    pub sigma: PoleConfiguration,
    pub exact: f64,
    /// `sqrt(C² + 1)` with `C` the Bergman-target Bernstein constant of `σ`.
    pub upper_projection: f64,
    /// Closed-form lower bounds, present for one-point configurations.
    pub lower_one_point: Option<OnePointLowerBounds>,
    /// Extremal function in `K_B`, unit H² norm.
    pub witness_f: TaylorSeries,
    /// Minimum-norm Dirichlet interpolant of `witness_f`.
    pub witness_g: TaylorSeries,
    pub trunc_len: usize,
    /// Eigen residual of the interpolant Gram problem.
    pub residual: f64,
    /// Condition estimate of the constraint system.
    pub condition: f64,
}

/// Two closed-form lower bounds for one-point configurations `σ_{n,λ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnePointLowerBounds {
    /// `√(n/(1-r))·[((1+r)² - 2/n - 2r/n)/(2(1+r))]^{1/2}`.
    pub stated: f64,
    /// `√(n/(1-r))·[(1+r)/2·(1-1/n)]^{1/2}`.
    pub partial_sum: f64,
}

/// Lower bounds for `I(σ_{n,λ})`, `r = |λ|`. Needs `n ≥ 2`.
pub fn one_point_lower_bounds(n: usize, lambda: Complex64) -> Result<OnePointLowerBounds> {
    check_in_disc(lambda)?;
    if n < 2 {
        return Err(Error::invalid(
            "the one-point lower bound needs n >= 2 (its bracket is negative at n = 1)",
        ));
    }
    let r = lambda.norm();
    let nf = n as f64;
    let scale = libm::sqrt(nf / (1.0 - r));
    let bracket = ((1.0 + r) * (1.0 + r) - 2.0 / nf - 2.0 * r / nf) / (2.0 * (1.0 + r));
    Ok(OnePointLowerBounds {
        stated: scale * libm::sqrt(bracket.max(0.0)),
        partial_sum: scale * libm::sqrt((1.0 + r) / 2.0 * (1.0 - 1.0 / nf)),
    })
}

/// `Σ_{k=0}^{n-1} sqrt(1-|λ|²) b_λ^k/(1 - conj(λ) z)`, the sum of the
/// one-point Malmquist elements; its H² norm is `√n`.
pub fn one_point_test_function(n: usize, lambda: Complex64) -> Result<TaylorSeries> {
    check_in_disc(lambda)?;
    let trunc = truncation::policy_truncation(&vec![lambda.norm(); n.max(1)])?;
    one_point_test_function_with_trunc(n, lambda, trunc)
}

pub fn one_point_test_function_with_trunc(
    n: usize,
    lambda: Complex64,
    trunc: usize,
) -> Result<TaylorSeries> {
    if n == 0 {
        return Err(Error::EmptyConfiguration);
    }
    let sigma = PoleConfiguration::one_point(n, lambda)?;
    let basis = malmquist_basis(&sigma, trunc)?;
    basis.combine(&vec![Complex64::new(1.0, 0.0); n])
}

/// Closed form of `f ∘ b_λ` for the one-point test function:
/// `(1 + (1-conj(λ)) Σ_{k=1}^{n-1} z^k - conj(λ) z^n)/sqrt(1-|λ|²)`.
pub fn one_point_composed_closed_form(n: usize, lambda: Complex64) -> Result<TaylorSeries> {
    check_in_disc(lambda)?;
    if n == 0 {
        return Err(Error::EmptyConfiguration);
    }
    let s = 1.0 / libm::sqrt(1.0 - lambda.norm_sqr());
    let lc = lambda.conj();
    let mut coeffs = vec![(Complex64::new(1.0, 0.0) - lc) * s; n + 1];
    coeffs[0] = Complex64::new(s, 0.0);
    coeffs[n] = if n == 0 { coeffs[n] } else { -lc * s };
    TaylorSeries::new(coeffs)
}

/// `sqrt(C² + 1)`, the bound obtained by interpolating with `P_B f`.
pub fn interp_upper_projection(sigma: &PoleConfiguration) -> Result<f64> {
    let basis = MalmquistBasis::with_policy(sigma)?;
    upper_from_basis(&basis)
}

fn upper_from_basis(basis: &MalmquistBasis) -> Result<f64> {
    let c = bernstein_constant_with_basis(basis, NormKind::Bergman)?.constant;
    Ok(libm::sqrt(c * c + 1.0))
}

/// Dirichlet kernel diagonal `-log(1-|λ|²)/|λ|²`, with limit 1 at the origin.
pub fn dirichlet_kernel_diagonal(lambda: Complex64) -> Result<f64> {
    check_in_disc(lambda)?;
    let m = lambda.norm();
    if m < KERNEL_ORIGIN_CUTOFF {
        return Ok(1.0);
    }
    let x = m * m;
    Ok(-libm::log1p(-x) / x)
}

/// `sqrt(k_{H²}(λ,λ)/k_D(λ,λ))`, the constant of a single node.
pub fn single_point_closed_form(lambda: Complex64) -> Result<f64> {
    let kd = dirichlet_kernel_diagonal(lambda)?;
    Ok(libm::sqrt(1.0 / (1.0 - lambda.norm_sqr()) / kd))
}

/// Trace functionals of `σ` acting on `len` Taylor coefficients: rows are the
/// first `m` coefficients of `g ∘ b_μ` for each node `μ` of multiplicity `m`.
pub fn trace_functionals(sigma: &PoleConfiguration, len: usize) -> Result<Vec<Vec<Complex64>>> {
    let nodes = sigma.nodes();
    for (i, (a, _)) in nodes.iter().enumerate() {
        for (b, _) in &nodes[i + 1..] {
            if (a - b).norm() < MIN_NODE_SEPARATION {
                return Err(Error::IllConditioned(f64::INFINITY));
            }
        }
    }
    let mut rows = Vec::with_capacity(sigma.len());
    for (mu, m) in nodes {
        // Column j holds the first m coefficients of b_μ^j.
        let mut block = vec![vec![Complex64::default(); len]; m];
        let mut power = TaylorSeries::constant(Complex64::new(1.0, 0.0), m);
        for j in 0..len {
            for (i, row) in block.iter_mut().enumerate() {
                row[j] = power.coeff(i);
            }
            power = power.mul_blaschke_factor(mu)?;
        }
        rows.extend(block);
    }
    Ok(rows)
}

fn dirichlet_weights(len: usize) -> Vec<f64> {
    (0..len).map(|k| NormKind::Dirichlet.weight(k)).collect()
}

fn apply(functionals: &[Vec<Complex64>], f: &TaylorSeries) -> Vec<Complex64> {
    functionals
        .iter()
        .map(|row| row.iter().zip(f.coeffs()).map(|(a, c)| a * c).sum())
        .collect()
}

/// Minimum Dirichlet-norm function agreeing with `f` on `σ`, stored with
/// `trunc + 1` coefficients.
pub fn min_norm_interpolant(
    f: &TaylorSeries,
    sigma: &PoleConfiguration,
    trunc: usize,
) -> Result<MinNormSolution> {
    let len = trunc + 1;
    let functionals = trace_functionals(sigma, len)?;
    let f = f.resize(len);
    let targets = apply(&functionals, &f);
    MinNormSolver::new(&dirichlet_weights(len), functionals)?.solve(&targets)
}

/// Exact constant at the default truncation.
pub fn interp_exact(sigma: &PoleConfiguration) -> Result<InterpResult> {
    interp_exact_with_basis(&MalmquistBasis::with_policy(sigma)?)
}

pub fn interp_exact_with_trunc(sigma: &PoleConfiguration, trunc: usize) -> Result<InterpResult> {
    interp_exact_with_basis(&malmquist_basis(sigma, trunc)?)
}

pub fn interp_exact_with_basis(basis: &MalmquistBasis) -> Result<InterpResult> {
    let sigma = basis.sigma();
    let len = basis.trunc_len();
    let functionals = trace_functionals(sigma, len)?;
    let solver = MinNormSolver::new(&dirichlet_weights(len), functionals)?;
    let interpolants = basis
        .elements()
        .iter()
        .map(|e| solver.solve(&apply(solver.functionals(), e)).map(|s| s.series))
        .collect::<Result<Vec<_>>>()?;
    let gram = gram_matrix(&interpolants, NormKind::Dirichlet);
    let top = max_eigenpair(&gram)?;
    let witness_f = basis.combine(&top.vector)?;
    let witness_g = top
        .vector
        .iter()
        .zip(&interpolants)
        .fold(TaylorSeries::zeros(len), |acc, (&x, g)| acc.add(&g.scale(x)));
    let lower_one_point = match sigma.single_point() {
        Some(l) if sigma.len() >= 2 => Some(one_point_lower_bounds(sigma.len(), l)?),
        _ => None,
    };
    Ok(InterpResult {
        sigma: sigma.clone(),
        exact: libm::sqrt(top.value.max(0.0)),
        upper_projection: upper_from_basis(basis)?,
        lower_one_point,
        witness_f,
        witness_g,
        trunc_len: len,
        residual: top.residual,
        condition: solver.condition(),
    })
}

/// Envelopes for `I_{n,r}`: finite-`n` two-sided bound, limits of `I/√n`,
/// and the `r`-uniform rails of `√((1-r)/n)·I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpEnvelopes {
    pub finite: BoundEnvelope,
    pub limit: BoundEnvelope,
    pub scaled_limit: BoundEnvelope,
}

pub fn interpolation_envelopes(n: usize, r: f64) -> InterpEnvelopes {
    let nf = n as f64;
    let scale = libm::sqrt(nf / (1.0 - r));
    InterpEnvelopes {
        finite: BoundEnvelope {
            lower: Some(scale * libm::sqrt((1.0 + r) / 2.0 * (1.0 - 1.0 / nf))),
            upper: Some(scale * libm::sqrt(1.0 + r + 1.0 / libm::sqrt(nf) + (1.0 - r) / nf)),
            kind: EnvelopeKind::InterpolationTwoSided,
        },
        limit: BoundEnvelope {
            lower: Some(libm::sqrt((1.0 + r) / 2.0 / (1.0 - r))),
            upper: Some(libm::sqrt((1.0 + r) / (1.0 - r))),
            kind: EnvelopeKind::InterpolationLimit,
        },
        scaled_limit: BoundEnvelope {
            lower: Some(core::f64::consts::SQRT_2 / 2.0),
            upper: Some(core::f64::consts::SQRT_2),
            kind: EnvelopeKind::InterpolationScaledLimit,
        },
    }
}

/// Bergman norms of `(g ∘ b_λ)'` and `g'` for a polynomial `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusReport {
    pub composed: f64,
    pub original: f64,
}

impl MoebiusReport {
    pub fn relative_gap(&self) -> f64 {
        let scale = self.original.abs().max(f64::MIN_POSITIVE);
        (self.composed - self.original).abs() / scale
    }
}

/// Coefficient-space check that `‖(g ∘ b_λ)'‖_{L²ₐ} = ‖g'‖_{L²ₐ}`.
pub fn moebius_seminorm_check(g: &TaylorSeries, lambda: Complex64) -> Result<MoebiusReport> {
    check_in_disc(lambda)?;
    let degree = g.trunc_len().saturating_sub(1).max(1);
    let trunc = truncation::policy_truncation(&vec![lambda.norm(); degree])?;
    let composed = crate::series::compose_with_blaschke_factor(g, lambda, trunc)?;
    Ok(MoebiusReport {
        composed: composed.differentiate().norm(NormKind::Bergman),
        original: g.differentiate().norm(NormKind::Bergman),
    })
}
