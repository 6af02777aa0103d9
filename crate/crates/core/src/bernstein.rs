//! Bernstein constants of model spaces.
//!
//! For a pole configuration `σ` the constant is the norm of differentiation
//! from `(K_{B_σ}, ‖·‖_{H²})` into the Bergman or Hardy norm. The Malmquist
//! basis is orthonormal in H², so the squared constant is the top eigenvalue of
//! the Gram matrix of `{e_k'}` in the target weights.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blaschke::{malmquist_basis, MalmquistBasis, PoleConfiguration};
use crate::error::{Error, Result};
use crate::hermitian::{gram_matrix, max_eigenpair};
use crate::series::{NormKind, TaylorSeries};

#[derive(Debug, Clone)]
pub struct BernsteinResult {
    pub sigma: PoleConfiguration,
    pub target: NormKind,
    pub constant: f64,
    /// Top eigenvector: coordinates of an extremal function in the basis.
    pub extremal: Vec<Complex64>,
    pub trunc_len: usize,
    /// Eigen residual of the Gram problem.
    pub residual: f64,
    /// Size of the top eigenvalue cluster.
    pub cluster: usize,
}

/// Which closed-form bound an envelope carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeKind {
    /// Two-sided bound on the Bergman-target constant.
    BergmanTwoSided,
    /// Upper bound on the Hardy-target constant.
    HardyUpper,
    /// Finite-`n` two-sided bound on the interpolation constant.
    InterpolationTwoSided,
    /// Limits of `I/√n`.
    InterpolationLimit,
    /// Rails for `√((1-r)/n)·I`, uniform in `r`.
    InterpolationScaledLimit,
}

impl EnvelopeKind {
    pub fn tag(self) -> &'static str {
        match self {
            EnvelopeKind::BergmanTwoSided => "bergman-two-sided",
            EnvelopeKind::HardyUpper => "hardy-upper",
            EnvelopeKind::InterpolationTwoSided => "interp-two-sided",
            EnvelopeKind::InterpolationLimit => "interp-limit",
            EnvelopeKind::InterpolationScaledLimit => "interp-scaled-limit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundEnvelope {
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub kind: EnvelopeKind,
}

impl BoundEnvelope {
    /// `lower - slack <= x <= upper + slack` for whichever sides exist.
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        self.lower.is_none_or(|l| l - slack <= x) && self.upper.is_none_or(|u| x <= u + slack)
    }
}

fn check_target(target: NormKind) -> Result<()> {
    match target {
        NormKind::Bergman | NormKind::Hardy => Ok(()),
        NormKind::Dirichlet => Err(Error::invalid(
            "Bernstein target must be the Bergman or Hardy norm",
        )),
    }
}

/// Constant for the configuration carried by `basis`.
pub fn bernstein_constant_with_basis(
    basis: &MalmquistBasis,
    target: NormKind,
) -> Result<BernsteinResult> {
    check_target(target)?;
    let derivs: Vec<TaylorSeries> = basis.elements().iter().map(TaylorSeries::differentiate).collect();
    let gram = gram_matrix(&derivs, target);
    let top = max_eigenpair(&gram)?;
    Ok(BernsteinResult {
        sigma: basis.sigma().clone(),
        target,
        constant: libm::sqrt(top.value.max(0.0)),
        extremal: top.vector,
        trunc_len: basis.trunc_len(),
        residual: top.residual,
        cluster: top.cluster,
    })
}

/// Constant at the default truncation.
pub fn bernstein_constant_sigma(sigma: &PoleConfiguration, target: NormKind) -> Result<BernsteinResult> {
    check_target(target)?;
    bernstein_constant_with_basis(&MalmquistBasis::with_policy(sigma)?, target)
}

/// Constant with `trunc + 1` stored coefficients per basis element.
pub fn bernstein_constant_with_trunc(
    sigma: &PoleConfiguration,
    target: NormKind,
    trunc: usize,
) -> Result<BernsteinResult> {
    check_target(target)?;
    bernstein_constant_with_basis(&malmquist_basis(sigma, trunc)?, target)
}

/// Two-sided bound `(1-(1-r)/n)^{1/2} √(n/(1-r)) ≤ C ≤ (1+r+1/√n)^{1/2} √(n/(1-r))`
/// for the Bergman-target constant over all configurations of `n` points of
/// modulus at most `r`.
pub fn bergman_envelope(n: usize, r: f64) -> BoundEnvelope {
    let nf = n as f64;
    let scale = libm::sqrt(nf / (1.0 - r));
    BoundEnvelope {
        lower: Some(libm::sqrt((1.0 - (1.0 - r) / nf).max(0.0)) * scale),
        upper: Some(libm::sqrt(1.0 + r + 1.0 / libm::sqrt(nf)) * scale),
        kind: EnvelopeKind::BergmanTwoSided,
    }
}

/// `(1 + r + 1/√n)·n/(1-r)`, an upper bound for the Hardy-target constant.
pub fn hardy_upper(n: usize, r: f64) -> f64 {
    let nf = n as f64;
    (1.0 + r + 1.0 / libm::sqrt(nf)) * nf / (1.0 - r)
}

pub fn hardy_envelope(n: usize, r: f64) -> BoundEnvelope {
    BoundEnvelope {
        lower: None,
        upper: Some(hardy_upper(n, r)),
        kind: EnvelopeKind::HardyUpper,
    }
}

/// Envelope matching `target`.
pub fn envelope(n: usize, r: f64, target: NormKind) -> Result<BoundEnvelope> {
    check_target(target)?;
    Ok(match target {
        NormKind::Bergman => bergman_envelope(n, r),
        _ => hardy_envelope(n, r),
    })
}

/// Limit of `C/√n` (Bergman) or `C/n` (Hardy) for one-point configurations
/// of radius `r`.
pub fn asymptotic_limit(r: f64, target: NormKind) -> Result<f64> {
    check_target(target)?;
    let q = (1.0 + r) / (1.0 - r);
    Ok(match target {
        NormKind::Bergman => libm::sqrt(q),
        _ => q,
    })
}

/// The last Malmquist element `e_n = sqrt(1-r²)/(1-rz)·b_r^{n-1}` of the
/// one-point configuration `σ_{n,r}`.
pub fn last_element(n: usize, r: f64) -> Result<TaylorSeries> {
    let sigma = PoleConfiguration::one_point(n, Complex64::new(r, 0.0))?;
    let basis = MalmquistBasis::with_policy(&sigma)?;
    Ok(basis.elements()[n - 1].clone())
}

/// Bergman norm of `e_n'` against the closed form `n/(1-r)·(1-(1-r)/n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LastElementAudit {
    pub n: usize,
    pub r: f64,
    /// `‖e_n'‖²` in the Bergman norm, from coefficients.
    pub numeric: f64,
    pub closed_form: f64,
    /// `numeric - closed_form`.
    pub discrepancy: f64,
}

pub fn last_element_derivative_audit(n: usize, r: f64) -> Result<LastElementAudit> {
    if n == 0 {
        return Err(Error::EmptyConfiguration);
    }
    let numeric = last_element(n, r)?.differentiate().norm_sqr(NormKind::Bergman);
    let nf = n as f64;
    let closed_form = nf / (1.0 - r) * (1.0 - (1.0 - r) / nf);
    Ok(LastElementAudit {
        n,
        r,
        numeric,
        closed_form,
        discrepancy: numeric - closed_form,
    })
}

/// Default even alternation length `2⌊√n/2⌋`.
pub fn default_alternation_length(n: usize) -> usize {
    2 * (libm::floor(libm::sqrt(n as f64) / 2.0) as usize)
}

/// Coordinates of `Σ_{k=0}^{s+2} (-1)^k e_{n-k}` in the one-point basis.
pub fn alternating_coordinates(n: usize, s: usize) -> Result<Vec<Complex64>> {
    if !s.is_multiple_of(2) {
        return Err(Error::invalid("alternation length must be even"));
    }
    if s + 2 >= n {
        return Err(Error::invalid("alternation length needs s + 2 < n"));
    }
    let mut coords = vec![Complex64::default(); n];
    for k in 0..=s + 2 {
        coords[n - 1 - k] = Complex64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    Ok(coords)
}

/// `Σ_{k=0}^{s+2} (-1)^k e_{n-k}` for the one-point configuration `σ_{n,r}`.
pub fn alternating_test_function(n: usize, r: f64, s: usize) -> Result<TaylorSeries> {
    let coords = alternating_coordinates(n, s)?;
    let sigma = PoleConfiguration::one_point(n, Complex64::new(r, 0.0))?;
    MalmquistBasis::with_policy(&sigma)?.combine(&coords)
}

/// `√((1-r)/n)·‖f'‖_{L²ₐ}/‖f‖_{H²}` for the alternating test function.
pub fn alternating_ratio(n: usize, r: f64, s: usize) -> Result<f64> {
    let f = alternating_test_function(n, r, s)?;
    let nf = n as f64;
    Ok(libm::sqrt((1.0 - r) / nf) * f.differentiate().norm(NormKind::Bergman) / f.norm(NormKind::Hardy))
}

/// Quantities in the change-of-variable analysis of `‖f'‖_{L²ₐ}` for
/// `f = Σ a_k e_k` in the one-point model space of radius `r`.
///
/// With `Q(v) = (1-rv) Σ_{k=0}^{n-2} (k+1) a_{k+2} v^k` and
/// `P(v) = r Σ_{k=0}^{n-1} a_{k+1} v^k` one has
/// `‖f'‖²_{L²ₐ} = ‖Q - P‖²_{L²ₐ}/(1-r²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionReport {
    pub n: usize,
    pub r: f64,
    pub hardy_norm: f64,
    /// `‖f'‖²_{L²ₐ}` from the Taylor coefficients of `f`.
    pub derivative_norm_sqr: f64,
    /// `‖Q - P‖²_{L²ₐ}/(1-r²)`.
    pub substituted_norm_sqr: f64,
    /// `‖Q‖²_{L²ₐ}` from the product polynomial.
    pub q_norm_sqr: f64,
    /// `Σ_{k=0}^{n-1} (k+1) |a_{k+2} - rk/(k+1) a_{k+1}|²` (with `a_{n+1} = 0`).
    pub q_expansion: f64,
    /// `|a_2|² + ½|a_3 - r a_2|² + r⁴(n-1)²|a_n|²/n + Σ_{k=2}^{n-2} |a_{k+2} - rk/(k+1) a_{k+1}|²`
    /// kept for comparison with the expansion above.
    pub q_expansion_as_printed: f64,
    /// `‖P‖_{L²ₐ}`.
    pub p_norm: f64,
    /// `r (Σ |a_{k+1}|²/(k+1))^{1/2}`.
    pub p_weighted_bound: f64,
    /// `r ‖f‖_{H²}`.
    pub p_hardy_bound: f64,
    /// `(‖Q‖ - ‖P‖)/(‖f‖ sqrt(n(1+r)))`.
    pub sandwich_lower: f64,
    /// `√((1-r)/n)·‖f'‖_{L²ₐ}/‖f‖_{H²}`.
    pub sandwich_middle: f64,
    /// `(‖Q‖ + ‖P‖)/(‖f‖ sqrt(n(1+r)))`.
    pub sandwich_upper: f64,
}

impl ExpansionReport {
    /// `|‖Q‖² - expansion|`.
    pub fn expansion_gap(&self) -> f64 {
        (self.q_norm_sqr - self.q_expansion).abs()
    }

    /// `|‖f'‖² - ‖Q - P‖²/(1-r²)|`.
    pub fn substitution_gap(&self) -> f64 {
        (self.derivative_norm_sqr - self.substituted_norm_sqr).abs()
    }

    /// `r‖f‖ - ‖P‖`, nonnegative when the bound holds.
    pub fn p_bound_slack(&self) -> f64 {
        self.p_hardy_bound - self.p_norm
    }

    pub fn sandwich_holds(&self, slack: f64) -> bool {
        self.sandwich_lower <= self.sandwich_middle + slack
            && self.sandwich_middle <= self.sandwich_upper + slack
    }
}

/// Builds the [`ExpansionReport`] for `f = Σ coords_k e_k` in `basis`, which
/// must be a one-point basis at a point `r ∈ [0, 1)`.
pub fn expansion_check(basis: &MalmquistBasis, coords: &[Complex64]) -> Result<ExpansionReport> {
    let lambda = basis
        .sigma()
        .single_point()
        .filter(|l| l.im == 0.0 && l.re >= 0.0)
        .ok_or_else(|| Error::invalid("expansion check needs a one-point basis at r >= 0"))?;
    let r = lambda.re;
    let n = basis.len();
    if coords.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: coords.len(),
        });
    }
    let a = |j: usize| -> Complex64 {
        // 1-based a_j, zero outside 1..=n.
        if j >= 1 && j <= n {
            coords[j - 1]
        } else {
            Complex64::default()
        }
    };
    let rc = Complex64::new(r, 0.0);

    let f = basis.combine(coords)?;
    let hardy_norm = f.norm(NormKind::Hardy);
    let derivative_norm_sqr = f.differentiate().norm_sqr(NormKind::Bergman);

    // Q has degree n-1, P degree n-1.
    let mut q = vec![Complex64::default(); n];
    for k in 0..n.saturating_sub(1) {
        let t = a(k + 2) * (k as f64 + 1.0);
        q[k] += t;
        q[k + 1] -= rc * t;
    }
    let p: Vec<Complex64> = (0..n).map(|k| rc * a(k + 1)).collect();
    let q_series = TaylorSeries::new(q)?;
    let p_series = TaylorSeries::new(p)?;
    let q_norm_sqr = q_series.norm_sqr(NormKind::Bergman);
    let p_norm = p_series.norm(NormKind::Bergman);
    let substituted_norm_sqr = q_series.sub(&p_series).norm_sqr(NormKind::Bergman) / (1.0 - r * r);

    let q_expansion: f64 = (0..n)
        .map(|k| {
            let kf = k as f64;
            (kf + 1.0) * (a(k + 2) - a(k + 1) * (r * kf / (kf + 1.0))).norm_sqr()
        })
        .sum();
    let nf = n as f64;
    let mut printed = a(2).norm_sqr() + 0.5 * (a(3) - rc * a(2)).norm_sqr();
    if n >= 1 {
        printed += libm::pow(r, 4.0) * (nf - 1.0) * (nf - 1.0) * a(n).norm_sqr() / nf;
    }
    for k in 2..n.saturating_sub(1) {
        let kf = k as f64;
        printed += (a(k + 2) - a(k + 1) * (r * kf / (kf + 1.0))).norm_sqr();
    }

    let weighted: f64 = (0..n).map(|k| a(k + 1).norm_sqr() / (k as f64 + 1.0)).sum();
    let denom = hardy_norm * libm::sqrt(nf * (1.0 + r));
    let q_norm = libm::sqrt(q_norm_sqr);
    Ok(ExpansionReport {
        n,
        r,
        hardy_norm,
        derivative_norm_sqr,
        substituted_norm_sqr,
        q_norm_sqr,
        q_expansion,
        q_expansion_as_printed: printed,
        p_norm,
        p_weighted_bound: r * libm::sqrt(weighted),
        p_hardy_bound: r * hardy_norm,
        sandwich_lower: (q_norm - p_norm) / denom,
        sandwich_middle: libm::sqrt((1.0 - r) / nf) * libm::sqrt(derivative_norm_sqr) / hardy_norm,
        sandwich_upper: (q_norm + p_norm) / denom,
    })
}

/// One row of an asymptotic sweep over one-point configurations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioRow {
    pub n: usize,
    pub r: f64,
    pub target: NormKind,
    pub constant: f64,
    /// `C/√n` (Bergman) or `C/n` (Hardy).
    pub ratio: f64,
    pub limit: f64,
    pub trunc_len: usize,
    pub residual: f64,
}

impl RatioRow {
    pub fn gap(&self) -> f64 {
        self.limit - self.ratio
    }
}

/// Normalized constants at `σ_{n,r}` for each `n` in `n_list` (ascending).
pub fn asymptotic_ratio_sweep(r: f64, n_list: &[usize], target: NormKind) -> Result<Vec<RatioRow>> {
    check_target(target)?;
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("n list must be strictly ascending"));
    }
    let limit = asymptotic_limit(r, target)?;
    n_list
        .iter()
        .map(|&n| {
            let sigma = PoleConfiguration::one_point(n, Complex64::new(r, 0.0))?;
            let res = bernstein_constant_sigma(&sigma, target)?;
            let nf = n as f64;
            let ratio = match target {
                NormKind::Bergman => res.constant / libm::sqrt(nf),
                _ => res.constant / nf,
            };
            Ok(RatioRow {
                n,
                r,
                target,
                constant: res.constant,
                ratio,
                limit,
                trunc_len: res.trunc_len,
                residual: res.residual,
            })
        })
        .collect()
}

/// Every gap is positive and the gaps strictly decrease along the sweep.
pub fn gap_shrinks(rows: &[RatioRow]) -> bool {
    rows.iter().all(|row| row.gap() > 0.0) && rows.windows(2).all(|w| w[1].gap() < w[0].gap())
}

/// Best lower estimate of the supremum of the constant over configurations
/// of `n` points in the closed disc of radius `r`.
#[derive(Debug, Clone)]
pub struct SupEstimate {
    pub constant: f64,
    pub sigma: PoleConfiguration,
    /// Value at the one-point configuration `σ_{n,r}`.
    pub one_point: f64,
    pub evaluations: usize,
}

fn random_configuration(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Result<PoleConfiguration> {
    let points = (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            let t: f64 = rng.random();
            Complex64::from_polar(r * libm::sqrt(u), core::f64::consts::TAU * t)
        })
        .collect();
    PoleConfiguration::new(points)
}

/// Evaluates the one-point configuration, `random_count` seeded uniform
/// configurations, then refines the best one coordinate by coordinate
/// (modulus and argument of each point) with a shrinking step.
pub fn estimate_sup_constant(
    n: usize,
    r: f64,
    target: NormKind,
    random_count: usize,
    seed: u64,
) -> Result<SupEstimate> {
    check_target(target)?;
    let eval = |s: &PoleConfiguration| bernstein_constant_sigma(s, target).map(|b| b.constant);
    let one = PoleConfiguration::one_point(n, Complex64::new(r, 0.0))?;
    let one_point = eval(&one)?;
    let mut best = (one_point, one);
    let mut evaluations = 1;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_count {
        let s = random_configuration(&mut rng, n, r)?;
        let v = eval(&s)?;
        evaluations += 1;
        if v > best.0 {
            best = (v, s);
        }
    }

    let mut step = 0.1;
    for _ in 0..4 {
        for j in 0..n {
            for (dm, da) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
                let mut pts = best.1.points().to_vec();
                let (m, a) = (pts[j].norm(), pts[j].arg());
                let m = (m + dm * r).clamp(0.0, r);
                pts[j] = Complex64::from_polar(m, a + da * core::f64::consts::PI);
                let s = PoleConfiguration::new(pts)?;
                let v = eval(&s)?;
                evaluations += 1;
                if v > best.0 {
                    best = (v, s);
                }
            }
        }
        step /= 2.0;
    }
    Ok(SupEstimate {
        constant: best.0,
        sigma: best.1,
        one_point,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma(points: &[f64]) -> PoleConfiguration {
        PoleConfiguration::new(points.iter().map(|&x| c(x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn hand_values() {
        let b = |s: &[f64]| bernstein_constant_sigma(&sigma(s), NormKind::Bergman).unwrap().constant;
        assert!(b(&[0.0]).abs() < 1e-15);
        assert!((b(&[0.0, 0.0]) - 1.0).abs() < 1e-12);
        assert!((b(&[0.0, 0.0, 0.0]) - libm::sqrt(2.0)).abs() < 1e-12);
        let expect = libm::sqrt((7.0 + libm::sqrt(41.0)) / 6.0);
        assert!((b(&[0.5, 0.5]) - expect).abs() < 1e-10);
    }

    #[test]
    fn dirichlet_target_rejected() {
        assert!(bernstein_constant_sigma(&sigma(&[0.1]), NormKind::Dirichlet).is_err());
    }

    #[test]
    fn envelope_formulas() {
        let e = bergman_envelope(2, 0.0);
        assert!((e.lower.unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(bergman_envelope(1, 0.0).lower, Some(0.0));
        let e = bergman_envelope(2, 0.5);
        assert!((e.lower.unwrap() - 2.0 * libm::sqrt(0.75)).abs() < 1e-14);
        assert!((e.upper.unwrap() - 2.0 * libm::sqrt(1.5 + 1.0 / libm::sqrt(2.0))).abs() < 1e-14);
        assert!((hardy_upper(4, 0.5) - 16.0).abs() < 1e-14);
        assert!((hardy_upper(1, 0.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn last_element_audit_values() {
        let a = last_element_derivative_audit(1, 0.0).unwrap();
        assert_eq!((a.numeric, a.closed_form), (0.0, 0.0));
        let a = last_element_derivative_audit(2, 0.0).unwrap();
        assert!((a.numeric - 1.0).abs() < 1e-14);
        assert!((a.closed_form - 1.0).abs() < 1e-14);
        let a = last_element_derivative_audit(2, 0.5).unwrap();
        assert!((a.numeric - 2.0).abs() < 1e-9);
        assert!((a.closed_form - 3.0).abs() < 1e-12);
        assert!((a.discrepancy + 1.0).abs() < 1e-9);
    }

    #[test]
    fn alternating_function_norm() {
        let f = alternating_test_function(5, 0.4, 0).unwrap();
        assert!((f.norm_sqr(NormKind::Hardy) - 3.0).abs() < 1e-10);
        let f = alternating_test_function(12, 0.6, 4).unwrap();
        assert!((f.norm_sqr(NormKind::Hardy) - 7.0).abs() < 1e-10);
        assert!(alternating_test_function(4, 0.4, 2).is_err());
        assert!(alternating_test_function(9, 0.4, 1).is_err());
        assert_eq!(default_alternation_length(25), 4);
        assert_eq!(default_alternation_length(200), 14);
    }

    #[test]
    fn expansion_on_second_element() {
        let s = PoleConfiguration::one_point(2, c(0.5, 0.0)).unwrap();
        let basis = MalmquistBasis::with_policy(&s).unwrap();
        let rep = expansion_check(&basis, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(rep.expansion_gap() < 1e-10);
        assert!(rep.substitution_gap() < 1e-10);
        assert!(rep.p_bound_slack() >= 0.0);
        assert!(rep.sandwich_holds(1e-12));
    }

    #[test]
    fn expansion_vanishing_p_at_origin() {
        let s = PoleConfiguration::one_point(4, c(0.0, 0.0)).unwrap();
        let basis = MalmquistBasis::with_policy(&s).unwrap();
        let rep = expansion_check(&basis, &[c(0.3, 0.1), c(-1.0, 0.0), c(0.5, 0.5), c(2.0, 0.0)]).unwrap();
        assert_eq!(rep.p_norm, 0.0);
        assert!(rep.expansion_gap() < 1e-12);
        assert!(rep.substitution_gap() < 1e-12);
    }

    #[test]
    fn origin_ratio_closed_form() {
        let rows = asymptotic_ratio_sweep(0.0, &[10, 50, 100], NormKind::Bergman).unwrap();
        for row in &rows {
            let nf = row.n as f64;
            assert!((row.ratio - libm::sqrt((nf - 1.0) / nf)).abs() < 1e-9);
        }
        assert!((rows[2].ratio - libm::sqrt(0.99)).abs() < 1e-9);
        assert!(gap_shrinks(&rows));
        let rows = asymptotic_ratio_sweep(0.0, &[5, 9], NormKind::Hardy).unwrap();
        assert!((rows[0].ratio - 0.8).abs() < 1e-9);
        assert!(asymptotic_ratio_sweep(0.0, &[9, 5], NormKind::Hardy).is_err());
    }

    #[test]
    fn sup_estimate_dominates_one_point() {
        let est = estimate_sup_constant(3, 0.5, NormKind::Bergman, 5, 0).unwrap();
        assert!(est.constant >= est.one_point);
        assert!(est.sigma.radius() <= 0.5 + 1e-15);
        let again = estimate_sup_constant(3, 0.5, NormKind::Bergman, 5, 0).unwrap();
        assert_eq!(est.constant, again.constant);
    }
}
