//! Truncated Taylor series on the unit disc.
//!
//! A [`TaylorSeries`] stores the coefficients `c_0 ..= c_N` of an analytic
//! function together with `tail_bound`, a bound on the H² distance between the
//! true function and the stored polynomial. Every operation returns a fresh
//! value; nothing mutates in place.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Slack accepted on `|z| <= 1` so that points built with `from_polar` on the
/// unit circle are not rejected by rounding.
const CIRCLE_SLACK: f64 = 8.0 * f64::EPSILON;

/// Coefficient-space norms: `(sum w_k |c_k|^2)^(1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormKind {
    /// `w_k = 1`
    Hardy,
    /// `w_k = 1/(k+1)`
    Bergman,
    /// `w_k = k+1`
    Dirichlet,
}

impl NormKind {
    pub const ALL: [NormKind; 3] = [NormKind::Hardy, NormKind::Bergman, NormKind::Dirichlet];

    #[inline]
    pub fn weight(self, k: usize) -> f64 {
        match self {
            NormKind::Hardy => 1.0,
            NormKind::Bergman => 1.0 / (k as f64 + 1.0),
            NormKind::Dirichlet => k as f64 + 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NormKind::Hardy => "hardy",
            NormKind::Bergman => "bergman",
            NormKind::Dirichlet => "dirichlet",
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    coeffs: Vec<Complex64>,
    tail_bound: f64,
}

impl TaylorSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::with_tail(coeffs, 0.0)
    }

    pub fn with_tail(coeffs: Vec<Complex64>, tail_bound: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(k) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite(k));
        }
        if !(tail_bound >= 0.0 && tail_bound.is_finite()) {
            return Err(Error::invalid("tail bound must be finite and nonnegative"));
        }
        Ok(Self { coeffs, tail_bound })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    // Internal constructor for results of finite arithmetic on valid series.
    fn raw(coeffs: Vec<Complex64>, tail_bound: f64) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs, tail_bound }
    }

    pub fn zeros(len: usize) -> Self {
        Self::raw(vec![Complex64::new(0.0, 0.0); len.max(1)], 0.0)
    }

    pub fn constant(c: Complex64, len: usize) -> Self {
        let mut s = Self::zeros(len);
        s.coeffs[0] = c;
        s
    }

    /// `z^k` stored with `len` coefficients (`len > k`).
    pub fn monomial(k: usize, len: usize) -> Self {
        let mut s = Self::zeros(len.max(k + 1));
        s.coeffs[k] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Stored coefficient, zero past the truncation.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Number of stored coefficients, `N + 1`.
    pub fn trunc_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::raw(
            self.coeffs.iter().map(|&x| x * c).collect(),
            self.tail_bound * c.norm(),
        )
    }

    /// Keeps `len` coefficients: shortening moves the dropped mass into the
    /// tail bound, lengthening pads with zeros.
    pub fn resize(&self, len: usize) -> Self {
        let len = len.max(1);
        if len >= self.coeffs.len() {
            let mut coeffs = self.coeffs.clone();
            coeffs.resize(len, Complex64::default());
            return Self::raw(coeffs, self.tail_bound);
        }
        let dropped: f64 = self.coeffs[len..].iter().map(|c| c.norm_sqr()).sum();
        Self::raw(
            self.coeffs[..len].to_vec(),
            self.tail_bound + libm::sqrt(dropped),
        )
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let len = self.trunc_len().min(other.trunc_len());
        let a = self.resize(len);
        let b = other.resize(len);
        Self::raw(
            a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| op(x, y)).collect(),
            a.tail_bound + b.tail_bound,
        )
    }

    /// Sum truncated to the shorter input.
    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x - y)
    }

    /// Adds `c` to the constant coefficient.
    pub fn add_constant(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// `f'`, with coefficient `k` equal to `(k+1) c_{k+1}`. The stored length
    /// shrinks by one (never below one) and the tail bound is scaled by `N+1`.
    pub fn differentiate(&self) -> Self {
        let n = self.coeffs.len() - 1;
        if n == 0 {
            return Self::raw(vec![Complex64::default()], self.tail_bound);
        }
        let coeffs = (0..n)
            .map(|k| self.coeffs[k + 1] * (k as f64 + 1.0))
            .collect();
        Self::raw(coeffs, self.tail_bound * (n as f64 + 1.0))
    }

    pub fn norm_sqr(&self, kind: NormKind) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| kind.weight(k) * c.norm_sqr())
            .sum()
    }

    /// Norm over the stored coefficients; the discarded part is bounded by
    /// [`tail_bound`](Self::tail_bound) (in H²).
    pub fn norm(&self, kind: NormKind) -> f64 {
        libm::sqrt(self.norm_sqr(kind))
    }

    /// Weighted pairing `sum w_k f_k conj(g_k)` over the common stored length.
    pub fn inner_product(&self, other: &Self, kind: NormKind) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .map(|(k, (f, g))| f * g.conj() * kind.weight(k))
            .sum()
    }

    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Horner evaluation of the stored polynomial on the closed disc.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let m = z.norm();
        if !(m <= 1.0 + CIRCLE_SLACK) {
            return Err(Error::OutsideClosedDisc(m));
        }
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(Complex64::default(), |acc, &c| acc * z + c))
    }

    /// Cauchy product truncated to the shorter input. The tail bound adds the
    /// exact mass of the dropped high-order products to the Young-inequality
    /// bounds `‖t_f‖₂‖g‖₁ + ‖f‖₁‖t_g‖₂ + t_f t_g`.
    pub fn multiply(&self, other: &Self) -> Self {
        let len = self.trunc_len().min(other.trunc_len());
        let full_len = self.trunc_len() + other.trunc_len() - 1;
        let mut full = vec![Complex64::default(); full_len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Complex64::default() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                full[i + j] += a * b;
            }
        }
        let dropped: f64 = full[len..].iter().map(|c| c.norm_sqr()).sum();
        let tf = self.tail_bound;
        let tg = other.tail_bound;
        let tail = libm::sqrt(dropped) + tf * other.l1_norm() + tg * self.l1_norm() + tf * tg;
        full.truncate(len);
        Self::raw(full, tail)
    }

    /// Product with the Blaschke factor `b_λ(z) = (λ - z)/(1 - conj(λ) z)`.
    ///
    /// Runs the recurrence `g_m = conj(λ) g_{m-1} + λ f_m - f_{m-1}`, which is
    /// exact on the stored range. The mass pushed past index `N` equals
    /// `sqrt(1-|λ|²)·|Σ_i f_i conj(λ)^{N-i}|`, and multiplication by an inner
    /// function is an H² isometry, so the old tail carries over unchanged.
    pub fn mul_blaschke_factor(&self, lambda: Complex64) -> Result<Self> {
        check_in_disc(lambda)?;
        let lc = lambda.conj();
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut prev_g = Complex64::default();
        let mut prev_f = Complex64::default();
        let mut horner = Complex64::default();
        for &f in &self.coeffs {
            let g = lc * prev_g + lambda * f - prev_f;
            out.push(g);
            prev_g = g;
            prev_f = f;
            horner = horner * lc + f;
        }
        let spill = libm::sqrt(1.0 - lambda.norm_sqr()) * horner.norm();
        Ok(Self::raw(out, self.tail_bound + spill))
    }

    /// Product with the Cauchy kernel `1/(1 - conj(λ) z)` via
    /// `g_m = f_m + conj(λ) g_{m-1}`. Past index `N` the stored part continues
    /// as `conj(λ)^{m-N} g_N`; the old tail is amplified by at most
    /// `sup |1/(1 - conj(λ) z)| = 1/(1-|λ|)`.
    pub fn mul_cauchy_kernel(&self, lambda: Complex64) -> Result<Self> {
        check_in_disc(lambda)?;
        let lc = lambda.conj();
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut prev = Complex64::default();
        for &f in &self.coeffs {
            prev = f + lc * prev;
            out.push(prev);
        }
        let r = lambda.norm();
        let spill = prev.norm() * r / libm::sqrt(1.0 - r * r);
        Ok(Self::raw(out, spill + self.tail_bound / (1.0 - r)))
    }
}

impl fmt::Display for TaylorSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{}: {} {}", k, c.re, c.im)?;
        }
        Ok(())
    }
}

pub(crate) fn check_in_disc(lambda: Complex64) -> Result<()> {
    let m = lambda.norm();
    if m < 1.0 && m.is_finite() {
        Ok(())
    } else {
        Err(Error::outside_disc(lambda))
    }
}

/// Coefficients `conj(λ)^k`, `k = 0..=n`, of `1/(1 - conj(λ) z)`.
pub fn cauchy_kernel_series(lambda: Complex64, n: usize) -> Result<TaylorSeries> {
    check_in_disc(lambda)?;
    let lc = lambda.conj();
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut p = Complex64::new(1.0, 0.0);
    for _ in 0..=n {
        coeffs.push(p);
        p *= lc;
    }
    let r = lambda.norm();
    let tail = libm::pow(r, (n + 1) as f64) / libm::sqrt(1.0 - r * r);
    Ok(TaylorSeries::raw(coeffs, tail))
}

/// Coefficients `0..=n` of `b_λ` itself.
pub fn blaschke_factor_series(lambda: Complex64, n: usize) -> Result<TaylorSeries> {
    TaylorSeries::constant(Complex64::new(1.0, 0.0), n + 1).mul_blaschke_factor(lambda)
}

/// Coefficients `0..=n` of `f ∘ b_λ`, by Horner's scheme in powers of `b_λ`.
///
/// The stored polynomial part is composed exactly on the stored range; the
/// tail of `f` is carried through the composition operator bound
/// `sqrt((1+|λ|)/(1-|λ|))`.
pub fn compose_with_blaschke_factor(
    f: &TaylorSeries,
    lambda: Complex64,
    n: usize,
) -> Result<TaylorSeries> {
    check_in_disc(lambda)?;
    let mut acc = TaylorSeries::zeros(n + 1);
    for &c in f.coeffs.iter().rev() {
        acc = acc.mul_blaschke_factor(lambda)?.add_constant(c);
    }
    let r = lambda.norm();
    acc.tail_bound += f.tail_bound * libm::sqrt((1.0 + r) / (1.0 - r));
    Ok(acc)
}
