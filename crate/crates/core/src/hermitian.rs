//! Dense Hermitian linear algebra: Gram matrices, cyclic Jacobi eigensolver,
//! Cholesky-reduced generalized problems and weighted minimum-norm solves.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{NormKind, TaylorSeries};

/// Accepted asymmetry `|a_jk - conj(a_kj)|` on construction.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;
/// Sweeps stop once the off-diagonal Frobenius mass is below this fraction of
/// the matrix norm.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-14;
/// Top eigenvalues within `CLUSTER_TOLERANCE·(1 + |λ_max|)` form one cluster.
pub const CLUSTER_TOLERANCE: f64 = 1e-10;
/// Largest condition estimate accepted by [`MinNormSolver`].
pub const MAX_CONDITION: f64 = 1e12;
/// Diagonal ridge, relative to the trace, added when Cholesky fails.
pub const RIDGE_FACTOR: f64 = 1e-14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Row-major entries; rejects matrices that are not Hermitian within
    /// [`HERMITIAN_TOLERANCE`]. The stored matrix is the exact Hermitian part.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        for j in 0..dim {
            for k in j..dim {
                let a = entries[j * dim + k];
                let b = entries[k * dim + j];
                if !(a.re.is_finite() && a.im.is_finite()) {
                    return Err(Error::NonFinite(j * dim + k));
                }
                if (a - b.conj()).norm() > HERMITIAN_TOLERANCE {
                    return Err(Error::invalid("matrix is not Hermitian"));
                }
            }
        }
        Ok(Self::from_fn(dim, |j, k| entries[j * dim + k]))
    }

    /// Builds from the upper triangle of `f`, mirroring it below the diagonal.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut entries = vec![ZERO; dim * dim];
        for j in 0..dim {
            entries[j * dim + j] = Complex64::new(f(j, j).re, 0.0);
            for k in j + 1..dim {
                let v = f(j, k);
                entries[j * dim + k] = v;
                entries[k * dim + j] = v.conj();
            }
        }
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |j, k| if j == k { ONE } else { ZERO })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |j, k| {
            if j == k {
                Complex64::new(values[j], 0.0)
            } else {
                ZERO
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.dim + k]
    }

    /// Adds `delta` at `(j, k)` and `conj(delta)` at `(k, j)`.
    pub fn perturbed(&self, j: usize, k: usize, delta: Complex64) -> Self {
        let mut out = self.clone();
        let d = self.dim;
        if j == k {
            out.entries[j * d + j] += Complex64::new(delta.re, 0.0);
        } else {
            out.entries[j * d + k] += delta;
            out.entries[k * d + j] += delta.conj();
        }
        out
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|x| x.norm_sqr()).sum())
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|j| self.get(j, j).re).sum()
    }

    /// Largest `|a_jk|` of `self - I`.
    pub fn max_deviation_from_identity(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.dim {
            for k in 0..self.dim {
                let target = if j == k { ONE } else { ZERO };
                worst = worst.max((self.get(j, k) - target).norm());
            }
        }
        worst
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|j| {
                self.entries[j * self.dim..(j + 1) * self.dim]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `x^H M x` (real for Hermitian `M`).
    pub fn quadratic_form(&self, x: &[Complex64]) -> f64 {
        self.mul_vec(x)
            .iter()
            .zip(x)
            .map(|(y, xi)| (xi.conj() * y).re)
            .sum()
    }

    /// `A^H M A` for a square `A` given row-major.
    pub fn congruence(&self, a: &[Complex64]) -> Result<Self> {
        let d = self.dim;
        if a.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: a.len(),
            });
        }
        let mut ma = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                ma[i * d + k] = (0..d).map(|l| self.get(i, l) * a[l * d + k]).sum();
            }
        }
        Ok(Self::from_fn(d, |j, k| {
            (0..d).map(|i| a[i * d + j].conj() * ma[i * d + k]).sum()
        }))
    }

    /// Full spectrum by cyclic Jacobi rotations, eigenvalues descending.
    pub fn eigen(&self) -> Result<Spectrum> {
        jacobi(self)
    }

    pub fn max_eigenpair(&self) -> Result<Eigenpair> {
        max_eigenpair(self)
    }
}

/// Eigenvalues in descending order with matching unit eigenvectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
    pub sweeps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    /// Unit vector, phase-normalized (see [`phase_normalize`]).
    pub vector: Vec<Complex64>,
    /// Number of eigenvalues in the top cluster.
    pub cluster: usize,
    /// `‖M v - value·v‖₂`.
    pub residual: f64,
}

/// Gram matrix `G[j][k] = Σ_m w_m conj(v_j[m]) v_k[m]`, so that
/// `x^H G x = ‖Σ_k x_k v_k‖²` in the chosen norm.
pub fn gram_matrix(vectors: &[TaylorSeries], kind: NormKind) -> HermitianMatrix {
    let len = vectors.iter().map(TaylorSeries::trunc_len).min().unwrap_or(0);
    let weights: Vec<f64> = (0..len).map(|m| kind.weight(m)).collect();
    HermitianMatrix::from_fn(vectors.len(), |j, k| {
        let a = &vectors[j].coeffs()[..len];
        let b = &vectors[k].coeffs()[..len];
        a.iter()
            .zip(b)
            .zip(&weights)
            .map(|((x, y), w)| x.conj() * y * w)
            .sum()
    })
}

/// Makes the first entry of (numerically) largest modulus positive real.
pub fn phase_normalize(v: &mut [Complex64]) {
    let max = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let idx = v
        .iter()
        .position(|x| x.norm() >= max * (1.0 - 1e-12))
        .unwrap_or(0);
    let phase = v[idx].conj() / v[idx].norm();
    for x in v.iter_mut() {
        *x *= phase;
    }
    v[idx] = Complex64::new(v[idx].norm(), 0.0);
}

fn lexicographic(a: &[Complex64], b: &[Complex64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                s += a[p * n + q].norm_sqr();
            }
        }
    }
    libm::sqrt(s)
}

fn jacobi(m: &HermitianMatrix) -> Result<Spectrum> {
    let n = m.dim;
    let mut a = m.entries.clone();
    let mut v = HermitianMatrix::identity(n).entries;
    let scale = m.frobenius_norm();
    let mut sweeps = 0;
    if scale > 0.0 {
        loop {
            let off = off_diagonal_norm(&a, n);
            if off <= OFF_DIAGONAL_TOLERANCE * scale {
                break;
            }
            if sweeps == MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    sweeps,
                    residual: off,
                });
            }
            sweeps += 1;
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, n, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.total_cmp(&a[i * n + i].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = order
        .iter()
        .map(|&i| {
            let mut col: Vec<Complex64> = (0..n).map(|k| v[k * n + i]).collect();
            phase_normalize(&mut col);
            col
        })
        .collect();
    Ok(Spectrum {
        values,
        vectors,
        sweeps,
    })
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
///
/// With `a_pq = |g| e^{iφ}` the unitary `V` has columns
/// `V_p = c e_p - s e^{-iφ} e_q` and `V_q = s e_p + c e^{-iφ} e_q`, and
/// `A ← V^H A V`, `W ← W V`.
fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let g = a[p * n + q];
    let ag = g.norm();
    if ag == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    // Below rounding relative to both diagonal entries: drop it.
    if ag < f64::EPSILON * 1e-2 * app.abs().min(aqq.abs()) {
        a[p * n + q] = ZERO;
        a[q * n + p] = ZERO;
        return;
    }
    let theta = (aqq - app) / (2.0 * ag);
    let t = if theta.is_infinite() {
        0.0
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + libm::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    let ph = g / ag;
    let phc = ph.conj();

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c - phc * akq * s;
        a[k * n + q] = akp * s + phc * akq * c;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c - ph * aqk * s;
        a[q * n + k] = apk * s + ph * aqk * c;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * c - phc * vkq * s;
        v[k * n + q] = vkp * s + phc * vkq * c;
    }
}

fn residual(m: &HermitianMatrix, value: f64, v: &[Complex64]) -> f64 {
    libm::sqrt(
        m.mul_vec(v)
            .iter()
            .zip(v)
            .map(|(y, x)| (y - x * value).norm_sqr())
            .sum(),
    )
}

/// Largest eigenvalue with a deterministic unit eigenvector.
///
/// When several eigenvalues fall in the top cluster the lexicographically
/// largest phase-normalized eigenvector among them is returned.
pub fn max_eigenpair(m: &HermitianMatrix) -> Result<Eigenpair> {
    if m.dim == 0 {
        return Err(Error::invalid("empty matrix has no eigenpair"));
    }
    let spec = jacobi(m)?;
    let top = spec.values[0];
    let cutoff = top - CLUSTER_TOLERANCE * (1.0 + top.abs());
    let cluster = spec.values.iter().take_while(|&&x| x >= cutoff).count();
    let best = (0..cluster)
        .max_by(|&i, &j| lexicographic(&spec.vectors[i], &spec.vectors[j]))
        .unwrap_or(0);
    let vector = spec.vectors[best].clone();
    let value = spec.values[best];
    Ok(Eigenpair {
        residual: residual(m, value, &vector),
        value,
        vector,
        cluster,
    })
}

/// Lower-triangular Cholesky factor `L` with `L L^H = S`, row-major.
#[derive(Debug, Clone)]
pub struct Cholesky {
    dim: usize,
    l: Vec<Complex64>,
}

impl Cholesky {
    pub fn new(s: &HermitianMatrix) -> Result<Self> {
        let n = s.dim;
        let mut l = vec![ZERO; n * n];
        for j in 0..n {
            let mut d = s.get(j, j).re;
            for k in 0..j {
                d -= l[j * n + k].norm_sqr();
            }
            if !(d > 0.0) {
                return Err(Error::NotPositiveDefinite);
            }
            let d = libm::sqrt(d);
            l[j * n + j] = Complex64::new(d, 0.0);
            for i in j + 1..n {
                let mut x = s.get(i, j);
                for k in 0..j {
                    x -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = x / d;
            }
        }
        Ok(Self { dim: n, l })
    }

    /// `L^{-1} b`.
    pub fn forward(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim;
        let mut y = b.to_vec();
        for i in 0..n {
            let row = &self.l[i * n..i * n + i];
            let x = y[i] - row.iter().zip(&y[..i]).map(|(a, b)| a * b).sum::<Complex64>();
            y[i] = x / self.l[i * n + i];
        }
        y
    }

    /// `L^{-H} b`.
    pub fn backward(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim;
        let mut y = b.to_vec();
        for i in (0..n).rev() {
            let x = y[i]
                - (i + 1..n)
                    .zip(&y[i + 1..])
                    .map(|(k, b)| self.l[k * n + i].conj() * b)
                    .sum::<Complex64>();
            y[i] = x / self.l[i * n + i];
        }
        y
    }

    /// `S^{-1} b`.
    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        self.backward(&self.forward(b))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedEigenpair {
    /// Largest `λ` with `M x = λ S x`.
    pub value: f64,
    /// `x` normalized so that `x^H S x = 1`.
    pub vector: Vec<Complex64>,
    /// Ridge added to `S` when its Cholesky factorization failed.
    pub ridge: Option<f64>,
}

/// Largest eigenvalue of the pencil `(M, S)` with `S` positive definite,
/// computed as the top eigenpair of `L^{-1} M L^{-H}`.
pub fn max_generalized_eigenpair(
    m: &HermitianMatrix,
    s: &HermitianMatrix,
) -> Result<GeneralizedEigenpair> {
    if m.dim != s.dim {
        return Err(Error::DimensionMismatch {
            expected: m.dim,
            found: s.dim,
        });
    }
    let n = m.dim;
    let (chol, ridge) = match Cholesky::new(s) {
        Ok(c) => (c, None),
        Err(Error::NotPositiveDefinite) => {
            let ridge = RIDGE_FACTOR * s.trace().abs().max(f64::MIN_POSITIVE);
            let shifted = HermitianMatrix::from_fn(n, |j, k| {
                if j == k {
                    s.get(j, k) + ridge
                } else {
                    s.get(j, k)
                }
            });
            (Cholesky::new(&shifted)?, Some(ridge))
        }
        Err(e) => return Err(e),
    };
    // Y = L^{-1} M column by column; C = L^{-1} Y^H = L^{-1} M L^{-H}.
    let mut y = vec![ZERO; n * n];
    for k in 0..n {
        let col: Vec<Complex64> = (0..n).map(|i| m.get(i, k)).collect();
        for (i, x) in chol.forward(&col).into_iter().enumerate() {
            y[i * n + k] = x;
        }
    }
    let mut c = vec![ZERO; n * n];
    for k in 0..n {
        let col: Vec<Complex64> = (0..n).map(|i| y[k * n + i].conj()).collect();
        for (i, x) in chol.forward(&col).into_iter().enumerate() {
            c[i * n + k] = x;
        }
    }
    let reduced = HermitianMatrix::from_fn(n, |j, k| c[j * n + k]);
    let top = max_eigenpair(&reduced)?;
    Ok(GeneralizedEigenpair {
        value: top.value,
        vector: chol.backward(&top.vector),
        ridge,
    })
}

/// A linear functional on coefficient vectors, `ℓ(c) = Σ_j a_j c_j`, with its
/// prescribed value.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub functional: Vec<Complex64>,
    pub target: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinNormSolution {
    pub series: TaylorSeries,
    /// `(Σ w_k |c_k|²)^(1/2)` of the minimizer.
    pub weighted_norm: f64,
}

/// Minimizes `Σ w_k |c_k|²` subject to `A c = d` for a fixed set of
/// functionals `A`, reusing one factorization of the dual Gram
/// `A W^{-1} A^H` across right-hand sides.
#[derive(Debug, Clone)]
pub struct MinNormSolver {
    weights: Vec<f64>,
    functionals: Vec<Vec<Complex64>>,
    chol: Cholesky,
    condition: f64,
}

impl MinNormSolver {
    pub fn new(weights: &[f64], functionals: Vec<Vec<Complex64>>) -> Result<Self> {
        if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::invalid("weights must be finite and strictly positive"));
        }
        if functionals.is_empty() {
            return Err(Error::invalid("at least one constraint is required"));
        }
        for f in &functionals {
            if f.len() != weights.len() {
                return Err(Error::DimensionMismatch {
                    expected: weights.len(),
                    found: f.len(),
                });
            }
        }
        let dual = HermitianMatrix::from_fn(functionals.len(), |i, j| {
            functionals[i]
                .iter()
                .zip(&functionals[j])
                .zip(weights)
                .map(|((a, b), w)| a * b.conj() / w)
                .sum()
        });
        let spec = dual.eigen()?;
        let hi = spec.values[0];
        let lo = *spec.values.last().expect("nonempty");
        let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
        if !(condition <= MAX_CONDITION) {
            return Err(Error::IllConditioned(condition));
        }
        let chol = Cholesky::new(&dual).map_err(|_| Error::IllConditioned(condition))?;
        Ok(Self {
            weights: weights.to_vec(),
            functionals,
            chol,
            condition,
        })
    }

    /// Ratio of extreme eigenvalues of the dual Gram.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    pub fn functionals(&self) -> &[Vec<Complex64>] {
        &self.functionals
    }

    /// Minimizer for targets `d`: `c = W^{-1} A^H (A W^{-1} A^H)^{-1} d`.
    pub fn solve(&self, targets: &[Complex64]) -> Result<MinNormSolution> {
        if targets.len() != self.functionals.len() {
            return Err(Error::DimensionMismatch {
                expected: self.functionals.len(),
                found: targets.len(),
            });
        }
        let y = self.chol.solve(targets);
        let mut coeffs = vec![ZERO; self.weights.len()];
        for (f, yi) in self.functionals.iter().zip(&y) {
            for ((c, a), w) in coeffs.iter_mut().zip(f).zip(&self.weights) {
                *c += a.conj() * yi / w;
            }
        }
        let norm_sqr: f64 = coeffs
            .iter()
            .zip(&self.weights)
            .map(|(c, w)| w * c.norm_sqr())
            .sum();
        Ok(MinNormSolution {
            series: TaylorSeries::new(coeffs)?,
            weighted_norm: libm::sqrt(norm_sqr),
        })
    }
}

/// One-shot weighted minimum-norm solve.
pub fn min_norm_solve(weights: &[f64], constraints: &[LinearConstraint]) -> Result<MinNormSolution> {
    let solver = MinNormSolver::new(
        weights,
        constraints.iter().map(|c| c.functional.clone()).collect(),
    )?;
    let targets: Vec<Complex64> = constraints.iter().map(|c| c.target).collect();
    solver.solve(&targets)
}
