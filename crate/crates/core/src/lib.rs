//! Exact Bernstein-type constants on finite-dimensional model spaces and
//! constrained Nevanlinna–Pick interpolation constants in the Dirichlet space.
//!
//! Everything here is pure numerics over truncated Taylor series with complex
//! double-precision coefficients: no IO, no global state, and no `std`
//! (only `alloc`). The companion `modelspace-lab` crate adds the quadrature
//! oracle, file formats and the command line.
//!
//! Module map:
//!
//! * [`series`]: truncated Taylor series, coefficient norms, composition with a
//!   single Blaschke factor.
//! * [`truncation`]: the default truncation policy and tail estimates.
//! * [`blaschke`]: pole configurations, Blaschke products, Malmquist bases and
//!   the orthogonal projection onto a model space.
//! * [`hermitian`]: dense Hermitian eigenproblems and weighted minimum-norm
//!   solves.
//! * [`bernstein`]: per-configuration Bernstein constants, bound envelopes and
//!   proof-level audits.
//! * [`interp`]: constrained interpolation constants and their bounds.
#![no_std]
#![forbid(unsafe_code)]
// `!(x < y)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bernstein;
pub mod blaschke;
mod error;
pub mod hermitian;
pub mod interp;
pub mod series;
pub mod truncation;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use bernstein::{BernsteinResult, BoundEnvelope, EnvelopeKind};
pub use blaschke::{MalmquistBasis, PoleConfiguration};
pub use hermitian::{Eigenpair, HermitianMatrix};
pub use interp::InterpResult;
pub use series::{NormKind, TaylorSeries};
