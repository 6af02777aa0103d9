//! Quadrature oracle, text formats, verification suite and command-line
//! plumbing around `modelspace-core`.

// `!(x < y)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod quadrature;
pub mod rows;
pub mod sigma;
pub mod verify;

pub use error::LabError;
