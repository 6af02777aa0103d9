use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("point {re}{im:+}i is not in the open unit disc (|z| = {modulus})")]
    OutsideDisc { re: f64, im: f64, modulus: f64 },

    #[error("evaluation point has modulus {0} > 1")]
    OutsideClosedDisc(f64),

    #[error("evaluation point is a pole of the Blaschke factor")]
    BlaschkePole,

    #[error("series coefficient at index {0} is not finite")]
    NonFinite(usize),

    #[error("series must keep at least one coefficient")]
    EmptySeries,

    #[error("pole configuration must contain at least one point")]
    EmptyConfiguration,

    #[error(
        "truncation N = {trunc} cannot certify the basis: tail bound {tail:e} exceeds {tolerance:e}"
    )]
    TruncationTooSmall { trunc: usize, tail: f64, tolerance: f64 },

    #[error("no admissible truncation below {0} coefficients")]
    TruncationTooLarge(usize),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("ill-conditioned system: condition estimate {0:e}")]
    IllConditioned(f64),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn outside_disc(z: crate::Complex64) -> Self {
        Error::OutsideDisc {
            re: z.re,
            im: z.im,
            modulus: z.norm(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
