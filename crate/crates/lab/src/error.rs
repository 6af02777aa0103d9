use modelspace_core::Error as CoreError;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_INVARIANT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CERTIFICATION: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("quadrature: {0}")]
    Quadrature(String),
    #[error("invariant failed: {0}")]
    Invariant(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl LabError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> u8 {
        match self {
            LabError::Usage(_) => EXIT_USAGE,
            LabError::Core(e) => match e {
                CoreError::TruncationTooSmall { .. }
                | CoreError::TruncationTooLarge(_)
                | CoreError::NoConvergence { .. }
                | CoreError::IllConditioned(_)
                | CoreError::NotPositiveDefinite => EXIT_CERTIFICATION,
                _ => EXIT_USAGE,
            },
            LabError::Quadrature(_) => EXIT_CERTIFICATION,
            LabError::Invariant(_) => EXIT_INVARIANT,
            LabError::Io(_) | LabError::Csv(_) | LabError::Json(_) => EXIT_INVARIANT,
        }
    }
}

pub fn usage(msg: impl Into<String>) -> LabError {
    LabError::Usage(msg.into())
}
