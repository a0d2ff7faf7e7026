use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("job `{job}` is not on the preference list of applicant `{applicant}`")]
    JobNotOnList { applicant: String, job: String },

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The brute-force oracle refuses instances whose search space exceeds its guard.
    #[error("instance too large for exhaustive search: {size} candidates exceeds limit {limit}")]
    TooLarge { size: u128, limit: u128 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vertex {0} is not matched")]
    Unmatched(usize),
}
