use thiserror::Error;

/// Errors raised by the numerics and physics layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M[i][j] - conj(M[j][i])| = {max_asymmetry:e})")]
    NonHermitian { max_asymmetry: f64 },

    #[error("non-finite value in state at t = {time}")]
    NonFinite { time: f64 },

    #[error("invalid time grid: {0}")]
    InvalidTimeGrid(String),

    #[error("norm drifted by {drift:e} at t = {time}; reduce dt")]
    NormDrift { time: f64, drift: f64 },

    #[error("trace drifted by {drift:e} at t = {time}")]
    TraceDrift { time: f64, drift: f64 },

    #[error("density matrix lost positivity at t = {time} (min eigenvalue {min_eigenvalue:e})")]
    NegativeEigenvalue { time: f64, min_eigenvalue: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("initial state is not the dark state of the starting fields (overlap {overlap})")]
    NotDark { overlap: f64 },

    #[error("operator is not unitary (|U^dag U - I| = {deviation:e})")]
    NonUnitary { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("no dark state exists for the requested fields")]
    NoDarkState,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
