use thiserror::Error;

use crate::euler::StateError;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown case `{name}` (known: {known})")]
    UnknownCase { name: String, known: String },

    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("singular tridiagonal system: zero pivot in row {row}")]
    SingularSystem { row: usize },

    #[error("invalid state at {location} (t = {time}): {source}")]
    InvalidState {
        location: Location,
        time: f64,
        #[source]
        source: StateError,
    },

    #[error("exact Riemann problem generates vacuum (pressure positivity gap {gap})")]
    Vacuum { gap: f64 },

    #[error("Newton iteration for the star pressure did not converge (residual {residual})")]
    NoConvergence { residual: f64 },

    #[error("non-finite value at {location} (t = {time})")]
    NonFinite { location: Location, time: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl SolverError {
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            SolverError::InvalidState { .. }
                | SolverError::NonFinite { .. }
                | SolverError::SingularSystem { .. }
                | SolverError::Vacuum { .. }
                | SolverError::NoConvergence { .. }
        )
    }
}

/// Where in the mesh a failure was detected.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Location {
    Cell { i: isize, j: isize },
    Interface { axis: Axis, i: isize, j: isize },
    Unknown,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Location::Cell { i, j } => write!(f, "cell ({i}, {j})"),
            Location::Interface { axis, i, j } => {
                write!(f, "{axis:?}-interface before cell ({i}, {j})")
            }
            Location::Unknown => write!(f, "unknown location"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}
