use thiserror::Error;

/// Errors raised by state validation and the discord pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not X-shaped: entry ({row},{col}) has modulus {modulus:e}")]
    NotXShaped { row: usize, col: usize, modulus: f64 },

    #[error("matrix is not Hermitian: entry ({row},{col}) deviates by {deviation:e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("state is not positive semidefinite: {0}")]
    NotPositive(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("measurement branch {branch} has zero probability")]
    DegenerateBranch { branch: Branch },
}

/// Outcome label of a two-outcome weak measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Branch::Plus => f.write_str("+x"),
            Branch::Minus => f.write_str("-x"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
