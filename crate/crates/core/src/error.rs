use thiserror::Error;

/// Errors produced by grid construction, field operations, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("field is in the {found:?} domain, expected {expected:?}")]
    DomainMismatch {
        expected: crate::field::Domain,
        found: crate::field::Domain,
    },

    #[error("grids do not match: {0}")]
    GridMismatch(String),

    #[error("expected a real-valued field (max |Im| = {0:.3e})")]
    NonRealInput(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("bad magic: expected \"BBF1\"")]
    BadMagic,

    #[error("unsupported format version {0}")]
    BadVersion(u32),

    #[error("truncated payload: expected {expected} bytes, got {found}")]
    Truncated { expected: u64, found: u64 },

    #[error("zero field cannot be normalized")]
    ZeroField,

    #[error("wave function must carry a compact analytic source: {0}")]
    NonCompactInput(String),

    #[error("wave function must be normalized (norm = {0:.6e})")]
    Unnormalized(f64),

    #[error("region exterior contains no lattice sites")]
    EmptyExterior,

    #[error("infeasible moment constraints: {0}")]
    InfeasibleConstraints(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
