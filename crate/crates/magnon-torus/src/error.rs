//! Crate-wide error type.
//!
//! Variants are grouped by how the CLI reports them: validation-type errors
//! (bad lattices, regime sign violations, caps, degenerate tori), duality
//! infeasibility, numeric failures (including the Bogoliubov stability
//! condition), and I/O.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A k-point or neighbor vector has the wrong dimension.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Lattice construction rejected (empty neighbor set, unpaired vectors,
    /// non-positive spins).
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    /// A diagonal entry of the interaction tensor has the wrong sign for the
    /// declared regime. The message names the offending entry.
    #[error("regime constraint violated: {0}")]
    RegimeViolation(String),

    /// Operation called outside its mathematical domain (e.g. comparing toric
    /// classes across regimes, or ω = 0 in the squeezing parameter).
    #[error("domain error: {0}")]
    Domain(String),

    /// Curvature requested for a torus with a collapsed circle.
    #[error("degenerate torus: {0}")]
    DegenerateTorus(String),

    /// The dual configuration cannot satisfy the target regime's sign
    /// constraints. The message names the violated constraint.
    #[error("duality infeasible: {0}")]
    Infeasible(String),

    /// Requested quantum numbers exceed the configured sector caps.
    #[error("sector cap exceeded: {0}")]
    CapExceeded(String),

    /// |Γ̃| ≥ 1: the SU(1,1) Bogoliubov diagonalization is invalid.
    #[error("Bogoliubov diagonalization invalid: {0}")]
    Unstable(String),

    /// Eigensolver non-convergence or other numeric failure.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Malformed run configuration. The message names the field.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 1 validation, 2 infeasibility,
    /// 3 numeric, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch(_)
            | Error::InvalidLattice(_)
            | Error::RegimeViolation(_)
            | Error::Domain(_)
            | Error::DegenerateTorus(_)
            | Error::CapExceeded(_)
            | Error::Config(_) => 1,
            Error::Infeasible(_) => 2,
            Error::Unstable(_) | Error::Numeric(_) => 3,
            Error::Io(_) => 4,
        }
    }
}
