use thiserror::Error;

/// Errors surfaced by the numerical kernels.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Sharp bounds were requested for a lattice whose density is not an
    /// even positive integer; only the heuristic bracket is available there.
    #[error("unsupported density: {0}")]
    UnsupportedDensity(String),

    /// An internal numerical consistency check failed (e.g. the imaginary
    /// residue of a symmetrized lattice sum did not cancel).
    #[error("numerical consistency error: {0}")]
    Numerics(String),

    /// The finite Gabor system is not a frame (singular frame matrix).
    #[error("not a frame: {0}")]
    NotAFrame(String),
}

pub type Result<T> = std::result::Result<T, Error>;
