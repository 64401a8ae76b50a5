//! Error type shared across the crate.

use thiserror::Error;

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    /// A matrix that must be square (and, for phase-space objects, of even
    /// dimension 2N) has the wrong shape.
    #[error("bad matrix shape {rows}x{cols}: {reason}")]
    Shape {
        rows: usize,
        cols: usize,
        reason: &'static str,
    },

    /// A vector argument has the wrong length.
    #[error("vector has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },

    /// An entry that must be finite is NaN or infinite.
    #[error("non-finite entry encountered in {0}")]
    NonFinite(&'static str),

    /// A matrix that must be symmetric is not, beyond tolerance.
    #[error("matrix is not symmetric (max |Γ - Γᵀ| entry = {0:.3e})")]
    NotSymmetric(f64),

    /// A covariance matrix violates the uncertainty relation Γ + iσ ⪰ 0.
    #[error("covariance matrix violates Γ + iσ ⪰ 0 (min eigenvalue {0:.3e})")]
    Uncertainty(f64),

    /// A matrix that must be positive definite is not.
    #[error("matrix is not positive definite (min eigenvalue {0:.3e})")]
    NotPositiveDefinite(f64),

    /// A matrix that should preserve the symplectic form does not.
    #[error("matrix is not symplectic (max |SσSᵀ - σ| entry = {0:.3e})")]
    NotSymplectic(f64),

    /// A mode index is out of range.
    #[error("mode index {index} out of range for {n_modes} modes")]
    ModeIndex { index: usize, n_modes: usize },

    /// A bipartition is malformed (empty side, duplicate or out-of-range modes).
    #[error("invalid bipartition: {0}")]
    Partition(String),

    /// The requested total Fock dimension exceeds the configured cap.
    #[error("total Fock dimension {requested} exceeds the cap of {cap} (set CVX_MAX_DIM to raise it)")]
    Capacity { requested: usize, cap: usize },

    /// Data fed to a state constructor does not describe a density operator.
    #[error("not a valid state: {0}")]
    NotAState(String),

    /// Truncated-basis populations have leaked into the top Fock level, so
    /// moment extraction would be unreliable.
    #[error("top-level leakage {leakage:.3e} exceeds the budget {budget:.3e}; enlarge the local dimensions")]
    Leakage { leakage: f64, budget: f64 },

    /// A phase-space argument lies outside the reliable window of the
    /// truncated characteristic function.
    #[error("|ξ| component {value:.4} on mode {mode} exceeds the reliable radius {max:.4} for local dimension {dim}")]
    XiOutOfRange {
        mode: usize,
        value: f64,
        max: f64,
        dim: usize,
    },

    /// Two operators that must share a mode layout do not.
    #[error("dimension lists differ: {0:?} vs {1:?}")]
    DimsMismatch(Vec<usize>, Vec<usize>),

    /// Embedding must not shrink any local dimension.
    #[error("embedding would shrink mode {mode}: {from} -> {to}")]
    EmbedShrink { mode: usize, from: usize, to: usize },

    /// A Hadamard-network order that is not a power of two, or exceeds the cap.
    #[error("unsupported network order: {0}")]
    NetworkOrder(String),

    /// A row index into a Hadamard matrix is out of range.
    #[error("row index {row} out of range for order {n}")]
    RowIndex { row: usize, n: usize },

    /// A channel's (X, Y) pair fails the complete-positivity certificate.
    #[error("channel fails complete positivity: min eig(Y + i(σ - XσXᵀ)) = {0:.3e}")]
    NotCompletelyPositive(f64),

    /// An encoding exceeds its mean-energy budget.
    #[error("energy constraint violated: mean energy {energy:.6} exceeds κ = {kappa:.6}")]
    EnergyBudget { energy: f64, kappa: f64 },

    /// A parameter is outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A limiting parameter value at which the requested quantity degenerates.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Malformed JSON, or JSON that does not match any supported schema.
    #[error("parse error in {path}: {detail}")]
    Parse { path: String, detail: String },

    /// Filesystem failure while reading inputs or writing reports.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Attach a path to a raw `io::Error`.
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attach a path and detail message for schema/JSON failures.
    pub fn parse(path: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            detail: detail.into(),
        }
    }
}
