//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("eigensolver did not converge (best residual {residual:.3e})")]
    NoConvergence { residual: f64 },

    #[error("basis is not orthonormal (Gram deviation {deviation:.3e})")]
    BasisNotOrthonormal { deviation: f64 },

    #[error("target lies outside the numerical range of the compression (defect {defect:.3e})")]
    NotInRange { defect: f64 },

    #[error("point lies outside the numerical range")]
    OutsideRange,

    #[error("no chord through the target produced a usable 2x2 reduction after {attempts} attempts")]
    ChordSearchFailed { attempts: u32 },

    #[error("branch continuation lost at theta = {theta:.6} (best overlap {overlap:.3})")]
    BranchLost { theta: f64, overlap: f64 },

    #[error("numerical range is degenerate (empty interior)")]
    DegenerateNumericalRange,
}

pub type Result<T> = std::result::Result<T, Error>;
