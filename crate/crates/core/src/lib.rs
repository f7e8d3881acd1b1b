//! Numerical-range analysis toolkit: boundary geometry of W(A) = {⟨Ax, x⟩},
//! analytic eigenvalue branch tracking, preimage construction, and
//! continuity classification of the set-valued inverse of the range map.

pub mod classify;
pub mod curves;
pub mod eig;
pub mod error;
pub mod gallery;
pub mod inverse;
pub mod geometry;
pub mod matrix;
pub mod prober;
pub mod sampling;
pub mod support;

pub use error::{Error, Result};
pub use matrix::{
    cartesian_part, compress, evaluate_range_map, CartesianPart, ComplexSquareMatrix, UnitVector,
    C64,
};
