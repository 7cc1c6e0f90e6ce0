//! Exact scalars and exact linear algebra.
//!
//! Everything downstream works over [`Rational`] or over a cyclotomic field
//! `ℚ(ζ_m)`. Both are exposed through the [`Field`] trait so that kernels,
//! eigenspaces and structure constants can be computed with one code path.

mod cyclotomic;
mod field;
pub mod json;
mod linalg;
mod matrix;
mod rational;

pub use cyclotomic::{
    cyclotomic_polynomial, euler_phi, zeta_power, CycOp, Cyclotomic, CyclotomicField,
};
pub use field::{Field, RationalField};
pub use linalg::{inverse, kernel, rank, row_reduce, solve, span_basis, Echelon};
pub use matrix::RatMatrix;
pub use rational::{
    common_denominator, int, is_integer, is_zero_vec, ivec, rat, rat_to_string, vadd,
    vec_to_string, vneg, vscale, vsub, zero_vec, RatVector, Rational,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("incompatible cyclotomic fields: order {left} vs order {right}")]
    IncompatibleFields { left: u64, right: u64 },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
}
