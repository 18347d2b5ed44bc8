//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("degree overflow: operation would exceed the truncation bound {bound} (needed {needed})")]
    DegreeOverflow { bound: usize, needed: usize },
    #[error("non-integral coefficient {value} at {key} in basis conversion")]
    NonIntegralCoefficient { key: String, value: String },
    #[error("operators have different degree shifts ({left} vs {right})")]
    ShiftMismatch { left: String, right: String },
    #[error("element is not primitive: {witness}")]
    NotPrimitive { witness: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("boundary mismatch at slice {slice}: expected word {expected}, found {found}")]
    BoundaryMismatch {
        slice: usize,
        expected: String,
        found: String,
    },
    #[error("rewrite step budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error("sheaf base of size {found} does not match map endpoint of size {expected}")]
    BaseMismatch { expected: usize, found: usize },
    #[error("2-morphism is not invertible: {witness}")]
    NotInvertible { witness: String },
    #[error("square of set maps does not commute")]
    NonCommutingSquare,
    #[error("map table entry {value} out of range for target of size {size}")]
    MapOutOfRange { value: usize, size: usize },
}
