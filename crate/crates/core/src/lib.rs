//! Exact-arithmetic computer algebra for the self-dual Hopf algebra of
//! symmetric functions, the associated Heisenberg double acting on its own
//! underlying space, a planar diagram calculus with cups, caps and crossings,
//! and a finite-set sheaf model for mates, Beck-Chevalley squares and
//! commutative cubes.
//!
//! All coefficient arithmetic is exact: arbitrary-precision integers for
//! algebra elements and exact rationals for the matrix computations.  The
//! container types ([`lincomb::LinComb`], [`matrix::Mat`]) are generic over
//! the scalar via [`scalar::Scalar`]; the concrete instantiations used by the
//! domain modules are the crate-root aliases [`Int`] and [`Rat`].

pub mod diagcat;
pub mod error;
pub mod finset2cat;
pub mod heisenberg;
pub mod lincomb;
pub mod matrix;
pub mod partitions;
pub mod report;
pub mod scalar;
pub mod symfunc;
pub mod verify;

/// Exact integer scalar used for algebra coefficients.
pub type Int = num_bigint::BigInt;

/// Exact rational scalar used for matrix computations.
pub type Rat = num_rational::BigRational;

pub use partitions::Partition;
pub use symfunc::{Basis, SymFunc, TensorElem};
