//! A linear-algebra model of sheaves on finite sets.
//!
//! Sheaves on a finite set are tuples of vector spaces, one per point, and
//! maps of finite sets induce a pullback/pushforward adjoint triple between
//! the sheaf categories.  This module implements formal composites of those
//! functors, natural transformations between them with exact rational
//! coefficients, the mate correspondence for commuting squares, the
//! Beck-Chevalley invertibility test, and coherence checks for cubes of
//! finite sets up to dimension four.

mod base;
mod cube;
mod functor;
mod nat;

pub use base::{pullback, pushforward, FinMap, FinSet, SheafObj};
pub use cube::{
    cube_front_completion, cube_hexagon_check, cube_mate_check, gray_four_cube_check,
    random_cartesian_cube, CubeDirection, CubeFaces, CubeOfSets, FourCube,
};
pub use functor::{FunctorWord, Step};
pub use nat::{
    bc_check, eps_l, eps_r, eta_l, eta_r, left_mate, right_mate, BlockNat, SquareOfSets,
};
