//! Exact computations around big projective modules in category O.
//!
//! Root systems and Weyl groups, characters and Kazhdan–Lusztig polynomials,
//! PBW arithmetic in U(g), truncated weight modules, the two regular actions
//! on the big cell, Whittaker realizations, matrix-element functionals in
//! U(g)*, and block structure of the small quantum group u_q(sl2).

pub mod algebra;
pub mod bigcell;
pub mod cat_o;
pub mod characters;
pub mod cyclotomic;
pub mod enveloping;
pub mod hecke;
pub mod kl;
pub mod linalg;
pub mod matrixel;
pub mod rootsys;
pub mod scalar;
pub mod uqsl2;
pub mod verify;
pub mod whittaker;

pub use cyclotomic::{Cyclo, CycloField};
pub use linalg::{Matrix, Subspace};
pub use scalar::Scalar;

/// Default exact scalar.
pub type Q = num_rational::BigRational;
/// Scalars for u_q(sl2) at an odd root of unity.
pub type QZeta = Cyclo;
