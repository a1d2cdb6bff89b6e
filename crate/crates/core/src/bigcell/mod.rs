//! Functions on the big cell N₋TN₊ as polynomials, with the two regular
//! actions realized by first-order differential operators.

pub mod action;
pub mod blocks;
pub mod diffop;
pub mod poly;
pub mod structure;
pub mod theta;

pub use action::{check_relations, BigCell, Side};
pub use diffop::{Deriv, DiffOp};
pub use poly::{PMono, Poly};
pub use structure::{structure_polynomials, BigCellError, StructureTables};
