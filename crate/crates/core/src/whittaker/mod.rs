//! Whittaker vectors, the Whittaker equation on the big cell, and the
//! realization of big projective modules by Whittaker functions.

pub mod borel_weil;
pub mod realized;
pub mod space;

pub use borel_weil::{borel_weil_block, double_whittaker_dim, soergel_dim_check, BorelWeil, BorelWeilReport, SoergelRow};
pub use realized::{exp_simple, tau, RealizedAction};
pub use space::{whittaker_space, CompletedVector, WhittakerCharacter, WhittakerError};
