//! Category O at desk scale: truncated weight modules, morphisms, singular
//! vectors, socle and radical series.

pub mod construct;
pub mod hom;
pub mod loewy;
pub mod module;
pub mod sl2;

pub use hom::{hom_space, hom_truncated, CatOError, ModuleMap};
pub use module::{FactorBox, Gen, Sub, WeightModule};
