//! The dual algebra U(g)*: matrix-element functionals and their products.

pub mod block;
pub mod elements;
pub mod functional;
pub mod generated;

pub use elements::{matrix_element, matrix_elements_between, MatrixelError};
pub use functional::{Functional, PbwDomain};
pub use block::{
    block_space, endo_algebra_sl2, kernel_vs_ideal_sl2, koszul_tensor_check_sl2, loewy_filtration_sl2, BlockError,
    MatrixElementSpace,
};
pub use generated::{functional_generated_module, GeneratedModule};
