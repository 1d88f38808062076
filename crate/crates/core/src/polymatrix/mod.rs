//! Polynomial and rational matrices, determinants, generic rank and the
//! Smith canonical form.

mod matrix;
mod ratmatrix;
mod smith;

pub use matrix::PolyMatrix;
pub use ratmatrix::{invert_ratmatrix, is_proper, RatMatrix};
pub use smith::{smith_form, SmithDecomposition};
