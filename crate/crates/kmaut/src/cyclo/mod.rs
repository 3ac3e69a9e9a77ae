//! Exact arithmetic in cyclotomic fields and dense linear algebra over them.

pub mod field;
pub mod matrix;
pub mod scalar;
pub mod span;

pub use matrix::{imaginary_spectrum, CycloMatrix, ImaginaryDiagonalization};
pub use scalar::{solve_rational, CycloScalar};
pub use span::SpanBuilder;
