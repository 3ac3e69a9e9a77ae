//! Exact classification machinery for finite-order automorphisms and real forms
//! of twisted loop algebras and affine Kac-Moody algebras.

pub mod aut;
pub mod cyclo;
pub mod error;
pub mod lie;
pub mod loop_aut;
pub mod loops;
pub mod rat;
pub mod real_forms;
pub mod tables;
pub mod verify;

pub use cyclo::{CycloMatrix, CycloScalar};
pub use error::{Error, Result};
pub use rat::Rat;
