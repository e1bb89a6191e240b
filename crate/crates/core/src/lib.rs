//! Exact computations with Lie superalgebras, their enveloping algebras and
//! symmetric pairs, centred on the pair `(gl(1|2), osp(1|2))` and its
//! algebra of spherical functions.
//!
//! All arithmetic is over the rationals, and every result is exact.

pub mod enveloping;
pub mod error;
pub mod expr;
pub mod gl12;
pub mod lie;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod sequences;
pub mod suites;
pub mod symmetrization;

pub use error::{Error, Result};
pub use scalar::{Parity, Scalar};
