//! Drazin and group inverses, Peirce corner matrices and generalized Schur
//! complements of 2x2 block matrices, over exact rationals or `f64`.

pub mod batch;
pub mod block;
pub mod error;
pub mod generator;
pub mod geninv;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod scalar;
pub mod selftest;
pub mod theorems;
pub mod worked_example;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{Rational, Scalar, ScalarMode};
