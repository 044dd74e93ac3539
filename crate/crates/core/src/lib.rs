//! Exact and certified-numeric verification of fixed-locus censuses for
//! involutions of hyperkähler fourfolds.
//!
//! Everything algebraic is generic over [`scalar::Field`]; the aliases below
//! fix the scalar to exact rationals or to `f64` complex numbers.

pub mod census;
pub mod cli;
pub mod epw;
pub mod error;
pub mod exalg;
pub mod grassmann;
pub mod lefschetz;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};

/// Exact rationals.
pub type Q = num::rational::BigRational;
pub type C64 = num::Complex<f64>;

pub type MultiVectorQ = exalg::MultiVector<Q>;
pub type SubspaceQ = exalg::Subspace<Q>;
pub type LinearMapQ = exalg::LinearMap<Q>;
pub type MatrixQ = linalg::Matrix<Q>;
pub type GradedClassQ = lefschetz::GradedClass<Q>;
pub type MatrixC = linalg::Matrix<C64>;
