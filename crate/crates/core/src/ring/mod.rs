//! Exact sparse arithmetic for weighted-graded truncated polynomials and
//! for q-series over arbitrary coefficient domains.

pub mod coeff;
pub mod poly;
pub mod qseries;
pub mod serialize;
pub mod univar;

pub use coeff::{rat, rint, Coeff, FieldCoeff, GaussRat};
pub use poly::{GenTable, GradedPoly};
pub use qseries::QSeries;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("incompatible rings")]
    IncompatibleRings,
    #[error("nonzero constant term")]
    NonzeroConstantTerm,
    #[error("constant term is not one")]
    ConstantTermNotOne,
    #[error("not invertible")]
    NotInvertible,
    #[error("not divisible by generator {generator}")]
    NotDivisible { generator: String },
    #[error("parse error: {detail}")]
    Parse { detail: String },
}
