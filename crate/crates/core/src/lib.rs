//! Exact computations on rational ruled surfaces in P3.
//!
//! A surface of degree d is a map from P1 to the Grassmannian of lines, given by six
//! binary forms of degree d in Plücker coordinates. The crate computes its abstract
//! singular locus, a plane curve of degree d - 2 in P(S_2), in two independent ways,
//! along with splitting types, rank strata, stability, Poncelet factorizations and
//! degree formulas.

pub mod acceptance;
pub mod birational;
pub mod degrees;
pub mod doc;
pub mod error;
pub mod field;
pub mod forms;
pub mod generate;
pub mod grassmann;
pub mod locus;
pub mod matrix;
pub mod poly;
pub mod poncelet;
pub mod report;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use forms::{BiForm, BinaryForm, P1Point, PlaneCurve};
pub use matrix::Matrix;
