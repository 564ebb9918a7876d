//! Exact linear algebra over Q and Q(i), and integer Smith normal form.

pub mod matrix;
pub mod scalar;
pub mod snf;
pub mod sparse;

pub use matrix::{dot, AffineSolution, Matrix, Rref};
pub use scalar::{Field, FieldTag, Gaussian, ParseScalarError, Rational, Scalar};
pub use snf::{int_identity, int_matrix, int_mul, smith_normal_form, smith_normal_form_certified, IntMatrix, SnfCertificate, SnfResult};
pub use sparse::{sparse_smith, SparseIntMatrix};
