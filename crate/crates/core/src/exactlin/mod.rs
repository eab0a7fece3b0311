//! Exact scalars over K = Q(i, sqrt 2), dense linear algebra and tensor words.

mod coeff;
pub mod matrix;
pub mod scalar;
pub mod tensor;

pub use matrix::{nullspace, rref, Matrix, Subspace, Vector};
pub use scalar::{parse_rational, rat, scalar_arith, ArithOp, Rational, Scalar};
pub use tensor::{pairing, TensorElement, Word};
