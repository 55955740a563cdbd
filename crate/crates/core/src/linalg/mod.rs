//! Exact vectors and matrices over the Gaussian rationals, each carrying a
//! single real surd prefactor, plus fraction-free elimination.

mod elimination;
mod matrix;
mod vector;

pub use elimination::{echelon_form, nullspace, rank, Echelon};
pub use matrix::ExactMatrix;
pub use vector::ExactVector;

use crate::error::Error;

pub(crate) fn dim_error(expected: impl ToString, found: impl ToString) -> Error {
    Error::IncompatibleDimensions {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
