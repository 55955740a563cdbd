//! Exact scalar arithmetic.
//!
//! Every coefficient that appears in a two-particle spin state of spin 1/2 or
//! spin 1 lives in the set `(Gaussian rational) x sqrt(d)` with `d` squarefree.
//! [`Rational`] and [`GaussianRational`] are exact field elements,
//! [`SurdScalar`] is a real `r * sqrt(d)`, and [`SurdComplex`] is a Gaussian
//! rational times a square root. None of these types ever round.

mod gaussian;
mod halfint;
mod rational;
mod surd;

pub use gaussian::GaussianRational;
pub use halfint::HalfInt;
pub use rational::{parse_rational, rational, Rational};
pub use surd::{square_free_decompose, surd_normalize, SurdComplex, SurdScalar, SurdSum};

use num_complex::Complex64;

/// Nearest double-precision approximation of an exact value.
///
/// Only used for entropy, singular values and fallback comparisons.
pub trait ToFloat {
    fn to_float(&self) -> Complex64;
}
