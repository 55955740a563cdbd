//! A small language for two-particle spin states.
//!
//! `1/sqrt(2) * (chi(0) x chi(1) + chi(1) x chi(0))` denotes a symmetric
//! superposition; the left tensor factor is particle 1. [`parse`] builds a
//! [`KetExpr`], [`evaluate`] turns it into an exact vector, and [`format`]
//! renders a vector back into the same syntax.

mod eval;
mod format;
mod lexer;
mod parser;

pub use eval::{evaluate, evaluate_str, EvalContext};
pub use format::format;
pub use lexer::SyntaxError;
pub use parser::{parse, KetExpr, MAX_DEPTH, MAX_INPUT_BYTES, MAX_NESTING};
