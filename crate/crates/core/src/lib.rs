//! Exact coupling of two angular momenta.
//!
//! The crate builds single-particle spin matrices, total-spin operators on
//! the two-particle tensor product, and the coupled `|S, mu>` basis, all in
//! exact arithmetic over `Q(i)` extended by square roots. Clebsch-Gordan
//! coefficients are computed independently from the closed-form sum, and
//! states are classified by exchange parity and Schmidt rank.

pub mod catalog;
pub mod cli;
pub mod coupling;
pub mod entangle;
pub mod error;
pub mod exactnum;
pub mod floatmat;
pub mod ketlang;
pub mod linalg;
pub mod spinops;

pub use error::{Error, Result};
