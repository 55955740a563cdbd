//! Reference two-particle states written in ketlang.
//!
//! Labels `S1`..`S6` and `A1`..`A3` name the nine corrected two-photon
//! states (five S=2, one S=0, three S=1). The trial list holds the first
//! guesses at the same nine states, two of which are not eigenstates.

use crate::error::Result;
use crate::exactnum::HalfInt;
use crate::ketlang::{evaluate_str, EvalContext};
use crate::linalg::ExactVector;

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub label: &'static str,
    twice_spin: i64,
    twice_mu: i64,
    pub text: &'static str,
    /// Whether the state is a true `(S, mu)` eigenstate.
    pub is_eigenstate: bool,
    electron: bool,
}

impl CatalogEntry {
    const fn photon(label: &'static str, spin: i64, mu: i64, text: &'static str) -> Self {
        Self { label, twice_spin: 2 * spin, twice_mu: 2 * mu, text, is_eigenstate: true, electron: false }
    }

    const fn failing(self) -> Self {
        Self { is_eigenstate: false, ..self }
    }

    const fn electron(label: &'static str, spin: i64, text: &'static str) -> Self {
        Self { label, twice_spin: 2 * spin, twice_mu: 0, text, is_eigenstate: true, electron: true }
    }

    pub fn spin(&self) -> HalfInt {
        HalfInt::from_twice(self.twice_spin)
    }

    pub fn mu(&self) -> HalfInt {
        HalfInt::from_twice(self.twice_mu)
    }

    pub fn context(&self) -> EvalContext {
        if self.electron {
            EvalContext::two_electron()
        } else {
            EvalContext::two_photon()
        }
    }

    /// The exact vector in the `m` basis.
    pub fn evaluate(&self) -> Result<ExactVector> {
        evaluate_str(self.text, &self.context())
    }
}

const S1: &str = "chi(1) x chi(1)";
const S2: &str = "1/sqrt(2) * (chi(0) x chi(1) + chi(1) x chi(0))";
const S4: &str = "1/sqrt(2) * (chi(0) x chi(-1) + chi(-1) x chi(0))";
const S5: &str = "chi(-1) x chi(-1)";
const A1: &str = "1/sqrt(2) * (chi(0) x chi(1) - chi(1) x chi(0))";
const A2: &str = "1/sqrt(2) * (chi(1) x chi(-1) - chi(-1) x chi(1))";
const A3: &str = "1/sqrt(2) * (chi(0) x chi(-1) - chi(-1) x chi(0))";

/// The nine corrected two-photon states.
pub const CORRECTED: [CatalogEntry; 9] = [
    CatalogEntry::photon("S1", 2, 2, S1),
    CatalogEntry::photon("S2", 2, 1, S2),
    CatalogEntry::photon(
        "S3",
        2,
        0,
        "2/sqrt(6) * chi(0) x chi(0) + 1/sqrt(6) * (chi(1) x chi(-1) + chi(-1) x chi(1))",
    ),
    CatalogEntry::photon("S4", 2, -1, S4),
    CatalogEntry::photon("S5", 2, -2, S5),
    CatalogEntry::photon(
        "S6",
        0,
        0,
        "1/sqrt(3) * chi(0) x chi(0) - 1/sqrt(3) * (chi(1) x chi(-1) + chi(-1) x chi(1))",
    ),
    CatalogEntry::photon("A1", 1, 1, A1),
    CatalogEntry::photon("A2", 1, 0, A2),
    CatalogEntry::photon("A3", 1, -1, A3),
];

/// The first-guess states; `S3` and `S6` fail their eigen-equations.
pub const TRIALS: [CatalogEntry; 9] = [
    CatalogEntry::photon("S1", 2, 2, S1),
    CatalogEntry::photon("S2", 2, 1, S2),
    CatalogEntry::photon("S3", 2, 0, "1/sqrt(2) * (chi(1) x chi(-1) + chi(-1) x chi(1))").failing(),
    CatalogEntry::photon("S4", 2, -1, S4),
    CatalogEntry::photon("S5", 2, -2, S5),
    CatalogEntry::photon("S6", 0, 0, "chi(0) x chi(0)").failing(),
    CatalogEntry::photon("A1", 1, 1, A1),
    CatalogEntry::photon("A2", 1, 0, A2),
    CatalogEntry::photon("A3", 1, -1, A3),
];

/// Triplet `mu = 0` and singlet states of two spin-1/2 particles.
pub const ELECTRON: [CatalogEntry; 2] = [
    CatalogEntry::electron("triplet", 1, "1/sqrt(2) * (chi(1/2) x chi(-1/2) + chi(-1/2) x chi(1/2))"),
    CatalogEntry::electron("singlet", 0, "1/sqrt(2) * (chi(1/2) x chi(-1/2) - chi(-1/2) x chi(1/2))"),
];

/// Looks up a corrected two-photon state by label (case-insensitive).
pub fn corrected(label: &str) -> Option<&'static CatalogEntry> {
    CORRECTED.iter().find(|e| e.label.eq_ignore_ascii_case(label))
}
