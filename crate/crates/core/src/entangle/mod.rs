//! Exchange symmetry and bipartite entanglement of two-particle states.
//!
//! A pure state is entangled when its Schmidt rank, the rank of its
//! `d1 x d2` coefficient matrix, is at least two. The rank is computed
//! exactly; the Schmidt coefficients come from a small Jacobi SVD, or from
//! exact row/column norms when the coefficient matrix allows it.
//! Entropies are in nats.

pub mod svd;

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::catalog;
use crate::coupling::{expand_in_coupled_basis, Expansion, ProductSpace};
use crate::error::{Error, Result};
use crate::exactnum::{GaussianRational, HalfInt, Rational, SurdScalar};
use crate::linalg::{dim_error, ExactMatrix, ExactVector};

/// Reshapes a composite vector into its `d1 x d2` coefficient matrix; the
/// vector's prefactor becomes the matrix prefactor.
pub fn coefficient_matrix(v: &ExactVector, d1: usize, d2: usize) -> Result<ExactMatrix> {
    if v.dim() != d1 * d2 {
        return Err(dim_error(d1 * d2, v.dim()));
    }
    ExactMatrix::new(d1, d2, v.components().to_vec(), v.prefactor().clone())
}

/// Exact Schmidt rank over the bipartition (particle 1 | particle 2).
pub fn schmidt_rank(v: &ExactVector, d1: usize, d2: usize) -> Result<usize> {
    let m = coefficient_matrix(v, d1, d2)?;
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(m.rank())
}

#[derive(Clone, Debug, Serialize)]
pub struct SchmidtAnalysis {
    pub rank: usize,
    /// The `rank` nonzero Schmidt coefficients, descending.
    pub schmidt_coefficients: Vec<f64>,
    /// Exact coefficients when the coefficient matrix has mutually
    /// orthogonal rows or columns.
    #[serde(serialize_with = "serialize_exact")]
    pub exact_coefficients: Option<Vec<SurdScalar>>,
    pub entropy_nats: f64,
    pub is_product: bool,
}

fn serialize_exact<S: serde::Serializer>(v: &Option<Vec<SurdScalar>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(xs) => s.collect_seq(xs.iter().map(ToString::to_string)),
    }
}

fn pairwise_orthogonal(vectors: &[Vec<GaussianRational>]) -> bool {
    vectors.iter().enumerate().all(|(i, a)| {
        vectors[i + 1..].iter().all(|b| {
            a.iter().zip(b).fold(GaussianRational::zero(), |acc, (x, y)| acc + x.conj() * y).is_zero()
        })
    })
}

/// Singular values as exact surds, available when the rows (or columns)
/// of the raw coefficient matrix are mutually orthogonal.
fn exact_singular_values(m: &ExactMatrix) -> Option<Vec<SurdScalar>> {
    let rows = m.row_vectors();
    let cols: Vec<Vec<GaussianRational>> = (0..m.cols()).map(|c| m.column(c).components().to_vec()).collect();
    let lines = if pairwise_orthogonal(&rows) {
        rows
    } else if pairwise_orthogonal(&cols) {
        cols
    } else {
        return None;
    };
    let scale = m.prefactor().square();
    let mut values: Vec<SurdScalar> = lines
        .iter()
        .map(|l| l.iter().fold(Rational::zero(), |acc, x| acc + x.norm_sqr()))
        .filter(|n| !n.is_zero())
        .map(|n| SurdScalar::sqrt(n * &scale).expect("non-negative"))
        .collect();
    values.sort_by(|a, b| b.cmp(a));
    Some(values)
}

/// Schmidt rank, coefficients and entanglement entropy of a normalized
/// bipartite state.
pub fn schmidt_analyze(v: &ExactVector, d1: usize, d2: usize) -> Result<SchmidtAnalysis> {
    let rank = schmidt_rank(v, d1, d2)?;
    if !v.is_normalized() {
        return Err(Error::Precondition("Schmidt analysis needs a normalized state".into()));
    }
    let m = coefficient_matrix(v, d1, d2)?;
    let exact = exact_singular_values(&m);
    let schmidt_coefficients: Vec<f64> = match &exact {
        Some(values) => values.iter().map(SurdScalar::to_f64).collect(),
        None => {
            let mut sv = svd::singular_values(&m.to_complex());
            sv.truncate(rank);
            sv
        }
    };
    let entropy_nats = if rank == 1 {
        0.0
    } else {
        schmidt_coefficients
            .iter()
            .map(|s| s * s)
            .filter(|p| *p > 0.0)
            .map(|p| -p * p.ln())
            .sum::<f64>()
            .max(0.0)
    };
    Ok(SchmidtAnalysis { rank, schmidt_coefficients, exact_coefficients: exact, entropy_nats, is_product: rank == 1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Symmetric,
    Antisymmetric,
    Neither,
}

impl Parity {
    /// `+1`, `-1`, or `None` for a state of no definite parity.
    pub fn sign(self) -> Option<i8> {
        match self {
            Parity::Symmetric => Some(1),
            Parity::Antisymmetric => Some(-1),
            Parity::Neither => None,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Symmetric => "+1",
            Parity::Antisymmetric => "-1",
            Parity::Neither => "neither",
        })
    }
}

/// The particle exchange `|k1> (x) |k2> -> |k2> (x) |k1>` on `d^2` dimensions.
pub fn swap_matrix(d: usize) -> ExactMatrix {
    let n = d * d;
    let mut rows = vec![vec![GaussianRational::zero(); n]; n];
    for k1 in 0..d {
        for k2 in 0..d {
            rows[k2 * d + k1][k1 * d + k2] = GaussianRational::one();
        }
    }
    ExactMatrix::from_rows(rows).expect("square")
}

pub fn exchange_parity(v: &ExactVector, d: usize) -> Result<Parity> {
    if v.dim() != d * d {
        return Err(Error::NonSquareComposite(v.dim(), d));
    }
    let swapped = swap_matrix(d).apply(v)?;
    Ok(if &swapped == v {
        Parity::Symmetric
    } else if swapped == v.neg() {
        Parity::Antisymmetric
    } else {
        Parity::Neither
    })
}

/// One row of the symmetry/entanglement table for the nine two-photon states.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationRow {
    pub label: &'static str,
    pub spin: HalfInt,
    pub mu: HalfInt,
    pub exchange_parity: Parity,
    pub schmidt_rank: usize,
    pub is_product: bool,
    pub entropy_nats: f64,
}

pub fn classify_paper_states() -> Result<Vec<ClassificationRow>> {
    catalog::CORRECTED
        .iter()
        .map(|entry| {
            let v = entry.evaluate()?;
            let analysis = schmidt_analyze(&v, 3, 3)?;
            Ok(ClassificationRow {
                label: entry.label,
                spin: entry.spin(),
                mu: entry.mu(),
                exchange_parity: exchange_parity(&v, 3)?,
                schmidt_rank: analysis.rank,
                is_product: analysis.is_product,
                entropy_nats: analysis.entropy_nats,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Polarization {
    H,
    V,
}

/// A linear polarization in the Cartesian photon space: `H` along x and `V`
/// along y.
#[derive(Clone, Debug)]
pub struct PolarizationState {
    pub label: Polarization,
    pub vector: ExactVector,
}

impl PolarizationState {
    pub fn new(label: Polarization) -> Self {
        let vector = match label {
            Polarization::H => ExactVector::basis(3, 0),
            Polarization::V => ExactVector::basis(3, 1),
        };
        Self { label, vector }
    }
}

/// Names of the four polarization Bell states.
pub const BELL_LABELS: [&str; 4] = ["HH+VV", "HH-VV", "HV+VH", "HV-VH"];

/// A polarization Bell state analysed inside the full two-photon space.
#[derive(Clone, Debug)]
pub struct BellState {
    pub label: &'static str,
    /// Cartesian (x) Cartesian coordinates.
    pub cartesian: ExactVector,
    /// The same state in `m (x) m` coordinates.
    pub helicity: ExactVector,
    pub schmidt_rank: usize,
    pub exchange_parity: Parity,
    pub expansion: Vec<Expansion>,
}

/// Builds one of [`BELL_LABELS`], e.g. `"HH+VV"` for `(HH + VV)/sqrt(2)`.
pub fn bell_state(label: &str) -> Result<BellState> {
    let label = BELL_LABELS
        .iter()
        .copied()
        .find(|l| l.eq_ignore_ascii_case(label))
        .ok_or_else(|| Error::Domain(format!("unknown Bell state {label:?}; expected one of {}", BELL_LABELS.join(", "))))?;
    let pol = |c: u8| match c {
        b'H' => PolarizationState::new(Polarization::H).vector,
        _ => PolarizationState::new(Polarization::V).vector,
    };
    let b = label.as_bytes();
    let first = pol(b[0]).tensor(&pol(b[1]));
    let second = pol(b[3]).tensor(&pol(b[4]));
    let sum = if b[2] == b'+' { first.try_add(&second)? } else { first.try_sub(&second)? };
    let cartesian = sum.scale_surd(&SurdScalar::inv_sqrt(2));

    let space = ProductSpace::two_photon_cartesian();
    let helicity = space.from_standard()?.apply_adjoint(&cartesian)?;
    Ok(BellState {
        label,
        schmidt_rank: schmidt_rank(&cartesian, 3, 3)?,
        exchange_parity: exchange_parity(&cartesian, 3)?,
        expansion: expand_in_coupled_basis(space, &cartesian)?,
        helicity,
        cartesian,
    })
}

pub fn bell_states() -> Result<Vec<BellState>> {
    BELL_LABELS.iter().map(|l| bell_state(l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;
    use crate::spinops::cartesian_chi;

    fn ket(m1: i64, m2: i64) -> ExactVector {
        let k = |m: i64| (1 - m) as usize;
        ExactVector::basis(9, k(m1) * 3 + k(m2))
    }

    #[test]
    fn reshape_and_rank() {
        let v = ket(1, 1);
        let m = coefficient_matrix(&v, 3, 3).unwrap();
        assert_eq!(m.rank(), 1);
        assert!(coefficient_matrix(&v, 2, 3).is_err());
        assert_eq!(schmidt_rank(&ExactVector::zero(9), 3, 3), Err(Error::ZeroVector));
        let pair = ket(1, -1).try_sub(&ket(-1, 1)).unwrap();
        assert_eq!(schmidt_rank(&pair, 3, 3).unwrap(), 2);
    }

    #[test]
    fn product_analysis() {
        let a = schmidt_analyze(&ket(1, 0), 3, 3).unwrap();
        assert!(a.is_product);
        assert_eq!(a.entropy_nats, 0.0);
        assert_eq!(a.schmidt_coefficients, vec![1.0]);
    }

    #[test]
    fn non_orthogonal_uses_float_path() {
        // (|1> + |0>)(|1> + |0>) / 2 + tweak keeps rank 2 with overlapping rows
        let v = ket(1, 1)
            .try_add(&ket(1, 0))
            .unwrap()
            .try_add(&ket(0, 1))
            .unwrap()
            .normalized()
            .unwrap();
        let a = schmidt_analyze(&v, 3, 3).unwrap();
        assert_eq!(a.rank, 2);
        assert!(a.exact_coefficients.is_none());
        let total: f64 = a.schmidt_coefficients.iter().map(|s| s * s).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unnormalized_is_rejected() {
        let v = ket(1, 1).scale_gaussian(&GaussianRational::from_integer(2));
        assert!(matches!(schmidt_analyze(&v, 3, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn swap_is_involution() {
        for d in 1..4 {
            let s = swap_matrix(d);
            assert_eq!(s.matmul(&s).unwrap(), ExactMatrix::identity(d * d));
        }
    }

    #[test]
    fn parity() {
        assert_eq!(exchange_parity(&ket(1, 0), 3).unwrap(), Parity::Neither);
        let sym = ket(1, 0).try_add(&ket(0, 1)).unwrap();
        assert_eq!(exchange_parity(&sym, 3).unwrap(), Parity::Symmetric);
        assert_eq!(exchange_parity(&ket(1, 0).try_sub(&ket(0, 1)).unwrap(), 3).unwrap(), Parity::Antisymmetric);
        assert_eq!(exchange_parity(&ExactVector::zero(8), 3), Err(Error::NonSquareComposite(8, 3)));
    }

    #[test]
    fn polarization_axes() {
        let h = PolarizationState::new(Polarization::H).vector;
        let v = PolarizationState::new(Polarization::V).vector;
        assert!(h.is_normalized() && v.is_normalized());
        assert!(h.inner(&v).unwrap().is_zero());
        // H = (chi(-1) - chi(1)) / sqrt(2)
        let rebuilt = cartesian_chi(-1).try_sub(&cartesian_chi(1)).unwrap().scale_surd(&SurdScalar::inv_sqrt(2));
        assert_eq!(rebuilt, h);
    }

    #[test]
    fn bell_plus_in_helicity_form() {
        let b = bell_state("HH+VV").unwrap();
        let expected = ket(1, -1).try_add(&ket(-1, 1)).unwrap().scale_surd(&-SurdScalar::inv_sqrt(2));
        assert_eq!(b.helicity, expected);
        assert_eq!(b.schmidt_rank, 2);
        assert_eq!(b.exchange_parity, Parity::Symmetric);
        let weight: Rational = b.expansion.iter().map(|e| e.amplitude.norm_sqr()).sum();
        assert_eq!(weight, rational(1, 1));
        assert!(bell_state("XY+YX").is_err());
    }

    #[test]
    fn bell_minus_is_antisymmetric() {
        let b = bell_state("HV-VH").unwrap();
        assert_eq!(b.exchange_parity, Parity::Antisymmetric);
        assert!(bell_states().unwrap().iter().all(|b| b.schmidt_rank == 2));
    }
}
