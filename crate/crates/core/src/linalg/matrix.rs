use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{dim_error, elimination, ExactVector};
use crate::error::{Error, Result};
use crate::exactnum::{GaussianRational, Rational, SurdComplex, SurdScalar, SurdSum, ToFloat};

/// Dense row-major matrix `prefactor * [a_rc]` over the Gaussian rationals.
///
/// The shared surd prefactor lets spin-1 ladder matrices, whose entries are
/// all multiples of `sqrt(2)`, stay exact.
#[derive(Clone, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
    prefactor: SurdScalar,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussianRational>, prefactor: SurdScalar) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(dim_error(rows * cols, entries.len()));
        }
        Ok(Self { rows, cols, entries, prefactor })
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(dim_error(ncols, bad.len()));
        }
        Self::new(nrows, ncols, rows.into_iter().flatten().collect(), SurdScalar::one())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
            prefactor: SurdScalar::one(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(vec![GaussianRational::one(); n])
    }

    pub fn diagonal(diag: Vec<GaussianRational>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (k, d) in diag.into_iter().enumerate() {
            m.entries[k * n + k] = d;
        }
        m
    }

    /// Builds a matrix from per-entry surd values, which must share a radicand.
    pub fn from_surd_entries(rows: usize, cols: usize, values: &[SurdComplex]) -> Result<Self> {
        let flat = ExactVector::from_surd_components(values)?;
        Self::new(rows, cols, flat.components().to_vec(), flat.prefactor().clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn prefactor(&self) -> &SurdScalar {
        &self.prefactor
    }

    /// Raw Gaussian-rational entry, before the prefactor is applied.
    pub fn entry(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.cols + c]
    }

    /// Value of entry `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> SurdComplex {
        SurdComplex::from_parts(self.entry(r, c), &self.prefactor)
    }

    pub fn row_vectors(&self) -> Vec<Vec<GaussianRational>> {
        self.entries.chunks(self.cols.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn column(&self, c: usize) -> ExactVector {
        let comps = (0..self.rows).map(|r| self.entry(r, c).clone()).collect();
        ExactVector::new(comps, self.prefactor.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero() || self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale_gaussian(&self, g: &GaussianRational) -> Self {
        Self { entries: self.entries.iter().map(|e| e * g).collect(), ..self.clone() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self { prefactor: self.prefactor.scale(r), ..self.clone() }
    }

    pub fn scale_surd(&self, s: &SurdScalar) -> Self {
        Self { prefactor: self.prefactor.mul(s), ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        Self { prefactor: -&self.prefactor, ..self.clone() }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(dim_error(
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.prefactor.radicand() != other.prefactor.radicand() {
            return Err(Error::IncompatibleRadicands(
                self.prefactor.radicand().to_string(),
                other.prefactor.radicand().to_string(),
            ));
        }
        let ratio = other.prefactor.coeff() / self.prefactor.coeff();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + &b.scale(&ratio))
            .collect();
        Ok(Self { entries, ..self.clone() })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(dim_error(self.cols, other.rows));
        }
        let mut entries = vec![GaussianRational::zero(); self.rows * other.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.entry(k, c);
                    if !b.is_zero() {
                        entries[r * other.cols + c] += &(a * b);
                    }
                }
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            entries,
            prefactor: self.prefactor.mul(&other.prefactor),
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.entry(r, c).conj());
            }
        }
        Self { rows: self.cols, cols: self.rows, entries, prefactor: self.prefactor.clone() }
    }

    /// Kronecker product; `(r1, r2)` maps to row `r1 * other.rows + r2`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = vec![GaussianRational::zero(); rows * cols];
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.entry(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let r = r1 * other.rows + r2;
                        let c = c1 * other.cols + c2;
                        entries[r * cols + c] = a * other.entry(r2, c2);
                    }
                }
            }
        }
        Self { rows, cols, entries, prefactor: self.prefactor.mul(&other.prefactor) }
    }

    /// Exact matrix-vector product; the result's prefactor is the product of
    /// the two prefactors.
    pub fn apply(&self, v: &ExactVector) -> Result<ExactVector> {
        if self.cols != v.dim() {
            return Err(dim_error(self.cols, v.dim()));
        }
        let comps = (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(GaussianRational::zero(), |acc, c| {
                    let a = self.entry(r, c);
                    if a.is_zero() {
                        acc
                    } else {
                        acc + a * &v.components()[c]
                    }
                })
            })
            .collect();
        Ok(ExactVector::new(comps, self.prefactor.mul(v.prefactor())))
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.try_sub(&other.matmul(self)?)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    pub fn trace(&self) -> SurdComplex {
        let raw = (0..self.rows.min(self.cols))
            .fold(GaussianRational::zero(), |acc, k| acc + self.entry(k, k));
        SurdComplex::from_parts(&raw, &self.prefactor)
    }

    pub fn rank(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        elimination::rank(&self.row_vectors())
    }

    /// Exact kernel basis (primitive Gaussian-integer vectors).
    pub fn nullspace(&self) -> Vec<ExactVector> {
        if self.is_zero() {
            return (0..self.cols).map(|k| ExactVector::basis(self.cols, k)).collect();
        }
        elimination::nullspace(&self.row_vectors(), self.cols)
            .into_iter()
            .map(ExactVector::from_components)
            .collect()
    }

    /// Stacks `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(dim_error(self.cols, other.cols));
        }
        // The kernel of a stacked system does not depend on row scaling, but
        // values must still be exact, so rescale into a common radicand.
        let values: Vec<SurdComplex> = (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .chain((0..other.rows).flat_map(|r| (0..other.cols).map(move |c| other.get(r, c))))
            .collect();
        Self::from_surd_entries(self.rows + other.rows, self.cols, &values)
    }

    pub fn to_complex(&self) -> Vec<Vec<Complex64>> {
        let p = self.prefactor.to_f64();
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.entry(r, c).to_float() * p).collect())
            .collect()
    }

    /// Sum of surd-weighted matrices whose radicands may differ term by term
    /// but must collapse to one radicand overall.
    pub fn linear_combination(coeffs: &[SurdComplex], terms: &[ExactMatrix]) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(Error::Precondition("empty linear combination".into()));
        };
        let (rows, cols) = (first.rows, first.cols);
        let mut sums = vec![SurdSum::new(); rows * cols];
        for (x, m) in coeffs.iter().zip(terms) {
            m.same_shape(first)?;
            for (idx, sum) in sums.iter_mut().enumerate() {
                let e = &m.entries[idx];
                if !e.is_zero() {
                    sum.add(&x.mul(&SurdComplex::from_parts(e, &m.prefactor)));
                }
            }
        }
        let values = sums.into_iter().map(SurdSum::into_single).collect::<Result<Vec<_>>>()?;
        Self::from_surd_entries(rows, cols, &values)
    }
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return false;
        }
        let a = ExactVector::new(self.entries.clone(), self.prefactor.clone());
        let b = ExactVector::new(other.entries.clone(), other.prefactor.clone());
        a == b
    }
}

impl Eq for ExactMatrix {}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefactor.is_rational() || !self.prefactor.coeff().is_one() {
            write!(f, "{} * ", self.prefactor)?;
        }
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(r, c))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| GaussianRational::from_integer(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn product_and_kron() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.matmul(&a).unwrap(), ExactMatrix::identity(2));
        let k = a.kron(&ExactMatrix::identity(2));
        assert_eq!(k.rows(), 4);
        assert_eq!(k.entry(0, 2), &GaussianRational::one());
        assert!(m(&[&[1, 2]]).matmul(&m(&[&[1, 2]])).is_err());
    }

    #[test]
    fn surd_prefactors_multiply() {
        let root2 = SurdScalar::sqrt_of(2, 1);
        let a = m(&[&[0, 1], &[1, 0]]).scale_surd(&root2);
        let sq = a.matmul(&a).unwrap();
        assert_eq!(sq, ExactMatrix::identity(2).scale_rational(&Rational::from_integer(2.into())));
        assert!(sq.prefactor().is_rational());
    }

    #[test]
    fn apply_checks_dimensions() {
        let a = ExactMatrix::identity(3);
        assert!(matches!(
            a.apply(&ExactVector::zero(2)),
            Err(Error::IncompatibleDimensions { .. })
        ));
    }
}
