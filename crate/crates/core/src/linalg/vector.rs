use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::dim_error;
use crate::error::{Error, Result};
use crate::exactnum::{GaussianRational, Rational, SurdComplex, SurdScalar, SurdSum, ToFloat};

/// A vector `prefactor * (c_0, ..., c_{n-1})` with Gaussian-rational
/// components and one real surd prefactor.
///
/// Equality compares values, not representations: `(1/2)sqrt(2) * (2, 0)`
/// equals `sqrt(2) * (1, 0)`.
#[derive(Clone, Debug)]
pub struct ExactVector {
    components: Vec<GaussianRational>,
    prefactor: SurdScalar,
}

impl ExactVector {
    pub fn new(components: Vec<GaussianRational>, prefactor: SurdScalar) -> Self {
        Self { components, prefactor }
    }

    pub fn from_components(components: Vec<GaussianRational>) -> Self {
        Self::new(components, SurdScalar::one())
    }

    pub fn from_integers(components: &[i64]) -> Self {
        Self::from_components(components.iter().map(|&x| GaussianRational::from_integer(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_components(vec![GaussianRational::zero(); dim])
    }

    /// The unit vector `e_k`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zero(dim);
        v.components[k] = GaussianRational::one();
        v
    }

    /// Builds a vector from per-component surd values, which must share a
    /// single radicand.
    pub fn from_surd_components(values: &[SurdComplex]) -> Result<Self> {
        let radicand = values.iter().find(|x| !x.is_zero()).map(|x| x.radicand().clone());
        let Some(radicand) = radicand else {
            return Ok(Self::zero(values.len()));
        };
        let mut components = Vec::with_capacity(values.len());
        for x in values {
            if x.is_zero() {
                components.push(GaussianRational::zero());
            } else if x.radicand() != &radicand {
                return Err(Error::MixedRadicand(radicand.to_string(), x.radicand().to_string()));
            } else {
                components.push(x.value().clone());
            }
        }
        let root = SurdScalar::sqrt(Rational::from_integer(radicand))?;
        Ok(Self::new(components, root))
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[GaussianRational] {
        &self.components
    }

    pub fn prefactor(&self) -> &SurdScalar {
        &self.prefactor
    }

    /// Value of component `k`, i.e. `prefactor * c_k`.
    pub fn component(&self, k: usize) -> SurdComplex {
        SurdComplex::from_parts(&self.components[k], &self.prefactor)
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero() || self.components.iter().all(Zero::is_zero)
    }

    pub fn scale_gaussian(&self, g: &GaussianRational) -> Self {
        Self::new(self.components.iter().map(|c| c * g).collect(), self.prefactor.clone())
    }

    pub fn scale_surd(&self, s: &SurdScalar) -> Self {
        Self::new(self.components.clone(), self.prefactor.mul(s))
    }

    pub fn scale(&self, x: &SurdComplex) -> Self {
        let (g, root) = x.to_parts();
        self.scale_gaussian(&g).scale_surd(&root)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.components.clone(), -&self.prefactor)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(dim_error(self.dim(), other.dim()));
        }
        Ok(())
    }

    /// Exact sum; fails when both sides are nonzero with different radicands.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
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
        // keep self's prefactor: a p + b q = p (a + (q/p) b)
        let ratio = other.prefactor.coeff() / self.prefactor.coeff();
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a + &b.scale(&ratio))
            .collect();
        Ok(Self::new(components, self.prefactor.clone()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Result<SurdComplex> {
        self.check_dim(other)?;
        let sum = self
            .components
            .iter()
            .zip(&other.components)
            .fold(GaussianRational::zero(), |acc, (a, b)| acc + a.conj() * b);
        Ok(SurdComplex::from_parts(&sum, &self.prefactor.mul(&other.prefactor)))
    }

    /// `prefactor^2 * sum |c_k|^2`, always rational.
    pub fn norm_sqr(&self) -> Rational {
        let raw = self.components.iter().fold(Rational::zero(), |acc, c| acc + c.norm_sqr());
        raw * self.prefactor.square()
    }

    pub fn is_normalized(&self) -> bool {
        self.norm_sqr().is_one()
    }

    /// The unit vector along `self`; the sign of the prefactor is kept.
    pub fn normalized(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let raw = self.components.iter().fold(Rational::zero(), |acc, c| acc + c.norm_sqr());
        let mut prefactor = SurdScalar::sqrt(raw.recip())?;
        if self.prefactor.is_negative() {
            prefactor = -prefactor;
        }
        Ok(Self::new(self.components.clone(), prefactor))
    }

    /// Multiplies by the unit phase that makes the first nonzero component
    /// real and positive. The phase `conj(c)/|c|` may introduce a radical,
    /// which is absorbed into the prefactor.
    pub fn with_canonical_phase(&self) -> Self {
        let Some(first) = self.components.iter().find(|c| !c.is_zero()) else {
            return self.clone();
        };
        let mut out = if first.is_real() {
            self.clone()
        } else {
            let inv_modulus = SurdScalar::sqrt(first.norm_sqr().recip()).expect("positive norm");
            self.scale_gaussian(&first.conj()).scale_surd(&inv_modulus)
        };
        let lead = out.components.iter().find(|c| !c.is_zero()).expect("nonzero");
        let lead_negative = lead.leads_negative() != out.prefactor.is_negative();
        if lead_negative {
            out = out.neg();
        }
        out
    }

    /// Returns `+1` or `-1` if `other == sign * self`, otherwise `None`.
    pub fn sign_relative_to(&self, other: &Self) -> Option<i8> {
        if self == other {
            Some(1)
        } else if self == &other.neg() {
            Some(-1)
        } else {
            None
        }
    }

    /// Kronecker product `self (x) other` with composite index
    /// `k = k1 * other.dim() + k2`.
    pub fn tensor(&self, other: &Self) -> Self {
        let components = self
            .components
            .iter()
            .flat_map(|a| other.components.iter().map(move |b| a * b))
            .collect();
        Self::new(components, self.prefactor.mul(&other.prefactor))
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        let p = self.prefactor.to_f64();
        self.components.iter().map(|c| c.to_float() * p).collect()
    }

    /// Rational-scaled components and radicand; the representation used for
    /// value equality.
    fn folded(&self) -> (Vec<GaussianRational>, &num_bigint::BigInt) {
        let c = self.prefactor.coeff();
        (self.components.iter().map(|g| g.scale(c)).collect(), self.prefactor.radicand())
    }

    /// Sum of `coeffs[i] * vectors[i]`, allowing intermediate radicands to mix
    /// as long as each resulting component collapses to one surd and all
    /// components share a radicand.
    pub fn linear_combination(coeffs: &[SurdComplex], vectors: &[ExactVector]) -> Result<Self> {
        let dim = vectors.first().map_or(0, ExactVector::dim);
        let mut sums = vec![SurdSum::new(); dim];
        for (x, v) in coeffs.iter().zip(vectors) {
            if v.dim() != dim {
                return Err(dim_error(dim, v.dim()));
            }
            for (k, sum) in sums.iter_mut().enumerate() {
                sum.add(&x.mul(&v.component(k)));
            }
        }
        let values = sums.into_iter().map(SurdSum::into_single).collect::<Result<Vec<_>>>()?;
        Self::from_surd_components(&values)
    }
}

impl PartialEq for ExactVector {
    fn eq(&self, other: &Self) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return true,
            (true, false) | (false, true) => return false,
            _ => {}
        }
        self.folded() == other.folded()
    }
}

impl Eq for ExactVector {}

/// `[c_0, c_1, ...]`, preceded by `prefactor * ` when it is not one. A
/// negative prefactor is displayed with its sign moved into the components.
impl fmt::Display for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flip = self.prefactor.is_negative();
        let prefactor = if flip { self.prefactor.abs() } else { self.prefactor.clone() };
        if !prefactor.is_rational() || !prefactor.coeff().is_one() {
            write!(f, "{prefactor} * ")?;
        }
        write!(f, "[")?;
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            if flip {
                write!(f, "{}", -c)?;
            } else {
                write!(f, "{c}")?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;

    #[test]
    fn value_equality_ignores_representation() {
        let a = ExactVector::new(
            vec![GaussianRational::from_integer(2), GaussianRational::zero()],
            SurdScalar::sqrt_of(1, 2),
        );
        let b = ExactVector::new(
            vec![GaussianRational::one(), GaussianRational::zero()],
            SurdScalar::sqrt_of(2, 1),
        );
        assert_eq!(a, b);
        assert_ne!(a, b.neg());
        assert_eq!(a.sign_relative_to(&b.neg()), Some(-1));
    }

    #[test]
    fn normalization() {
        let v = ExactVector::from_integers(&[1, 2, 1]).normalized().unwrap();
        assert!(v.is_normalized());
        assert_eq!(v.prefactor(), &SurdScalar::inv_sqrt(6));
        assert_eq!(ExactVector::zero(3).normalized().unwrap_err(), Error::ZeroVector);
    }

    #[test]
    fn canonical_phase_removes_complex_lead() {
        let i = GaussianRational::i();
        let v = ExactVector::from_components(vec![
            GaussianRational::new(rational(1, 1), rational(1, 1)),
            i.clone(),
        ])
        .normalized()
        .unwrap();
        let c = v.with_canonical_phase();
        assert!(c.is_normalized());
        let lead = c.component(0);
        assert!(lead.value().is_real());
        assert!(lead.to_float().re > 0.0);
    }

    #[test]
    fn add_requires_shared_radicand() {
        let a = ExactVector::basis(2, 0).scale_surd(&SurdScalar::sqrt_of(2, 1));
        let b = ExactVector::basis(2, 1).scale_surd(&SurdScalar::sqrt_of(3, 1));
        assert!(matches!(a.try_add(&b), Err(Error::IncompatibleRadicands(..))));
        assert!(a.try_add(&ExactVector::zero(3)).is_err());
    }
}
