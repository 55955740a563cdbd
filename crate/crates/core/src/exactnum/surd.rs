use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::rational_to_f64;
use super::{GaussianRational, Rational, ToFloat};
use crate::error::{Error, Result};

/// Trial divisors beyond this bound are not attempted; larger cofactors with
/// no small prime factor are rejected rather than left non-canonical.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

/// Splits `n` into `(outer, core)` with `n = outer^2 * core` and `core`
/// squarefree. Zero maps to `(0, 1)`.
pub fn square_free_decompose(n: &BigUint) -> Result<(BigUint, BigUint)> {
    if n.is_zero() {
        return Ok((BigUint::zero(), BigUint::one()));
    }
    let mut rest = n.clone();
    let mut outer = BigUint::one();
    let mut core = BigUint::one();
    let mut d: u64 = 2;
    loop {
        let dd = BigUint::from(d);
        let d2 = &dd * &dd;
        if d2 > rest {
            break;
        }
        if &d2 * &dd > rest {
            // No prime factor below d remains, so rest is p, p*q or p^2.
            let r = rest.sqrt();
            if &r * &r == rest {
                outer *= r;
                rest = BigUint::one();
            }
            break;
        }
        if d > TRIAL_DIVISION_LIMIT {
            return Err(Error::Domain(format!(
                "radicand {n} is too large to reduce to squarefree form"
            )));
        }
        let mut exponent = 0u32;
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            exponent += 1;
        }
        if exponent > 0 {
            outer *= dd.pow(exponent / 2);
            if exponent % 2 == 1 {
                core *= &dd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    core *= rest;
    Ok((outer, core))
}

/// A real number `coeff * sqrt(radicand)` with `radicand` a positive
/// squarefree integer, and `radicand == 1` whenever `coeff == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurdScalar {
    coeff: Rational,
    radicand: BigInt,
}

/// Canonical `coeff * sqrt(radicand)`: the radicand's denominator is moved
/// into the coefficient and its square part extracted.
pub fn surd_normalize(coeff: Rational, radicand: Rational) -> Result<SurdScalar> {
    if radicand.is_negative() {
        return Err(Error::Domain(format!(
            "negative radicand {radicand} has no real square root"
        )));
    }
    if coeff.is_zero() || radicand.is_zero() {
        return Ok(SurdScalar::zero());
    }
    // sqrt(p/q) = sqrt(p*q) / q
    let (p, q) = (radicand.numer().clone(), radicand.denom().clone());
    let pq = (&p * &q).to_biguint().expect("radicand is non-negative");
    let (outer, core) = square_free_decompose(&pq)?;
    let coeff = coeff * Rational::new(BigInt::from_biguint(Sign::Plus, outer), q);
    Ok(SurdScalar {
        coeff,
        radicand: BigInt::from_biguint(Sign::Plus, core),
    })
}

impl SurdScalar {
    pub fn zero() -> Self {
        Self { coeff: Rational::zero(), radicand: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self { coeff: r, radicand: BigInt::one() }
    }

    /// `sqrt(r)` for `r >= 0`.
    pub fn sqrt(r: Rational) -> Result<Self> {
        surd_normalize(Rational::one(), r)
    }

    /// Shorthand for `sqrt(num/den)` from machine integers.
    pub fn sqrt_of(num: i64, den: i64) -> Self {
        Self::sqrt(Rational::new(num.into(), den.into())).expect("non-negative radicand")
    }

    /// `1/sqrt(n)`, the ubiquitous normalization constant.
    pub fn inv_sqrt(n: i64) -> Self {
        Self::sqrt_of(1, n)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.coeff.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self { coeff: self.coeff.abs(), radicand: self.radicand.clone() }
    }

    /// The square `coeff^2 * radicand`, always rational.
    pub fn square(&self) -> Rational {
        &self.coeff * &self.coeff * Rational::from_integer(self.radicand.clone())
    }

    pub fn to_f64(&self) -> f64 {
        let root = self.radicand.to_f64().unwrap_or(f64::NAN).sqrt();
        rational_to_f64(&self.coeff) * root
    }

    /// Exact product; shared square factors of the two radicands are pulled
    /// into the coefficient.
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let g = num_integer::Integer::gcd(&self.radicand, &rhs.radicand);
        // sqrt(a) sqrt(b) = g sqrt((a/g)(b/g)); both cofactors are squarefree
        // and coprime, so their product is squarefree.
        let radicand = (&self.radicand / &g) * (&rhs.radicand / &g);
        Self {
            coeff: &self.coeff * &rhs.coeff * Rational::from_integer(g),
            radicand,
        }
    }

    /// Exact sum when the radicands agree (or either side is zero).
    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if self.radicand != rhs.radicand {
            return Err(Error::IncompatibleRadicands(
                self.radicand.to_string(),
                rhs.radicand.to_string(),
            ));
        }
        let coeff = &self.coeff + &rhs.coeff;
        if coeff.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self { coeff, radicand: self.radicand.clone() })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self { coeff: &self.coeff * r, radicand: self.radicand.clone() }
    }

    /// `1 / (c sqrt(d)) = (1 / (c d)) sqrt(d)`.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = Rational::from_integer(self.radicand.clone());
        Ok(Self {
            coeff: (&self.coeff * d).recip(),
            radicand: self.radicand.clone(),
        })
    }

    /// Renders the value for the bra-ket language: `2`, `1/sqrt(2)`,
    /// `3/2*sqrt(6)`. Always parses back to the same value.
    pub fn to_ket_string(&self) -> String {
        if self.is_rational() {
            return self.coeff.to_string();
        }
        // c sqrt(d) = (c d) / sqrt(d)
        let over = &self.coeff * Rational::from_integer(self.radicand.clone());
        if over.is_integer() {
            format!("{}/sqrt({})", over.numer(), self.radicand)
        } else if self.coeff.is_one() {
            format!("sqrt({})", self.radicand)
        } else {
            format!("{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

impl Mul for &SurdScalar {
    type Output = SurdScalar;
    fn mul(self, rhs: &SurdScalar) -> SurdScalar {
        SurdScalar::mul(self, rhs)
    }
}

impl Neg for SurdScalar {
    type Output = SurdScalar;
    fn neg(self) -> SurdScalar {
        SurdScalar { coeff: -self.coeff, radicand: self.radicand }
    }
}

impl Neg for &SurdScalar {
    type Output = SurdScalar;
    fn neg(self) -> SurdScalar {
        -(self.clone())
    }
}

/// Exact ordering: compare signs, then squares.
impl Ord for SurdScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.coeff.signum();
        let sb = other.coeff.signum();
        match sa.cmp(&sb) {
            Ordering::Equal => {}
            o => return o,
        }
        let by_square = self.square().cmp(&other.square());
        if sa.is_negative() {
            by_square.reverse()
        } else {
            by_square
        }
    }
}

impl PartialOrd for SurdScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ToFloat for SurdScalar {
    fn to_float(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }
}

/// Canonical rendering: `p/q` when rational, otherwise `(p/q)*sqrt(d)`,
/// with the parentheses and unit coefficient dropped for integers.
impl fmt::Display for SurdScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else if (-&self.coeff).is_one() {
            write!(f, "-sqrt({})", self.radicand)
        } else if self.coeff.is_integer() {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        } else {
            write!(f, "({})*sqrt({})", self.coeff, self.radicand)
        }
    }
}

/// A complex number `value * sqrt(radicand)`: Gaussian rational times a
/// real quadratic surd. Closed under multiplication and inversion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurdComplex {
    value: GaussianRational,
    radicand: BigInt,
}

impl SurdComplex {
    pub fn zero() -> Self {
        Self { value: GaussianRational::zero(), radicand: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_gaussian(GaussianRational::one())
    }

    pub fn from_gaussian(value: GaussianRational) -> Self {
        Self { value, radicand: BigInt::one() }
    }

    /// `g * s` for a Gaussian rational `g` and real surd `s`.
    pub fn from_parts(g: &GaussianRational, s: &SurdScalar) -> Self {
        if g.is_zero() || s.is_zero() {
            return Self::zero();
        }
        Self { value: g.scale(s.coeff()), radicand: s.radicand().clone() }
    }

    pub fn value(&self) -> &GaussianRational {
        &self.value
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Splits into `(g, sqrt(radicand))`.
    pub fn to_parts(&self) -> (GaussianRational, SurdScalar) {
        let root = SurdScalar { coeff: Rational::one(), radicand: self.radicand.clone() };
        (self.value.clone(), root)
    }

    /// The real surd this value equals, if its imaginary part vanishes.
    pub fn as_real(&self) -> Option<SurdScalar> {
        if !self.value.is_real() {
            return None;
        }
        if self.is_zero() {
            return Some(SurdScalar::zero());
        }
        Some(SurdScalar { coeff: self.value.re.clone(), radicand: self.radicand.clone() })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let (ga, sa) = self.to_parts();
        let (gb, sb) = rhs.to_parts();
        Self::from_parts(&(ga * gb), &sa.mul(&sb))
    }

    pub fn mul_surd(&self, s: &SurdScalar) -> Self {
        let (g, root) = self.to_parts();
        Self::from_parts(&g, &root.mul(s))
    }

    pub fn mul_gaussian(&self, g: &GaussianRational) -> Self {
        if g.is_zero() {
            return Self::zero();
        }
        Self { value: &self.value * g, radicand: self.radicand.clone() }
    }

    pub fn conj(&self) -> Self {
        Self { value: self.value.conj(), radicand: self.radicand.clone() }
    }

    pub fn neg(&self) -> Self {
        Self { value: -&self.value, radicand: self.radicand.clone() }
    }

    pub fn recip(&self) -> Result<Self> {
        let (g, root) = self.to_parts();
        Ok(Self::from_parts(&g.invert()?, &root.recip()?))
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        let mut sum = SurdSum::new();
        sum.add(self);
        sum.add(rhs);
        sum.into_single()
    }

    /// `|z|^2`, always rational.
    pub fn norm_sqr(&self) -> Rational {
        self.value.norm_sqr() * Rational::from_integer(self.radicand.clone())
    }
}

impl ToFloat for SurdComplex {
    fn to_float(&self) -> Complex64 {
        let root = self.radicand.to_f64().unwrap_or(f64::NAN).sqrt();
        self.value.to_float() * root
    }
}

impl From<SurdScalar> for SurdComplex {
    fn from(s: SurdScalar) -> Self {
        Self::from_parts(&GaussianRational::one(), &s)
    }
}

impl From<GaussianRational> for SurdComplex {
    fn from(g: GaussianRational) -> Self {
        Self::from_gaussian(g)
    }
}

impl fmt::Display for SurdComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(real) = self.as_real() {
            return write!(f, "{real}");
        }
        if self.radicand.is_one() {
            write!(f, "{}", self.value)
        } else {
            write!(f, "({})*sqrt({})", self.value, self.radicand)
        }
    }
}

/// Accumulates a sum of `SurdComplex` terms grouped by radicand, so that
/// intermediate terms may cancel before the result is forced into a single
/// surd.
#[derive(Clone, Debug, Default)]
pub struct SurdSum {
    terms: BTreeMap<BigInt, GaussianRational>,
}

impl SurdSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: &SurdComplex) {
        if x.is_zero() {
            return;
        }
        let slot = self.terms.entry(x.radicand.clone()).or_insert_with(GaussianRational::zero);
        *slot += &x.value;
    }

    pub fn add_parts(&mut self, g: &GaussianRational, s: &SurdScalar) {
        self.add(&SurdComplex::from_parts(g, s));
    }

    pub fn merge(&mut self, other: &SurdSum) {
        for (radicand, value) in &other.terms {
            self.add(&SurdComplex { value: value.clone(), radicand: radicand.clone() });
        }
    }

    /// Every term multiplied by `x`.
    pub fn scaled(&self, x: &SurdComplex) -> SurdSum {
        let mut out = SurdSum::new();
        for (radicand, value) in &self.terms {
            out.add(&SurdComplex { value: value.clone(), radicand: radicand.clone() }.mul(x));
        }
        out
    }

    pub fn negated(&self) -> SurdSum {
        self.scaled(&SurdComplex::one().neg())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(Zero::is_zero)
    }

    /// Collapses the sum into one surd, failing when two or more distinct
    /// radicands survive cancellation.
    pub fn into_single(self) -> Result<SurdComplex> {
        let mut live = self.terms.into_iter().filter(|(_, g)| !g.is_zero());
        let Some((radicand, value)) = live.next() else {
            return Ok(SurdComplex::zero());
        };
        if let Some((other, _)) = live.next() {
            return Err(Error::MixedRadicand(radicand.to_string(), other.to_string()));
        }
        Ok(SurdComplex { value, radicand })
    }

    pub fn to_float(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(d, g)| SurdComplex { value: g.clone(), radicand: d.clone() }.to_float())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;

    fn surd(c: (i64, i64), d: i64) -> SurdScalar {
        surd_normalize(rational(c.0, c.1), rational(d, 1)).unwrap()
    }

    #[test]
    fn normalize_moves_denominator_out() {
        let s = surd_normalize(rational(1, 1), rational(1, 6)).unwrap();
        assert_eq!(s.coeff(), &rational(1, 6));
        assert_eq!(s.radicand(), &BigInt::from(6));
    }

    #[test]
    fn normalize_zero_radicand() {
        let s = surd_normalize(rational(5, 1), rational(0, 1)).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.radicand(), &BigInt::one());
    }

    #[test]
    fn normalize_extracts_square_part() {
        let s = surd_normalize(rational(1, 1), rational(8, 1)).unwrap();
        assert_eq!(s.coeff(), &rational(2, 1));
        assert_eq!(s.radicand(), &BigInt::from(2));
    }

    #[test]
    fn normalize_rejects_negative_radicand() {
        assert!(matches!(
            surd_normalize(rational(1, 1), rational(-2, 1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn products() {
        let half_root2 = surd((1, 2), 2);
        assert_eq!(half_root2.mul(&half_root2), SurdScalar::from_rational(rational(1, 2)));
        let sixth_root6 = surd((1, 6), 6);
        assert_eq!(sixth_root6.mul(&sixth_root6), SurdScalar::from_rational(rational(1, 6)));
        assert_eq!(half_root2.mul(&surd((1, 3), 3)), surd((1, 6), 6));
    }

    #[test]
    fn sums() {
        assert_eq!(surd((1, 6), 6).try_add(&surd((2, 6), 6)).unwrap(), surd((1, 2), 6));
        let x = surd((3, 7), 5);
        assert_eq!(x.try_add(&SurdScalar::zero()).unwrap(), x);
        assert!(matches!(
            surd((1, 2), 2).try_add(&surd((1, 3), 3)),
            Err(Error::IncompatibleRadicands(..))
        ));
    }

    #[test]
    fn float_values() {
        assert!((surd((1, 6), 6).to_f64() - 0.408_248_290_463_863).abs() < 1e-15);
        assert_eq!(SurdScalar::zero().to_f64(), 0.0);
        assert_eq!(surd((1, 2), 2).to_f64(), std::f64::consts::FRAC_1_SQRT_2);
    }

    #[test]
    fn rendering() {
        assert_eq!(surd((1, 3), 6).to_string(), "(1/3)*sqrt(6)");
        assert_eq!(surd((1, 1), 1).to_string(), "1");
        assert_eq!(SurdScalar::zero().to_string(), "0");
        assert_eq!(surd((1, 1), 2).to_string(), "sqrt(2)");
        assert_eq!(surd((-3, 1), 2).to_string(), "-3*sqrt(2)");
        assert_eq!(surd((1, 6), 6).to_ket_string(), "1/sqrt(6)");
        assert_eq!(surd((2, 6), 6).to_ket_string(), "2/sqrt(6)");
        assert_eq!(surd((1, 4), 6).to_ket_string(), "1/4*sqrt(6)");
    }

    #[test]
    fn exact_ordering() {
        assert!(surd((1, 2), 2) > surd((1, 2), 1));
        assert!(surd((-1, 2), 2) < surd((-1, 2), 1));
        assert!(SurdScalar::zero() < surd((1, 100), 3));
    }

    #[test]
    fn squarefree_decomposition() {
        let (o, c) = square_free_decompose(&BigUint::from(72u32)).unwrap();
        assert_eq!((o, c), (BigUint::from(6u32), BigUint::from(2u32)));
        let p = BigUint::from(1_000_003u64);
        let (o, c) = square_free_decompose(&(&p * &p * 5u32)).unwrap();
        assert_eq!((o, c), (p, BigUint::from(5u32)));
    }

    #[test]
    fn surd_sum_cancels_before_collapsing() {
        let a = SurdComplex::from(surd((1, 2), 2));
        let b = SurdComplex::from(surd((1, 3), 3));
        let mut sum = SurdSum::new();
        sum.add(&a);
        sum.add(&b);
        sum.add(&b.neg());
        assert_eq!(sum.into_single().unwrap(), a);
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn surd_complex_inverse() {
        let z = SurdComplex::from_parts(&GaussianRational::new(rational(1, 1), rational(1, 1)), &surd((1, 1), 2));
        assert_eq!(z.mul(&z.recip().unwrap()), SurdComplex::one());
    }
}
