use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{parse_rational, Rational};
use crate::error::{Error, Result};

/// An integer or half-odd-integer, stored as twice its value.
///
/// Quantum numbers j, m, S and mu are all of this kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub const fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        Self { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn abs(self) -> Self {
        Self { twice: self.twice.abs() }
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.twice.into(), 2.into())
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// `x(x+1)` as an exact rational, e.g. the S^2 eigenvalue for total spin `x`.
    pub fn casimir(self) -> Rational {
        let x = self.to_rational();
        &x * (&x + Rational::from_integer(1.into()))
    }

    /// Parses `1`, `-1`, `1/2`, `-3/2`; decimals are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let r = parse_rational(text)?;
        let twice = &r * Rational::from_integer(2.into());
        if !twice.is_integer() {
            return Err(Error::Domain(format!("`{}` is not a half-integer", text.trim())));
        }
        twice
            .to_integer()
            .to_i64()
            .map(Self::from_twice)
            .ok_or_else(|| Error::Domain(format!("`{}` is out of range", text.trim())))
    }
}

impl FromStr for HalfInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl Zero for HalfInt {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        self.twice == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
