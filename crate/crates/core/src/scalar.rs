//! Exact rational scalars and their textual `"p/q"` form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Scalar = BigRational;

/// Shorthand for an integer-valued scalar.
pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

/// Shorthand for `numer / denom`. Panics if `denom == 0`.
pub fn ratio(numer: i64, denom: i64) -> Scalar {
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p/q"` or `"p"`. The denominator must be positive; the value is
/// reduced on the way in.
pub fn parse_scalar(text: &str) -> Result<Scalar, Error> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    match text.split_once('/') {
        None => BigInt::from_str(text)
            .map(Scalar::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p).map_err(|_| bad())?;
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if !q.is_positive() {
                return Err(Error::Parse(format!(
                    "rational {text:?} must have a positive denominator"
                )));
            }
            Ok(Scalar::new(p, q))
        }
    }
}

/// Formats as `"p/q"`, always with an explicit denominator.
pub fn format_scalar(value: &Scalar) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Field operations needed by the generic pole computation.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// Element `a + b·√R` of the quadratic field ℚ(√R).
///
/// `R` must not be a perfect square, otherwise the representation is not
/// unique and division by `a² − R b²` can fail.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quadratic<const R: u32> {
    pub rational: Scalar,
    pub surd: Scalar,
}

impl<const R: u32> Quadratic<R> {
    pub fn new(rational: Scalar, surd: Scalar) -> Self {
        Self { rational, surd }
    }

    pub fn from_rational(rational: Scalar) -> Self {
        Self {
            rational,
            surd: Scalar::zero(),
        }
    }

    /// `√R` itself.
    pub fn root() -> Self {
        Self::new(Scalar::zero(), Scalar::one())
    }

    fn radicand() -> Scalar {
        int(i64::from(R))
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.rational.clone(), -self.surd.clone())
    }

    /// `a² − R b²`, the field norm.
    pub fn norm(&self) -> Scalar {
        &self.rational * &self.rational - Self::radicand() * &self.surd * &self.surd
    }
}

impl<const R: u32> fmt::Debug for Quadratic<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}·√{}",
            format_scalar(&self.rational),
            format_scalar(&self.surd),
            R
        )
    }
}

impl<const R: u32> Add for Quadratic<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.rational + rhs.rational, self.surd + rhs.surd)
    }
}

impl<const R: u32> Sub for Quadratic<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.rational - rhs.rational, self.surd - rhs.surd)
    }
}

impl<const R: u32> Mul for Quadratic<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let rational =
            &self.rational * &rhs.rational + Self::radicand() * &self.surd * &rhs.surd;
        let surd = &self.rational * &rhs.surd + &self.surd * &rhs.rational;
        Self::new(rational, surd)
    }
}

impl<const R: u32> Div for Quadratic<R> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let norm = rhs.norm();
        assert!(!norm.is_zero(), "division by zero in Q(sqrt({R}))");
        let num = self * rhs.conjugate();
        Self::new(num.rational / &norm, num.surd / norm)
    }
}

impl<const R: u32> Neg for Quadratic<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.rational, -self.surd)
    }
}

impl<const R: u32> Zero for Quadratic<R> {
    fn zero() -> Self {
        Self::from_rational(Scalar::zero())
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }
}

impl<const R: u32> One for Quadratic<R> {
    fn one() -> Self {
        Self::from_rational(Scalar::one())
    }
}
