use std::fmt;
use std::ops::Deref;

use num_traits::{One, Zero};

use crate::linalg;
use crate::scalar::{format_scalar, int, Scalar};

/// A point of rational coordinate space. Ordering is lexicographic on
/// coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Self(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&x| int(x)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![Scalar::zero(); dim])
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    /// `self - other` as a vector.
    pub fn delta(&self, other: &Point) -> Vec<Scalar> {
        linalg::sub(&self.0, &other.0)
    }

    pub fn translate(&self, v: &[Scalar]) -> Point {
        Point(linalg::add(&self.0, v))
    }

    /// `(1 - t)·a + t·b`.
    pub fn lerp(a: &Point, b: &Point, t: &Scalar) -> Point {
        let s = Scalar::one() - t;
        Point(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| &s * x + t * y)
                .collect(),
        )
    }

    /// Appends one coordinate.
    pub fn lift(&self, last: Scalar) -> Point {
        let mut c = self.0.clone();
        c.push(last);
        Point(c)
    }
}

impl Deref for Point {
    type Target = [Scalar];
    fn deref(&self) -> &[Scalar] {
        &self.0
    }
}

impl From<Vec<Scalar>> for Point {
    fn from(coords: Vec<Scalar>) -> Self {
        Self(coords)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if x.is_integer() {
                write!(f, "{}", x.numer())?;
            } else {
                f.write_str(&format_scalar(x))?;
            }
        }
        f.write_str(")")
    }
}
