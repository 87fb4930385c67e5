use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{AffineSubspace, Hyperplane, Point};
use crate::linalg;
use crate::scalar::Scalar;

/// Injective affine map `x ↦ M x + t` from `E^c` to `E^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    /// `d` rows of length `c`.
    matrix: Vec<Vec<Scalar>>,
    offset: Point,
}

impl AffineMap {
    /// Checks shapes and injectivity.
    pub fn new(matrix: Vec<Vec<Scalar>>, offset: Point) -> Result<Self> {
        let d = offset.dim();
        if matrix.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: matrix.len(),
            });
        }
        let c = matrix.first().map_or(0, Vec::len);
        if let Some(row) = matrix.iter().find(|r| r.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: row.len(),
            });
        }
        if c == 0 || linalg::rank(&matrix) != c {
            return Err(Error::NotInjective);
        }
        Ok(Self { matrix, offset })
    }

    pub fn identity(c: usize) -> Self {
        Self::new(unit_matrix(c, c), Point::origin(c)).unwrap()
    }

    /// `x ↦ (x, last)`.
    pub fn embed(c: usize, last: Scalar) -> Self {
        let mut offset = vec![Scalar::zero(); c];
        offset.push(last);
        Self::new(unit_matrix(c + 1, c), Point::new(offset)).unwrap()
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn offset(&self) -> &Point {
        &self.offset
    }

    pub fn source_dim(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn target_dim(&self) -> usize {
        self.offset.dim()
    }

    pub fn linear(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.iter().map(|row| linalg::dot(row, v)).collect()
    }

    pub fn apply(&self, x: &[Scalar]) -> Result<Point> {
        if x.len() != self.source_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim(),
                found: x.len(),
            });
        }
        Ok(Point::new(linalg::add(&self.linear(x), &self.offset)))
    }

    pub fn is_bijective(&self) -> bool {
        self.source_dim() == self.target_dim()
    }

    /// `x ↦ M x + t + shift`.
    pub fn shifted(&self, shift: &[Scalar]) -> Self {
        Self {
            matrix: self.matrix.clone(),
            offset: self.offset.translate(shift),
        }
    }

    fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.source_dim())
            .map(|j| self.matrix.iter().map(|r| r[j].clone()).collect())
            .collect()
    }

    pub fn image(&self) -> AffineSubspace {
        AffineSubspace::Flat {
            base: self.offset.clone(),
            directions: self.columns(),
        }
    }

    /// The image as a hyperplane, when `d = c + 1`.
    pub fn image_hyperplane(&self) -> Option<Hyperplane> {
        if self.target_dim() != self.source_dim() + 1 {
            return None;
        }
        let normal = linalg::nullspace(&self.columns(), self.target_dim())
            .into_iter()
            .next()?;
        let offset = linalg::dot(&normal, &self.offset);
        Some(Hyperplane::new(normal, offset))
    }

    /// Is `v` a direction inside the image?
    pub fn is_parallel_to_image(&self, v: &[Scalar]) -> bool {
        let mut cols = self.columns();
        cols.push(v.to_vec());
        linalg::rank(&cols) == self.source_dim()
    }
}

fn unit_matrix(rows: usize, cols: usize) -> Vec<Vec<Scalar>> {
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect()
}
