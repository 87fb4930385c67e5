use num_traits::{One, Zero};

use super::{ConvexBody, Point};
use crate::linalg;
use crate::lp::{LinearProgram, Relation};
use crate::scalar::Scalar;

/// An affine subspace, `base + span(directions)`, or the empty one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSubspace {
    Empty { ambient: usize },
    Flat { base: Point, directions: Vec<Vec<Scalar>> },
}

impl AffineSubspace {
    /// Affine hull of a point set. Directions are the greedy basis of the
    /// differences from the first point.
    pub fn spanned_by(ambient: usize, points: &[Point]) -> Self {
        match points.split_first() {
            None => Self::Empty { ambient },
            Some((base, rest)) => {
                let diffs: Vec<Vec<Scalar>> = rest.iter().map(|p| p.delta(base)).collect();
                let directions = linalg::independent_subset(&diffs)
                    .into_iter()
                    .map(|i| diffs[i].clone())
                    .collect();
                Self::Flat {
                    base: base.clone(),
                    directions,
                }
            }
        }
    }

    /// The whole space.
    pub fn full(ambient: usize) -> Self {
        Self::Flat {
            base: Point::origin(ambient),
            directions: unit_vectors(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Self::Empty { ambient } => *ambient,
            Self::Flat { base, .. } => base.dim(),
        }
    }

    /// `-1` for the empty subspace.
    pub fn dim(&self) -> isize {
        match self {
            Self::Empty { .. } => -1,
            Self::Flat { directions, .. } => directions.len() as isize,
        }
    }

    pub fn base(&self) -> Option<&Point> {
        match self {
            Self::Empty { .. } => None,
            Self::Flat { base, .. } => Some(base),
        }
    }

    pub fn directions(&self) -> &[Vec<Scalar>] {
        match self {
            Self::Empty { .. } => &[],
            Self::Flat { directions, .. } => directions,
        }
    }

    pub fn contains_point(&self, x: &[Scalar]) -> bool {
        match self {
            Self::Empty { .. } => false,
            Self::Flat { base, directions } => {
                let mut rows = directions.clone();
                let r = linalg::rank(&rows);
                rows.push(linalg::sub(x, base));
                linalg::rank(&rows) == r
            }
        }
    }

    /// Adds unit directions until the dimension reaches `target` (or the
    /// ambient dimension, whichever is smaller).
    pub fn extend_to(&self, target: usize) -> Self {
        let Self::Flat { base, directions } = self else {
            return self.clone();
        };
        let mut directions = directions.clone();
        for e in unit_vectors(base.dim()) {
            if directions.len() >= target {
                break;
            }
            let mut trial = directions.clone();
            trial.push(e);
            if linalg::rank(&trial) == trial.len() {
                directions = trial;
            }
        }
        Self::Flat {
            base: base.clone(),
            directions,
        }
    }

    /// A point of `self ∩ body`, if any, found by exact LP.
    pub fn meet_point(&self, body: &ConvexBody) -> Option<Point> {
        let Self::Flat { base, directions } = self else {
            return None;
        };
        let verts = body.vertices();
        if verts.is_empty() {
            return None;
        }
        // Unknowns: convex weights λ_j ≥ 0, then free coefficients t_k.
        let (m, k, n) = (verts.len(), directions.len(), base.dim());
        let mut lp = LinearProgram::new(m + k);
        for j in 0..m {
            lp.set_nonnegative(j);
        }
        let mut sum_row = vec![Scalar::one(); m];
        sum_row.extend(std::iter::repeat(Scalar::zero()).take(k));
        lp.add(sum_row, Relation::Eq, Scalar::one());
        for i in 0..n {
            let mut row: Vec<Scalar> = verts.iter().map(|v| v[i].clone()).collect();
            row.extend(directions.iter().map(|d| -d[i].clone()));
            lp.add(row, Relation::Eq, base[i].clone());
        }
        let outcome = lp.solve();
        let sol = outcome.point()?;
        let mut x = vec![Scalar::zero(); n];
        for (j, v) in verts.iter().enumerate() {
            x = linalg::add(&x, &linalg::scale(v, &sol[j]));
        }
        Some(Point::new(x))
    }

    pub fn meets(&self, body: &ConvexBody) -> bool {
        self.meet_point(body).is_some()
    }
}

fn unit_vectors(n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|i| {
            let mut e = vec![Scalar::zero(); n];
            e[i] = Scalar::one();
            e
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_in_plane() {
        let pts: Vec<Point> = [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]
            .iter()
            .map(|c| Point::from_ints(c))
            .collect();
        let body = ConvexBody::from_points(pts).unwrap();
        let a = body.affine_hull();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.base(), Some(&Point::from_ints(&[0, 0, 1])));
        assert!(a.contains_point(&Point::from_ints(&[5, -3, 1])));
        assert!(!a.contains_point(&Point::from_ints(&[0, 0, 0])));
        assert_eq!(a.extend_to(3).dim(), 3);
    }

    #[test]
    fn empty_hull() {
        assert_eq!(ConvexBody::empty(2).affine_hull().dim(), -1);
    }

    #[test]
    fn line_meets_segment() {
        let line = AffineSubspace::spanned_by(
            2,
            &[Point::from_ints(&[0, 1]), Point::from_ints(&[1, 1])],
        );
        let seg = ConvexBody::from_points(vec![
            Point::from_ints(&[3, 0]),
            Point::from_ints(&[3, 2]),
        ])
        .unwrap();
        assert_eq!(line.meet_point(&seg), Some(Point::from_ints(&[3, 1])));
        let low = ConvexBody::from_points(vec![
            Point::from_ints(&[0, -1]),
            Point::from_ints(&[2, 0]),
        ])
        .unwrap();
        assert!(!line.meets(&low));
    }
}
