use num_traits::{Signed, Zero};

use super::Point;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// Two disjoint point sets whose hulls share `witness`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadonPartition {
    pub red: Vec<Point>,
    pub blue: Vec<Point>,
    /// Input positions of the red points.
    pub red_indices: Vec<usize>,
    pub blue_indices: Vec<usize>,
    pub witness: Point,
}

/// Affine dependence `λ` on the given columns with `Σλ = 0`, `Σλp = 0`
/// and every entry nonzero, if the subset is a circuit.
fn circuit(points: &[&Point]) -> Option<Vec<Scalar>> {
    let n = points[0].dim();
    let k = points.len();
    // Rows: one per coordinate plus the all-ones row.
    let mut rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| points.iter().map(|p| p[i].clone()).collect())
        .collect();
    rows.push(vec![Scalar::from_integer(1.into()); k]);
    let kernel = linalg::nullspace(&rows, k);
    if kernel.len() != 1 {
        return None;
    }
    let lambda = kernel.into_iter().next().unwrap();
    lambda.iter().all(|x| !x.is_zero()).then_some(lambda)
}

/// Splits the first `n + 2` points into two parts with intersecting hulls.
/// Later points, if any, are put in `blue`.
///
/// Among all minimal affine dependences on the first `n + 2` points the one
/// with the lexicographically smallest support is used; the red side gets
/// the negative coefficients after normalizing the first one to be positive.
pub fn radon_partition(points: &[Point]) -> Result<RadonPartition> {
    let Some(first) = points.first() else {
        return Err(Error::InsufficientPoints { needed: 2, got: 0 });
    };
    let n = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.dim(),
        });
    }
    if points.len() < n + 2 {
        return Err(Error::InsufficientPoints {
            needed: n + 2,
            got: points.len(),
        });
    }
    let m = n + 2;
    // Supports as sorted index lists, in lexicographic order.
    let mut supports: Vec<Vec<usize>> = (1u32..(1 << m))
        .map(|mask| (0..m).filter(|i| mask & (1 << i) != 0).collect())
        .filter(|s: &Vec<usize>| s.len() >= 2)
        .collect();
    supports.sort();
    let (support, mut lambda) = supports
        .into_iter()
        .find_map(|s| {
            let pts: Vec<&Point> = s.iter().map(|&i| &points[i]).collect();
            circuit(&pts).map(|l| (s, l))
        })
        .expect("n + 2 points are always affinely dependent");
    if lambda[0].is_negative() {
        lambda.iter_mut().for_each(|x| *x = -x.clone());
    }
    let mut red_indices = Vec::new();
    let mut weight = Scalar::zero();
    let mut acc = vec![Scalar::zero(); n];
    for (&i, l) in support.iter().zip(&lambda) {
        if l.is_negative() {
            red_indices.push(i);
            let w = -l.clone();
            acc = linalg::add(&acc, &linalg::scale(&points[i], &w));
            weight += w;
        }
    }
    let witness = Point::new(acc.into_iter().map(|x| x / &weight).collect());
    let blue_indices: Vec<usize> = (0..points.len())
        .filter(|i| !red_indices.contains(i))
        .collect();
    Ok(RadonPartition {
        red: red_indices.iter().map(|&i| points[i].clone()).collect(),
        blue: blue_indices.iter().map(|&i| points[i].clone()).collect(),
        red_indices,
        blue_indices,
        witness,
    })
}
