//! Points, polytopes and their lattice operations.

mod affine;
mod body;
mod point;
mod radon;

pub use affine::AffineSubspace;
pub use body::{ConvexBody, HRep, Halfspace, Hyperplane};
pub use point::Point;
pub use radon::{radon_partition, RadonPartition};

use crate::error::Result;

/// Convex hull of a point list. An empty list gives the empty body in
/// dimension 0; use [`ConvexBody::hull`] to fix the dimension.
pub fn convex_hull(points: &[Point]) -> Result<ConvexBody> {
    let ambient = points.first().map_or(0, Point::dim);
    ConvexBody::hull(ambient, points.to_vec())
}

pub fn meet(c: &ConvexBody, d: &ConvexBody) -> Result<ConvexBody> {
    c.meet(d)
}

pub fn join(c: &ConvexBody, d: &ConvexBody) -> Result<ConvexBody> {
    c.join(d)
}

pub fn dim(c: &ConvexBody) -> isize {
    c.dim()
}

pub fn affine_hull(c: &ConvexBody) -> AffineSubspace {
    c.affine_hull()
}
