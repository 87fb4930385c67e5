//! Exact rational polytopes, the lattice homomorphisms between them,
//! hyperplane transversals, and polyhedral convex functions.

pub mod error;
pub mod geometry;
pub mod homomorphism;
pub mod json;
pub mod linalg;
pub mod classifier;
pub mod convex_functions;
pub mod lp;
pub mod random;
pub mod scalar;
pub mod transversal;

mod dd;

pub use error::{Error, Result};
pub use geometry::{AffineSubspace, ConvexBody, Point, RadonPartition};
pub use scalar::Scalar;
