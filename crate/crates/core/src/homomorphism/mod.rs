//! Canonical lattice homomorphisms between bodies and a randomized checker
//! for arbitrary body maps.

mod affine_map;
mod spec;
mod verify;

pub use affine_map::AffineMap;
pub use spec::{CaseTag, HomomorphismSpec};
pub use verify::{
    check_dimension_laws, expected_image_dim, verify_homomorphism, BodyMap, Check,
    Counterexample, DimensionEntry, DimensionLawReport, FnMap, VerificationReport,
};
