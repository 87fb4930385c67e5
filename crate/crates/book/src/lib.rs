//! Doc-test harness for the guide in `book/`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/bodies.md")]
pub mod bodies {}

#[doc = include_str!("../../../book/src/homomorphisms.md")]
pub mod homomorphisms {}

#[doc = include_str!("../../../book/src/classifier.md")]
pub mod classifier {}

#[doc = include_str!("../../../book/src/transversals.md")]
pub mod transversals {}

#[doc = include_str!("../../../book/src/functions.md")]
pub mod functions {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
