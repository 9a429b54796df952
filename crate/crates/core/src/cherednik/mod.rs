//! The rational Cherednik algebra as a rewriting system with PBW normal
//! form `x^a * w * D^b`.

pub mod context;
pub mod element;
pub mod named;

pub use context::{Context, PbwKey};
pub use element::{anticommutator, canonical_cmp, commutator, GeneratorSpec, PbwElement};
pub use named::*;
