//! Matroids, variable strength orthogonal arrays (VOAs) and the
//! constructions that link them.

pub mod classify;
pub mod constructions;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod matroid;
pub mod oa;
pub mod subset;
pub mod search;
pub mod voa;

pub use error::{Error, Result};
pub use matroid::{GroundSet, Matroid};
pub use voa::Voa;

/// Largest supported ground set; subsets are `u32` bitmasks and rank
/// tables have `2^n` entries.
pub const MAX_GROUND: usize = 24;
