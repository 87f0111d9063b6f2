//! Exact computation of Hurwitz numbers, their polynomial structure, and the
//! Hodge integrals `⟨τ_{b_1}…τ_{b_n} λ_k⟩_g` they determine.
//!
//! Everything is exact rational arithmetic; nothing in the crate rounds.

pub mod elsv;
pub mod error;
pub mod genus_series;
pub mod hurwitz;
pub mod linalg;
pub mod onevar;
pub mod partition;
pub mod perm;
pub mod pipeline;
pub mod poly;
pub mod rational;
pub mod symfunc;
pub mod verify;

pub use error::{Error, Result};
pub use partition::{Partition, ZeroPaddedPartition};
pub use rational::Rational;
