//! Exact combinatorics for flag positroids: Gale and Bruhat orders, matroids,
//! Grassmann necklaces, valuated Plücker vectors over the tropical semifield,
//! regular subdivisions of flag matroid polytopes, and Bruhat interval polytopes.

pub mod bruhat;
pub mod error;
pub mod ground;
pub mod matroid;
pub mod necklace;
pub mod polytope;
pub mod sample;
pub mod tropical;

pub use error::{Error, Result};
