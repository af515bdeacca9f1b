//! Exact combinatorics of restricted root systems, orthogonal families,
//! Tate cohomology of tori and reduced multiplicity identities for Galois pairs.

pub mod characters;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod linalg;
pub mod prasad;
pub mod presets;
pub mod roots;

pub use error::{Error, Result};
