//! Restricted root systems, their fans and Levi-level combinatorics.

pub mod fan;
pub mod levi;
pub mod system;

pub use fan::{Cone, ThetaLeviPoset};
pub use levi::{
    descent_support, DescentSupport, Levi, LeviChamber, LeviFace, ParabolicCone, SimpleRoot,
};
pub use system::{RestrictedRootSystem, SystemFixture, BUILTIN_NAMES};
