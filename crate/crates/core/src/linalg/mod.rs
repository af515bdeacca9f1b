//! Exact rational and integer linear algebra.

pub mod lattice;
pub mod matrix;
pub mod rational;
pub mod snf;
pub mod tate;

pub use lattice::{quotient_group, FiniteAbelianGroup, IntLattice};
pub use matrix::{IntMatrix, RatMatrix};
pub use rational::{fmt_q, parse_q, Vector, Q};
pub use snf::{integer_kernel, smith_normal_form, Smith};
pub use tate::{tate_h_minus1, torus_h1, LatticeFixture, LatticeWithAction};
