//! Combinatorial toolkit for the coherent-constructible correspondence on
//! smooth projective toric varieties.
//!
//! The crate builds twisted polytope sheaves on `M_R`, realizes them as
//! complexes of cellular sheaves on exact hyperplane arrangements, computes
//! stalks and derived hom complexes by exact linear algebra, and compares the
//! results against an independent combinatorial computation of line bundle
//! cohomology.
//!
//! Module map:
//!
//! * [`lattice_fan`]: lattices, cones and smooth complete fans.
//! * [`divisors`]: toric divisors, support functions, twisted polytopes,
//!   probe divisors and the interpolating deformation path.
//! * [`arrangement`]: cell complexes cut out by rational hyperplanes.
//! * [`cellular`]: cellular sheaves, their complexes and derived homs.
//! * [`twisted_sheaf`]: shard complexes `P(chi)` and torus homs.
//! * [`microlocal`]: singular support bounds and path certificates.
//! * [`harness`]: verification suites tying both sides together.

pub mod arrangement;
pub mod cellular;
pub mod divisors;
pub mod error;
pub mod harness;
pub mod lattice_fan;
pub mod linalg;
pub mod microlocal;
pub mod polyhedron;
pub mod render;
pub mod twisted_sheaf;

pub use error::{Result, TcccError};
pub use linalg::Rational;
