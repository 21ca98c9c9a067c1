//! Arithmetic and geometry of the three 3-dimensional unital associative
//! algebras with basis `{1, e1, e2}`.
//!
//! The crate is `no_std` (with `alloc`) and purely computational:
//!
//! * [`algebra`]: elements, the three multiplication tables, conjugation,
//!   the degenerate scalar product, inversion and subalgebra classification.
//! * [`group`]: the group `G` of invertible type II elements, its subgroups
//!   `H1`, `H2`, `S1`, `S2`, the two fibrations of `G`, left/right
//!   multiplication matrices and the induced maps of the base lines.
//! * [`rotation`]: rotations, anti-rotations and plane reflections of the
//!   semi-Euclidean space.
//! * [`adapted`]: coordinates `(u, lambda, phi)` adapted to the fibration and
//!   the semi-Euclidean spheres `S2(+1)`, `S2(-1)`.
//! * [`conformal`]: stereographic projection of `S2(1)` to the
//!   semi-conformal plane.
//! * [`projective`]: the hyperquadric model with its normalized plane,
//!   connection, curvature and geodesics.
//! * [`numeric`]: finite differences, the geodesic integrator and tangency
//!   residuals shared by the checks.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod adapted;
pub mod algebra;
pub mod conformal;
mod error;
pub mod group;
pub mod numeric;
pub mod projective;
pub mod rotation;

pub use adapted::{Adapted, Chart, Sign, SpherePoint};
pub use algebra::{AlgebraKind, Element, MulTable, SubalgebraClass};
pub use conformal::PlanePoint;
pub use error::{Error, Result};
pub use group::{AffineMap, BaseMap, Fibration, HyperbolicMap, Mat3, SubgroupTag};
pub use projective::{AlphaPoint, ConnectionData, HPoint};

/// Absolute tolerance used for the defining equalities of subgroups,
/// spheres and fibers.
pub const EQ_TOL: f64 = 1e-9;
