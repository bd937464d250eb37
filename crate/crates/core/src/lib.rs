//! Operator half-space and disk geometry over `M_n(C)`.
//!
//! The half-space `H = {h : Im h > 0}` and the disk `D = {z : ||z|| < 1}` are
//! homogeneous for the groups `U(theta_H)` and `U(theta_D)` of 2x2 block
//! matrices preserving the forms attached to `rho_H` and `rho_D`. Both
//! embed in the positive cone of `M_{2n}(C)` through the reflection space,
//! which carries a Finsler metric with nonpositive curvature.

pub mod block2;
pub mod cmat;
pub mod error;
pub mod geometry;
pub mod io;
pub mod models;
pub mod par;
pub mod random;
pub mod reflections;
pub mod verify;

pub use block2::{Block2, FormTag, LieElem, Pair};
pub use cmat::{CMat, Tolerance, C64, I};
pub use error::{GeomError, Result};
pub use geometry::PosPoint;
pub use models::{DPoint, HPoint, KPair, ModelPoint};
pub use random::RandSuite;
pub use reflections::Reflection;
