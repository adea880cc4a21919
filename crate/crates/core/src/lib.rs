//! Bolza-like hyperbolic surfaces obtained as branched double covers of cone
//! tori tiled by equilateral hyperbolic quadrilaterals.
//!
//! The crate is organised bottom-up:
//!
//! * [`hyp`]: hyperbolic trigonometry and disk-model isometries.
//! * [`quad`]: the quadrilateral `Q_ε` and its metric invariants.
//! * [`deform`]: length functions along the deformation and the critical `ε₀`.
//! * [`surface`]: the cone torus, its double cover and the combinatorial counts.
//! * [`verify`]: developed square chains and a depth-bounded systole certificate.
//! * [`parity`]: crossing counts of torus curves with the systolic arrangement.
//! * [`maximal`]: right-angled hexagons and the bordered surfaces `X(a)`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod deform;
pub mod epsilon;
pub mod error;
pub mod hyp;
pub mod maximal;
pub mod parity;
pub mod quad;
pub mod roots;
pub mod surface;
pub mod verify;

pub use epsilon::Epsilon;
pub use error::{GeomError, Result};
pub use hyp::{Angle, DiskPoint, HypLength, Isometry, Tolerance, TriangleSpec};
