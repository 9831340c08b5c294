//! Numerical laboratory for the boundary δ-torsional rigidity
//!
//! `T(Ω;δ) = sup (∫_{∂Ω} φ)² / (‖∇φ‖² + δ²‖φ‖²)`
//!
//! of a domain Ω, its maximiser (the boundary torsion function, solving
//! `-Δu + δ²u = 0` in Ω with unit Neumann data) and the first eigenvalue of
//! the associated modified Steklov problem.
//!
//! * [`specfun`]: modified Bessel functions and Gamma at half-integers.
//! * [`exact`]: closed forms for balls, spherical shells and boxes in any
//!   dimension.
//! * [`convexgeom`]: inradius, high ridge, proximal and circumscribed
//!   radius of convex polygons.
//! * [`mesh`] and [`fem`]: P1 finite elements on planar domains.
//! * [`bounds`]: geometric inequalities evaluated as verdicts with slack.
//! * [`cli`]: the report pipeline behind the `btl` binary.

// `!(x > 0.0)` deliberately rejects NaN; index loops mirror the formulas
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bounds;
pub mod cli;
pub mod convexgeom;
pub mod error;
pub mod exact;
pub mod fem;
pub mod geometry;
pub mod mesh;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
pub use geometry::Point;
