//! Numerical laboratory for two dimensional minimal graphs in R⁴.
//!
//! The crate is organised bottom-up:
//!
//! * [`jet`]: second-order jets and the [`Real`](jet::Real) scalar trait used to
//!   write every closed-form height function once and evaluate it either as a
//!   plain `f64` or with exact first and second partials.
//! * [`chart`]: graph charts `(x, y) ↦ (x, y, f, g)` over explicit domains.
//! * [`geometry`]: first fundamental form, minimal surface operator, mean
//!   curvature vector and the divergence identities.
//! * [`gauss`]: generalized Gauss map into CP³, the Osserman first-order
//!   system and hyperplane degeneracy detection.
//! * [`lagrange`]: Lagrange potentials of minimal graphs in R³ and the
//!   λ-deformation into R⁴.
//! * [`catalog`]: closed-form families, conformal patches, curvature
//!   quadrature and the string-keyed registry used by the CLI.
//! * [`special_lagrangian`]: ruled potentials in C³ and their SLE residual.
//! * [`solver`]: discrete area minimisation on rectangular grids.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod chart;
pub mod error;
pub mod gauss;
pub mod geometry;
pub mod jet;
pub mod lagrange;
pub mod quadrature;
pub mod sampling;
pub mod solver;
pub mod special_lagrangian;

pub use chart::{Bounds, Chart, ChartMeta, Domain};
pub use error::{Error, Result};
pub use jet::{Jet2, Real};
