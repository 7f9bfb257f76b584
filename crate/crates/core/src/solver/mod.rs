//! Dirichlet problem for the minimal surface system by discrete area
//! minimization on rectangular grids.

pub mod area;
pub mod grid;
pub mod solve;

pub use area::{area_gradient, discrete_area, AreaGradient};
pub use grid::{GridField, GRID_SCHEMA_VERSION};
pub use solve::{solve, SolveParams, SolveReport, SolveStatus, StepRule};
