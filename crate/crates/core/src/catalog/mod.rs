//! Closed-form families, conformal patches and the chart registry.

pub mod charts;
pub mod curvature;
pub mod patches;
pub mod registry;

pub use charts::{
    catenoid, catenoid_deform, chebyshev_t, helicoid, helicoid_deform, holomorphic_square, lagrangian_scherk,
    paraboloid_test, plane, saddle_tower, saddle_tower_general, scherk, scherk_doubly, scherk_doubly_sheared,
    scherk_sheared, scherk_tower, scherk_tower_general, sigma_alpha_beta, sigma_n, MinimalPair,
};
pub use curvature::{
    default_probe_radii, gauss_curvature_conformal, lagrangian_scherk_hessian, monge_ampere_residual,
    singularity_probe, total_curvature, ProbeReport, RayLimit, TotalCurvature,
};
pub use patches::{patch_f_minus, patch_f_plus, patch_flat, patch_xn, ConformalPatch};
