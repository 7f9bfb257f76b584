//! Intrinsic curvature of conformal patches, the Monge–Ampère residual and
//! the ray probe for isolated singularities.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use super::patches::ConformalPatch;
use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::quadrature::{pairwise_sum, GaussLegendre};

/// Default finite-difference step for curvature quadrature.
pub const CURVATURE_FD_STEP: f64 = 1e-3;

/// `K = −Δ(log Λ) / (2Λ)` by the five-point Laplacian of `log Λ`.
pub fn gauss_curvature_conformal(patch: &ConformalPatch, u: f64, v: f64, fd_step: f64) -> Result<f64> {
    if !(fd_step > 0.0 && fd_step.is_finite()) {
        return Err(Error::InvalidParameter(format!("fd_step must be positive, got {fd_step}")));
    }
    let lam = patch.conformal_factor(u, v);
    if !(lam > 0.0 && lam.is_finite()) {
        return Err(Error::NonFinite(format!("conformal factor {lam} of `{}` at ({u}, {v})", patch.name)));
    }
    Ok(-0.5 * log_laplacian(patch, u, v, fd_step) / lam)
}

fn log_laplacian(patch: &ConformalPatch, u: f64, v: f64, h: f64) -> f64 {
    let l = |a: f64, b: f64| patch.conformal_factor(a, b).ln();
    (l(u + h, v) + l(u - h, v) + l(u, v + h) + l(u, v - h) - 4.0 * l(u, v)) / (h * h)
}

/// `∫∫ K Λ du dv` over `[a, b] × [0, 2π]` with an `n × n` tensor rule.
fn curvature_integral(patch: &ConformalPatch, a: f64, b: f64, n: usize, rule: &GaussLegendre) -> f64 {
    let us: Vec<(f64, f64)> = rule.mapped(a, b).collect();
    let vs: Vec<(f64, f64)> = rule.mapped(0.0, TAU).collect();
    let rows: Vec<f64> = us
        .par_iter()
        .map(|&(u, wu)| {
            let terms: Vec<f64> = vs
                .iter()
                .map(|&(v, wv)| wu * wv * (-0.5 * log_laplacian(patch, u, v, CURVATURE_FD_STEP)))
                .collect();
            pairwise_sum(&terms)
        })
        .collect();
    debug_assert_eq!(rows.len(), n);
    pairwise_sum(&rows)
}

/// Truncated total curvature and an estimate of the neglected tail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TotalCurvature {
    pub t: f64,
    pub n: usize,
    pub value: f64,
    /// Integral over `T < |u| < 2T`.
    pub tail_estimate: f64,
}

/// `∫∫ K dA` over `[−T, T] × [0, 2π]` with `n × n` Gauss–Legendre nodes.
pub fn total_curvature(patch: &ConformalPatch, t: f64, n: usize) -> Result<TotalCurvature> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("T must be positive, got {t}")));
    }
    if n < 16 {
        return Err(Error::InvalidParameter(format!("need n >= 16 quadrature nodes, got {n}")));
    }
    let rule = GaussLegendre::new(n);
    let value = curvature_integral(patch, -t, t, n, &rule);
    let tail = curvature_integral(patch, t, 2.0 * t, n, &rule) + curvature_integral(patch, -2.0 * t, -t, n, &rule);
    if !value.is_finite() {
        return Err(Error::NonFinite(format!("total curvature of `{}`", patch.name)));
    }
    Ok(TotalCurvature {
        t,
        n,
        value,
        tail_estimate: tail,
    })
}

/// `h_xx h_yy − h_xy² − 1` from the Hessian entries of a jet.
pub fn monge_ampere_residual(h: &Jet2) -> f64 {
    h.dxx * h.dyy - h.dxy * h.dxy - 1.0
}

/// Jet of the potential `h` of the Lagrangian Scherk graph, without its value.
///
/// The gradient is the textbook pair; the Hessian is its exact derivative
/// (`h_xy` taken from the first component).
pub fn lagrangian_scherk_hessian(chart: &Chart, x: f64, y: f64) -> Result<Jet2> {
    let (a, b) = chart.jets(x, y)?;
    Ok(Jet2::new(0.0, a.value, b.value, a.dx, a.dy, b.dy))
}

/// Limit of `(f, g)` along one ray.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayLimit {
    pub angle: f64,
    pub f: f64,
    pub g: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub center: (f64, f64),
    pub radii: Vec<f64>,
    pub rays: Vec<RayLimit>,
    /// Largest `max(|Δf|, |Δg|)` over pairs of rays.
    pub max_discrepancy: f64,
}

impl ProbeReport {
    pub fn ray(&self, angle: f64) -> Option<&RayLimit> {
        self.rays.iter().find(|r| (r.angle - angle).abs() < 1e-12)
    }

    pub fn discrepancy(a: &RayLimit, b: &RayLimit) -> f64 {
        (a.f - b.f).abs().max((a.g - b.g).abs())
    }
}

/// Default radii for [`singularity_probe`].
pub fn default_probe_radii() -> Vec<f64> {
    vec![1e-2, 5e-3, 2.5e-3, 1.25e-3]
}

/// Samples the chart along eight rays into `center` and extrapolates each
/// ray's limit linearly in the radius from the two smallest radii.
pub fn singularity_probe(chart: &Chart, center: (f64, f64), radii: &[f64]) -> Result<ProbeReport> {
    if radii.len() < 2 || radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::InvalidParameter("need at least two positive radii".into()));
    }
    let mut radii = radii.to_vec();
    radii.sort_by(|a, b| b.total_cmp(a));
    let (r1, r2) = (radii[radii.len() - 2], radii[radii.len() - 1]);
    let mut rays = Vec::new();
    for k in 0..8 {
        let angle = k as f64 * std::f64::consts::FRAC_PI_4;
        let (c, s) = (angle.cos(), angle.sin());
        let at = |r: f64| chart.heights(center.0 + r * c, center.1 + r * s);
        let (f1, g1) = at(r1)?;
        let (f2, g2) = at(r2)?;
        let extrapolate = |v1: f64, v2: f64| v2 - r2 * (v1 - v2) / (r1 - r2);
        rays.push(RayLimit {
            angle,
            f: extrapolate(f1, f2),
            g: extrapolate(g1, g2),
        });
    }
    let mut max_discrepancy: f64 = 0.0;
    for (i, a) in rays.iter().enumerate() {
        for b in &rays[i + 1..] {
            max_discrepancy = max_discrepancy.max(ProbeReport::discrepancy(a, b));
        }
    }
    Ok(ProbeReport {
        center,
        radii,
        rays,
        max_discrepancy,
    })
}
