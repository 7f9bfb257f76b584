//! Ruled special Lagrangian graphs in C³ built from a minimal graph and its
//! Lagrange potential.
//!
//! The potential `F(x, y, z) = p(x, y) + λ z q(x, y)` is affine in `z`; its
//! gradient graph `(x, y, z, ∇F)` is a three-fold in R⁶ foliated by lines.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::chart::{Chart, ScalarMap};
use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::lagrange::PotentialField;

/// Value, gradient and Hessian of a function of `(x, y, z)`.
///
/// The Hessian is stored once as `[xx, xy, xz, yy, yz, zz]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Jet3 {
    pub value: f64,
    pub grad: [f64; 3],
    pub hess: [f64; 6],
}

impl Jet3 {
    pub fn new(value: f64, grad: [f64; 3], hess: [f64; 6]) -> Self {
        Jet3 { value, grad, hess }
    }

    /// Entry `(i, j)` of the Hessian.
    pub fn hessian(&self, i: usize, j: usize) -> f64 {
        const IDX: [[usize; 3]; 3] = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];
        self.hess[IDX[i][j]]
    }

    pub fn hessian_matrix(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.hessian(i, j)))
    }

    pub fn trace(&self) -> f64 {
        self.hess[0] + self.hess[3] + self.hess[5]
    }

    pub fn determinant(&self) -> f64 {
        let [a, b, c, d, e, f] = self.hess;
        a * (d * f - e * e) - b * (b * f - e * c) + c * (b * e - d * c)
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.grad.iter().chain(&self.hess).all(|v| v.is_finite())
    }
}

/// `det Hess F − tr Hess F`.
pub fn sle3_residual(jf: &Jet3) -> f64 {
    jf.determinant() - jf.trace()
}

/// `F = p + λ z q` for a minimal graph `p` and its Lagrange potential `q`.
#[derive(Clone, Debug)]
pub struct HlPotential {
    pub p: Chart,
    pub q: PotentialField,
    pub lambda: f64,
}

/// Builds the evaluator of `p + λ z q`.
pub fn hl_potential(p_chart: &Chart, q_field: &PotentialField, lambda: f64) -> Result<HlPotential> {
    if !p_chart.meta.r3_graph {
        return Err(Error::InvalidParameter(format!("`{}` is not a graph in R^3", p_chart.name)));
    }
    if !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!("lambda must be finite, got {lambda}")));
    }
    Ok(HlPotential {
        p: p_chart.clone(),
        q: q_field.clone(),
        lambda,
    })
}

impl HlPotential {
    fn base_jets(&self, x: f64, y: f64) -> Result<(Jet2, Jet2)> {
        let (jp, _) = self.p.jets(x, y)?;
        if !(self.q.margin(x, y) > 0.0) {
            return Err(Error::OutOfDomain {
                chart: self.q.source.clone(),
                x,
                y,
            });
        }
        Ok((jp, self.q.jet(x, y)))
    }

    pub fn jet(&self, x: f64, y: f64, z: f64) -> Result<Jet3> {
        if !z.is_finite() {
            return Err(Error::NonFinite(format!("z = {z}")));
        }
        let (jp, jq) = self.base_jets(x, y)?;
        let l = self.lambda;
        let lz = l * z;
        Ok(Jet3::new(
            jp.value + lz * jq.value,
            [jp.dx + lz * jq.dx, jp.dy + lz * jq.dy, l * jq.value],
            [
                jp.dxx + lz * jq.dxx,
                jp.dxy + lz * jq.dxy,
                l * jq.dx,
                jp.dyy + lz * jq.dyy,
                l * jq.dy,
                0.0,
            ],
        ))
    }

    /// `(L_p p, L_p (λ q))` with `L_p = (1+p_y²)∂xx − 2 p_x p_y ∂xy + (1+p_x²)∂yy`.
    pub fn system_residual(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        let (jp, jq) = self.base_jets(x, y)?;
        let op = |u: &Jet2| {
            (1.0 + jp.dy * jp.dy) * u.dxx - 2.0 * jp.dx * jp.dy * u.dxy + (1.0 + jp.dx * jp.dx) * u.dyy
        };
        Ok((op(&jp), self.lambda * op(&jq)))
    }
}

/// `(x, y, z, p_x − λz p_y/W, p_y + λz p_x/W, λ q)` with `W = √(1 + |∇p|²)`.
pub fn sl_graph_point(
    p_chart: &Chart,
    q_field: &PotentialField,
    lambda: f64,
    x: f64,
    y: f64,
    z: f64,
) -> Result<[f64; 6]> {
    let (jp, _) = p_chart.jets(x, y)?;
    if !(q_field.margin(x, y) > 0.0) {
        return Err(Error::OutOfDomain {
            chart: q_field.source.clone(),
            x,
            y,
        });
    }
    let w = (1.0 + jp.dx * jp.dx + jp.dy * jp.dy).sqrt();
    let lz = lambda * z;
    Ok([x, y, z, jp.dx - lz * jp.dy / w, jp.dy + lz * jp.dx / w, lambda * q_field.value(x, y)])
}

/// Closed form of the ruled graph over Scherk's doubly periodic surface.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoublyPeriodicSl {
    pub lambda: f64,
}

pub fn doubly_periodic_sl(lambda: f64) -> Result<DoublyPeriodicSl> {
    if !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!("lambda must be finite, got {lambda}")));
    }
    Ok(DoublyPeriodicSl { lambda })
}

impl DoublyPeriodicSl {
    /// `(x, y, z, A, B, C)`.
    pub fn point(&self, x: f64, y: f64, z: f64) -> Result<[f64; 6]> {
        if !(x.abs() < FRAC_PI_2 && y.abs() < FRAC_PI_2) {
            return Err(Error::OutOfDomain {
                chart: "doubly_periodic_sl".into(),
                x,
                y,
            });
        }
        let (sx, cx) = x.sin_cos();
        let (sy, cy) = y.sin_cos();
        let s = (1.0 - sx * sx * sy * sy).sqrt();
        let lz = self.lambda * z;
        let a = -sx / cx - lz * cx * sy / s;
        let b = sy / cy - lz * sx * cy / s;
        let c = -self.lambda * (sx * sy).asin();
        Ok([x, y, z, a, b, c])
    }
}
