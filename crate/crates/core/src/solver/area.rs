//! Discrete area functional and its exact gradient.
//!
//! Each cell carries the bilinear interpolant of its four corner values and
//! `ω` is integrated with the 2 × 2 Gauss rule.

use rayon::prelude::*;

use super::grid::GridField;
use crate::geometry::area_element;
use crate::quadrature::pairwise_sum;

const GAUSS: [f64; 2] = [0.211_324_865_405_187_1, 0.788_675_134_594_812_9];

/// Corner order within a cell: `(i, j), (i+1, j), (i, j+1), (i+1, j+1)`.
fn corners(grid: &GridField, i: usize, j: usize) -> [usize; 4] {
    let k = grid.index(i, j);
    [k, k + 1, k + grid.nx(), k + grid.nx() + 1]
}

/// Derivative weights of `(u_x, u_y)` at local point `(s, t)` w.r.t. the corners.
fn shape_gradients(s: f64, t: f64, hx: f64, hy: f64) -> [[f64; 4]; 2] {
    [
        [-(1.0 - t) / hx, (1.0 - t) / hx, -t / hx, t / hx],
        [-(1.0 - s) / hy, -s / hy, (1.0 - s) / hy, s / hy],
    ]
}

fn cell_area(grid: &GridField, i: usize, j: usize) -> f64 {
    let c = corners(grid, i, j);
    let (f, g) = (grid.f(), grid.g());
    let w = 0.25 * grid.hx() * grid.hy();
    let mut sum = 0.0;
    for &t in &GAUSS {
        for &s in &GAUSS {
            let d = shape_gradients(s, t, grid.hx(), grid.hy());
            let grad = |v: &[f64], r: usize| (0..4).map(|m| d[r][m] * v[c[m]]).sum::<f64>();
            sum += area_element(grad(f, 0), grad(f, 1), grad(g, 0), grad(g, 1));
        }
    }
    w * sum
}

/// `∂A_cell/∂(f, g)` at the four corners.
fn cell_gradient(grid: &GridField, i: usize, j: usize) -> [[f64; 2]; 4] {
    let c = corners(grid, i, j);
    let (f, g) = (grid.f(), grid.g());
    let w = 0.25 * grid.hx() * grid.hy();
    let mut out = [[0.0; 2]; 4];
    for &t in &GAUSS {
        for &s in &GAUSS {
            let d = shape_gradients(s, t, grid.hx(), grid.hy());
            let grad = |v: &[f64], r: usize| (0..4).map(|m| d[r][m] * v[c[m]]).sum::<f64>();
            let (fx, fy, gx, gy) = (grad(f, 0), grad(f, 1), grad(g, 0), grad(g, 1));
            let jac = fx * gy - fy * gx;
            let om = area_element(fx, fy, gx, gy);
            let (a_fx, a_fy) = ((fx + jac * gy) / om, (fy - jac * gx) / om);
            let (a_gx, a_gy) = ((gx - jac * fy) / om, (gy + jac * fx) / om);
            for m in 0..4 {
                out[m][0] += w * (a_fx * d[0][m] + a_fy * d[1][m]);
                out[m][1] += w * (a_gx * d[0][m] + a_gy * d[1][m]);
            }
        }
    }
    out
}

/// Sum over cells of `∫ ω dx dy` for the bilinear interpolant.
pub fn discrete_area(grid: &GridField) -> f64 {
    let (cx, cy) = (grid.nx() - 1, grid.ny() - 1);
    let rows: Vec<f64> = (0..cy)
        .into_par_iter()
        .map(|j| pairwise_sum(&(0..cx).map(|i| cell_area(grid, i, j)).collect::<Vec<_>>()))
        .collect();
    pairwise_sum(&rows)
}

fn cell_change(grid: &GridField, df: &[f64], dg: &[f64], step: f64, i: usize, j: usize) -> f64 {
    let c = corners(grid, i, j);
    let (f, g) = (grid.f(), grid.g());
    let free = |v: &[f64], m: usize| if grid.is_fixed(c[m]) { 0.0 } else { step * v[c[m]] };
    let w = 0.25 * grid.hx() * grid.hy();
    let mut sum = 0.0;
    for &t in &GAUSS {
        for &s in &GAUSS {
            let d = shape_gradients(s, t, grid.hx(), grid.hy());
            let grad = |v: &[f64], r: usize| (0..4).map(|m| d[r][m] * v[c[m]]).sum::<f64>();
            let dgrad = |v: &[f64], r: usize| (0..4).map(|m| d[r][m] * free(v, m)).sum::<f64>();
            let (fx, fy, gx, gy) = (grad(f, 0), grad(f, 1), grad(g, 0), grad(g, 1));
            let (ax, ay, bx, by) = (dgrad(df, 0), dgrad(df, 1), dgrad(dg, 0), dgrad(dg, 1));
            let jac = fx * gy - fy * gx;
            let djac = fx * by + ax * gy + ax * by - fy * bx - ay * gx - ay * bx;
            let dsq = ax * (2.0 * fx + ax)
                + ay * (2.0 * fy + ay)
                + bx * (2.0 * gx + bx)
                + by * (2.0 * gy + by)
                + djac * (2.0 * jac + djac);
            let om = area_element(fx, fy, gx, gy);
            let om_new = area_element(fx + ax, fy + ay, gx + bx, gy + by);
            sum += dsq / (om + om_new);
        }
    }
    w * sum
}

/// `A(u + step · d) − A(u)` for a direction `d` on the free nodes, computed
/// without cancellation against the total area.
pub fn area_change(grid: &GridField, df: &[f64], dg: &[f64], step: f64) -> f64 {
    let (cx, cy) = (grid.nx() - 1, grid.ny() - 1);
    let rows: Vec<f64> = (0..cy)
        .into_par_iter()
        .map(|j| pairwise_sum(&(0..cx).map(|i| cell_change(grid, df, dg, step, i, j)).collect::<Vec<_>>()))
        .collect();
    pairwise_sum(&rows)
}

/// Exact gradient of [`discrete_area`] in the nodal values.
#[derive(Clone, Debug, PartialEq)]
pub struct AreaGradient {
    /// `∂A/∂f` per node, zero at fixed nodes.
    pub df: Vec<f64>,
    /// `∂A/∂g` per node, zero at fixed nodes.
    pub dg: Vec<f64>,
}

impl AreaGradient {
    pub fn sup_norm(&self) -> f64 {
        self.df.iter().chain(&self.dg).fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn norm_sq(&self) -> f64 {
        pairwise_sum(&self.df.iter().chain(&self.dg).map(|v| v * v).collect::<Vec<_>>())
    }

    pub fn dot(&self, other: &AreaGradient) -> f64 {
        let terms: Vec<f64> = self
            .df
            .iter()
            .zip(&other.df)
            .chain(self.dg.iter().zip(&other.dg))
            .map(|(a, b)| a * b)
            .collect();
        pairwise_sum(&terms)
    }

    pub fn is_finite(&self) -> bool {
        self.df.iter().chain(&self.dg).all(|v| v.is_finite())
    }
}

pub fn area_gradient(grid: &GridField) -> AreaGradient {
    let (nx, ny) = (grid.nx(), grid.ny());
    let (cx, cy) = (nx - 1, ny - 1);
    let cells: Vec<[[f64; 2]; 4]> = (0..cx * cy)
        .into_par_iter()
        .map(|c| cell_gradient(grid, c % cx, c / cx))
        .collect();
    let node: Vec<[f64; 2]> = (0..nx * ny)
        .into_par_iter()
        .map(|k| {
            if grid.is_fixed(k) {
                return [0.0; 2];
            }
            let (i, j) = (k % nx, k / nx);
            // Cells touching node (i, j), each with the node's corner slot.
            let mut acc = [0.0; 2];
            for (di, dj, slot) in [(1, 1, 3), (0, 1, 2), (1, 0, 1), (0, 0, 0)] {
                if i >= di && j >= dj && i - di < cx && j - dj < cy {
                    let cg = cells[(j - dj) * cx + (i - di)][slot];
                    acc[0] += cg[0];
                    acc[1] += cg[1];
                }
            }
            acc
        })
        .collect();
    AreaGradient {
        df: node.iter().map(|v| v[0]).collect(),
        dg: node.iter().map(|v| v[1]).collect(),
    }
}
