//! Gradient descent on the discrete area with Armijo backtracking.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::area::{area_change, area_gradient, discrete_area, AreaGradient};
use super::grid::GridField;
use crate::error::{Error, Result};

const ARMIJO: f64 = 1e-4;
const MAX_HALVINGS: usize = 60;

/// How the trial step of each line search is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum StepRule {
    /// Start from `initial`, then from twice the last accepted step.
    Backtracking { initial: f64 },
    /// Barzilai–Borwein step `sᵀs / sᵀy`, clamped to `[min, max]`.
    BarzilaiBorwein { min: f64, max: f64 },
}

impl Default for StepRule {
    fn default() -> Self {
        StepRule::BarzilaiBorwein { min: 1e-12, max: 1e12 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveParams {
    pub max_iter: usize,
    /// Stop once the sup-norm of the area gradient is at most this.
    pub tol: f64,
    pub step_rule: StepRule,
}

impl Default for SolveParams {
    fn default() -> Self {
        SolveParams {
            max_iter: 200_000,
            tol: 1e-12,
            step_rule: StepRule::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Converged,
    MaxIterations,
    /// No step satisfied the Armijo condition.
    Stalled,
    NonFinite,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub iterations: usize,
    pub initial_area: f64,
    pub final_area: f64,
    pub final_gradient_norm: f64,
    pub converged: bool,
    pub status: SolveStatus,
    /// Seconds; not serialized so reports stay reproducible.
    #[serde(skip)]
    pub wall_time: f64,
    /// Initial area followed by the running total of accepted decrements.
    #[serde(skip)]
    pub area_history: Vec<f64>,
}

impl SolveReport {
    pub fn is_monotone(&self) -> bool {
        self.area_history.windows(2).all(|w| w[1] <= w[0])
    }
}

fn validate(params: &SolveParams) -> Result<()> {
    if !(params.tol >= 0.0 && params.tol.is_finite()) {
        return Err(Error::InvalidParameter(format!("tol must be a finite non-negative number, got {}", params.tol)));
    }
    match params.step_rule {
        StepRule::Backtracking { initial } if !(initial > 0.0 && initial.is_finite()) => {
            Err(Error::InvalidParameter(format!("initial step must be positive, got {initial}")))
        }
        StepRule::BarzilaiBorwein { min, max } if !(min > 0.0 && max >= min && max.is_finite()) => {
            Err(Error::InvalidParameter(format!("step bounds must satisfy 0 < min <= max, got [{min}, {max}]")))
        }
        _ => Ok(()),
    }
}

/// Minimizes the discrete area over the free nodes of `grid` in place.
pub fn solve(grid: &mut GridField, params: &SolveParams) -> Result<SolveReport> {
    validate(params)?;
    let start = Instant::now();
    let mut area = discrete_area(grid);
    let mut grad = area_gradient(grid);
    let initial_area = area;
    let mut history = vec![area];
    let mut iterations = 0;
    let mut last_step = match params.step_rule {
        StepRule::Backtracking { initial } => initial,
        StepRule::BarzilaiBorwein { .. } => {
            let s = grad.sup_norm();
            if s > 0.0 {
                (grid.hx() * grid.hy()).sqrt() * 1e-2 / s
            } else {
                1.0
            }
        }
    };
    let mut prev: Option<(GridField, AreaGradient)> = None;
    let status = loop {
        if !area.is_finite() || !grad.is_finite() {
            break SolveStatus::NonFinite;
        }
        if grad.sup_norm() <= params.tol {
            break SolveStatus::Converged;
        }
        if iterations >= params.max_iter {
            break SolveStatus::MaxIterations;
        }
        let mut step = match (params.step_rule, &prev) {
            (StepRule::Backtracking { .. }, _) => 2.0 * last_step,
            (StepRule::BarzilaiBorwein { min, max }, Some((old, old_grad))) => {
                let s = GradientLike::diff(grid, old);
                let y = GradientLike::diff_grad(&grad, old_grad);
                let sy = s.dot(&y);
                if sy > 0.0 {
                    (s.norm_sq() / sy).clamp(min, max)
                } else {
                    last_step
                }
            }
            (StepRule::BarzilaiBorwein { .. }, None) => last_step,
        };
        let g2 = grad.norm_sq();
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let change = area_change(grid, &grad.df, &grad.dg, -step);
            if change.is_finite() && change < 0.0 && change <= -ARMIJO * step * g2 {
                accepted = Some(change);
                break;
            }
            step *= 0.5;
        }
        let Some(change) = accepted else {
            break SolveStatus::Stalled;
        };
        let mut trial = grid.clone();
        trial.axpy_free(-step, &grad.df, &grad.dg);
        let old = std::mem::replace(grid, trial);
        let new_grad = area_gradient(grid);
        prev = Some((old, std::mem::replace(&mut grad, new_grad)));
        area += change;
        last_step = step;
        history.push(area);
        iterations += 1;
    };
    let final_area = discrete_area(grid);
    Ok(SolveReport {
        iterations,
        initial_area,
        final_area,
        final_gradient_norm: grad.sup_norm(),
        converged: status == SolveStatus::Converged,
        status,
        wall_time: start.elapsed().as_secs_f64(),
        area_history: history,
    })
}

/// Differences of nodal values, packed like a gradient.
struct GradientLike;

impl GradientLike {
    fn diff(a: &GridField, b: &GridField) -> AreaGradient {
        AreaGradient {
            df: a.f().iter().zip(b.f()).map(|(x, y)| x - y).collect(),
            dg: a.g().iter().zip(b.g()).map(|(x, y)| x - y).collect(),
        }
    }

    fn diff_grad(a: &AreaGradient, b: &AreaGradient) -> AreaGradient {
        AreaGradient {
            df: a.df.iter().zip(&b.df).map(|(x, y)| x - y).collect(),
            dg: a.dg.iter().zip(&b.dg).map(|(x, y)| x - y).collect(),
        }
    }
}
