//! First fundamental form and second-order operators of a graph chart.

use serde::{Deserialize, Serialize};

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::jet::Jet2;

/// Induced metric `E dx² + 2F dx dy + G dy²` and area element `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FundamentalForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub omega: f64,
}

impl FundamentalForm {
    /// `(E/ω, F/ω, G/ω)`, a unimodular symmetric matrix.
    pub fn normalized(&self) -> (f64, f64, f64) {
        (self.e / self.omega, self.f / self.omega, self.g / self.omega)
    }

    /// `G u_xx − 2F u_xy + E u_yy`.
    pub fn mso(&self, u: &Jet2) -> f64 {
        self.g * u.dxx - 2.0 * self.f * u.dxy + self.e * u.dyy
    }
}

/// Area element from first partials only.
///
/// Uses `ω² = 1 + |∇f|² + |∇g|² + (f_x g_y − f_y g_x)²`, which avoids the
/// cancellation in `EG − F²`.
pub fn area_element(fx: f64, fy: f64, gx: f64, gy: f64) -> f64 {
    let j = fx * gy - fy * gx;
    (1.0 + fx * fx + fy * fy + gx * gx + gy * gy + j * j).sqrt()
}

pub fn fundamental_form(jf: &Jet2, jg: &Jet2) -> FundamentalForm {
    FundamentalForm {
        e: 1.0 + jf.dx * jf.dx + jg.dx * jg.dx,
        f: jf.dx * jf.dy + jg.dx * jg.dy,
        g: 1.0 + jf.dy * jf.dy + jg.dy * jg.dy,
        omega: area_element(jf.dx, jf.dy, jg.dx, jg.dy),
    }
}

/// `(L_Σ f, L_Σ g)`; both vanish exactly on solutions of the minimal surface system.
pub fn mss_residual(jf: &Jet2, jg: &Jet2) -> (f64, f64) {
    let ff = fundamental_form(jf, jg);
    (ff.mso(jf), ff.mso(jg))
}

pub fn conformal_ratio(jf: &Jet2, jg: &Jet2) -> (f64, f64, f64) {
    fundamental_form(jf, jg).normalized()
}

fn check_fd_step(chart: &Chart, x: f64, y: f64, h: f64) -> Result<()> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameter(format!("fd_step must be positive, got {h}")));
    }
    chart.require_margin(x, y, 2.0 * h)
}

/// The central differences of `(E/ω, F/ω, G/ω)` that enter `H`.
struct RatioDerivatives {
    e_y: f64,
    f_x: f64,
    f_y: f64,
    g_x: f64,
}

fn ratio_derivatives(chart: &Chart, x: f64, y: f64, h: f64) -> Result<RatioDerivatives> {
    let ratio = |u: f64, v: f64| -> Result<(f64, f64, f64)> {
        let (jf, jg) = chart.jets(u, v)?;
        Ok(conformal_ratio(&jf, &jg))
    };
    let (xp, xm) = (ratio(x + h, y)?, ratio(x - h, y)?);
    let (yp, ym) = (ratio(x, y + h)?, ratio(x, y - h)?);
    let d = 2.0 * h;
    Ok(RatioDerivatives {
        e_y: (yp.0 - ym.0) / d,
        f_x: (xp.1 - xm.1) / d,
        f_y: (yp.1 - ym.1) / d,
        g_x: (xp.2 - xm.2) / d,
    })
}

/// Mean curvature vector `H` in R⁴ at `(x, y)`.
///
/// `P = ∂x(G/ω) − ∂y(F/ω)` and `Q = ∂y(E/ω) − ∂x(F/ω)` are central differences
/// of exact first-order data with step `fd_step`; the rest is exact.
pub fn mean_curvature_vector(chart: &Chart, x: f64, y: f64, fd_step: f64) -> Result<[f64; 4]> {
    check_fd_step(chart, x, y, fd_step)?;
    let (jf, jg) = chart.jets(x, y)?;
    let ff = fundamental_form(&jf, &jg);
    let d = ratio_derivatives(chart, x, y, fd_step)?;
    let p = d.g_x - d.f_y;
    let q = d.e_y - d.f_x;
    let w = ff.omega;
    Ok([
        p / w,
        q / w,
        (p * jf.dx + q * jf.dy + ff.mso(&jf) / w) / w,
        (p * jg.dx + q * jg.dy + ff.mso(&jg) / w) / w,
    ])
}

/// `(∂y(F/ω) − ∂x(G/ω), ∂y(E/ω) − ∂x(F/ω))` by central differences.
pub fn divergence_identities_residual(chart: &Chart, x: f64, y: f64, fd_step: f64) -> Result<(f64, f64)> {
    check_fd_step(chart, x, y, fd_step)?;
    let d = ratio_derivatives(chart, x, y, fd_step)?;
    Ok((d.f_y - d.g_x, d.e_y - d.f_x))
}

/// Laplace–Beltrami operator of the induced metric applied to `u`,
/// `Δ_Σ u = (1/ω)[∂x((G u_x − F u_y)/ω) + ∂y((E u_y − F u_x)/ω)]`.
///
/// The fluxes use exact first partials of `u` and of the chart; their
/// divergence is a central difference with step `fd_step`.
pub fn laplace_beltrami<U>(chart: &Chart, u: U, x: f64, y: f64, fd_step: f64) -> Result<f64>
where
    U: Fn(f64, f64) -> Jet2,
{
    check_fd_step(chart, x, y, fd_step)?;
    let flux = |a: f64, b: f64| -> Result<(f64, f64)> {
        let (jf, jg) = chart.jets(a, b)?;
        let (e, f, g) = conformal_ratio(&jf, &jg);
        let ju = u(a, b);
        Ok((g * ju.dx - f * ju.dy, e * ju.dy - f * ju.dx))
    };
    let h = fd_step;
    let div = (flux(x + h, y)?.0 - flux(x - h, y)?.0 + flux(x, y + h)?.1 - flux(x, y - h)?.1) / (2.0 * h);
    let (jf, jg) = chart.jets(x, y)?;
    Ok(div / fundamental_form(&jf, &jg).omega)
}
