//! Lagrange potentials of minimal graphs in R³ and the λ-deformation into R⁴.
//!
//! For a minimal graph `z = p(x, y)` the one-form `q_x dx + q_y dy` with
//! `(q_x, q_y) = (−p_y/W, p_x/W)`, `W = √(1 + |∇p|²)`, is closed, so on a
//! simply connected domain it has a potential `q`. The pair
//! `(cosh λ · p, sinh λ · q)` is then a minimal graph in R⁴ solving the
//! Osserman system with `μ = coth λ`.

use std::sync::Arc;

use crate::chart::{Bounds, Chart, Domain, HeightMap, ScalarMap};
use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::quadrature::{pairwise_sum, GaussLegendre};

/// Nodes per quadrature panel.
const GL_ORDER: usize = 8;

fn w_of(jp: &Jet2) -> f64 {
    (1.0 + jp.dx * jp.dx + jp.dy * jp.dy).sqrt()
}

/// `(q_x, q_y) = (−p_y/W, p_x/W)`.
pub fn lagrange_one_form(jp: &Jet2) -> (f64, f64) {
    let w = w_of(jp);
    (-jp.dy / w, jp.dx / w)
}

/// Jet of the Lagrange potential with the given value, from the jet of `p`.
///
/// The Hessian uses second partials of `p` only. The mixed partial is the
/// mean of `∂y q_x` and `∂x q_y`, which coincide when `p` is minimal.
pub fn potential_jet(jp: &Jet2, value: f64) -> Jet2 {
    let w = w_of(jp);
    let w2 = w * w;
    let wx = (jp.dx * jp.dxx + jp.dy * jp.dxy) / w;
    let wy = (jp.dx * jp.dxy + jp.dy * jp.dyy) / w;
    let qx_x = -jp.dxy / w + jp.dy * wx / w2;
    let qx_y = -jp.dyy / w + jp.dy * wy / w2;
    let qy_x = jp.dxx / w - jp.dx * wx / w2;
    let qy_y = jp.dxy / w - jp.dx * wy / w2;
    Jet2::new(value, -jp.dy / w, jp.dx / w, qx_x, 0.5 * (qx_y + qy_x), qy_y)
}

/// `∂x q_y − ∂y q_x`, equal to `L p / W³`; zero exactly when the one-form is closed.
pub fn closure_defect(jp: &Jet2) -> f64 {
    let w = w_of(jp);
    let l = (1.0 + jp.dy * jp.dy) * jp.dxx - 2.0 * jp.dx * jp.dy * jp.dxy + (1.0 + jp.dx * jp.dx) * jp.dyy;
    l / (w * w * w)
}

pub fn gradient_norm_sq(jq: &Jet2) -> f64 {
    jq.dx * jq.dx + jq.dy * jq.dy
}

/// `(1 − q_y²) q_xx + 2 q_x q_y q_xy + (1 − q_x²) q_yy`.
pub fn maximal_equation_residual(jq: &Jet2) -> Result<f64> {
    let g = gradient_norm_sq(jq);
    if !(g < 1.0) {
        return Err(Error::GradientEstimate(g));
    }
    Ok((1.0 - jq.dy * jq.dy) * jq.dxx + 2.0 * jq.dx * jq.dy * jq.dxy + (1.0 - jq.dx * jq.dx) * jq.dyy)
}

/// `cosh²λ · W − sinh²λ / W`.
pub fn omega_closed_form(jp: &Jet2, lambda: f64) -> f64 {
    let w = w_of(jp);
    let (c, s) = (lambda.cosh(), lambda.sinh());
    c * c * w - s * s / w
}

#[derive(Clone)]
enum Repr {
    Closed { q: Arc<dyn ScalarMap>, offset: f64 },
    Grid(Arc<GridPotential>),
}

/// A Lagrange potential `q` pinned by `q(basepoint) = 0`.
#[derive(Clone)]
pub struct PotentialField {
    pub source: String,
    pub basepoint: (f64, f64),
    repr: Repr,
}

impl std::fmt::Debug for PotentialField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match &self.repr {
            Repr::Closed { .. } => "closed",
            Repr::Grid(_) => "grid",
        };
        f.debug_struct("PotentialField")
            .field("source", &self.source)
            .field("basepoint", &self.basepoint)
            .field("kind", &kind)
            .finish()
    }
}

impl PotentialField {
    /// Closed-form potential shifted to vanish at `basepoint`.
    pub fn closed(source: impl Into<String>, q: Arc<dyn ScalarMap>, basepoint: (f64, f64)) -> Self {
        let offset = q.value(basepoint.0, basepoint.1);
        PotentialField {
            source: source.into(),
            basepoint,
            repr: Repr::Closed { q, offset },
        }
    }

    /// Potential tabulated on a grid over `bounds` with spacing at most `step`.
    ///
    /// Node values come from quadrature of the one-form; between nodes the
    /// value is a bicubic Hermite interpolant built from exact nodal
    /// derivatives, and the derivatives are exact everywhere.
    pub fn from_grid(p_chart: &Chart, basepoint: (f64, f64), bounds: Bounds, step: f64) -> Result<Self> {
        let grid = GridPotential::build(p_chart, basepoint, bounds, step)?;
        Ok(PotentialField {
            source: p_chart.name.clone(),
            basepoint,
            repr: Repr::Grid(Arc::new(grid)),
        })
    }

    pub fn is_closed_form(&self) -> bool {
        matches!(self.repr, Repr::Closed { .. })
    }

    /// Where the field is defined, as a margin (infinite for closed forms).
    pub fn margin(&self, x: f64, y: f64) -> f64 {
        match &self.repr {
            Repr::Closed { .. } => f64::INFINITY,
            Repr::Grid(g) => g.bounds.interior_margin(x, y),
        }
    }
}

impl ScalarMap for PotentialField {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        match &self.repr {
            Repr::Closed { q, offset } => q.jet(x, y) - *offset,
            Repr::Grid(g) => g.jet(x, y),
        }
    }
    fn value(&self, x: f64, y: f64) -> f64 {
        match &self.repr {
            Repr::Closed { q, offset } => q.value(x, y) - offset,
            Repr::Grid(g) => g.value(x, y),
        }
    }
}

struct GridPotential {
    p: Arc<dyn HeightMap>,
    bounds: Bounds,
    nx: usize,
    ny: usize,
    hx: f64,
    hy: f64,
    /// Per node: value, q_x, q_y, q_xy.
    nodes: Vec<[f64; 4]>,
}

impl GridPotential {
    fn build(chart: &Chart, basepoint: (f64, f64), bounds: Bounds, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidParameter(format!("grid step must be positive, got {step}")));
        }
        let nx = (bounds.width() / step).ceil() as usize + 1;
        let ny = (bounds.height() / step).ceil() as usize + 1;
        if nx < 2 || ny < 2 {
            return Err(Error::InvalidParameter("potential grid needs a box of positive area".into()));
        }
        let hx = bounds.width() / (nx - 1) as f64;
        let hy = bounds.height() / (ny - 1) as f64;
        let (x0, y0) = (bounds.x_min, bounds.y_min);
        let corner = integrate_potential(chart, basepoint, (x0, y0), step)?.value;
        let rule = GaussLegendre::new(GL_ORDER);
        let mut values = vec![0.0; nx * ny];
        values[0] = corner;
        for i in 1..nx {
            let xa = x0 + (i - 1) as f64 * hx;
            values[i] = values[i - 1] + leg(chart, &rule, Axis::X, y0, xa, xa + hx, hx)?;
        }
        for i in 0..nx {
            let x = x0 + i as f64 * hx;
            for j in 1..ny {
                let ya = y0 + (j - 1) as f64 * hy;
                values[j * nx + i] = values[(j - 1) * nx + i] + leg(chart, &rule, Axis::Y, x, ya, ya + hy, hy)?;
            }
        }
        let mut nodes = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let (x, y) = (x0 + i as f64 * hx, y0 + j as f64 * hy);
                let (jp, _) = chart.jets(x, y)?;
                let jq = potential_jet(&jp, values[j * nx + i]);
                nodes.push([jq.value, jq.dx, jq.dy, jq.dxy]);
            }
        }
        Ok(GridPotential {
            p: chart.map.clone(),
            bounds,
            nx,
            ny,
            hx,
            hy,
            nodes,
        })
    }

    fn value(&self, x: f64, y: f64) -> f64 {
        if !self.bounds.contains(x, y) {
            return f64::NAN;
        }
        let b = &self.bounds;
        let fi = ((x - b.x_min) / self.hx).clamp(0.0, (self.nx - 1) as f64);
        let fj = ((y - b.y_min) / self.hy).clamp(0.0, (self.ny - 1) as f64);
        let i = (fi.floor() as usize).min(self.nx - 2);
        let j = (fj.floor() as usize).min(self.ny - 2);
        let (s, t) = (fi - i as f64, fj - j as f64);
        let hs = hermite(s);
        let ht = hermite(t);
        let mut v = 0.0;
        for (a, di) in [(0, 0), (1, 1)] {
            for (bb, dj) in [(0, 0), (1, 1)] {
                let n = self.nodes[(j + dj) * self.nx + i + di];
                let (h0s, h1s) = hs[a];
                let (h0t, h1t) = ht[bb];
                v += h0s * h0t * n[0] + self.hx * h1s * h0t * n[1] + self.hy * h0s * h1t * n[2]
                    + self.hx * self.hy * h1s * h1t * n[3];
            }
        }
        v
    }

    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let (jp, _) = self.p.jets(x, y);
        potential_jet(&jp, self.value(x, y))
    }
}

/// Cubic Hermite basis on `[0, 1]`: `[(value at 0, slope at 0), (value at 1, slope at 1)]`.
fn hermite(t: f64) -> [(f64, f64); 2] {
    let t2 = t * t;
    let t3 = t2 * t;
    [
        (2.0 * t3 - 3.0 * t2 + 1.0, t3 - 2.0 * t2 + t),
        (-2.0 * t3 + 3.0 * t2, t3 - t2),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Axis {
    X,
    Y,
}

/// `∫ q_x dx` along `y = c` (or `∫ q_y dy` along `x = c`) from `a` to `b`.
fn leg(chart: &Chart, rule: &GaussLegendre, axis: Axis, c: f64, a: f64, b: f64, panel: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let m = crate::quadrature::panel_count(a, b, panel);
    let h = (b - a) / m as f64;
    let mut parts = Vec::with_capacity(m * rule.len());
    for k in 0..m {
        let lo = a + h * k as f64;
        let hi = if k + 1 == m { b } else { lo + h };
        for (t, w) in rule.mapped(lo, hi) {
            let (x, y) = match axis {
                Axis::X => (t, c),
                Axis::Y => (c, t),
            };
            let (jp, _) = chart.jets(x, y)?;
            let (qx, qy) = lagrange_one_form(&jp);
            parts.push(w * if axis == Axis::X { qx } else { qy });
        }
    }
    Ok(pairwise_sum(&parts))
}

/// Result of [`integrate_potential`].
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct PotentialIntegral {
    /// `q(target)` along the x-first staircase.
    pub value: f64,
    /// `q(target)` along the y-first staircase.
    pub value_y_first: f64,
    /// `|value − value_y_first|`.
    pub discrepancy: f64,
    /// Change of the x-first value under panel halving.
    pub error_estimate: f64,
}

/// Options for [`integrate_potential_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegrationOptions {
    pub grid_step: f64,
    /// Largest accepted disagreement between the two staircase orders.
    pub path_tolerance: f64,
}

impl IntegrationOptions {
    pub fn new(grid_step: f64) -> Self {
        IntegrationOptions {
            grid_step,
            path_tolerance: 1e-8,
        }
    }
}

/// `q(target)` with `q(basepoint) = 0`, by composite Gauss–Legendre along
/// axis-aligned staircase paths.
pub fn integrate_potential(
    p_chart: &Chart,
    basepoint: (f64, f64),
    target: (f64, f64),
    grid_step: f64,
) -> Result<PotentialIntegral> {
    integrate_potential_with(p_chart, basepoint, target, IntegrationOptions::new(grid_step))
}

pub fn integrate_potential_with(
    p_chart: &Chart,
    basepoint: (f64, f64),
    target: (f64, f64),
    opts: IntegrationOptions,
) -> Result<PotentialIntegral> {
    if !p_chart.meta.r3_graph {
        return Err(Error::InvalidParameter(format!(
            "`{}` is not a graph in R^3; Lagrange potentials need g = 0",
            p_chart.name
        )));
    }
    if !p_chart.domain.simply_connected {
        return Err(Error::NotSimplyConnected(p_chart.name.clone()));
    }
    let h = opts.grid_step;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameter(format!("grid_step must be positive, got {h}")));
    }
    let (x0, y0) = basepoint;
    let (x1, y1) = target;
    let exits = || Error::PathExitsDomain {
        chart: p_chart.name.clone(),
        x0,
        y0,
        x1,
        y1,
    };
    for corner in [(x0, y0), (x1, y0), (x0, y1), (x1, y1)] {
        if !p_chart.contains(corner.0, corner.1) {
            return Err(exits());
        }
    }
    let scan = |axis: Axis, c: f64, a: f64, b: f64| -> bool {
        let n = (((b - a).abs() / h) * 16.0).ceil() as usize + 1;
        (0..=n).all(|k| {
            let t = a + (b - a) * k as f64 / n as f64;
            match axis {
                Axis::X => p_chart.contains(t, c),
                Axis::Y => p_chart.contains(c, t),
            }
        })
    };
    if !(scan(Axis::X, y0, x0, x1) && scan(Axis::Y, x1, y0, y1) && scan(Axis::Y, x0, y0, y1) && scan(Axis::X, y1, x0, x1))
    {
        return Err(exits());
    }
    let rule = GaussLegendre::new(GL_ORDER);
    let map_err = |e: Error| match e {
        Error::OutOfDomain { .. } => exits(),
        other => other,
    };
    let x_first = |panel: f64| -> Result<f64> {
        Ok(leg(p_chart, &rule, Axis::X, y0, x0, x1, panel)? + leg(p_chart, &rule, Axis::Y, x1, y0, y1, panel)?)
    };
    let value = x_first(h).map_err(map_err)?;
    let refined = x_first(0.5 * h).map_err(map_err)?;
    let value_y_first = leg(p_chart, &rule, Axis::Y, x0, y0, y1, h)? + leg(p_chart, &rule, Axis::X, y1, x0, x1, h)?;
    let discrepancy = (value - value_y_first).abs();
    if discrepancy > opts.path_tolerance * value.abs().max(1.0) {
        return Err(Error::PathDependent {
            discrepancy,
            tolerance: opts.path_tolerance,
        });
    }
    Ok(PotentialIntegral {
        value,
        value_y_first,
        discrepancy,
        error_estimate: (value - refined).abs(),
    })
}

struct Deformed {
    p: Arc<dyn HeightMap>,
    q: PotentialField,
    c: f64,
    s: f64,
}

impl HeightMap for Deformed {
    fn jets(&self, x: f64, y: f64) -> (Jet2, Jet2) {
        let (jp, _) = self.p.jets(x, y);
        (jp * self.c, self.q.jet(x, y) * self.s)
    }
    fn heights(&self, x: f64, y: f64) -> (f64, f64) {
        (self.p.heights(x, y).0 * self.c, self.q.value(x, y) * self.s)
    }
}

/// The graph of `(cosh λ · p, sinh λ · q)`.
///
/// For `λ ≠ 0` the result satisfies the Osserman system with `μ = coth λ`,
/// recorded in its metadata. At `λ = 0` it is the original R³ graph.
pub fn deform(p_chart: &Chart, q_field: &PotentialField, lambda: f64) -> Result<Chart> {
    if !p_chart.meta.r3_graph {
        return Err(Error::InvalidParameter(format!("`{}` is not a graph in R^3", p_chart.name)));
    }
    if !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!("lambda must be finite, got {lambda}")));
    }
    let base = p_chart.domain.clone();
    let q = q_field.clone();
    let qm = q_field.clone();
    let mut domain = Domain::new(base.description.clone(), base.bounds, move |x, y| {
        base.margin(x, y).min(qm.margin(x, y))
    });
    domain.simply_connected = p_chart.domain.simply_connected;
    domain.periods = p_chart.domain.periods.clone();
    let map = Deformed {
        p: p_chart.map.clone(),
        q,
        c: lambda.cosh(),
        s: lambda.sinh(),
    };
    let mut chart = Chart::new(format!("{}:lambda={lambda}", p_chart.name), domain, Arc::new(map));
    chart.sample_margin = p_chart.sample_margin;
    chart.meta.lambda = Some(lambda);
    chart.meta.r3_graph = lambda == 0.0;
    chart.meta.osserman_mu = (lambda != 0.0).then(|| 1.0 / lambda.tanh());
    Ok(chart)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{Scalar, ScalarFormula};
    use crate::gauss::osserman_residual;
    use crate::geometry::{conformal_ratio, fundamental_form, mss_residual};
    use crate::jet::Real;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    struct Helicoid;
    impl ScalarFormula for Helicoid {
        fn eval<S: Real>(&self, x: S, y: S) -> S {
            x * y.tan()
        }
    }
    struct HelicoidQ;
    impl ScalarFormula for HelicoidQ {
        fn eval<S: Real>(&self, x: S, y: S) -> S {
            -(y.cos().square() + x.square()).sqrt()
        }
    }
    struct Catenoid;
    impl ScalarFormula for Catenoid {
        fn eval<S: Real>(&self, x: S, y: S) -> S {
            (y.cosh().square() - x.square()).sqrt()
        }
    }
    struct Punctured;
    impl ScalarFormula for Punctured {
        fn eval<S: Real>(&self, x: S, y: S) -> S {
            (x.square() + y.square()).sqrt().acosh()
        }
    }

    fn helicoid() -> Chart {
        let d = Domain::new("strip", Bounds::new(-2.0, 2.0, -FRAC_PI_2, FRAC_PI_2), |_, y| FRAC_PI_2 - y.abs());
        Chart::r3_graph("helicoid", d, Helicoid)
    }

    fn catenoid() -> Chart {
        let d = Domain::new("half catenoid", Bounds::new(-2.0, 2.0, -1.5, 1.5), |x, y| y.cosh() - x.abs());
        Chart::r3_graph("catenoid", d, Catenoid)
    }

    fn helicoid_q() -> PotentialField {
        PotentialField::closed("helicoid", Arc::new(Scalar(HelicoidQ)), (0.0, 0.0))
    }

    #[test]
    fn one_form_examples() {
        assert_eq!(lagrange_one_form(&Jet2::ZERO), (0.0, 0.0));
        let jp = helicoid().jets(1.0, 0.0).unwrap().0;
        let (qx, qy) = lagrange_one_form(&jp);
        assert_relative_eq!(qx, -std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_eq!(qy, 0.0);
    }

    #[test]
    fn potential_jet_matches_closed_form() {
        let c = helicoid();
        for &(x, y) in &[(0.3, 0.4), (-1.1, 1.0), (0.0, -0.2)] {
            let jp = c.jets(x, y).unwrap().0;
            let q = helicoid_q().jet(x, y);
            let from_p = potential_jet(&jp, q.value);
            for (a, b) in from_p.as_array().iter().zip(q.as_array()) {
                assert!((a - b).abs() < 1e-13, "{from_p:?} vs {q:?}");
            }
            assert!(closure_defect(&jp).abs() < 1e-13);
        }
    }

    #[test]
    fn helicoid_potential_integral() {
        let r = integrate_potential(&helicoid(), (0.0, 0.0), (1.0, 0.0), 0.1).unwrap();
        assert_relative_eq!(r.value, 1.0 - 2.0_f64.sqrt(), epsilon = 1e-13);
        let same = integrate_potential(&helicoid(), (0.3, 0.2), (0.3, 0.2), 0.1).unwrap();
        assert_eq!(same.value, 0.0);
    }

    #[test]
    fn catenoid_potential_integral() {
        // q = −x tanh y vanishes at the origin
        let r = integrate_potential(&catenoid(), (0.0, 0.0), (0.5, 0.3), 0.05).unwrap();
        assert_relative_eq!(r.value, -0.5 * 0.3_f64.tanh(), epsilon = 1e-13);
        assert!(r.discrepancy < 1e-12 && r.error_estimate < 1e-12);
    }

    #[test]
    fn integration_errors() {
        let h = helicoid();
        assert!(matches!(
            integrate_potential(&h, (0.0, 0.0), (0.0, 2.0), 0.1),
            Err(Error::PathExitsDomain { .. })
        ));
        let c = catenoid();
        // corner (1.2, 0) is outside |x| < cosh y
        assert!(matches!(
            integrate_potential(&c, (0.0, 0.0), (1.2, 1.0), 0.1),
            Err(Error::PathExitsDomain { .. })
        ));
        let ring = Domain::new("annulus", Bounds::square(3.0), |x, y| x.hypot(y) - 1.0).not_simply_connected();
        let p = Chart::r3_graph("catenoid", ring, Punctured);
        assert!(matches!(
            integrate_potential(&p, (1.5, 0.0), (2.0, 0.0), 0.1),
            Err(Error::NotSimplyConnected(_))
        ));
        assert!(integrate_potential(&h, (0.0, 0.0), (1.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn path_dependence_detected_for_non_minimal_p() {
        struct Bump;
        impl ScalarFormula for Bump {
            fn eval<S: Real>(&self, x: S, y: S) -> S {
                x.square() + y.square()
            }
        }
        let c = Chart::r3_graph("paraboloid", Domain::plane(Bounds::square(2.0)), Bump);
        assert!(matches!(
            integrate_potential(&c, (0.0, 0.0), (1.0, 1.0), 0.1),
            Err(Error::PathDependent { .. })
        ));
    }

    #[test]
    fn maximal_equation_examples() {
        assert_eq!(maximal_equation_residual(&Jet2::ZERO).unwrap(), 0.0);
        let (x, y) = (Jet2::var_x(0.4), Jet2::var_y(0.7));
        let q = x * y.tanh();
        assert!(maximal_equation_residual(&q).unwrap().abs() <= 1e-10);
        let (bx, by) = (Jet2::var_x(0.1), Jet2::var_y(0.1));
        let bowl = (bx.square() + by.square()) * 0.25;
        assert!(maximal_equation_residual(&bowl).unwrap().abs() > 0.1);
        let steep = Jet2::new(0.0, 1.0, 0.5, 0.0, 0.0, 0.0);
        assert!(matches!(maximal_equation_residual(&steep), Err(Error::GradientEstimate(_))));
    }

    #[test]
    fn omega_examples() {
        assert_relative_eq!(omega_closed_form(&Jet2::ZERO, 0.8), 1.0, max_relative = 1e-14);
        let lambda = 1.0_f64.asinh();
        let jp = Jet2::new(0.0, 3.0_f64.sqrt(), 0.0, 0.0, 0.0, 0.0);
        assert_relative_eq!(omega_closed_form(&jp, lambda), 3.5, max_relative = 1e-14);
    }

    #[test]
    fn deform_catenoid_example() {
        // W = 2 where |∇p|² = 3; with sinh λ = 1 the area element is 3.5
        let c = catenoid();
        struct CatQ;
        impl ScalarFormula for CatQ {
            fn eval<S: Real>(&self, x: S, y: S) -> S {
                -(x * y.tanh())
            }
        }
        let q = PotentialField::closed("catenoid", Arc::new(Scalar(CatQ)), (0.0, 0.0));
        let d = deform(&c, &q, 1.0_f64.asinh()).unwrap();
        // p_x² + p_y² = (x² + sinh²y cosh²y)/(cosh²y − x²) = 3 at y = 0 when x² = 3/4
        let x = 0.75_f64.sqrt();
        let (jf, jg) = d.jets(x, 0.0).unwrap();
        assert_relative_eq!(fundamental_form(&jf, &jg).omega, 3.5, max_relative = 1e-13);
    }

    #[test]
    fn deform_properties() {
        let c = helicoid();
        let q = helicoid_q();
        let flat = deform(&c, &q, 0.0).unwrap();
        assert!(flat.meta.r3_graph && flat.meta.osserman_mu.is_none());
        let (jf0, jg0) = flat.jets(0.3, 0.4).unwrap();
        assert_eq!(jf0, c.jets(0.3, 0.4).unwrap().0);
        assert_eq!(jg0, Jet2::ZERO);
        for lambda in [-1.0, 0.3, 2.0] {
            let d = deform(&c, &q, lambda).unwrap();
            let mu = d.meta.osserman_mu.unwrap();
            for &(x, y) in &[(0.3, 0.4), (-1.5, -1.0), (1.9, 0.2)] {
                let (jf, jg) = d.jets(x, y).unwrap();
                let (a, b) = osserman_residual(&jf, &jg, mu).unwrap();
                assert!(a.abs() <= 1e-10 && b.abs() <= 1e-10);
                let (m1, m2) = mss_residual(&jf, &jg);
                assert!(m1.abs() <= 1e-8 && m2.abs() <= 1e-8);
                let jp = c.jets(x, y).unwrap().0;
                let w = fundamental_form(&jf, &jg).omega;
                assert_relative_eq!(omega_closed_form(&jp, lambda), w, max_relative = 1e-12);
                let r0 = conformal_ratio(&jp, &Jet2::ZERO);
                let r1 = conformal_ratio(&jf, &jg);
                assert!((r0.0 - r1.0).abs() <= 1e-10 && (r0.1 - r1.1).abs() <= 1e-10 && (r0.2 - r1.2).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn grid_potential_round_trip() {
        let c = helicoid();
        let b = Bounds::new(-1.0, 1.0, -1.0, 1.0);
        let grid = PotentialField::from_grid(&c, (0.0, 0.0), b, 0.1).unwrap();
        assert!(!grid.is_closed_form());
        let exact = helicoid_q();
        for &(x, y) in &[(0.0, 0.0), (0.33, -0.71), (-0.95, 0.9), (1.0, 1.0)] {
            assert!((grid.value(x, y) - exact.value(x, y)).abs() < 1e-6);
            let (gj, ej) = (grid.jet(x, y), exact.jet(x, y));
            assert!((gj.dx - ej.dx).abs() < 1e-13 && (gj.dyy - ej.dyy).abs() < 1e-12);
        }
        // finite differences of the interpolated values recover the one-form
        let h = 1e-3;
        let fx = (grid.value(0.41 + h, 0.23) - grid.value(0.41 - h, 0.23)) / (2.0 * h);
        let jp = c.jets(0.41, 0.23).unwrap().0;
        assert!((fx - lagrange_one_form(&jp).0).abs() < 1e-5);
        assert!(grid.value(1.5, 0.0).is_nan());
        let d = deform(&c, &grid, 0.5).unwrap();
        assert!(d.jets(1.5, 0.0).is_err());
        assert!(d.jets(0.5, 0.0).is_ok());
    }

    proptest! {
        #[test]
        fn gradient_estimate_identity(px in -1e3..1e3f64, py in -1e3..1e3f64) {
            let jp = Jet2::new(0.0, px, py, 0.0, 0.0, 0.0);
            let (qx, qy) = lagrange_one_form(&jp);
            let n = qx * qx + qy * qy;
            prop_assert!(n < 1.0);
            let w2 = 1.0 + px * px + py * py;
            prop_assert!(((1.0 - n) - 1.0 / w2).abs() <= 1e-10);
        }

        #[test]
        fn omega_at_least_one(px in -50.0..50.0f64, py in -50.0..50.0f64, lambda in -3.0..3.0f64) {
            let jp = Jet2::new(0.0, px, py, 0.0, 0.0, 0.0);
            prop_assert!(omega_closed_form(&jp, lambda) >= 1.0 - 1e-12);
        }

        #[test]
        fn staircase_orders_agree(x in -1.8..1.8f64, y in -1.2..1.2f64) {
            let r = integrate_potential(&helicoid(), (0.1, -0.2), (x, y), 0.1).unwrap();
            prop_assert!(r.discrepancy <= 1e-10);
            let exact = helicoid_q().value(x, y) - helicoid_q().value(0.1, -0.2);
            prop_assert!((r.value - exact).abs() <= 1e-9);
        }
    }
}
