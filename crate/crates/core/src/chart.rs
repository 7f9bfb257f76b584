//! Graph charts `(x, y) ↦ (x, y, f(x, y), g(x, y))` over explicit domains.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{fd_jet, FdSteps, Jet2, Real};

/// Axis-aligned box used for sampling and reporting.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Bounds {
    pub const fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Bounds {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    pub const fn square(half: f64) -> Self {
        Bounds::new(-half, half, -half, half)
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }

    /// Distance to the boundary of the open box, negative outside.
    pub fn interior_margin(&self, x: f64, y: f64) -> f64 {
        (x - self.x_min)
            .min(self.x_max - x)
            .min(y - self.y_min)
            .min(self.y_max - y)
    }
}

pub type MarginFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Open planar domain described by a margin function.
///
/// The margin is positive exactly on the domain and is a (conservative)
/// stand-in for the distance to its boundary, so finite-difference stencils of
/// half-width `h` stay inside whenever `margin ≥ 2h`.
#[derive(Clone)]
pub struct Domain {
    pub description: String,
    pub bounds: Bounds,
    pub simply_connected: bool,
    /// Translation periods of the surface, if the textbook fundamental piece
    /// extends periodically.
    pub periods: Vec<(f64, f64)>,
    margin: MarginFn,
}

impl Domain {
    pub fn new<F>(description: impl Into<String>, bounds: Bounds, margin: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Domain {
            description: description.into(),
            bounds,
            simply_connected: true,
            periods: Vec::new(),
            margin: Arc::new(margin),
        }
    }

    /// The whole plane; `bounds` only sets the sampling window.
    pub fn plane(bounds: Bounds) -> Self {
        Domain::new("R^2", bounds, |_, _| f64::INFINITY)
    }

    /// The open box itself.
    pub fn open_box(bounds: Bounds) -> Self {
        Domain::new("open rectangle", bounds, move |x, y| bounds.interior_margin(x, y))
    }

    pub fn not_simply_connected(mut self) -> Self {
        self.simply_connected = false;
        self
    }

    pub fn with_period(mut self, dx: f64, dy: f64) -> Self {
        self.periods.push((dx, dy));
        self
    }

    pub fn margin(&self, x: f64, y: f64) -> f64 {
        if !(x.is_finite() && y.is_finite()) {
            return f64::NEG_INFINITY;
        }
        let m = (self.margin)(x, y);
        if m.is_nan() {
            f64::NEG_INFINITY
        } else {
            m
        }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.margin(x, y) > 0.0
    }
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Domain")
            .field("description", &self.description)
            .field("bounds", &self.bounds)
            .field("simply_connected", &self.simply_connected)
            .field("periods", &self.periods)
            .finish()
    }
}

/// Evaluator of a pair of height functions.
pub trait HeightMap: Send + Sync {
    fn jets(&self, x: f64, y: f64) -> (Jet2, Jet2);

    /// Plain values. Implementations backed by a closed form evaluate it in
    /// `f64` so that [`Chart::fd_jets`] is independent of the jet arithmetic.
    fn heights(&self, x: f64, y: f64) -> (f64, f64) {
        let (f, g) = self.jets(x, y);
        (f.value, g.value)
    }
}

/// Evaluator of one scalar function.
pub trait ScalarMap: Send + Sync {
    fn jet(&self, x: f64, y: f64) -> Jet2;

    fn value(&self, x: f64, y: f64) -> f64 {
        self.jet(x, y).value
    }
}

/// A pair of height functions written once for every [`Real`] scalar.
pub trait PairFormula: Send + Sync {
    fn eval<S: Real>(&self, x: S, y: S) -> (S, S);
}

/// A scalar function written once for every [`Real`] scalar.
pub trait ScalarFormula: Send + Sync {
    fn eval<S: Real>(&self, x: S, y: S) -> S;
}

/// Adapter turning a [`PairFormula`] into a [`HeightMap`].
#[derive(Clone, Debug)]
pub struct Pair<P>(pub P);

impl<P: PairFormula> HeightMap for Pair<P> {
    fn jets(&self, x: f64, y: f64) -> (Jet2, Jet2) {
        self.0.eval(Jet2::var_x(x), Jet2::var_y(y))
    }
    fn heights(&self, x: f64, y: f64) -> (f64, f64) {
        self.0.eval(x, y)
    }
}

/// Adapter turning a [`ScalarFormula`] into a [`ScalarMap`].
#[derive(Clone, Debug)]
pub struct Scalar<F>(pub F);

impl<F: ScalarFormula> ScalarMap for Scalar<F> {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        self.0.eval(Jet2::var_x(x), Jet2::var_y(y))
    }
    fn value(&self, x: f64, y: f64) -> f64 {
        self.0.eval(x, y)
    }
}

/// Graph of a single function in R³, embedded in R⁴ with `g ≡ 0`.
#[derive(Clone)]
pub struct R3Graph(pub Arc<dyn ScalarMap>);

impl HeightMap for R3Graph {
    fn jets(&self, x: f64, y: f64) -> (Jet2, Jet2) {
        (self.0.jet(x, y), Jet2::ZERO)
    }
    fn heights(&self, x: f64, y: f64) -> (f64, f64) {
        (self.0.value(x, y), 0.0)
    }
}

/// Descriptive metadata attached to a chart.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ChartMeta {
    /// Deformation parameter for λ-families.
    pub lambda: Option<f64>,
    /// Coefficient of the Osserman system the chart satisfies, if any.
    pub osserman_mu: Option<f64>,
    /// `g ≡ 0`: the chart is a graph in R³.
    pub r3_graph: bool,
    /// Parameter under which the textbook closed form coincides with this chart.
    pub textbook_lambda: Option<f64>,
    pub notes: Vec<String>,
}

/// A named pair of height functions over a domain.
#[derive(Clone)]
pub struct Chart {
    pub name: String,
    pub domain: Domain,
    pub map: Arc<dyn HeightMap>,
    pub meta: ChartMeta,
    /// Minimal interior margin for quasi-random sample points.
    pub sample_margin: f64,
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Chart")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("meta", &self.meta)
            .field("sample_margin", &self.sample_margin)
            .finish()
    }
}

impl Chart {
    pub fn new(name: impl Into<String>, domain: Domain, map: Arc<dyn HeightMap>) -> Self {
        Chart {
            name: name.into(),
            domain,
            map,
            meta: ChartMeta::default(),
            sample_margin: 0.0,
        }
    }

    pub fn from_pair<P: PairFormula + 'static>(name: impl Into<String>, domain: Domain, p: P) -> Self {
        Chart::new(name, domain, Arc::new(Pair(p)))
    }

    /// R³ graph of a scalar closed form.
    pub fn r3_graph<F: ScalarFormula + 'static>(name: impl Into<String>, domain: Domain, p: F) -> Self {
        Chart::r3_from_map(name, domain, Arc::new(Scalar(p)))
    }

    pub fn r3_from_map(name: impl Into<String>, domain: Domain, p: Arc<dyn ScalarMap>) -> Self {
        let mut c = Chart::new(name, domain, Arc::new(R3Graph(p)));
        c.meta.r3_graph = true;
        c
    }

    pub fn with_meta(mut self, meta: ChartMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn with_sample_margin(mut self, m: f64) -> Self {
        self.sample_margin = m;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.meta.notes.push(note.into());
        self
    }

    pub fn margin(&self, x: f64, y: f64) -> f64 {
        self.domain.margin(x, y)
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.domain.contains(x, y)
    }

    pub fn check_domain(&self, x: f64, y: f64) -> Result<()> {
        if self.contains(x, y) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                chart: self.name.clone(),
                x,
                y,
            })
        }
    }

    /// Fails unless the margin at `(x, y)` is at least `required`.
    pub fn require_margin(&self, x: f64, y: f64, required: f64) -> Result<()> {
        self.check_domain(x, y)?;
        let margin = self.margin(x, y);
        if margin < required {
            return Err(Error::InsufficientMargin {
                chart: self.name.clone(),
                x,
                y,
                margin,
                required,
            });
        }
        Ok(())
    }

    /// Exact jets of `(f, g)`.
    pub fn jets(&self, x: f64, y: f64) -> Result<(Jet2, Jet2)> {
        self.check_domain(x, y)?;
        let (f, g) = self.map.jets(x, y);
        if !(f.is_finite() && g.is_finite()) {
            return Err(Error::NonFinite(format!("jets of `{}` at ({x}, {y})", self.name)));
        }
        Ok((f, g))
    }

    pub fn heights(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        self.check_domain(x, y)?;
        let (f, g) = self.map.heights(x, y);
        if !(f.is_finite() && g.is_finite()) {
            return Err(Error::NonFinite(format!("heights of `{}` at ({x}, {y})", self.name)));
        }
        Ok((f, g))
    }

    /// Point of the surface in R⁴.
    pub fn point(&self, x: f64, y: f64) -> Result<[f64; 4]> {
        let (f, g) = self.heights(x, y)?;
        Ok([x, y, f, g])
    }

    /// Central-difference jets from the plain height values.
    pub fn fd_jets(&self, x: f64, y: f64, steps: FdSteps) -> Result<(Jet2, Jet2)> {
        self.require_margin(x, y, 2.0 * steps.gradient.max(steps.hessian))?;
        let map = &self.map;
        let f = fd_jet(|u, v| map.heights(u, v).0, x, y, steps);
        let g = fd_jet(|u, v| map.heights(u, v).1, x, y, steps);
        Ok((f, g))
    }
}
