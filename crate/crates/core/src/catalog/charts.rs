//! Closed-form graph charts.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use crate::chart::{Bounds, Chart, Domain, PairFormula, Scalar, ScalarFormula};
use crate::error::{Error, Result};
use crate::jet::Real;
use crate::lagrange::{deform, PotentialField};

/// Chebyshev polynomial `T_n` by the three-term recurrence.
pub fn chebyshev_t(n: u32, zeta: f64) -> f64 {
    chebyshev(n, zeta)
}

pub(crate) fn chebyshev<S: Real>(n: u32, z: S) -> S {
    if n == 0 {
        return S::cst(1.0);
    }
    let (mut t0, mut t1) = (S::cst(1.0), z);
    for _ in 1..n {
        let t2 = z * t1 * 2.0 - t0;
        t0 = t1;
        t1 = t2;
    }
    t1
}

/// `Ψ_N(ρ) · ((x + iy)^N)` split into real and imaginary parts,
/// `Ψ_N(ρ) = T_N(√(1 + ρ²)) / (N ρ^N)`.
#[derive(Clone, Copy, Debug)]
pub struct SigmaN {
    pub n: u32,
}

impl PairFormula for SigmaN {
    fn eval<S: Real>(&self, x: S, y: S) -> (S, S) {
        let r2 = x * x + y * y;
        let rho = r2.sqrt();
        let psi = chebyshev(self.n, (r2 + 1.0).sqrt()) / (rho.powi(self.n as i32) * self.n as f64);
        let (mut re, mut im) = (x, y);
        for _ in 1..self.n {
            (re, im) = (re * x - im * y, re * y + im * x);
        }
        (psi * re, psi * im)
    }
}

pub fn sigma_n(n: u32) -> Result<Chart> {
    if n < 1 {
        return Err(Error::InvalidParameter("sigmaN needs N >= 1".into()));
    }
    let domain = Domain::new("R^2 minus the origin", Bounds::square(2.0), |x, y| x.hypot(y)).not_simply_connected();
    Ok(Chart::from_pair(format!("sigmaN:{n}"), domain, SigmaN { n })
        .with_sample_margin(0.25)
        .with_note("isolated non-removable singularity at the origin"))
}

/// `(α ln((r + √(r² + β² − α²))/2), β atan(y/x))`.
#[derive(Clone, Copy, Debug)]
pub struct SigmaAlphaBeta {
    pub alpha: f64,
    pub beta: f64,
}

impl PairFormula for SigmaAlphaBeta {
    fn eval<S: Real>(&self, x: S, y: S) -> (S, S) {
        let (a, b) = (self.alpha, self.beta);
        let r2 = x * x + y * y;
        let r = r2.sqrt();
        let f = ((r + (r2 + (b * b - a * a)).sqrt()) * 0.5).ln() * a;
        let g = (y / x).atan() * b;
        (f, g)
    }
}

pub fn sigma_alpha_beta(alpha: f64, beta: f64) -> Result<Chart> {
    if !(alpha.is_finite() && beta.is_finite()) {
        return Err(Error::InvalidParameter("alpha and beta must be finite".into()));
    }
    let r0 = (alpha * alpha - beta * beta).max(0.0).sqrt();
    let domain = Domain::new(
        "x > 0 and x^2 + y^2 + beta^2 - alpha^2 > 0 (principal atan branch)",
        Bounds::new(0.0, 2.5, -2.0, 2.0),
        move |x, y| x.min(x.hypot(y) - r0),
    );
    Ok(
        Chart::from_pair(format!("sigma_alpha_beta:alpha={alpha},beta={beta}"), domain, SigmaAlphaBeta { alpha, beta })
            .with_sample_margin(0.2)
            .with_note("admissible domain inferred from the special cases; right half-plane branch of atan"),
    )
}

/// A minimal graph `z = p(x, y)` in R³ together with its Lagrange potential.
#[derive(Clone, Debug)]
pub struct MinimalPair {
    pub p: Chart,
    pub q: PotentialField,
    /// Family key used for the deformed charts.
    pub family: &'static str,
    /// Whether the textbook potential carries the opposite sign to `q`.
    pub textbook_q_negated: bool,
}

impl MinimalPair {
    fn new<P, Q>(family: &'static str, p_name: &str, domain: Domain, p: P, q: Q, textbook_q_negated: bool) -> Self
    where
        P: ScalarFormula + 'static,
        Q: ScalarFormula + 'static,
    {
        let p = Chart::r3_graph(p_name, domain, p);
        let q = PotentialField::closed(p_name, Arc::new(Scalar(q)), (0.0, 0.0));
        MinimalPair {
            p,
            q,
            family,
            textbook_q_negated,
        }
    }

    /// `(cosh λ · p, sinh λ · q)`; satisfies the Osserman system with `μ = coth λ`.
    pub fn deform(&self, lambda: f64) -> Result<Chart> {
        let mut c = deform(&self.p, &self.q, lambda)?;
        c.name = format!("{}:lambda={lambda}", self.family);
        c.meta.textbook_lambda = Some(if self.textbook_q_negated { -lambda } else { lambda });
        if self.textbook_q_negated {
            c.meta.notes.push("textbook closed form equals this chart at -lambda".into());
        }
        Ok(c.with_sample_margin(self.p.sample_margin))
    }

    fn with_sample_margin(mut self, m: f64) -> Self {
        self.p.sample_margin = m;
        self
    }

    fn with_period(mut self, dx: f64, dy: f64) -> Self {
        self.p.domain = self.p.domain.with_period(dx, dy);
        self
    }
}

pub struct HelicoidP;
impl ScalarFormula for HelicoidP {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        x * y.tan()
    }
}

pub struct HelicoidQ;
impl ScalarFormula for HelicoidQ {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        -(y.cos().square() + x.square()).sqrt()
    }
}

pub struct CatenoidP;
impl ScalarFormula for CatenoidP {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        (y.cosh().square() - x.square()).sqrt()
    }
}

pub struct CatenoidQ;
impl ScalarFormula for CatenoidQ {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        -(x * y.tanh())
    }
}

pub struct ScherkP;
impl ScalarFormula for ScherkP {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        (x.cos() / y.cos()).ln()
    }
}

pub struct ScherkQ;
impl ScalarFormula for ScherkQ {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        -(x.sin() * y.sin()).asin()
    }
}

/// Parameters `(ρ, α)` of the sheared Scherk graph and generalized tower.
#[derive(Clone, Copy, Debug)]
pub struct Shear {
    pub rho: f64,
    pub alpha: f64,
}

impl Shear {
    fn new(rho: f64, alpha: f64) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::InvalidParameter(format!("rho must be positive, got {rho}")));
        }
        if !(alpha > 0.0 && alpha < FRAC_PI_2) {
            return Err(Error::InvalidParameter(format!("alpha must lie in (0, pi/2), got {alpha}")));
        }
        Ok(Shear { rho, alpha })
    }

    fn cs(&self) -> (f64, f64) {
        (self.alpha.cos(), self.alpha.sin())
    }

    /// `(x/cos α − y/sin α, x/cos α + y/sin α)`.
    fn ab<S: Real>(&self, x: S, y: S) -> (S, S) {
        let (c, s) = self.cs();
        (x / c - y / s, x / c + y / s)
    }
}

pub struct ShearedP(pub Shear);
impl ScalarFormula for ShearedP {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        let rho = self.0.rho;
        let (a, b) = self.0.ab(x, y);
        ((a * (0.5 * rho)).cos() / (b * (0.5 * rho)).cos()).ln() / rho
    }
}

/// Argument of the arccos in the sheared Scherk potential.
fn sheared_w<S: Real>(sh: &Shear, x: S, y: S) -> S {
    let (c, s) = sh.cs();
    (x * (sh.rho / c)).cos() * (c * c) - (y * (sh.rho / s)).cos() * (s * s)
}

pub struct ShearedQ(pub Shear);
impl ScalarFormula for ShearedQ {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        -sheared_w(&self.0, x, y).acos() / self.0.rho
    }
}

pub struct TowerP;
impl ScalarFormula for TowerP {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        (x.sinh() * y.sinh()).asin()
    }
}

pub struct TowerQ;
impl ScalarFormula for TowerQ {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        -(x.cosh() / y.cosh()).ln()
    }
}

fn tower_s<S: Real>(sh: &Shear, x: S, y: S) -> S {
    let (c, s) = sh.cs();
    (x * (sh.rho / c)).cosh() * (c * c) - (y * (sh.rho / s)).cosh() * (s * s)
}

pub struct TowerGeneralP(pub Shear);
impl ScalarFormula for TowerGeneralP {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        tower_s(&self.0, x, y).acos() / self.0.rho
    }
}

pub struct TowerGeneralQ(pub Shear);
impl ScalarFormula for TowerGeneralQ {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        let rho = self.0.rho;
        let (a, b) = self.0.ab(x, y);
        ((a * (0.5 * rho)).cosh() / (b * (0.5 * rho)).cosh()).ln() / rho
    }
}

/// Helicoid `x tan y` over the strip `|y| < π/2`, potential `−√(cos²y + x²)`.
pub fn helicoid() -> MinimalPair {
    let domain = Domain::new(
        "strip |y| < pi/2",
        Bounds::new(-2.0, 2.0, -FRAC_PI_2, FRAC_PI_2),
        |_, y| FRAC_PI_2 - y.abs(),
    );
    MinimalPair::new("helicoid_deform", "helicoid", domain, HelicoidP, HelicoidQ, true).with_sample_margin(0.3)
}

/// Half catenoid `√(cosh²y − x²)` over `x² < cosh²y`, potential `−x tanh y`.
pub fn catenoid() -> MinimalPair {
    let domain = Domain::new("x^2 < cosh^2 y", Bounds::new(-2.0, 2.0, -1.5, 1.5), |x, y| {
        (y.cosh() - x.abs()) / std::f64::consts::SQRT_2
    });
    MinimalPair::new("catenoid_deform", "catenoid", domain, CatenoidP, CatenoidQ, true).with_sample_margin(0.15)
}

/// Scherk's doubly periodic graph over the open square, potential `−arcsin(sin x sin y)`.
pub fn scherk() -> MinimalPair {
    let b = Bounds::square(FRAC_PI_2);
    let domain = Domain::new("open square |x|, |y| < pi/2", b, move |x, y| b.interior_margin(x, y));
    MinimalPair::new("scherk_doubly", "scherk", domain, ScherkP, ScherkQ, true)
        .with_sample_margin(0.35)
        .with_period(2.0 * PI, 0.0)
        .with_period(0.0, 2.0 * PI)
}

/// Sheared Scherk graph over the rhomboid `R₀₀`.
///
/// The domain is further clamped to where the arccos argument of the
/// potential lies strictly inside `(−1, 1)`; that boundary only touches the
/// rhomboid at its vertices.
pub fn scherk_sheared(rho: f64, alpha: f64) -> Result<MinimalPair> {
    let sh = Shear::new(rho, alpha)?;
    let (c, s) = sh.cs();
    let half = PI / rho;
    let bounds = Bounds::new(-half * c, half * c, -half * s, half * s);
    let grad_ab = 1.0 / (s * c);
    let domain = Domain::new("rhomboid R_00, arccos argument in (-1, 1)", bounds, move |x, y| {
        let (a, b) = sh.ab(x, y);
        let rhomb = (half - a.abs()).min(half - b.abs()) / grad_ab;
        let w: f64 = sheared_w(&sh, x, y);
        let wx = -rho * c * (rho * x / c).sin();
        let wy = rho * s * (rho * y / s).sin();
        rhomb.min((1.0 - w.abs()) / wx.hypot(wy).max(1.0))
    });
    let name = format!("scherk_sheared:rho={rho},alpha={alpha}");
    let p = Chart::r3_graph(name.clone(), domain, ShearedP(sh));
    let q = PotentialField::closed(name, Arc::new(Scalar(ShearedQ(sh))), (0.0, 0.0));
    let mut pair = MinimalPair {
        p,
        q,
        family: "scherk_doubly_sheared",
        textbook_q_negated: true,
    };
    pair.p.sample_margin = 0.7 / rho * s * c;
    Ok(pair)
}

/// Scherk's saddle tower `arcsin(sinh x sinh y)`, potential `−ln(cosh x / cosh y)`.
pub fn saddle_tower() -> MinimalPair {
    let domain = Domain::new("|sinh x sinh y| < 1", Bounds::square(2.0), |x, y| {
        let s = x.sinh() * y.sinh();
        let g = (x.cosh() * y.sinh()).hypot(x.sinh() * y.cosh());
        (1.0 - s.abs()) / g.max(1.0)
    });
    MinimalPair::new("scherk_tower", "saddle_tower", domain, TowerP, TowerQ, true).with_sample_margin(0.1)
}

/// Generalized saddle tower with its textbook potential.
pub fn saddle_tower_general(rho: f64, alpha: f64) -> Result<MinimalPair> {
    let sh = Shear::new(rho, alpha)?;
    let (c, s) = sh.cs();
    let domain = Domain::new("|arccos argument| < 1", Bounds::square(2.0), move |x, y| {
        let t: f64 = tower_s(&sh, x, y);
        let tx = rho * c * (rho * x / c).sinh();
        let ty = -rho * s * (rho * y / s).sinh();
        (1.0 - t.abs()) / tx.hypot(ty).max(1.0)
    });
    let name = format!("saddle_tower_general:rho={rho},alpha={alpha}");
    let p = Chart::r3_graph(name.clone(), domain, TowerGeneralP(sh)).with_sample_margin(0.1);
    let q = PotentialField::closed(name, Arc::new(Scalar(TowerGeneralQ(sh))), (0.0, 0.0));
    Ok(MinimalPair {
        p,
        q,
        family: "scherk_tower_general",
        textbook_q_negated: false,
    })
}

pub fn helicoid_deform(lambda: f64) -> Result<Chart> {
    helicoid().deform(lambda)
}

pub fn catenoid_deform(lambda: f64) -> Result<Chart> {
    catenoid().deform(lambda)
}

pub fn scherk_doubly(lambda: f64) -> Result<Chart> {
    scherk().deform(lambda)
}

pub fn scherk_doubly_sheared(lambda: f64, rho: f64, alpha: f64) -> Result<Chart> {
    let mut c = scherk_sheared(rho, alpha)?.deform(lambda)?;
    c.name = format!("scherk_doubly_sheared:lambda={lambda},rho={rho},alpha={alpha}");
    Ok(c)
}

pub fn scherk_tower(lambda: f64) -> Result<Chart> {
    saddle_tower().deform(lambda)
}

pub fn scherk_tower_general(lambda: f64, rho: f64, alpha: f64) -> Result<Chart> {
    let mut c = saddle_tower_general(rho, alpha)?.deform(lambda)?;
    c.name = format!("scherk_tower_general:lambda={lambda},rho={rho},alpha={alpha}");
    Ok(c)
}

/// `(arsinh(tan x cos y), arsinh(tan y cos x))`, the gradient of a solution
/// of `h_xx h_yy − h_xy² = 1`.
pub struct LagrangianScherk;
impl PairFormula for LagrangianScherk {
    fn eval<S: Real>(&self, x: S, y: S) -> (S, S) {
        ((x.tan() * y.cos()).asinh(), (y.tan() * x.cos()).asinh())
    }
}

pub fn lagrangian_scherk() -> Chart {
    let b = Bounds::square(FRAC_PI_2);
    let domain = Domain::new("open square |x|, |y| < pi/2", b, move |x, y| b.interior_margin(x, y));
    Chart::from_pair("lagrangian_scherk", domain, LagrangianScherk)
        .with_sample_margin(0.35)
        .with_note("gradient graph; special Lagrangian in C^2")
}

struct Zero;
impl PairFormula for Zero {
    fn eval<S: Real>(&self, x: S, _y: S) -> (S, S) {
        (x * 0.0, x * 0.0)
    }
}

pub fn plane() -> Chart {
    let mut c = Chart::from_pair("plane", Domain::plane(Bounds::square(1.0)), Zero);
    c.meta.r3_graph = true;
    c
}

struct Paraboloid;
impl ScalarFormula for Paraboloid {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        x * x + y * y
    }
}

/// Non-minimal negative control `f = x² + y²`.
pub fn paraboloid_test() -> Chart {
    Chart::r3_graph("paraboloid_test", Domain::plane(Bounds::square(1.0)), Paraboloid)
        .with_note("not minimal; negative control")
}

struct Square;
impl PairFormula for Square {
    fn eval<S: Real>(&self, x: S, y: S) -> (S, S) {
        (x * x - y * y, x * y * 2.0)
    }
}

/// The holomorphic curve `w = z²`; its Gauss map lies on two hyperplanes.
pub fn holomorphic_square() -> Chart {
    let mut c = Chart::from_pair("holomorphic_square", Domain::plane(Bounds::square(1.0)), Square);
    c.meta.osserman_mu = Some(1.0);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::ScalarMap;
    use crate::gauss::osserman_residual;
    use crate::geometry::mss_residual;
    use crate::jet::FdSteps;
    use crate::lagrange::{closure_defect, potential_jet};
    use crate::sampling::sample_interior;
    use approx::assert_relative_eq;

    fn all_pairs() -> Vec<MinimalPair> {
        vec![
            helicoid(),
            catenoid(),
            scherk(),
            scherk_sheared(1.0, 0.6).unwrap(),
            scherk_sheared(2.0, std::f64::consts::FRAC_PI_4).unwrap(),
            saddle_tower(),
            saddle_tower_general(1.0, 0.6).unwrap(),
        ]
    }

    #[test]
    fn chebyshev_values() {
        assert_eq!(chebyshev_t(2, 3.0), 17.0);
        assert_eq!(chebyshev_t(3, 2.0), 26.0);
        for n in 0..12 {
            assert_eq!(chebyshev_t(n, 1.0), 1.0);
            let z = 1.7;
            assert_relative_eq!(chebyshev_t(n, z), (n as f64 * z.acosh()).cosh(), max_relative = 1e-12);
            let z = -0.3;
            assert!((chebyshev_t(n, z) - (n as f64 * z.acos()).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn sigma_closed_forms() {
        let c1 = sigma_n(1).unwrap();
        let c2 = sigma_n(2).unwrap();
        for &(x, y) in &[(0.3, -0.8), (1.4, 0.2), (-0.5, -0.5)] {
            let r2: f64 = x * x + y * y;
            let (f, g) = c1.heights(x, y).unwrap();
            let s = (1.0 + 1.0 / r2).sqrt();
            assert_relative_eq!(f, x * s, max_relative = 1e-14);
            assert_relative_eq!(g, y * s, max_relative = 1e-14);
            let (f, g) = c2.heights(x, y).unwrap();
            let s = 1.0 + 1.0 / (2.0 * r2);
            assert_relative_eq!(f, (x * x - y * y) * s, max_relative = 1e-13);
            assert_relative_eq!(g, 2.0 * x * y * s, max_relative = 1e-13);
        }
        assert!(sigma_n(0).is_err());
        assert!(c1.jets(0.0, 0.0).is_err());
    }

    #[test]
    fn sigma_alpha_beta_special_cases() {
        let cat = sigma_alpha_beta(1.0, 0.0).unwrap();
        let (f, g) = cat.heights(1.5, 0.4).unwrap();
        assert_relative_eq!(f, 1.5_f64.hypot(0.4).acosh() - 2.0_f64.ln(), max_relative = 1e-14);
        assert_eq!(g, 0.0);
        let hel = sigma_alpha_beta(0.0, 1.0).unwrap();
        let (f, g) = hel.heights(1.5, 0.4).unwrap();
        assert_eq!(f, 0.0);
        assert_relative_eq!(g, (0.4_f64 / 1.5).atan(), max_relative = 1e-15);
        let (jf, jg) = sigma_alpha_beta(1.0, 1.0).unwrap().jets(1.5, 0.4).unwrap();
        let (a, b) = mss_residual(&jf, &jg);
        assert!(a.abs() <= 1e-8 && b.abs() <= 1e-8);
        assert!(cat.jets(0.5, 0.0).is_err());
        assert!(cat.jets(-1.5, 0.0).is_err());
    }

    #[test]
    fn potentials_are_lagrange_potentials() {
        for pair in all_pairs() {
            let pts = sample_interior(&pair.p, 60).unwrap();
            for (x, y) in pts {
                let jp = pair.p.jets(x, y).unwrap().0;
                let jq = pair.q.jet(x, y);
                let from_p = potential_jet(&jp, jq.value);
                let scale = 1.0 + jp.sup_norm();
                for (a, b) in from_p.as_array().iter().zip(jq.as_array()) {
                    assert!((a - b).abs() <= 1e-10 * scale, "{} at ({x}, {y}): {from_p:?} vs {jq:?}", pair.p.name);
                }
                assert!(closure_defect(&jp).abs() < 1e-10 * scale);
                assert_eq!(pair.q.value(0.0, 0.0), 0.0);
            }
        }
    }

    #[test]
    fn closed_form_jets_match_finite_differences() {
        let mut charts: Vec<Chart> = all_pairs().into_iter().map(|p| p.p).collect();
        charts.extend([sigma_n(1).unwrap(), sigma_n(3).unwrap(), sigma_alpha_beta(1.2, 0.4).unwrap(), lagrangian_scherk()]);
        charts.push(scherk_doubly(0.7).unwrap());
        for c in charts {
            for (x, y) in sample_interior(&c, 20).unwrap() {
                let (ef, eg) = c.jets(x, y).unwrap();
                let Ok((ff, fg)) = c.fd_jets(x, y, FdSteps::uniform(1e-3)) else {
                    continue;
                };
                for (e, f) in [(ef, ff), (eg, fg)] {
                    let tol = 1e-5 * (1.0 + e.sup_norm());
                    for (a, b) in e.as_array().iter().zip(f.as_array()) {
                        assert!((a - b).abs() <= tol, "{} at ({x}, {y}): {e:?} vs {f:?}", c.name);
                    }
                }
            }
        }
    }

    #[test]
    fn deformed_families_solve_osserman_system() {
        for pair in all_pairs() {
            for lambda in [-1.0, 0.3, 1.0] {
                let c = pair.deform(lambda).unwrap();
                let mu = c.meta.osserman_mu.unwrap();
                for (x, y) in sample_interior(&c, 50).unwrap() {
                    let (jf, jg) = c.jets(x, y).unwrap();
                    let (a, b) = osserman_residual(&jf, &jg, mu).unwrap();
                    assert!(a.abs().max(b.abs()) <= 1e-10, "{}", c.name);
                }
            }
        }
    }

    #[test]
    fn textbook_deformations() {
        let (x, y, l) = (0.3_f64, 0.2_f64, 1.0_f64);
        let c = scherk_doubly(-l).unwrap();
        let (f, g) = c.heights(x, y).unwrap();
        assert_relative_eq!(f, l.cosh() * (x.cos() / y.cos()).ln(), max_relative = 1e-14);
        assert_relative_eq!(g, l.sinh() * (x.sin() * y.sin()).asin(), max_relative = 1e-14);
        assert_eq!(scherk_doubly(l).unwrap().meta.textbook_lambda, Some(-l));
        let h = helicoid_deform(0.0).unwrap();
        let (f, g) = h.heights(0.5, 0.4).unwrap();
        assert_eq!((f, g), (0.5 * 0.4_f64.tan(), 0.0));
        let cat = catenoid_deform(0.8).unwrap();
        assert_relative_eq!(cat.heights(0.0, 0.0).unwrap().0, 0.8_f64.cosh(), max_relative = 1e-15);
        let t = scherk_tower_general(0.5, 1.0, 0.6).unwrap();
        assert_eq!(t.meta.textbook_lambda, Some(0.5));
    }

    #[test]
    fn lagrangian_scherk_cross_derivatives() {
        let c = lagrangian_scherk();
        for (x, y) in sample_interior(&c, 50).unwrap() {
            let (a, b) = c.jets(x, y).unwrap();
            assert!((a.dy - b.dx).abs() <= 1e-10);
        }
    }

    #[test]
    fn sheared_matches_orthogonal_after_rotation() {
        // (1/rho) p(rho u, rho v) with (u, v) the rotated coordinates
        let rho = 2.0;
        let sheared = scherk_sheared(rho, std::f64::consts::FRAC_PI_4).unwrap();
        let orth = scherk();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for (x, y) in sample_interior(&sheared.p, 50).unwrap() {
            let (u, v) = (r * (x - y), r * (x + y));
            let ps = sheared.p.heights(x, y).unwrap().0;
            let po = orth.p.heights(rho * u, rho * v).unwrap().0 / rho;
            assert!((ps - po).abs() <= 1e-10);
            let qs = sheared.q.value(x, y);
            let qo = orth.q.value(rho * u, rho * v) / rho;
            // both potentials are pinned at the common origin
            assert!((qs - qo).abs() <= 1e-10, "{qs} {qo}");
        }
    }

    #[test]
    fn holomorphic_square_metric_is_conformal() {
        let c = holomorphic_square();
        let (jf, jg) = c.jets(0.3, -0.6).unwrap();
        assert_eq!(osserman_residual(&jf, &jg, 1.0).unwrap(), (0.0, 0.0));
    }
}
