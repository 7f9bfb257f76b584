//! Conformal harmonic patches `(u, v) ↦ R⁴`.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::{Jet2, Real};

/// A patch written once for every [`Real`] scalar.
pub trait PatchFormula: Send + Sync {
    fn eval<S: Real>(&self, u: S, v: S) -> [S; 4];
}

trait PatchMap: Send + Sync {
    fn point(&self, u: f64, v: f64) -> [f64; 4];
    fn jets(&self, u: f64, v: f64) -> [Jet2; 4];
}

struct Wrap<P>(P);

impl<P: PatchFormula> PatchMap for Wrap<P> {
    fn point(&self, u: f64, v: f64) -> [f64; 4] {
        self.0.eval(u, v)
    }
    fn jets(&self, u: f64, v: f64) -> [Jet2; 4] {
        self.0.eval(Jet2::var_x(u), Jet2::var_y(v))
    }
}

/// Closed-form conformal factor, when one is known.
pub type FactorFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Parametrized surface with induced metric `Λ (du² + dv²)`.
#[derive(Clone)]
pub struct ConformalPatch {
    pub name: String,
    /// Period in `v`, if the patch closes up.
    pub v_period: Option<f64>,
    map: Arc<dyn PatchMap>,
    closed_factor: Option<FactorFn>,
}

impl fmt::Debug for ConformalPatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConformalPatch")
            .field("name", &self.name)
            .field("v_period", &self.v_period)
            .finish()
    }
}

/// Defects of conformality at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConformalDefect {
    /// `‖X_u‖² − ‖X_v‖²`.
    pub length: f64,
    /// `X_u · X_v`.
    pub angle: f64,
}

impl ConformalPatch {
    pub fn new<P: PatchFormula + 'static>(name: impl Into<String>, p: P) -> Self {
        ConformalPatch {
            name: name.into(),
            v_period: Some(TAU),
            map: Arc::new(Wrap(p)),
            closed_factor: None,
        }
    }

    pub fn with_factor<F: Fn(f64, f64) -> f64 + Send + Sync + 'static>(mut self, f: F) -> Self {
        self.closed_factor = Some(Arc::new(f));
        self
    }

    pub fn point(&self, u: f64, v: f64) -> [f64; 4] {
        self.map.point(u, v)
    }

    /// `(X_u, X_v)`.
    pub fn tangents(&self, u: f64, v: f64) -> ([f64; 4], [f64; 4]) {
        let j = self.map.jets(u, v);
        (j.map(|c| c.dx), j.map(|c| c.dy))
    }

    /// `X_uu + X_vv`, exact.
    pub fn laplacian(&self, u: f64, v: f64) -> [f64; 4] {
        self.map.jets(u, v).map(|c| c.dxx + c.dyy)
    }

    /// Five-point Laplacian of the map with step `h`.
    pub fn fd_laplacian(&self, u: f64, v: f64, h: f64) -> [f64; 4] {
        let c = self.point(u, v);
        let n = [self.point(u + h, v), self.point(u - h, v), self.point(u, v + h), self.point(u, v - h)];
        std::array::from_fn(|i| (n[0][i] + n[1][i] + n[2][i] + n[3][i] - 4.0 * c[i]) / (h * h))
    }

    pub fn defect(&self, u: f64, v: f64) -> ConformalDefect {
        let (xu, xv) = self.tangents(u, v);
        ConformalDefect {
            length: dot(&xu, &xu) - dot(&xv, &xv),
            angle: dot(&xu, &xv),
        }
    }

    /// `Λ = (‖X_u‖² + ‖X_v‖²)/2`, from the tangents.
    pub fn conformal_factor(&self, u: f64, v: f64) -> f64 {
        let (xu, xv) = self.tangents(u, v);
        0.5 * (dot(&xu, &xu) + dot(&xv, &xv))
    }

    /// The closed-form factor, if the patch carries one.
    pub fn closed_conformal_factor(&self, u: f64, v: f64) -> Option<f64> {
        self.closed_factor.as_ref().map(|f| f(u, v))
    }
}

fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `(sinh t cos θ, sinh t sin θ, cosh(Nt) cos(Nθ)/N, cosh(Nt) sin(Nθ)/N)`.
#[derive(Clone, Copy, Debug)]
pub struct XN {
    pub n: u32,
}

impl PatchFormula for XN {
    fn eval<S: Real>(&self, t: S, th: S) -> [S; 4] {
        let nf = self.n as f64;
        let (nt, nth) = (t * nf, th * nf);
        [
            t.sinh() * th.cos(),
            t.sinh() * th.sin(),
            nt.cosh() * nth.cos() / nf,
            nt.cosh() * nth.sin() / nf,
        ]
    }
}

/// Conformal factor of [`XN`], `cosh²t + sinh²(Nt)`.
pub fn xn_conformal_factor(n: u32, t: f64) -> f64 {
    t.cosh().powi(2) + (n as f64 * t).sinh().powi(2)
}

/// The equivalent form `sinh²t + cosh²(Nt)`.
pub fn xn_conformal_factor_alt(n: u32, t: f64) -> f64 {
    t.sinh().powi(2) + (n as f64 * t).cosh().powi(2)
}

pub fn patch_xn(n: u32) -> Result<ConformalPatch> {
    if n < 1 {
        return Err(Error::InvalidParameter("XN needs N >= 1".into()));
    }
    Ok(ConformalPatch::new(format!("XN:{n}"), XN { n }).with_factor(move |t, _| xn_conformal_factor(n, t)))
}

/// Patch of the hyperbola-foliated family,
/// `(sinh U cos V, V, cosh λ sinh U sin V, sinh λ cosh U cos V)`.
#[derive(Clone, Copy, Debug)]
pub struct FMinus {
    pub lambda: f64,
}

impl PatchFormula for FMinus {
    fn eval<S: Real>(&self, u: S, v: S) -> [S; 4] {
        let (c, s) = (self.lambda.cosh(), self.lambda.sinh());
        [u.sinh() * v.cos(), v, u.sinh() * v.sin() * c, u.cosh() * v.cos() * s]
    }
}

/// Patch of the ellipse-foliated annuli,
/// `(cosh U cos V, U, cosh λ cosh U sin V, sinh λ sinh U cos V)`.
#[derive(Clone, Copy, Debug)]
pub struct FPlus {
    pub lambda: f64,
}

impl PatchFormula for FPlus {
    fn eval<S: Real>(&self, u: S, v: S) -> [S; 4] {
        let (c, s) = (self.lambda.cosh(), self.lambda.sinh());
        [u.cosh() * v.cos(), u, u.cosh() * v.sin() * c, u.sinh() * v.cos() * s]
    }
}

pub fn patch_f_minus(lambda: f64) -> ConformalPatch {
    let mut p = ConformalPatch::new(format!("Fminus:lambda={lambda}"), FMinus { lambda }).with_factor(move |u, v| {
        let (c, s) = (lambda.cosh(), lambda.sinh());
        let (sv, cv) = v.sin_cos();
        sv * sv * u.cosh().powi(2) * c * c + cv * cv * u.sinh().powi(2) * s * s + cv * cv * u.cosh().powi(2)
    });
    p.v_period = None;
    p
}

pub fn patch_f_plus(lambda: f64) -> ConformalPatch {
    ConformalPatch::new(format!("Fplus:lambda={lambda}"), FPlus { lambda }).with_factor(move |u, v| {
        let (c, s) = (lambda.cosh(), lambda.sinh());
        let (sv, cv) = v.sin_cos();
        sv * sv * u.sinh().powi(2) * c * c + cv * cv * u.sinh().powi(2) + cv * cv * s * s * u.cosh().powi(2) + 1.0
    })
}

struct Flat;
impl PatchFormula for Flat {
    fn eval<S: Real>(&self, u: S, v: S) -> [S; 4] {
        [u, v, u * 0.0, u * 0.0]
    }
}

/// The plane `(u, v, 0, 0)` with `Λ ≡ 1`.
pub fn patch_flat() -> ConformalPatch {
    ConformalPatch::new("flat_patch", Flat).with_factor(|_, _| 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::charts::sigma_n;
    use approx::assert_relative_eq;

    fn patches() -> Vec<ConformalPatch> {
        vec![
            patch_xn(1).unwrap(),
            patch_xn(2).unwrap(),
            patch_xn(3).unwrap(),
            patch_f_minus(0.0),
            patch_f_minus(0.8),
            patch_f_plus(0.8),
            patch_f_plus(-1.3),
            patch_flat(),
        ]
    }

    fn grid(n: usize) -> impl Iterator<Item = (f64, f64)> {
        (0..n).flat_map(move |i| {
            (0..n).map(move |j| (-2.0 + 4.0 * i as f64 / (n - 1) as f64, -3.0 + 6.0 * j as f64 / (n - 1) as f64))
        })
    }

    #[test]
    fn examples() {
        assert_eq!(patch_xn(1).unwrap().point(0.0, 0.0), [0.0, 0.0, 1.0, 0.0]);
        assert_eq!(xn_conformal_factor(4, 0.0), 1.0);
        assert_eq!(xn_conformal_factor_alt(4, 0.0), 1.0);
        assert_eq!(patch_f_plus(0.5).point(0.0, 0.0), [1.0, 0.0, 0.0, 0.0]);
        let (u, v) = (0.4, 1.1);
        let p = patch_f_minus(0.0).point(u, v);
        let expect = [u.sinh() * v.cos(), v, u.sinh() * v.sin(), 0.0];
        for (a, b) in p.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(patch_xn(0).is_err());
    }

    #[test]
    fn conformal_and_harmonic() {
        for p in patches() {
            for (u, v) in grid(20) {
                let d = p.defect(u, v);
                let lam = p.conformal_factor(u, v);
                assert!(d.length.abs() <= 1e-10 * lam && d.angle.abs() <= 1e-10 * lam, "{} {d:?}", p.name);
                let closed = p.closed_conformal_factor(u, v).unwrap();
                assert_relative_eq!(lam, closed, max_relative = 1e-12);
                assert!(p.laplacian(u, v).iter().all(|c| c.abs() <= 1e-10 * lam));
            }
        }
    }

    #[test]
    fn fd_laplacian_converges() {
        let p = patch_f_plus(0.8);
        let size = |h: f64| p.fd_laplacian(0.7, 0.3, h).iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        let (a, b) = (size(1e-2), size(5e-3));
        assert!(a < 1e-4 && (3.0..5.0).contains(&(a / b)), "{a} {b}");
    }

    #[test]
    fn xn_factor_forms_agree() {
        for n in 1..5 {
            for k in 0..40 {
                let t = -3.0 + 0.15 * k as f64;
                let (a, b) = (xn_conformal_factor(n, t), xn_conformal_factor_alt(n, t));
                assert!((a - b).abs() <= 1e-12 * a);
            }
        }
    }

    #[test]
    fn xn_lies_on_sigma_graph() {
        for n in 1..=3 {
            let patch = patch_xn(n).unwrap();
            let chart = sigma_n(n).unwrap();
            for k in 1..20 {
                let t = 0.1 * k as f64;
                let th = 0.37 * k as f64;
                let [x, y, f, g] = patch.point(t, th);
                let (cf, cg) = chart.heights(x, y).unwrap();
                assert!((cf - f).abs() <= 1e-10 * (1.0 + f.abs()) && (cg - g).abs() <= 1e-10 * (1.0 + g.abs()));
            }
        }
    }
}
