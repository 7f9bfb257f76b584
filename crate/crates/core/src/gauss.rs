//! Generalized Gauss map into CP³ and the Osserman first-order system.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::geometry::fundamental_form;
use crate::jet::Jet2;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative tolerance for ties when choosing the pivot component.
const PIVOT_TIE: f64 = 1e-12;

/// Point of CP³ stored in a canonical representative.
///
/// The representative is scaled so that its largest-modulus component (the
/// first one on ties) equals `1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint {
    z: [Complex64; 4],
}

impl ProjectivePoint {
    pub fn new(z: [Complex64; 4]) -> Result<Self> {
        if z.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("projective coordinates".into()));
        }
        let max = z.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return Err(Error::InvalidParameter("all homogeneous coordinates vanish".into()));
        }
        let pivot = z
            .iter()
            .position(|c| c.norm() >= max * (1.0 - PIVOT_TIE))
            .expect("maximum is attained");
        let s = z[pivot];
        let mut out = z.map(|c| c / s);
        out[pivot] = Complex64::new(1.0, 0.0);
        Ok(ProjectivePoint { z: out })
    }

    pub fn coords(&self) -> [Complex64; 4] {
        self.z
    }

    /// Fubini–Study distance, in `[0, π/2]`.
    pub fn distance(&self, other: &ProjectivePoint) -> f64 {
        let dot: Complex64 = self.z.iter().zip(&other.z).map(|(a, b)| a.conj() * b).sum();
        let na: f64 = self.z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let nb: f64 = other.z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let c = (dot.norm() / (na * nb)).min(1.0);
        // acos loses half the digits near 1; use the sine of the angle instead
        let s = (1.0 - c * c).max(0.0).sqrt();
        s.atan2(c)
    }

    /// Largest componentwise difference between canonical representatives.
    pub fn max_component_difference(&self, other: &ProjectivePoint) -> f64 {
        self.z
            .iter()
            .zip(&other.z)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Hyperplane `a₁z₁ + a₂z₂ + a₃z₃ + a₄z₄ = 0` of CP³.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    a: [Complex64; 4],
}

impl Hyperplane {
    /// Normalizes to unit norm with the first component of modulus at least
    /// `1e−9` real and positive.
    pub fn new(a: [Complex64; 4]) -> Result<Self> {
        if a.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("hyperplane coefficients".into()));
        }
        let norm = a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidParameter("zero hyperplane".into()));
        }
        let u = a.map(|c| c / norm);
        let lead = u.iter().find(|c| c.norm() >= 1e-9).copied().unwrap_or(u[0]);
        let phase = lead.conj() / lead.norm();
        Ok(Hyperplane { a: u.map(|c| c * phase) })
    }

    /// The hyperplane `z₃ + iμ z₄ = 0`.
    pub fn osserman(mu: f64) -> Self {
        Hyperplane::new([0.0.into(), 0.0.into(), 1.0.into(), I * mu]).expect("nonzero")
    }

    pub fn coeffs(&self) -> [Complex64; 4] {
        self.a
    }

    /// Euclidean distance between normalized coefficient vectors.
    pub fn distance(&self, other: &Hyperplane) -> f64 {
        self.a
            .iter()
            .zip(&other.a)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

fn metric_matrix(jf: &Jet2, jg: &Jet2) -> (f64, f64, f64) {
    fundamental_form(jf, jg).normalized()
}

fn check_mu(mu: f64) -> Result<()> {
    if mu == 0.0 || !mu.is_finite() {
        return Err(Error::InvalidParameter(format!("Osserman coefficient must be finite and nonzero, got {mu}")));
    }
    Ok(())
}

/// `(f_x, f_y) − μ M (g_y, −g_x)` with `M = [[E, F], [F, G]]/ω`.
pub fn osserman_residual(jf: &Jet2, jg: &Jet2, mu: f64) -> Result<(f64, f64)> {
    check_mu(mu)?;
    let (e, f, g) = metric_matrix(jf, jg);
    Ok((
        jf.dx - mu * (e * jg.dy - f * jg.dx),
        jf.dy - mu * (f * jg.dy - g * jg.dx),
    ))
}

/// The dual form `(g_x, g_y) + (1/μ) M (f_y, −f_x)`.
///
/// Since `det M = 1`, the primal residual is `−μ M J` applied to this one,
/// with `J = [[0, 1], [−1, 0]]`.
pub fn osserman_dual_residual(jf: &Jet2, jg: &Jet2, mu: f64) -> Result<(f64, f64)> {
    check_mu(mu)?;
    let (e, f, g) = metric_matrix(jf, jg);
    Ok((
        jg.dx + (e * jf.dy - f * jf.dx) / mu,
        jg.dy + (f * jf.dy - g * jf.dx) / mu,
    ))
}

/// Modulus of `(G/ω)f_x + (i − F/ω)f_y + iμ[(G/ω)g_x + (i − F/ω)g_y]`.
pub fn osserman_complex_residual(jf: &Jet2, jg: &Jet2, mu: f64) -> f64 {
    let (_, f, g) = metric_matrix(jf, jg);
    let b = I - f;
    let z3 = g * jf.dx + b * jf.dy;
    let z4 = g * jg.dx + b * jg.dy;
    (z3 + I * mu * z4).norm()
}

fn gauss_coords(jf: &Jet2, jg: &Jet2) -> [Complex64; 4] {
    let (_, f, g) = metric_matrix(jf, jg);
    let a = Complex64::new(g, 0.0);
    let b = I - f;
    [a, b, a * jf.dx + b * jf.dy, a * jg.dx + b * jg.dy]
}

/// Homogeneous coordinates of the Gauss map before normalization.
pub fn gauss_map_raw(jf: &Jet2, jg: &Jet2) -> [Complex64; 4] {
    gauss_coords(jf, jg)
}

pub fn gauss_map(jf: &Jet2, jg: &Jet2) -> ProjectivePoint {
    ProjectivePoint::new(gauss_coords(jf, jg)).expect("second coordinate has imaginary part 1")
}

/// The second representative `[1 − iF/ω : iE/ω : … ]` of the same point.
pub fn gauss_map_alt(jf: &Jet2, jg: &Jet2) -> ProjectivePoint {
    let (e, f, _) = metric_matrix(jf, jg);
    let a = Complex64::new(1.0, -f);
    let b = Complex64::new(0.0, e);
    ProjectivePoint::new([a, b, a * jf.dx + b * jf.dy, a * jg.dx + b * jg.dy]).expect("first coordinate has real part 1")
}

pub fn hyperquadric_residual(p: &ProjectivePoint) -> f64 {
    p.z.iter().map(|c| c * c).sum::<Complex64>().norm()
}

pub fn hyperplane_residual(p: &ProjectivePoint, h: &Hyperplane) -> f64 {
    p.z.iter().zip(&h.a).map(|(z, a)| z * a).sum::<Complex64>().norm()
}

/// `(A_x, A_y) − M (B_y, −B_x)` with `M` from the chart's metric at `(x, y)`.
pub fn cauchy_riemann_residual(chart: &Chart, ja: &Jet2, jb: &Jet2, x: f64, y: f64) -> Result<(f64, f64)> {
    let (jf, jg) = chart.jets(x, y)?;
    let (e, f, g) = metric_matrix(&jf, &jg);
    Ok((ja.dx - (e * jb.dy - f * jb.dx), ja.dy - (f * jb.dy - g * jb.dx)))
}

/// Residual threshold below which `n` samples are reported as lying on a hyperplane.
pub fn degeneracy_threshold(n: usize) -> f64 {
    1e-6 * (n as f64).sqrt()
}

pub fn is_degenerate(residual: f64, n: usize) -> bool {
    residual <= degeneracy_threshold(n)
}

/// Least-squares hyperplane through the samples.
///
/// Returns the right singular vector of the `N × 4` matrix of canonical
/// representatives belonging to the smallest singular value, and that value.
pub fn fit_hyperplane(samples: &[ProjectivePoint]) -> Result<(Hyperplane, f64)> {
    if samples.len() < 4 {
        return Err(Error::TooFewSamples {
            needed: 4,
            got: samples.len(),
        });
    }
    let mut cols: Vec<Vec<Complex64>> = (0..4).map(|j| samples.iter().map(|p| p.z[j]).collect()).collect();
    let (sigma, v) = one_sided_jacobi(&mut cols);
    let k = (0..4)
        .min_by(|&a, &b| sigma[a].total_cmp(&sigma[b]))
        .expect("four columns");
    let a = [v[0][k], v[1][k], v[2][k], v[3][k]];
    Ok((Hyperplane::new(a)?, sigma[k]))
}

/// One-sided (Hestenes) Jacobi SVD of a complex matrix stored by columns.
///
/// On return the columns of `a` are mutually orthogonal; the singular values
/// are their norms and `v` (row-major 4×4) holds the right singular vectors
/// as columns.
fn one_sided_jacobi(a: &mut [Vec<Complex64>]) -> ([f64; 4], [[Complex64; 4]; 4]) {
    let n = a.len();
    debug_assert_eq!(n, 4);
    let mut v = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    for _sweep in 0..60 {
        let mut rotated = false;
        for j in 0..n {
            for k in j + 1..n {
                let alpha: f64 = a[j].iter().map(|c| c.norm_sqr()).sum();
                let beta: f64 = a[k].iter().map(|c| c.norm_sqr()).sum();
                let gamma: Complex64 = a[j].iter().zip(&a[k]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                // rotate column k by the phase of γ so the pair is real, then Givens
                let phase = gamma.conj() / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = a.split_at_mut(k);
                for (x, y) in left[j].iter_mut().zip(right[0].iter_mut()) {
                    let yk = *y * phase;
                    let xj = *x;
                    *x = xj * c - yk * s;
                    *y = xj * s + yk * c;
                }
                for row in v.iter_mut() {
                    let yk = row[k] * phase;
                    let xj = row[j];
                    row[j] = xj * c - yk * s;
                    row[k] = xj * s + yk * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sigma = [0.0; 4];
    for (s, col) in sigma.iter_mut().zip(a.iter()) {
        *s = col.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    }
    (sigma, v)
}
