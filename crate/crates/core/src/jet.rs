//! Second-order jets in two variables.
//!
//! A [`Jet2`] carries the value, gradient and Hessian of a scalar field at a
//! point. Arithmetic on jets is truncated Taylor arithmetic, so a closed-form
//! expression evaluated on the seed jets [`Jet2::var_x`] / [`Jet2::var_y`]
//! yields its exact partials up to rounding. Closed forms are written once
//! against the [`Real`] trait and evaluated either on `f64` or on `Jet2`.
//!
//! [`fd_jet`] is the independent oracle: plain central differences of the
//! `f64` evaluation, sharing no code with the jet chain rule.

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Scalar abstraction for closed-form height functions.
pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(v: f64) -> Self;
    fn val(&self) -> f64;

    fn sqrt(self) -> Self;
    fn ln(self) -> Self;
    fn exp(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn tan(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn tanh(self) -> Self;
    fn asin(self) -> Self;
    fn acos(self) -> Self;
    fn atan(self) -> Self;
    fn asinh(self) -> Self;
    fn acosh(self) -> Self;
    fn recip(self) -> Self;
    fn powi(self, n: i32) -> Self;

    fn square(self) -> Self {
        self * self
    }
}

impl Real for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn val(&self) -> f64 {
        *self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn tan(self) -> Self {
        f64::tan(self)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
    fn tanh(self) -> Self {
        f64::tanh(self)
    }
    fn asin(self) -> Self {
        f64::asin(self)
    }
    fn acos(self) -> Self {
        f64::acos(self)
    }
    fn atan(self) -> Self {
        f64::atan(self)
    }
    fn asinh(self) -> Self {
        f64::asinh(self)
    }
    fn acosh(self) -> Self {
        f64::acosh(self)
    }
    fn recip(self) -> Self {
        f64::recip(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
}

/// Value, gradient and Hessian of a scalar field at a point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Jet2 {
    pub value: f64,
    pub dx: f64,
    pub dy: f64,
    pub dxx: f64,
    pub dxy: f64,
    pub dyy: f64,
}

impl Jet2 {
    pub const ZERO: Jet2 = Jet2::constant(0.0);

    pub const fn new(value: f64, dx: f64, dy: f64, dxx: f64, dxy: f64, dyy: f64) -> Self {
        Jet2 {
            value,
            dx,
            dy,
            dxx,
            dxy,
            dyy,
        }
    }

    pub const fn constant(value: f64) -> Self {
        Jet2::new(value, 0.0, 0.0, 0.0, 0.0, 0.0)
    }

    /// Seed jet of the coordinate function `x` at abscissa `x`.
    pub const fn var_x(x: f64) -> Self {
        Jet2::new(x, 1.0, 0.0, 0.0, 0.0, 0.0)
    }

    /// Seed jet of the coordinate function `y` at ordinate `y`.
    pub const fn var_y(y: f64) -> Self {
        Jet2::new(y, 0.0, 1.0, 0.0, 0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|v| v.is_finite())
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.value, self.dx, self.dy, self.dxx, self.dxy, self.dyy]
    }

    /// Largest absolute entry.
    pub fn sup_norm(&self) -> f64 {
        self.as_array().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn grad_norm_sq(&self) -> f64 {
        self.dx * self.dx + self.dy * self.dy
    }

    pub fn scale(self, c: f64) -> Self {
        self * c
    }

    /// Compose with a univariate function given its value and first two
    /// derivatives at `self.value`.
    fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        Jet2 {
            value: f0,
            dx: f1 * self.dx,
            dy: f1 * self.dy,
            dxx: f1 * self.dxx + f2 * self.dx * self.dx,
            dxy: f1 * self.dxy + f2 * self.dx * self.dy,
            dyy: f1 * self.dyy + f2 * self.dy * self.dy,
        }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 {
            value: self.value + o.value,
            dx: self.dx + o.dx,
            dy: self.dy + o.dy,
            dxx: self.dxx + o.dxx,
            dxy: self.dxy + o.dxy,
            dyy: self.dyy + o.dyy,
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        self + (-o)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self * -1.0
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        let (u, v) = (self, o);
        Jet2 {
            value: u.value * v.value,
            dx: u.value * v.dx + v.value * u.dx,
            dy: u.value * v.dy + v.value * u.dy,
            dxx: u.value * v.dxx + v.value * u.dxx + 2.0 * u.dx * v.dx,
            dxy: u.value * v.dxy + v.value * u.dxy + u.dx * v.dy + u.dy * v.dx,
            dyy: u.value * v.dyy + v.value * u.dyy + 2.0 * u.dy * v.dy,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(mut self, c: f64) -> Jet2 {
        self.value += c;
        self
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(mut self, c: f64) -> Jet2 {
        self.value -= c;
        self
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, c: f64) -> Jet2 {
        Jet2 {
            value: self.value * c,
            dx: self.dx * c,
            dy: self.dy * c,
            dxx: self.dxx * c,
            dxy: self.dxy * c,
            dyy: self.dyy * c,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div<f64> for Jet2 {
    type Output = Jet2;
    fn div(self, c: f64) -> Jet2 {
        self * c.recip()
    }
}

impl Real for Jet2 {
    fn cst(v: f64) -> Self {
        Jet2::constant(v)
    }
    fn val(&self) -> f64 {
        self.value
    }
    fn sqrt(self) -> Self {
        let s = self.value.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * s * s))
    }
    fn ln(self) -> Self {
        let v = self.value;
        self.chain(v.ln(), 1.0 / v, -1.0 / (v * v))
    }
    fn exp(self) -> Self {
        let e = self.value.exp();
        self.chain(e, e, e)
    }
    fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }
    fn tan(self) -> Self {
        let t = self.value.tan();
        let d = 1.0 + t * t;
        self.chain(t, d, 2.0 * t * d)
    }
    fn sinh(self) -> Self {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.chain(s, c, s)
    }
    fn cosh(self) -> Self {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.chain(c, s, c)
    }
    fn tanh(self) -> Self {
        let t = self.value.tanh();
        let d = 1.0 - t * t;
        self.chain(t, d, -2.0 * t * d)
    }
    fn asin(self) -> Self {
        let v = self.value;
        let w = 1.0 - v * v;
        let r = w.sqrt();
        self.chain(v.asin(), 1.0 / r, v / (w * r))
    }
    fn acos(self) -> Self {
        let v = self.value;
        let w = 1.0 - v * v;
        let r = w.sqrt();
        self.chain(v.acos(), -1.0 / r, -v / (w * r))
    }
    fn atan(self) -> Self {
        let v = self.value;
        let w = 1.0 + v * v;
        self.chain(v.atan(), 1.0 / w, -2.0 * v / (w * w))
    }
    fn asinh(self) -> Self {
        let v = self.value;
        let w = 1.0 + v * v;
        let r = w.sqrt();
        self.chain(v.asinh(), 1.0 / r, -v / (w * r))
    }
    fn acosh(self) -> Self {
        let v = self.value;
        let w = v * v - 1.0;
        let r = w.sqrt();
        self.chain(v.acosh(), 1.0 / r, -v / (w * r))
    }
    fn recip(self) -> Self {
        let v = self.value;
        let r = 1.0 / v;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }
    fn powi(self, n: i32) -> Self {
        let v = self.value;
        let nf = n as f64;
        let d2 = if !(0..2).contains(&n) {
            nf * (nf - 1.0) * v.powi(n - 2)
        } else {
            0.0
        };
        let d1 = if n != 0 { nf * v.powi(n - 1) } else { 0.0 };
        self.chain(v.powi(n), d1, d2)
    }
}

/// Step sizes for the finite-difference jet oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdSteps {
    pub gradient: f64,
    pub hessian: f64,
}

impl FdSteps {
    /// `cbrt(eps)·max(1,|t|)` for first partials; `eps^(1/6)·max(1,|t|)` for
    /// second partials, where the five-point stencil divides by `h²`.
    pub fn default_at(x: f64, y: f64) -> Self {
        let scale = 1.0_f64.max(x.abs()).max(y.abs());
        FdSteps {
            gradient: f64::EPSILON.cbrt() * scale,
            hessian: f64::EPSILON.powf(1.0 / 6.0) * scale,
        }
    }

    pub fn uniform(h: f64) -> Self {
        FdSteps {
            gradient: h,
            hessian: h,
        }
    }
}

/// Central-difference jet of `f` at `(x, y)` with fourth-order five-point
/// stencils along each axis and their tensor product for the mixed partial.
pub fn fd_jet<F: Fn(f64, f64) -> f64>(f: F, x: f64, y: f64, steps: FdSteps) -> Jet2 {
    const W1: [(f64, f64); 4] = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];
    const W2: [(f64, f64); 5] = [
        (-2.0, -1.0),
        (-1.0, 16.0),
        (0.0, -30.0),
        (1.0, 16.0),
        (2.0, -1.0),
    ];
    let h = steps.gradient;
    let k = steps.hessian;
    let d1 = |g: &dyn Fn(f64) -> f64| W1.iter().map(|&(o, w)| w * g(o * h)).sum::<f64>() / (12.0 * h);
    let d2 = |g: &dyn Fn(f64) -> f64| {
        W2.iter().map(|&(o, w)| w * g(o * k)).sum::<f64>() / (12.0 * k * k)
    };
    let dxy = W1
        .iter()
        .map(|&(oi, wi)| {
            wi * W1
                .iter()
                .map(|&(oj, wj)| wj * f(x + oi * k, y + oj * k))
                .sum::<f64>()
        })
        .sum::<f64>()
        / (144.0 * k * k);
    Jet2 {
        value: f(x, y),
        dx: d1(&|t| f(x + t, y)),
        dy: d1(&|t| f(x, y + t)),
        dxx: d2(&|t| f(x + t, y)),
        dxy,
        dyy: d2(&|t| f(x, y + t)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sample<S: Real>(x: S, y: S) -> S {
        (x * y).sin() + (x.square() + y.square() + 1.0).sqrt().ln() - (y / (x + 3.0)).atan()
    }

    #[test]
    fn seeds_have_unit_gradient() {
        let x = Jet2::var_x(0.3);
        assert_eq!(x.as_array(), [0.3, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let y = Jet2::var_y(-1.0);
        assert_eq!(y.as_array(), [-1.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn product_rule_on_polynomial() {
        // f = x^2 y + 3 y^2 at (2, -1): f = -1, fx = 2xy = -4, fy = x^2 + 6y = -2,
        // fxx = 2y = -2, fxy = 2x = 4, fyy = 6.
        let (x, y) = (Jet2::var_x(2.0), Jet2::var_y(-1.0));
        let f = x * x * y + y * y * 3.0;
        assert_eq!(f.as_array(), [-1.0, -4.0, -2.0, -2.0, 4.0, 6.0]);
    }

    #[test]
    fn jet_matches_finite_differences() {
        for &(x, y) in &[(0.3, 0.4), (-1.2, 0.7), (2.0, -0.5)] {
            let exact = sample(Jet2::var_x(x), Jet2::var_y(y));
            let fd = fd_jet(sample::<f64>, x, y, FdSteps::default_at(x, y));
            for (a, b) in exact.as_array().iter().zip(fd.as_array()) {
                assert!((a - b).abs() < 1e-7, "{exact:?} vs {fd:?}");
            }
        }
    }

    #[test]
    fn elementary_functions_against_fd() {
        type F = fn(Jet2) -> Jet2;
        type G = fn(f64) -> f64;
        let cases: [(F, G, f64); 14] = [
            (|t| t.sqrt(), f64::sqrt, 1.7),
            (|t| t.ln(), f64::ln, 0.6),
            (|t| t.exp(), f64::exp, -0.4),
            (|t| t.sin(), f64::sin, 0.9),
            (|t| t.cos(), f64::cos, 0.9),
            (|t| t.tan(), f64::tan, 0.4),
            (|t| t.sinh(), f64::sinh, 0.8),
            (|t| t.cosh(), f64::cosh, 0.8),
            (|t| t.tanh(), f64::tanh, 0.8),
            (|t| t.asin(), f64::asin, 0.3),
            (|t| t.acos(), f64::acos, -0.3),
            (|t| t.atan(), f64::atan, 1.3),
            (|t| t.asinh(), f64::asinh, 1.3),
            (|t| t.acosh(), f64::acosh, 1.6),
        ];
        for (jf, ff, x0) in cases {
            // compose with a non-linear inner map so the chain rule's second term matters
            let inner = |x: f64, y: f64| x0 + 0.1 * x * y + 0.05 * y * y;
            let j = jf(Jet2::constant(x0) + Jet2::var_x(0.5) * Jet2::var_y(0.2) * 0.1
                + Jet2::var_y(0.2) * Jet2::var_y(0.2) * 0.05
                - 0.1 * 0.5 * 0.2
                - 0.05 * 0.2 * 0.2);
            let fd = fd_jet(|x, y| ff(inner(x, y) - 0.1 * 0.5 * 0.2 - 0.05 * 0.04), 0.5, 0.2, FdSteps::uniform(1e-3));
            for (a, b) in j.as_array().iter().zip(fd.as_array()) {
                assert_relative_eq!(*a, b, epsilon = 1e-8, max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn powi_and_recip() {
        let x = Jet2::var_x(1.5);
        let p = x.powi(3);
        assert_relative_eq!(p.value, 3.375);
        assert_relative_eq!(p.dx, 3.0 * 2.25);
        assert_relative_eq!(p.dxx, 6.0 * 1.5);
        let r = x.recip();
        assert_relative_eq!(r.dxx, 2.0 / 3.375);
        assert_eq!(x.powi(0).as_array(), [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }
}
