//! Quasi-random interior samples.

use crate::chart::Chart;
use crate::error::{Error, Result};

/// Van der Corput radical inverse of `index` in `base`.
pub fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while index > 0 {
        r += f * (index % base) as f64;
        index /= base;
        f *= inv;
    }
    r
}

/// Two dimensional Halton sequence with bases 2 and 3.
#[derive(Clone, Debug)]
pub struct Halton2 {
    index: u64,
}

impl Halton2 {
    /// Starts at `1 + start`, skipping the origin.
    pub fn new(start: u64) -> Self {
        Halton2 { index: start + 1 }
    }
}

impl Iterator for Halton2 {
    type Item = (f64, f64);
    fn next(&mut self) -> Option<(f64, f64)> {
        let i = self.index;
        self.index += 1;
        Some((radical_inverse(i, 2), radical_inverse(i, 3)))
    }
}

/// `n` Halton points of the chart's sampling box whose margin exceeds the
/// chart's sample margin (and `extra`, whichever is larger).
pub fn interior_points(chart: &Chart, n: usize, seed: u64, extra: f64) -> Result<Vec<(f64, f64)>> {
    let b = chart.domain.bounds;
    let need = chart.sample_margin.max(extra);
    let max_tries = 2000 * n.max(1) + 10_000;
    let mut out = Vec::with_capacity(n);
    for (u, v) in Halton2::new(seed).take(max_tries) {
        if out.len() == n {
            break;
        }
        let (x, y) = (b.x_min + u * b.width(), b.y_min + v * b.height());
        if chart.margin(x, y) > need {
            out.push((x, y));
        }
    }
    if out.len() < n {
        return Err(Error::TooFewSamples {
            needed: n,
            got: out.len(),
        });
    }
    Ok(out)
}

/// [`interior_points`] with seed 0 and no extra margin.
pub fn sample_interior(chart: &Chart, n: usize) -> Result<Vec<(f64, f64)>> {
    interior_points(chart, n, 0, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{Bounds, Domain, PairFormula};
    use crate::jet::Real;

    struct Zero;
    impl PairFormula for Zero {
        fn eval<S: Real>(&self, x: S, _y: S) -> (S, S) {
            (x * 0.0, x * 0.0)
        }
    }

    #[test]
    fn radical_inverse_values() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert!((radical_inverse(5, 3) - 7.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn halton_starts_after_origin() {
        let pts: Vec<_> = Halton2::new(0).take(2).collect();
        assert_eq!(pts[0], (0.5, 1.0 / 3.0));
        assert_eq!(pts[1].0, 0.25);
    }

    #[test]
    fn rejection_respects_margin() {
        let disk = Domain::new("disk", Bounds::square(1.0), |x, y| 1.0 - x.hypot(y));
        let c = Chart::from_pair("zero", disk, Zero).with_sample_margin(0.3);
        let pts = sample_interior(&c, 100).unwrap();
        assert_eq!(pts.len(), 100);
        assert!(pts.iter().all(|&(x, y)| x.hypot(y) < 0.7));
        assert_eq!(pts, sample_interior(&c, 100).unwrap());
        assert_ne!(pts, interior_points(&c, 100, 7, 0.0).unwrap());
    }

    #[test]
    fn empty_domain_reports_shortfall() {
        let none = Domain::new("empty", Bounds::square(1.0), |_, _| -1.0);
        let c = Chart::from_pair("zero", none, Zero);
        assert!(matches!(sample_interior(&c, 3), Err(Error::TooFewSamples { .. })));
    }
}
