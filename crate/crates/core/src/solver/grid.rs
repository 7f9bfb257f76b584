//! Nodal height data on a rectangular grid.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::chart::{Bounds, Chart};
use crate::error::{Error, Result};
use crate::sampling::radical_inverse;

pub const GRID_SCHEMA_VERSION: u32 = 1;

/// `(f, g)` on an `nx × ny` grid, row-major with `x` varying fastest.
///
/// Nodes flagged in `boundary_mask` are Dirichlet data and are never
/// modified through the public API.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridField {
    nx: usize,
    ny: usize,
    x0: f64,
    y0: f64,
    hx: f64,
    hy: f64,
    pub(super) f: Vec<f64>,
    pub(super) g: Vec<f64>,
    boundary_mask: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct GridFile {
    schema_version: u32,
    #[serde(flatten)]
    grid: GridField,
}

impl GridField {
    /// Zero heights over `bounds`, with the outer ring of nodes fixed.
    pub fn new(bounds: Bounds, nx: usize, ny: usize) -> Result<Self> {
        if nx < 3 || ny < 3 {
            return Err(Error::InvalidParameter(format!("grid needs at least 3x3 nodes, got {nx}x{ny}")));
        }
        if !(bounds.width() > 0.0 && bounds.height() > 0.0) || !bounds.width().is_finite() || !bounds.height().is_finite()
        {
            return Err(Error::InvalidParameter(format!("grid box must have positive finite size: {bounds:?}")));
        }
        let mut boundary_mask = vec![false; nx * ny];
        for j in 0..ny {
            for i in 0..nx {
                boundary_mask[j * nx + i] = i == 0 || j == 0 || i == nx - 1 || j == ny - 1;
            }
        }
        Ok(GridField {
            nx,
            ny,
            x0: bounds.x_min,
            y0: bounds.y_min,
            hx: bounds.width() / (nx - 1) as f64,
            hy: bounds.height() / (ny - 1) as f64,
            f: vec![0.0; nx * ny],
            g: vec![0.0; nx * ny],
            boundary_mask,
        })
    }

    /// Every node sampled from the chart.
    pub fn from_chart(chart: &Chart, bounds: Bounds, nx: usize, ny: usize) -> Result<Self> {
        let mut grid = GridField::new(bounds, nx, ny)?;
        for j in 0..ny {
            for i in 0..nx {
                let (f, g) = chart.heights(grid.x(i), grid.y(j))?;
                let k = grid.index(i, j);
                grid.f[k] = f;
                grid.g[k] = g;
            }
        }
        Ok(grid)
    }

    /// Boundary from the chart, interior by transfinite interpolation.
    pub fn dirichlet_from_chart(chart: &Chart, bounds: Bounds, nx: usize, ny: usize) -> Result<Self> {
        let mut grid = GridField::new(bounds, nx, ny)?;
        for k in 0..grid.len() {
            if grid.boundary_mask[k] {
                let (i, j) = (k % nx, k / nx);
                let (f, g) = chart.heights(grid.x(i), grid.y(j))?;
                grid.f[k] = f;
                grid.g[k] = g;
            }
        }
        grid.transfinite_init();
        Ok(grid)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn hx(&self) -> f64 {
        self.hx
    }

    pub fn hy(&self) -> f64 {
        self.hy
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn bounds(&self) -> Bounds {
        Bounds::new(
            self.x0,
            self.x0 + self.hx * (self.nx - 1) as f64,
            self.y0,
            self.y0 + self.hy * (self.ny - 1) as f64,
        )
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.hx
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y0 + j as f64 * self.hy
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    pub fn boundary_mask(&self) -> &[bool] {
        &self.boundary_mask
    }

    pub fn is_fixed(&self, k: usize) -> bool {
        self.boundary_mask[k]
    }

    pub fn free_count(&self) -> usize {
        self.boundary_mask.iter().filter(|b| !**b).count()
    }

    /// Sets a free node; fixed nodes are rejected.
    pub fn set(&mut self, i: usize, j: usize, f: f64, g: f64) -> Result<()> {
        let k = self.index(i, j);
        if self.boundary_mask[k] {
            return Err(Error::InvalidParameter(format!("node ({i}, {j}) is boundary data")));
        }
        self.f[k] = f;
        self.g[k] = g;
        Ok(())
    }

    /// Adds `step · (df, dg)` to every free node.
    pub(crate) fn axpy_free(&mut self, step: f64, df: &[f64], dg: &[f64]) {
        for k in 0..self.len() {
            if !self.boundary_mask[k] {
                self.f[k] += step * df[k];
                self.g[k] += step * dg[k];
            }
        }
    }

    /// Coons-patch interpolation of the boundary ring into the free nodes.
    pub fn transfinite_init(&mut self) {
        let (nx, ny) = (self.nx, self.ny);
        for vals in [&mut self.f, &mut self.g] {
            let at = |v: &Vec<f64>, i: usize, j: usize| v[j * nx + i];
            let c = [at(vals, 0, 0), at(vals, nx - 1, 0), at(vals, 0, ny - 1), at(vals, nx - 1, ny - 1)];
            let mut out = vals.clone();
            for j in 1..ny - 1 {
                let t = j as f64 / (ny - 1) as f64;
                for i in 1..nx - 1 {
                    let s = i as f64 / (nx - 1) as f64;
                    let edges = (1.0 - s) * at(vals, 0, j)
                        + s * at(vals, nx - 1, j)
                        + (1.0 - t) * at(vals, i, 0)
                        + t * at(vals, i, ny - 1);
                    let corners =
                        (1.0 - s) * (1.0 - t) * c[0] + s * (1.0 - t) * c[1] + (1.0 - s) * t * c[2] + s * t * c[3];
                    out[j * nx + i] = edges - corners;
                }
            }
            for k in 0..out.len() {
                if !self.boundary_mask[k] {
                    vals[k] = out[k];
                }
            }
        }
    }

    /// Deterministic pseudo-random perturbation of the free nodes in `[−a, a]`.
    pub fn perturb_free(&mut self, amplitude: f64, seed: u64) {
        for k in 0..self.len() {
            if !self.boundary_mask[k] {
                let idx = seed.wrapping_mul(7919).wrapping_add(k as u64 + 1);
                self.f[k] += amplitude * (2.0 * radical_inverse(idx, 5) - 1.0);
                self.g[k] += amplitude * (2.0 * radical_inverse(idx, 7) - 1.0);
            }
        }
    }

    /// Largest nodal difference from the chart's heights.
    pub fn max_error(&self, chart: &Chart) -> Result<f64> {
        let mut err: f64 = 0.0;
        for j in 0..self.ny {
            for i in 0..self.nx {
                let (f, g) = chart.heights(self.x(i), self.y(j))?;
                let k = self.index(i, j);
                err = err.max((self.f[k] - f).abs()).max((self.g[k] - g).abs());
            }
        }
        Ok(err)
    }

    /// Gradients `(f_x, f_y, g_x, g_y)` of the bilinear interpolant at the
    /// centre of cell `(i, j)`.
    pub fn cell_gradients(&self, i: usize, j: usize) -> Option<[f64; 4]> {
        if i + 1 >= self.nx || j + 1 >= self.ny {
            return None;
        }
        let k = self.index(i, j);
        let (a, b, c, d) = (k, k + 1, k + self.nx, k + self.nx + 1);
        let dx = |v: &[f64]| ((v[b] - v[a]) + (v[d] - v[c])) / (2.0 * self.hx);
        let dy = |v: &[f64]| ((v[c] - v[a]) + (v[d] - v[b])) / (2.0 * self.hy);
        Some([dx(&self.f), dy(&self.f), dx(&self.g), dy(&self.g)])
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["x", "y", "f", "g"])?;
        for j in 0..self.ny {
            for i in 0..self.nx {
                let k = self.index(i, j);
                wr.write_record(&[
                    format!("{:.17e}", self.x(i)),
                    format!("{:.17e}", self.y(j)),
                    format!("{:.17e}", self.f[k]),
                    format!("{:.17e}", self.g[k]),
                ])?;
            }
        }
        wr.flush()?;
        Ok(())
    }

    /// Reads rows `x, y, f, g` listed row-major; the outer ring is fixed.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let headers = rd.headers()?.clone();
        if headers.iter().map(str::trim).collect::<Vec<_>>() != ["x", "y", "f", "g"] {
            return Err(Error::GridFormat(format!("expected header x,y,f,g, got {headers:?}")));
        }
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let vals: Vec<f64> = rec
                .iter()
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::GridFormat(format!("line {}: {e}", rows.len() + 2)))?;
            if vals.len() != 4 || vals.iter().any(|v| !v.is_finite()) {
                return Err(Error::GridFormat(format!("line {}: need four finite numbers", rows.len() + 2)));
            }
            rows.push([vals[0], vals[1], vals[2], vals[3]]);
        }
        let y_first = rows.first().map(|r| r[1]).ok_or_else(|| Error::GridFormat("no rows".into()))?;
        let nx = rows.iter().take_while(|r| r[1] == y_first).count();
        if nx < 3 || rows.len() % nx != 0 {
            return Err(Error::GridFormat(format!("{} rows do not form a grid with {nx} columns", rows.len())));
        }
        let ny = rows.len() / nx;
        let bounds = Bounds::new(rows[0][0], rows[nx - 1][0], rows[0][1], rows[rows.len() - 1][1]);
        let mut grid = GridField::new(bounds, nx, ny)?;
        let tol = 1e-9 * (grid.hx.min(grid.hy));
        for (k, r) in rows.iter().enumerate() {
            let (i, j) = (k % nx, k / nx);
            if (r[0] - grid.x(i)).abs() > tol || (r[1] - grid.y(j)).abs() > tol {
                return Err(Error::GridFormat(format!("row {} is not on a uniform row-major grid", k + 1)));
            }
            grid.f[k] = r[2];
            grid.g[k] = r[3];
        }
        Ok(grid)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&GridFile {
            schema_version: GRID_SCHEMA_VERSION,
            grid: self.clone(),
        })?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: GridFile = serde_json::from_str(s)?;
        if file.schema_version != GRID_SCHEMA_VERSION {
            return Err(Error::GridFormat(format!("unsupported schema version {}", file.schema_version)));
        }
        let g = file.grid;
        let n = g.nx * g.ny;
        if g.nx < 3 || g.ny < 3 || g.f.len() != n || g.g.len() != n || g.boundary_mask.len() != n {
            return Err(Error::GridFormat("array lengths do not match nx * ny".into()));
        }
        if !(g.hx > 0.0 && g.hy > 0.0) || g.f.iter().chain(&g.g).any(|v| !v.is_finite()) {
            return Err(Error::GridFormat("spacings must be positive and values finite".into()));
        }
        Ok(g)
    }

    /// Reads `.json` files as JSON and anything else as CSV.
    pub fn load(path: &Path) -> Result<Self> {
        let mut file = BufReader::new(File::open(path)?);
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
            let mut s = String::new();
            file.read_to_string(&mut s)?;
            GridField::from_json(&s)
        } else {
            GridField::read_csv(file)
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut file = BufWriter::new(File::create(path)?);
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
            file.write_all(self.to_json()?.as_bytes())?;
            file.write_all(b"\n")?;
        } else {
            self.write_csv(&mut file)?;
        }
        file.flush()?;
        Ok(())
    }
}
