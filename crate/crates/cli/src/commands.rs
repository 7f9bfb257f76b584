use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::path::Path;

use minsurf::catalog::registry::{self, entries, EntryKind, Key};
use minsurf::catalog::{total_curvature, ConformalPatch};
use minsurf::chart::ScalarMap;
use minsurf::gauss::{fit_hyperplane, gauss_map, hyperplane_residual, hyperquadric_residual, is_degenerate, osserman_residual, Hyperplane};
use minsurf::geometry::{conformal_ratio, divergence_identities_residual, mss_residual};
use minsurf::lagrange::{integrate_potential_with, IntegrationOptions};
use minsurf::sampling::interior_points;
use minsurf::solver::{solve, GridField, SolveParams, StepRule};
use minsurf::{Bounds, Chart, Error, Result};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::args::*;
use crate::output::{obj_mesh, points_csv, projection, to_json, SCHEMA_VERSION};

const HYPERQUADRIC_TOL: f64 = 1e-12;
const DIVERGENCE_STEP: f64 = 1e-4;
const DIVERGENCE_TOL: f64 = 1e-5;
const PATCH_U_RANGE: f64 = 2.0;

/// What a command produced: text for stdout/`--out` and the exit code.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn json(v: Value, ok: bool) -> Self {
        Outcome {
            text: to_json(&v),
            code: if ok { 0 } else { 1 },
        }
    }
}

pub fn run(cmd: Command) -> Result<(Outcome, Option<std::path::PathBuf>)> {
    Ok(match cmd {
        Command::Verify(a) => {
            let out = a.output.out.clone();
            (verify(&a)?, out)
        }
        Command::Sample(a) => {
            let out = a.output.out.clone();
            (sample(&a)?, out)
        }
        Command::Potential(a) => {
            let out = a.output.out.clone();
            (potential(&a)?, out)
        }
        Command::Gauss(a) => {
            let out = a.output.out.clone();
            (gauss(&a)?, out)
        }
        Command::Curvature(a) => {
            let out = a.output.out.clone();
            (curvature(&a)?, out)
        }
        Command::Solve(a) => {
            let out = a.output.out.clone();
            (solve_cmd(&a)?, out)
        }
        Command::List(a) => (list(), a.output.out),
    })
}

fn overrides(p: &ParamArgs) -> BTreeMap<String, f64> {
    [("lambda", p.lambda), ("N", p.n_param), ("alpha", p.alpha), ("beta", p.beta), ("rho", p.rho)]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k.to_string(), v)))
        .collect()
}

fn key_of(text: &str, p: &ParamArgs) -> Result<Key> {
    registry::parse_key(text)?.with_overrides(&overrides(p))
}

fn key_string(key: &Key) -> String {
    if key.params.is_empty() {
        return key.name.clone();
    }
    let params: Vec<String> = key.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{}:{}", key.name, params.join(","))
}

fn envelope(command: &str, mut body: Map<String, Value>) -> Value {
    body.insert("schema_version".into(), json!(SCHEMA_VERSION));
    body.insert("command".into(), json!(command));
    Value::Object(body)
}

fn check(name: &str, max: f64, tol: f64, samples: usize) -> Value {
    json!({
        "name": name,
        "max_residual": max,
        "tolerance": tol,
        "samples": samples,
        "pass": max.is_finite() && max <= tol,
    })
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let key = key_of(&a.chart.chart, &a.chart.params)?;
    let chart = registry::chart_from(&key)?;
    let pts = interior_points(&chart, a.n, a.seed, 2.0 * DIVERGENCE_STEP)?;
    let mut jets = Vec::with_capacity(pts.len());
    for &(x, y) in &pts {
        jets.push(chart.jets(x, y)?);
    }
    let mu = a.mu.or(chart.meta.osserman_mu);
    let mut checks = Vec::new();

    let mss = jets.iter().map(|(f, g)| {
        let (r1, r2) = mss_residual(f, g);
        r1.abs().max(r2.abs())
    });
    checks.push(check("minimal_surface_system", fold_max(mss), a.tol, pts.len()));

    if let Some(mu) = mu {
        let mut worst = 0.0_f64;
        for (f, g) in &jets {
            let (r1, r2) = osserman_residual(f, g, mu)?;
            worst = worst.max(r1.abs()).max(r2.abs());
        }
        checks.push(check("osserman_system", worst, a.tol, pts.len()));
    }

    let images: Vec<_> = jets.iter().map(|(f, g)| gauss_map(f, g)).collect();
    let quad = fold_max(images.iter().map(hyperquadric_residual));
    checks.push(check("hyperquadric", quad, HYPERQUADRIC_TOL, pts.len()));

    let mut extra = Map::new();
    if let Some(mu) = mu {
        let h = Hyperplane::osserman(mu);
        let worst = fold_max(images.iter().map(|p| hyperplane_residual(p, &h)));
        checks.push(check("osserman_hyperplane", worst, a.tol, pts.len()));
    } else if images.len() >= 4 {
        let (h, res) = fit_hyperplane(&images)?;
        extra.insert(
            "hyperplane_fit".into(),
            json!({
                "coefficients": complex_list(&h.coeffs()),
                "residual": res,
                "degenerate": is_degenerate(res, images.len()),
            }),
        );
    }

    let mut div = 0.0_f64;
    for &(x, y) in &pts {
        let (r1, r2) = divergence_identities_residual(&chart, x, y, DIVERGENCE_STEP)?;
        div = div.max(r1.abs()).max(r2.abs());
    }
    checks.push(check("divergence_identities", div, DIVERGENCE_TOL, pts.len()));

    if chart.meta.lambda.is_some() {
        if let Ok(pair) = registry::minimal_pair_from(&key) {
            let base = pair.deform(0.0)?;
            let mut worst = 0.0_f64;
            for (&(x, y), (f, g)) in pts.iter().zip(&jets) {
                let (f0, g0) = base.jets(x, y)?;
                let (e, ff, gg) = conformal_ratio(f, g);
                let (e0, ff0, gg0) = conformal_ratio(&f0, &g0);
                worst = worst.max((e - e0).abs()).max((ff - ff0).abs()).max((gg - gg0).abs());
            }
            checks.push(check("conformal_invariance", worst, a.tol, pts.len()));
        }
    }

    let pass = checks.iter().all(|c| c["pass"] == json!(true));
    let mut body = Map::new();
    body.insert("chart".into(), json!(key_string(&key)));
    body.insert("n".into(), json!(pts.len()));
    body.insert("seed".into(), json!(a.seed));
    body.insert("osserman_mu".into(), json!(mu));
    body.insert("checks".into(), Value::Array(checks));
    body.extend(extra);
    body.insert("pass".into(), json!(pass));
    Ok(Outcome::json(envelope("verify", body), pass))
}

fn fold_max(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, |m, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) })
}

fn complex_list(c: &[Complex64; 4]) -> Value {
    Value::Array(c.iter().map(|z| json!([z.re, z.im])).collect())
}

fn sample(a: &SampleArgs) -> Result<Outcome> {
    let (keep, dropped) = projection(&a.project)
        .ok_or_else(|| Error::InvalidParameter(format!("projection must name three distinct coordinates of xyfg, got `{}`", a.project)))?;
    if let Some(fam) = &a.family {
        let key = key_of(fam, &a.params)?;
        let patch = registry::patch_from(&key)?;
        return sample_patch(a, &key, &patch, keep, dropped);
    }
    let text = a.chart.as_deref().unwrap_or_default();
    let key = key_of(text, &a.params)?;
    let chart = registry::chart_from(&key)?;
    match a.format {
        Format::Obj => {
            let n = a.n.max(2);
            let b = chart.domain.bounds;
            let verts: Vec<Option<[f64; 4]>> = (0..n * n)
                .map(|k| {
                    let (i, j) = (k % n, k / n);
                    let x = b.x_min + b.width() * i as f64 / (n - 1) as f64;
                    let y = b.y_min + b.height() * j as f64 / (n - 1) as f64;
                    (chart.margin(x, y) > chart.sample_margin)
                        .then(|| chart.point(x, y).ok())
                        .flatten()
                        .filter(|p| p.iter().all(|c| c.is_finite()))
                })
                .collect();
            Ok(text_outcome(obj_mesh(&key_string(&key), n, n, &verts, keep, dropped)))
        }
        Format::Csv | Format::Json => {
            let pts = interior_points(&chart, a.n, a.seed, 0.0)?;
            let mut rows = Vec::with_capacity(pts.len());
            for (x, y) in pts {
                rows.push(chart.point(x, y)?);
            }
            if a.format == Format::Csv {
                Ok(text_outcome(points_csv(&rows)))
            } else {
                let mut body = Map::new();
                body.insert("chart".into(), json!(key_string(&key)));
                body.insert("points".into(), json!(rows));
                Ok(Outcome::json(envelope("sample", body), true))
            }
        }
    }
}

fn sample_patch(a: &SampleArgs, key: &Key, patch: &ConformalPatch, keep: [usize; 3], dropped: usize) -> Result<Outcome> {
    let n = a.n.max(2);
    let v_max = patch.v_period.unwrap_or(TAU);
    let grid: Vec<[f64; 4]> = (0..n * n)
        .map(|k| {
            let (i, j) = (k % n, k / n);
            let u = -PATCH_U_RANGE + 2.0 * PATCH_U_RANGE * i as f64 / (n - 1) as f64;
            let v = v_max * j as f64 / (n - 1) as f64;
            patch.point(u, v)
        })
        .collect();
    match a.format {
        Format::Obj => {
            let verts: Vec<_> = grid.into_iter().map(|p| p.iter().all(|c| c.is_finite()).then_some(p)).collect();
            Ok(text_outcome(obj_mesh(&key_string(key), n, n, &verts, keep, dropped)))
        }
        Format::Csv => Ok(text_outcome(points_csv(&grid))),
        Format::Json => {
            let mut body = Map::new();
            body.insert("family".into(), json!(key_string(key)));
            body.insert("points".into(), json!(grid));
            Ok(Outcome::json(envelope("sample", body), true))
        }
    }
}

fn text_outcome(text: String) -> Outcome {
    Outcome { text, code: 0 }
}

fn potential(a: &PotentialArgs) -> Result<Outcome> {
    let key = key_of(&a.chart.chart, &a.chart.params)?;
    let pair = registry::minimal_pair_from(&key)?;
    let opts = IntegrationOptions {
        grid_step: a.step,
        path_tolerance: a.tol,
    };
    let base = (a.base_x, a.base_y);
    let target = (a.x, a.y);
    let r = integrate_potential_with(&pair.p, base, target, opts)?;
    let closed = pair.q.is_closed_form().then(|| pair.q.value(a.x, a.y) - pair.q.value(a.base_x, a.base_y));
    let mut body = Map::new();
    body.insert("chart".into(), json!(pair.p.name));
    body.insert("basepoint".into(), json!([a.base_x, a.base_y]));
    body.insert("target".into(), json!([a.x, a.y]));
    body.insert("value".into(), json!(r.value));
    body.insert("value_y_first".into(), json!(r.value_y_first));
    body.insert("discrepancy".into(), json!(r.discrepancy));
    body.insert("error_estimate".into(), json!(r.error_estimate));
    body.insert("closed_form".into(), json!(closed));
    body.insert("closed_form_error".into(), json!(closed.map(|c| (c - r.value).abs())));
    Ok(Outcome::json(envelope("potential", body), true))
}

fn gauss(a: &GaussArgs) -> Result<Outcome> {
    let key = key_of(&a.chart.chart, &a.chart.params)?;
    let chart = registry::chart_from(&key)?;
    let pts = interior_points(&chart, a.n, a.seed, 0.0)?;
    let mut images = Vec::with_capacity(pts.len());
    for &(x, y) in &pts {
        let (f, g) = chart.jets(x, y)?;
        images.push(gauss_map(&f, &g));
    }
    let quad = fold_max(images.iter().map(hyperquadric_residual));
    let mu = a.mu.or(chart.meta.osserman_mu);
    let mut body = Map::new();
    body.insert("chart".into(), json!(key_string(&key)));
    body.insert("n".into(), json!(images.len()));
    body.insert("hyperquadric_max".into(), json!(quad));
    body.insert("osserman_mu".into(), json!(mu));
    if let Some(mu) = mu {
        let h = Hyperplane::osserman(mu);
        let worst = fold_max(images.iter().map(|p| hyperplane_residual(p, &h)));
        body.insert("osserman_hyperplane_max".into(), json!(worst));
    }
    if a.fit {
        let (h, res) = fit_hyperplane(&images)?;
        let mut fit = Map::new();
        fit.insert("coefficients".into(), complex_list(&h.coeffs()));
        fit.insert("residual".into(), json!(res));
        fit.insert("degenerate".into(), json!(is_degenerate(res, images.len())));
        if let Some(mu) = mu {
            fit.insert("distance_to_osserman".into(), json!(h.distance(&Hyperplane::osserman(mu))));
        }
        body.insert("fit".into(), Value::Object(fit));
    }
    Ok(Outcome::json(envelope("gauss", body), true))
}

fn curvature(a: &CurvatureArgs) -> Result<Outcome> {
    let key = key_of(&a.family, &a.params)?;
    let patch = registry::patch_from(&key)?;
    let mut rows = Vec::with_capacity(a.t.len());
    for &t in &a.t {
        rows.push(total_curvature(&patch, t, a.n)?);
    }
    match a.format {
        Format::Csv => {
            let mut s = String::from("T,n,value,tail_estimate\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    crate::output::float(r.t),
                    r.n,
                    crate::output::float(r.value),
                    crate::output::float(r.tail_estimate)
                ));
            }
            Ok(text_outcome(s))
        }
        Format::Json => {
            let mut body = Map::new();
            body.insert("family".into(), json!(key_string(&key)));
            body.insert("rows".into(), serde_json::to_value(&rows)?);
            Ok(Outcome::json(envelope("curvature", body), true))
        }
        Format::Obj => Err(Error::InvalidParameter("curvature output supports json and csv".into())),
    }
}

fn solve_cmd(a: &SolveArgs) -> Result<Outcome> {
    let chart = match &a.chart {
        Some(text) => {
            let key = key_of(text, &a.params)?;
            let c = registry::chart_from(&key)?;
            Some((key, c))
        }
        None => None,
    };
    let mut grid = match (&a.input, &chart) {
        (Some(path), _) => GridField::load(path)?,
        (None, Some((_, c))) => {
            let b = match &a.bounds {
                Some(v) if v.len() == 4 => Bounds::new(v[0], v[1], v[2], v[3]),
                Some(v) => {
                    return Err(Error::InvalidParameter(format!("--bounds needs four numbers, got {}", v.len())));
                }
                None => default_solve_bounds(c),
            };
            GridField::dirichlet_from_chart(c, b, a.nx, a.ny)?
        }
        (None, None) => return Err(Error::InvalidParameter("solve needs --chart or --input".into())),
    };
    let params = SolveParams {
        max_iter: a.max_iter,
        tol: a.tol,
        step_rule: match a.step_rule {
            StepRuleArg::Bb => StepRule::default(),
            StepRuleArg::Backtracking => StepRule::Backtracking { initial: 1.0 },
        },
    };
    let report = solve(&mut grid, &params)?;
    if let Some(path) = &a.grid_out {
        grid.save(path)?;
    }
    let mut body = Map::new();
    if let Some((k, _)) = &chart {
        body.insert("chart".into(), json!(key_string(k)));
    }
    if let Some(p) = &a.input {
        body.insert("input".into(), json!(p.display().to_string()));
    }
    body.insert("nx".into(), json!(grid.nx()));
    body.insert("ny".into(), json!(grid.ny()));
    let b = grid.bounds();
    body.insert("bounds".into(), json!([b.x_min, b.x_max, b.y_min, b.y_max]));
    body.insert("report".into(), serde_json::to_value(&report)?);
    if let Some((_, c)) = &chart {
        body.insert("max_error".into(), json!(grid.max_error(c)?));
    }
    Ok(Outcome::json(envelope("solve", body), report.converged))
}

/// A centred box well inside the chart's sampling region.
fn default_solve_bounds(c: &Chart) -> Bounds {
    let b = c.domain.bounds;
    let (cx, cy) = (0.5 * (b.x_min + b.x_max), 0.5 * (b.y_min + b.y_max));
    let half = 0.25 * b.width().min(b.height());
    Bounds::new(cx - half, cx + half, cy - half, cy + half)
}

fn list() -> Outcome {
    let items: Vec<Value> = entries()
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "kind": e.kind,
                "params": e.params,
                "example": e.example,
                "description": e.description,
                "command": match e.kind {
                    EntryKind::Patch => "curvature --family",
                    _ => "verify --chart",
                },
            })
        })
        .collect();
    Outcome::json(envelope("list", Map::from_iter([("entries".to_string(), Value::Array(items))])), true)
}

pub fn write_output(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
