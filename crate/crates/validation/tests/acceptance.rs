//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use minsurf::catalog::registry::{self, lambda_family_keys, minimal_chart_keys};
use minsurf::catalog::{self, ConformalPatch, MinimalPair};
use minsurf::chart::{ScalarFormula, ScalarMap};
use minsurf::gauss::{fit_hyperplane, gauss_map, hyperquadric_residual, osserman_residual, Hyperplane};
use minsurf::geometry::{conformal_ratio, mss_residual};
use minsurf::lagrange::{integrate_potential, lagrange_one_form, maximal_equation_residual};
use minsurf::sampling::{radical_inverse, sample_interior};
use minsurf::solver::{area_gradient, discrete_area, solve, AreaGradient, GridField, SolveParams};
use minsurf::special_lagrangian::{doubly_periodic_sl, hl_potential, sl_graph_point, sle3_residual};
use minsurf::{Bounds, Chart, Error, Real, Result};

type ClosedForm = Box<dyn Fn(f64, f64) -> f64>;
type Criterion = fn() -> Result<Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

fn pairs() -> Result<Vec<MinimalPair>> {
    Ok(vec![
        catalog::helicoid(),
        catalog::catenoid(),
        catalog::scherk(),
        catalog::scherk_sheared(1.0, 0.6)?,
        catalog::saddle_tower(),
        catalog::saddle_tower_general(1.0, 0.6)?,
    ])
}

fn catalog_minimality() -> Result<Outcome> {
    let start = Instant::now();
    let keys = minimal_chart_keys();
    let mut worst: f64 = 0.0;
    let mut worst_key = String::new();
    for key in &keys {
        let chart = registry::chart(key)?;
        for (x, y) in sample_interior(&chart, 200)? {
            let (jf, jg) = chart.jets(x, y)?;
            let (a, b) = mss_residual(&jf, &jg);
            if a.abs().max(b.abs()) > worst {
                worst = a.abs().max(b.abs());
                worst_key = key.clone();
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-8 && secs < 5.0 && keys.len() >= 12,
        format!("{} charts, max |mss| = {worst:.2e} ({worst_key}), {secs:.2} s", keys.len()),
    )
}

fn osserman_hyperplane() -> Result<Outcome> {
    let (mut res, mut fit, mut dist): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let keys = lambda_family_keys();
    for key in &keys {
        let chart = registry::chart(key)?;
        let lambda = chart.meta.lambda.expect("lambda family");
        let mu = 1.0 / lambda.tanh();
        let mut points = Vec::new();
        for (x, y) in sample_interior(&chart, 200)? {
            let (jf, jg) = chart.jets(x, y)?;
            let (a, b) = osserman_residual(&jf, &jg, mu)?;
            res = res.max(a.abs()).max(b.abs());
            points.push(gauss_map(&jf, &jg));
        }
        let (plane, r) = fit_hyperplane(&points)?;
        fit = fit.max(r);
        dist = dist.max(plane.distance(&Hyperplane::osserman(mu)));
    }
    outcome(
        res <= 1e-10 && fit <= 1e-8 && dist <= 1e-8,
        format!(
            "{} charts, max osserman = {res:.2e}, fit residual = {fit:.2e}, distance to (0,0,1,i coth l) = {dist:.2e}",
            keys.len()
        ),
    )
}

fn hyperquadric() -> Result<Outcome> {
    let mut keys: Vec<String> = registry::entries()
        .iter()
        .filter(|e| e.kind != registry::EntryKind::Patch)
        .map(|e| e.example.to_string())
        .collect();
    keys.extend(minimal_chart_keys());
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for key in &keys {
        let chart = registry::chart(key)?;
        for (x, y) in sample_interior(&chart, 200)? {
            let (jf, jg) = chart.jets(x, y)?;
            worst = worst.max(hyperquadric_residual(&gauss_map(&jf, &jg)));
            count += 1;
        }
    }
    outcome(worst <= 1e-12, format!("{count} jets over {} charts, max |sum z_i^2| = {worst:.2e}", keys.len()))
}

struct TextbookHelicoid;
impl ScalarFormula for TextbookHelicoid {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        -(y.cos() * y.cos() + x * x).sqrt() + 1.0
    }
}

struct TextbookCatenoid;
impl ScalarFormula for TextbookCatenoid {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        x * y.tanh()
    }
}

struct TextbookScherk;
impl ScalarFormula for TextbookScherk {
    fn eval<S: Real>(&self, x: S, y: S) -> S {
        (x.sin() * y.sin()).asin()
    }
}

fn lagrange_potentials() -> Result<Outcome> {
    let cases: Vec<(&str, MinimalPair, ClosedForm)> = vec![
        ("helicoid", catalog::helicoid(), Box::new(|x, y| TextbookHelicoid.eval(x, y))),
        ("catenoid", catalog::catenoid(), Box::new(|x, y| TextbookCatenoid.eval(x, y))),
        ("scherk", catalog::scherk(), Box::new(|x, y| TextbookScherk.eval(x, y))),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, pair, textbook) in cases {
        let (mut err, mut err_neg, mut path, mut grad): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
        let mut used = 0;
        for (x, y) in sample_interior(&pair.p, 200)? {
            let (jp, _) = pair.p.jets(x, y)?;
            let (qx, qy) = lagrange_one_form(&jp);
            grad = grad.max(qx * qx + qy * qy);
            let r = match integrate_potential(&pair.p, (0.0, 0.0), (x, y), 0.05) {
                Ok(r) => r,
                Err(Error::PathExitsDomain { .. }) => continue,
                Err(e) => return Err(e),
            };
            used += 1;
            let target = textbook(x, y) - textbook(0.0, 0.0);
            err = err.max((r.value - target).abs());
            err_neg = err_neg.max((r.value + target).abs());
            path = path.max(r.discrepancy);
        }
        let ok = used >= 50 && err <= 1e-8 && path <= 1e-10 && grad < 1.0;
        pass &= ok;
        parts.push(format!(
            "{name}: {used} pts, |q - textbook| = {err:.2e} (vs negated textbook {err_neg:.2e}), path {path:.2e}, max |grad q|^2 = {grad:.4}"
        ));
    }
    outcome(pass, parts.join("; "))
}

fn duality() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let all = pairs()?;
    for pair in &all {
        for (x, y) in sample_interior(&pair.p, 200)? {
            worst = worst.max(maximal_equation_residual(&pair.q.jet(x, y))?.abs());
        }
    }
    outcome(worst <= 1e-9, format!("{} potentials, max maximal-equation residual = {worst:.2e}", all.len()))
}

fn conformal_invariance() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let all = pairs()?;
    for pair in &all {
        let (c0, c1) = (pair.deform(0.0)?, pair.deform(1.0)?);
        for (x, y) in sample_interior(&c1, 100)? {
            let (f0, g0) = c0.jets(x, y)?;
            let (f1, g1) = c1.jets(x, y)?;
            let (a, b) = (conformal_ratio(&f0, &g0), conformal_ratio(&f1, &g1));
            worst = worst.max((a.0 - b.0).abs()).max((a.1 - b.1).abs()).max((a.2 - b.2).abs());
        }
    }
    outcome(worst <= 1e-10, format!("{} families, max ratio difference = {worst:.2e}", all.len()))
}

fn total_curvature() -> Result<Outcome> {
    let start = Instant::now();
    let patch = catalog::patch_f_plus(0.5);
    let v4 = catalog::total_curvature(&patch, 4.0, 200)?.value;
    let v6 = catalog::total_curvature(&patch, 6.0, 200)?.value;
    let v8 = catalog::total_curvature(&patch, 8.0, 200)?.value;
    let secs = start.elapsed().as_secs_f64();
    let target = -4.0 * PI;
    outcome(
        (v6 - target).abs() <= 0.05 && (v8 - v6).abs() <= (v6 - v4).abs() && secs < 10.0,
        format!("T=4: {v4:.6}, T=6: {v6:.6}, T=8: {v8:.6}, -4pi = {target:.6}, {secs:.2} s"),
    )
}

fn halton3(k: u64, half: [f64; 3]) -> (f64, f64, f64) {
    (
        half[0] * (2.0 * radical_inverse(k, 2) - 1.0),
        half[1] * (2.0 * radical_inverse(k, 3) - 1.0),
        half[2] * (2.0 * radical_inverse(k, 5) - 1.0),
    )
}

fn special_lagrangian() -> Result<Outcome> {
    let s = catalog::scherk();
    let mut sle: f64 = 0.0;
    for lambda in [-1.0, 0.6] {
        let hl = hl_potential(&s.p, &s.q, lambda)?;
        for k in 1..=200 {
            let (x, y, z) = halton3(k, [1.2, 1.2, 3.0]);
            sle = sle.max(sle3_residual(&hl.jet(x, y, z)?).abs());
        }
    }
    let closed = doubly_periodic_sl(1.0)?;
    let mut agree: f64 = 0.0;
    for k in 1..=200 {
        let (x, y, z) = halton3(k, [1.2, 1.2, 3.0]);
        let a = closed.point(x, y, z)?;
        let b = sl_graph_point(&s.p, &s.q, 1.0, x, y, z)?;
        agree = a.iter().zip(&b).fold(agree, |m, (u, v)| m.max((u - v).abs()));
    }
    outcome(
        sle <= 1e-8 && agree <= 1e-10,
        format!("max |det - tr| of p + l z q = {sle:.2e}; closed form vs graph map = {agree:.2e}"),
    )
}

fn monge_ampere() -> Result<Outcome> {
    let chart = catalog::lagrangian_scherk();
    let mut worst: f64 = 0.0;
    for (x, y) in sample_interior(&chart, 200)? {
        let h = catalog::lagrangian_scherk_hessian(&chart, x, y)?;
        worst = worst.max(catalog::monge_ampere_residual(&h).abs());
    }
    outcome(worst <= 1e-9, format!("max |h_xx h_yy - h_xy^2 - 1| = {worst:.2e}"))
}

fn singularity() -> Result<Outcome> {
    let radii = catalog::default_probe_radii();
    let r = catalog::singularity_probe(&catalog::sigma_n(1)?, (0.0, 0.0), &radii)?;
    let along = |a: f64| r.ray(a).expect("probe ray");
    let gap = catalog::ProbeReport::discrepancy(along(0.0), along(FRAC_PI_2));
    let flat = catalog::singularity_probe(&catalog::plane(), (0.0, 0.0), &radii)?.max_discrepancy;
    outcome(
        gap >= 0.99 && flat <= 1e-12,
        format!("sigmaN:1 +x vs +y limits differ by {gap:.6}; flat chart {flat:.2e}"),
    )
}

fn fd_gradient_check(chart: &Chart) -> Result<f64> {
    let mut grid = GridField::dirichlet_from_chart(chart, Bounds::square(0.4), 9, 9)?;
    grid.perturb_free(0.1, 11);
    let grad = area_gradient(&grid);
    let mut worst: f64 = 0.0;
    for seed in 0..5 {
        let mut dir = GridField::new(grid.bounds(), 9, 9)?;
        dir.perturb_free(1.0, 100 + seed);
        let (df, dg) = (dir.f().to_vec(), dir.g().to_vec());
        let eps = 1e-5;
        let shifted = |s: f64| -> Result<f64> {
            let mut g = grid.clone();
            for k in 0..g.len() {
                if !g.is_fixed(k) {
                    let (i, j) = (k % g.nx(), k / g.nx());
                    g.set(i, j, g.f()[k] + s * df[k], g.g()[k] + s * dg[k])?;
                }
            }
            Ok(discrete_area(&g))
        };
        let fd = (shifted(eps)? - shifted(-eps)?) / (2.0 * eps);
        let an = grad.dot(&AreaGradient { df, dg });
        worst = worst.max((fd - an).abs() / an.abs());
    }
    Ok(worst)
}

fn solver() -> Result<Outcome> {
    let start = Instant::now();
    let chart = catalog::catenoid_deform(0.5)?;
    let mut errors = Vec::new();
    let mut monotone = true;
    for n in [33, 65] {
        let mut grid = GridField::dirichlet_from_chart(&chart, Bounds::square(0.4), n, n)?;
        let report = solve(&mut grid, &SolveParams::default())?;
        monotone &= report.is_monotone() && report.final_area <= report.initial_area;
        if !report.converged {
            return outcome(false, format!("{n}x{n} solve stopped: {:?}", report.status));
        }
        errors.push(grid.max_error(&chart)?);
    }
    let ratio = errors[0] / errors[1];
    let grad = fd_gradient_check(&chart)?;
    let secs = start.elapsed().as_secs_f64();
    outcome(
        errors[0] <= 1e-3 && (3.2..=4.8).contains(&ratio) && grad <= 1e-6 && monotone && secs < 60.0,
        format!(
            "err 33x33 = {:.3e}, 65x65 = {:.3e}, ratio {ratio:.3}, gradient check {grad:.2e}, monotone {monotone}, {secs:.2} s",
            errors[0], errors[1]
        ),
    )
}

fn patch_defects(p: &ConformalPatch) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        for j in 0..20 {
            let u = -2.0 + 4.0 * i as f64 / 19.0;
            let v = TAU * j as f64 / 19.0;
            let d = p.defect(u, v);
            worst = worst.max(d.length.abs()).max(d.angle.abs());
        }
    }
    worst
}

fn conformal_patches() -> Result<Outcome> {
    let patches = [
        catalog::patch_xn(1)?,
        catalog::patch_xn(2)?,
        catalog::patch_f_minus(0.5),
        catalog::patch_f_plus(0.5),
    ];
    let defect = patches.iter().map(patch_defects).fold(0.0_f64, f64::max);
    let mut on_graph: f64 = 0.0;
    for n in [1, 2] {
        let patch = catalog::patch_xn(n)?;
        let chart = catalog::sigma_n(n)?;
        for i in 1..=20 {
            for j in 0..20 {
                let (t, th) = (0.1 * i as f64, TAU * j as f64 / 20.0);
                let [x, y, f, g] = patch.point(t, th);
                let (cf, cg) = chart.heights(x, y)?;
                on_graph = on_graph.max((cf - f).abs()).max((cg - g).abs());
            }
        }
    }
    outcome(
        defect <= 1e-10 && on_graph <= 1e-10,
        format!("max conformality defect = {defect:.2e}; X_N on graph = {on_graph:.2e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 12] = [
        ("catalog minimality", catalog_minimality),
        ("Osserman system and hyperplane", osserman_hyperplane),
        ("Gauss map hyperquadric", hyperquadric),
        ("Lagrange potentials", lagrange_potentials),
        ("duality", duality),
        ("conformal invariance", conformal_invariance),
        ("total curvature", total_curvature),
        ("special Lagrangian", special_lagrangian),
        ("Monge-Ampere", monge_ampere),
        ("non-removable singularity", singularity),
        ("solver", solver),
        ("conformal patches", conformal_patches),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!pass);
        println!("{} {:>2} {name}: {detail}", if pass { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
