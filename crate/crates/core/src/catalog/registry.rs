//! String-keyed lookup of catalog charts and patches.
//!
//! Keys are `name` or `name:params` where params are `k=v` pairs separated by
//! commas (`scherk_doubly:lambda=0.7`). Families with one integer parameter
//! also accept it bare (`sigmaN:2`, `XN:1`).

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use super::charts::{self, MinimalPair};
use super::patches::{self, ConformalPatch};
use crate::chart::Chart;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Chart,
    MinimalGraph,
    Patch,
}

/// One registry family.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Entry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub params: &'static [&'static str],
    pub example: &'static str,
    pub description: &'static str,
}

const ENTRIES: &[Entry] = &[
    Entry { name: "sigmaN", kind: EntryKind::Chart, params: &["N"], example: "sigmaN:2", description: "Chebyshev graphs over the punctured plane" },
    Entry { name: "sigma_alpha_beta", kind: EntryKind::Chart, params: &["alpha", "beta"], example: "sigma_alpha_beta:alpha=1,beta=1", description: "two-parameter family joining catenoid, helicoid and complex logarithm" },
    Entry { name: "helicoid", kind: EntryKind::MinimalGraph, params: &[], example: "helicoid", description: "helicoid x tan y over a strip" },
    Entry { name: "catenoid", kind: EntryKind::MinimalGraph, params: &[], example: "catenoid", description: "half catenoid over x^2 < cosh^2 y" },
    Entry { name: "scherk", kind: EntryKind::MinimalGraph, params: &[], example: "scherk", description: "Scherk's doubly periodic graph over a square" },
    Entry { name: "scherk_sheared", kind: EntryKind::MinimalGraph, params: &["rho", "alpha"], example: "scherk_sheared:rho=1,alpha=0.6", description: "sheared Scherk graph over a rhomboid" },
    Entry { name: "saddle_tower", kind: EntryKind::MinimalGraph, params: &[], example: "saddle_tower", description: "Scherk's saddle tower" },
    Entry { name: "saddle_tower_general", kind: EntryKind::MinimalGraph, params: &["rho", "alpha"], example: "saddle_tower_general:rho=1,alpha=0.6", description: "generalized saddle tower" },
    Entry { name: "helicoid_deform", kind: EntryKind::Chart, params: &["lambda"], example: "helicoid_deform:lambda=1", description: "deformed helicoid, foliated by hyperbolas or lines" },
    Entry { name: "catenoid_deform", kind: EntryKind::Chart, params: &["lambda"], example: "catenoid_deform:lambda=0.5", description: "deformed half catenoid, foliated by ellipses" },
    Entry { name: "scherk_doubly", kind: EntryKind::Chart, params: &["lambda"], example: "scherk_doubly:lambda=0.7", description: "deformed doubly periodic Scherk graph" },
    Entry { name: "scherk_doubly_sheared", kind: EntryKind::Chart, params: &["lambda", "rho", "alpha"], example: "scherk_doubly_sheared:lambda=0.7,rho=1,alpha=0.6", description: "deformed sheared Scherk graph" },
    Entry { name: "scherk_tower", kind: EntryKind::Chart, params: &["lambda"], example: "scherk_tower:lambda=0.7", description: "deformed saddle tower" },
    Entry { name: "scherk_tower_general", kind: EntryKind::Chart, params: &["lambda", "rho", "alpha"], example: "scherk_tower_general:lambda=0.7,rho=1,alpha=0.6", description: "deformed generalized saddle tower" },
    Entry { name: "lagrangian_scherk", kind: EntryKind::Chart, params: &[], example: "lagrangian_scherk", description: "Lagrangian Scherk graph, gradient of a Monge-Ampere solution" },
    Entry { name: "holomorphic_square", kind: EntryKind::Chart, params: &[], example: "holomorphic_square", description: "complex curve w = z^2" },
    Entry { name: "plane", kind: EntryKind::Chart, params: &[], example: "plane", description: "flat plane" },
    Entry { name: "paraboloid_test", kind: EntryKind::Chart, params: &[], example: "paraboloid_test", description: "non-minimal negative control x^2 + y^2" },
    Entry { name: "XN", kind: EntryKind::Patch, params: &["N"], example: "XN:1", description: "conformal patch of the punctured-plane family (N = 1: Lagrangian catenoid)" },
    Entry { name: "Fminus", kind: EntryKind::Patch, params: &["lambda"], example: "Fminus:lambda=0.5", description: "conformal patch of the deformed helicoid" },
    Entry { name: "Fplus", kind: EntryKind::Patch, params: &["lambda"], example: "Fplus:lambda=0.5", description: "conformal patch of the ellipse-foliated annuli" },
    Entry { name: "flat_patch", kind: EntryKind::Patch, params: &[], example: "flat_patch", description: "flat conformal patch" },
];

pub fn entries() -> &'static [Entry] {
    ENTRIES
}

/// Parsed registry key.
#[derive(Clone, Debug, PartialEq)]
pub struct Key {
    pub name: String,
    pub params: BTreeMap<String, f64>,
}

impl Key {
    pub fn entry(&self) -> Result<&'static Entry> {
        ENTRIES
            .iter()
            .find(|e| e.name == self.name)
            .ok_or_else(|| Error::UnknownKey(self.name.clone()))
    }

    /// Applies overrides; only parameters the family accepts are taken.
    pub fn with_overrides(mut self, overrides: &BTreeMap<String, f64>) -> Result<Self> {
        let entry = self.entry()?;
        for (k, v) in overrides {
            if entry.params.contains(&k.as_str()) {
                self.params.insert(k.clone(), *v);
            } else {
                return Err(Error::InvalidParameter(format!("`{}` does not take parameter `{k}`", entry.name)));
            }
        }
        Ok(self)
    }

    fn get(&self, k: &str, default: f64) -> f64 {
        self.params.get(k).copied().unwrap_or(default)
    }

    fn get_n(&self) -> Result<u32> {
        let n = self.get("N", 1.0);
        if n.fract() != 0.0 || !(1.0..=64.0).contains(&n) {
            return Err(Error::InvalidParameter(format!("N must be an integer in 1..=64, got {n}")));
        }
        Ok(n as u32)
    }
}

pub fn parse_key(key: &str) -> Result<Key> {
    let (name, rest) = match key.split_once(':') {
        Some((n, r)) => (n.trim(), Some(r)),
        None => (key.trim(), None),
    };
    let k = Key {
        name: name.to_string(),
        params: BTreeMap::new(),
    };
    let entry = k.entry()?;
    let mut params = BTreeMap::new();
    if let Some(rest) = rest {
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (pk, pv) = match item.split_once('=') {
                Some((a, b)) => (a.trim(), b.trim()),
                None if entry.params.len() == 1 => (entry.params[0], item),
                None => return Err(Error::InvalidParameter(format!("expected k=v in `{key}`, got `{item}`"))),
            };
            if !entry.params.contains(&pk) {
                return Err(Error::InvalidParameter(format!("`{}` does not take parameter `{pk}`", entry.name)));
            }
            let v: f64 = pv
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("parameter `{pk}` is not a number: `{pv}`")))?;
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("parameter `{pk}` must be finite")));
            }
            params.insert(pk.to_string(), v);
        }
    }
    Ok(Key {
        name: name.to_string(),
        params,
    })
}

const DEFAULT_LAMBDA: f64 = 1.0;
const DEFAULT_RHO: f64 = 1.0;
const DEFAULT_ALPHA: f64 = 0.6;

/// Minimal graph in R³ with its Lagrange potential.
pub fn minimal_pair_from(key: &Key) -> Result<MinimalPair> {
    let rho = key.get("rho", DEFAULT_RHO);
    let alpha = key.get("alpha", DEFAULT_ALPHA);
    match key.name.as_str() {
        "helicoid" | "helicoid_deform" => Ok(charts::helicoid()),
        "catenoid" | "catenoid_deform" => Ok(charts::catenoid()),
        "scherk" | "scherk_doubly" => Ok(charts::scherk()),
        "scherk_sheared" | "scherk_doubly_sheared" => charts::scherk_sheared(rho, alpha),
        "saddle_tower" | "scherk_tower" => Ok(charts::saddle_tower()),
        "saddle_tower_general" | "scherk_tower_general" => charts::saddle_tower_general(rho, alpha),
        other => Err(Error::InvalidParameter(format!("`{other}` has no Lagrange potential in the catalog"))),
    }
}

pub fn minimal_pair(key: &str) -> Result<MinimalPair> {
    minimal_pair_from(&parse_key(key)?)
}

pub fn chart_from(key: &Key) -> Result<Chart> {
    let entry = key.entry()?;
    let lambda = key.get("lambda", DEFAULT_LAMBDA);
    let mut chart = match entry.kind {
        EntryKind::Patch => {
            return Err(Error::InvalidParameter(format!("`{}` is a conformal patch, not a chart", entry.name)))
        }
        EntryKind::MinimalGraph => minimal_pair_from(key)?.p,
        EntryKind::Chart => match key.name.as_str() {
            "sigmaN" => charts::sigma_n(key.get_n()?)?,
            "sigma_alpha_beta" => charts::sigma_alpha_beta(key.get("alpha", 1.0), key.get("beta", 1.0))?,
            "helicoid_deform" | "catenoid_deform" | "scherk_doubly" | "scherk_tower" => {
                minimal_pair_from(key)?.deform(lambda)?
            }
            "scherk_doubly_sheared" => {
                charts::scherk_doubly_sheared(lambda, key.get("rho", DEFAULT_RHO), key.get("alpha", DEFAULT_ALPHA))?
            }
            "scherk_tower_general" => {
                charts::scherk_tower_general(lambda, key.get("rho", DEFAULT_RHO), key.get("alpha", DEFAULT_ALPHA))?
            }
            "lagrangian_scherk" => charts::lagrangian_scherk(),
            "holomorphic_square" => charts::holomorphic_square(),
            "plane" => charts::plane(),
            "paraboloid_test" => charts::paraboloid_test(),
            other => return Err(Error::UnknownKey(other.to_string())),
        },
    };
    if chart.meta.lambda.is_some() && lambda == 0.0 {
        chart.meta.notes.push("lambda = 0 reduces to the graph in R^3".into());
    }
    Ok(chart)
}

pub fn chart(key: &str) -> Result<Chart> {
    chart_from(&parse_key(key)?)
}

pub fn patch_from(key: &Key) -> Result<ConformalPatch> {
    let lambda = key.get("lambda", DEFAULT_LAMBDA);
    match key.name.as_str() {
        "XN" => patches::patch_xn(key.get_n()?),
        "Fminus" => Ok(patches::patch_f_minus(lambda)),
        "Fplus" => Ok(patches::patch_f_plus(lambda)),
        "flat_patch" => Ok(patches::patch_flat()),
        other => {
            key.entry()?;
            Err(Error::InvalidParameter(format!("`{other}` is a chart, not a conformal patch")))
        }
    }
}

pub fn patch(key: &str) -> Result<ConformalPatch> {
    patch_from(&parse_key(key)?)
}

/// Representative keys of every minimal chart family: the punctured-plane
/// graphs, three regimes of the two-parameter family, and the λ-families.
pub fn minimal_chart_keys() -> Vec<String> {
    let (c, s) = (0.5_f64.cosh(), 0.5_f64.sinh());
    let mut keys: Vec<String> = vec!["sigmaN:1".into(), "sigmaN:2".into(), "sigmaN:3".into()];
    keys.push(format!("sigma_alpha_beta:alpha={c},beta={s}"));
    keys.push("sigma_alpha_beta:alpha=1,beta=1".into());
    keys.push(format!("sigma_alpha_beta:alpha={s},beta={c}"));
    for l in [0.3, 1.0] {
        keys.push(format!("helicoid_deform:lambda={l}"));
        keys.push(format!("catenoid_deform:lambda={l}"));
    }
    keys.extend(lambda_family_keys().into_iter().filter(|k| !k.starts_with("helicoid") && !k.starts_with("catenoid")));
    keys.push("lagrangian_scherk".into());
    keys
}

/// One representative per λ-family.
pub fn lambda_family_keys() -> Vec<String> {
    vec![
        "helicoid_deform:lambda=1".into(),
        "catenoid_deform:lambda=0.5".into(),
        "scherk_doubly:lambda=0.7".into(),
        "scherk_doubly_sheared:lambda=0.7,rho=1,alpha=0.6".into(),
        format!("scherk_doubly_sheared:lambda=-0.4,rho=2,alpha={FRAC_PI_4}"),
        "scherk_tower:lambda=0.7".into(),
        "scherk_tower_general:lambda=0.7,rho=1,alpha=0.6".into(),
    ]
}
