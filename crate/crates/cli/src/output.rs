//! Deterministic JSON rendering and mesh/CSV writers.

use std::fmt::Write as _;

use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Floats with 17 significant digits; everything else as serde_json would.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Number(n) => match (n.as_u64(), n.as_i64(), n.as_f64()) {
            (Some(u), _, _) => out.push_str(&u.to_string()),
            (_, Some(i), _) => out.push_str(&i.to_string()),
            (_, _, Some(f)) => out.push_str(&float(f)),
            _ => out.push_str("null"),
        },
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                render(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(indent + 1), Value::String(k.clone()));
                render(item, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

pub fn to_json(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out.push('\n');
    out
}

/// Rows `x,y,f,g` with a header line.
pub fn points_csv(points: &[[f64; 4]]) -> String {
    let mut out = String::from("x,y,f,g\n");
    for p in points {
        let _ = writeln!(out, "{},{},{},{}", float(p[0]), float(p[1]), float(p[2]), float(p[3]));
    }
    out
}

/// Parses a projection selector such as `xyf` into coordinate indices.
pub fn projection(sel: &str) -> Option<([usize; 3], usize)> {
    let idx = |c: char| "xyfg".find(c);
    let chars: Vec<char> = sel.chars().collect();
    if chars.len() != 3 {
        return None;
    }
    let keep = [idx(chars[0])?, idx(chars[1])?, idx(chars[2])?];
    if keep[0] == keep[1] || keep[0] == keep[2] || keep[1] == keep[2] {
        return None;
    }
    let dropped = (0..4).find(|i| !keep.contains(i))?;
    Some((keep, dropped))
}

/// ASCII OBJ of a parameter grid; `None` marks missing vertices.
///
/// Each vertex line is preceded by a comment carrying the dropped coordinate.
pub fn obj_mesh(name: &str, nu: usize, nv: usize, verts: &[Option<[f64; 4]>], keep: [usize; 3], dropped: usize) -> String {
    let label = ['x', 'y', 'f', 'g'];
    let mut out = String::new();
    let _ = writeln!(out, "# {name}");
    let _ = writeln!(
        out,
        "# projection {}{}{}, dropped {}",
        label[keep[0]], label[keep[1]], label[keep[2]], label[dropped]
    );
    let _ = writeln!(out, "o {}", name.replace(char::is_whitespace, "_"));
    let mut index = vec![0usize; verts.len()];
    let mut next = 1;
    for (k, v) in verts.iter().enumerate() {
        if let Some(p) = v {
            let _ = writeln!(out, "# {} {}", label[dropped], float(p[dropped]));
            let _ = writeln!(out, "v {} {} {}", float(p[keep[0]]), float(p[keep[1]]), float(p[keep[2]]));
            index[k] = next;
            next += 1;
        }
    }
    for j in 0..nv.saturating_sub(1) {
        for i in 0..nu.saturating_sub(1) {
            let (a, b, c, d) = (j * nu + i, j * nu + i + 1, (j + 1) * nu + i, (j + 1) * nu + i + 1);
            if [a, b, c, d].iter().all(|&k| verts[k].is_some()) {
                let _ = writeln!(out, "f {} {} {}", index[a], index[b], index[d]);
                let _ = writeln!(out, "f {} {} {}", index[a], index[d], index[c]);
            }
        }
    }
    out
}
