//! OBJ meshes and JSON reports with fixed float formatting.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::error::{GeomError, Result};
use crate::hull::PolyhedralSurface;

/// Wavefront OBJ of the surface in its affine chart, polygon faces kept.
pub fn to_obj(surface: &PolyhedralSurface, header: &[String]) -> Result<String> {
    let mut out = String::new();
    for line in header {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "# space {}", surface.space.name());
    if let Some(d) = surface.depth {
        let _ = writeln!(out, "# depth {d}");
    }
    for p in surface.chart()? {
        let _ = writeln!(out, "v {} {} {}", fmt_f64(p.x), fmt_f64(p.y), fmt_f64(p.z));
    }
    for f in &surface.faces {
        out.push('f');
        for v in f {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    Ok(out)
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        // no negative zero in reports
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

/// Pretty JSON with two-space indent, sorted keys and every float printed by
/// [`fmt_f64`]. Non-finite floats become `null`.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| GeomError::Config(e.to_string()))?;
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    Ok(out)
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, n: usize| out.extend(std::iter::repeat_n(' ', n));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().unwrap_or(f64::NAN);
                if x.is_finite() {
                    out.push_str(&fmt_f64(x));
                } else {
                    out.push_str("null");
                }
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, indent + 2);
                write_value(out, item, indent + 2);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                pad(out, indent + 2);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, indent + 2);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{AmbientPoint, FormSpace};
    use crate::hull::convex_hull;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23, std::f64::consts::PI] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(-0.0), fmt_f64(0.0));
    }

    #[test]
    fn json_layout() {
        #[derive(Serialize)]
        struct S {
            b: f64,
            a: Vec<u32>,
            n: f64,
            s: &'static str,
        }
        let j = to_json(&S {
            b: 0.5,
            a: vec![1, 2],
            n: f64::NAN,
            s: "x\"y",
        })
        .unwrap();
        assert_eq!(
            j,
            "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": 5.0000000000000000e-1,\n  \"n\": null,\n  \"s\": \"x\\\"y\"\n}\n"
        );
        let v: Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["b"].as_f64(), Some(0.5));
    }

    #[test]
    fn obj_indices_in_range() {
        let pts: Vec<AmbientPoint> = [[0., 0., 0.], [1., 0., 0.], [0., 1., 0.], [0., 0., 1.]]
            .iter()
            .map(|c| AmbientPoint::new(FormSpace::EUCLIDEAN, c).unwrap())
            .collect();
        let s = convex_hull(&pts).unwrap();
        let obj = to_obj(&s, &["test".into()]).unwrap();
        assert!(obj.starts_with("# test\n# space R3\n"));
        let nv = obj.lines().filter(|l| l.starts_with("v ")).count();
        for l in obj.lines().filter(|l| l.starts_with("f ")) {
            for i in l[2..].split(' ') {
                let i: usize = i.parse().unwrap();
                assert!(i >= 1 && i <= nv);
            }
        }
    }
}
