//! JSON readers and writers for the file formats used by the CLI.
//!
//! Readers report syntax errors with line and column and validation errors with the path of
//! the offending field, e.g. `chain[2]: expected [x, y]`.
//!
//! ```text
//! polygon      {"chain": [[x, y], ...]}
//! generator    {"a": a, "breakpoints": [[x, f], ...]}  or  {"a": a, "analytic": "unit-disk"}
//! psh body     {"generator": <generator>, "crossSection": <polygon>}
//! axis profile {"h": h, "breakpoints": [[x, f], ...]}
//! directions   {"directions": [[x, y, z], ...]}
//! ```

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::geom2d::{GeneratingFunction, NamedProfile, Point2, UnconditionalPolygon};
use crate::mahler::{AxisProfile, ParallelSectionsBody};

fn field_err(field: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Field { field: field.into(), msg: msg.into() }
}

pub fn parse(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| field_err(if path.is_empty() { "<root>" } else { path }, "expected an object"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn member<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| field_err(join(path, key), "missing"))
}

fn number(v: &Value, path: &str) -> Result<f64> {
    match v.as_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(field_err(path, "expected a finite number")),
    }
}

fn tuple<const N: usize>(v: &Value, path: &str) -> Result<[f64; N]> {
    let arr = v.as_array().filter(|a| a.len() == N);
    let arr = arr.ok_or_else(|| field_err(path, format!("expected an array of {N} numbers")))?;
    let mut out = [0.0; N];
    for (i, x) in arr.iter().enumerate() {
        out[i] = number(x, &format!("{path}[{i}]"))?;
    }
    Ok(out)
}

fn points(v: &Value, path: &str) -> Result<Vec<Point2>> {
    let arr = v.as_array().ok_or_else(|| field_err(path, "expected an array of [x, y] pairs"))?;
    arr.iter().enumerate().map(|(i, p)| tuple::<2>(p, &format!("{path}[{i}]")).map(Point2::from)).collect()
}

pub fn polygon_from_value(v: &Value, path: &str) -> Result<UnconditionalPolygon> {
    let obj = object(v, path)?;
    let key = join(path, "chain");
    let pts = points(member(obj, path, "chain")?, &key)?;
    UnconditionalPolygon::new(pts).map_err(|e| e.at(key))
}

pub fn generator_from_value(v: &Value, path: &str) -> Result<GeneratingFunction> {
    let obj = object(v, path)?;
    let a_key = join(path, "a");
    let a = number(member(obj, path, "a")?, &a_key)?;
    if !(a > 0.0) {
        return Err(field_err(a_key, format!("half-width must be positive, got {a}")));
    }
    match (obj.get("breakpoints"), obj.get("analytic")) {
        (Some(b), None) => {
            let key = join(path, "breakpoints");
            let g = GeneratingFunction::piecewise_linear(points(b, &key)?).map_err(|e| e.at(key))?;
            if (g.half_width() - a).abs() > 1e-12 * a.max(1.0) {
                return Err(field_err(a_key, format!("{a} disagrees with the last breakpoint x = {}", g.half_width())));
            }
            Ok(g)
        }
        (None, Some(name)) => {
            let key = join(path, "analytic");
            let which = name
                .as_str()
                .and_then(NamedProfile::from_name)
                .ok_or_else(|| field_err(&key, "expected one of \"unit-disk\", \"parabola\", \"cosine\""))?;
            GeneratingFunction::named(a, which).map_err(|e| e.at(key))
        }
        (Some(_), Some(_)) => {
            Err(field_err(path_or_root(path), "give either \"breakpoints\" or \"analytic\", not both"))
        }
        (None, None) => Err(field_err(path_or_root(path), "missing \"breakpoints\" or \"analytic\"")),
    }
}

fn path_or_root(path: &str) -> &str {
    if path.is_empty() {
        "<root>"
    } else {
        path
    }
}

pub fn psh_from_value(v: &Value) -> Result<ParallelSectionsBody> {
    let obj = object(v, "")?;
    let g = generator_from_value(member(obj, "", "generator")?, "generator")?;
    let c = polygon_from_value(member(obj, "", "crossSection")?, "crossSection")?;
    Ok(ParallelSectionsBody::new(g, c))
}

pub fn axis_profile_from_value(v: &Value) -> Result<AxisProfile> {
    let obj = object(v, "")?;
    let h = number(member(obj, "", "h")?, "h")?;
    let p =
        AxisProfile::new(points(member(obj, "", "breakpoints")?, "breakpoints")?).map_err(|e| e.at("breakpoints"))?;
    if (p.length() - h).abs() > 1e-12 * h.abs().max(1.0) {
        return Err(field_err("h", format!("{h} disagrees with the last breakpoint x = {}", p.length())));
    }
    Ok(p)
}

pub fn directions_from_value(v: &Value) -> Result<Vec<[f64; 3]>> {
    let obj = object(v, "")?;
    let arr = member(obj, "", "directions")?.as_array().ok_or_else(|| field_err("directions", "expected an array"))?;
    arr.iter()
        .enumerate()
        .map(|(i, d)| {
            let path = format!("directions[{i}]");
            let u = tuple::<3>(d, &path)?;
            if u.iter().all(|c| *c == 0.0) {
                return Err(field_err(path, "direction must be nonzero"));
            }
            Ok(u)
        })
        .collect()
}

pub fn read_polygon(text: &str) -> Result<UnconditionalPolygon> {
    polygon_from_value(&parse(text)?, "")
}

pub fn read_generator(text: &str) -> Result<GeneratingFunction> {
    generator_from_value(&parse(text)?, "")
}

pub fn read_psh(text: &str) -> Result<ParallelSectionsBody> {
    psh_from_value(&parse(text)?)
}

pub fn read_axis_profile(text: &str) -> Result<AxisProfile> {
    axis_profile_from_value(&parse(text)?)
}

pub fn read_directions(text: &str) -> Result<Vec<[f64; 3]>> {
    directions_from_value(&parse(text)?)
}

pub fn polygon_to_value(p: &UnconditionalPolygon) -> Value {
    json!({ "chain": p.chain() })
}

/// Piecewise-linear and named profiles round-trip; other analytic profiles are written as
/// `samples + 1` evenly spaced breakpoints.
pub fn generator_to_value(g: &GeneratingFunction, samples: usize) -> Value {
    let a = g.half_width();
    if let Some(b) = g.breakpoints() {
        return json!({ "a": a, "breakpoints": b });
    }
    if let crate::geom2d::Profile::Analytic(p) = g.profile() {
        if let Some(name) = p.named() {
            return json!({ "a": a, "analytic": name.name() });
        }
    }
    let n = samples.max(1);
    let b: Vec<Point2> = (0..=n)
        .map(|i| {
            let x = if i == n { a } else { a * i as f64 / n as f64 };
            Point2::new(x, g.eval(x))
        })
        .collect();
    json!({ "a": a, "breakpoints": b })
}
