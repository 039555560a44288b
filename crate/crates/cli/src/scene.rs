use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use segguard_core::{Point, Polygon, Segment};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub type Pair = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub polygon: Vec<Pair>,
    pub source: [Pair; 2],
    pub target: [Pair; 2],
}

#[derive(Debug, Clone)]
pub struct Scene {
    pub polygon: Polygon,
    pub source: Segment,
    pub target: Segment,
}

/// Rounds to 9 significant digits so files diff cleanly.
pub fn round9(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.8e}").parse().unwrap_or(v)
}

pub fn pair(p: Point) -> Pair {
    [round9(p.x), round9(p.y)]
}

fn point(p: Pair) -> anyhow::Result<Point> {
    Point::try_new(p[0], p[1]).map_err(Into::into)
}

fn segment(s: [Pair; 2], what: &str) -> anyhow::Result<Segment> {
    Segment::new(point(s[0])?, point(s[1])?).with_context(|| format!("invalid {what} segment"))
}

fn polygon(raw: &[Pair]) -> anyhow::Result<Polygon> {
    let pts = raw
        .iter()
        .map(|&p| point(p))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Polygon::validate(&pts).context("invalid polygon")
}

impl SceneFile {
    pub fn from_scene(name: Option<String>, poly: &Polygon, s: Segment, t: Segment) -> Self {
        Self {
            name,
            polygon: poly.vertices().iter().map(|&p| pair(p)).collect(),
            source: [pair(s.a), pair(s.b)],
            target: [pair(t.a), pair(t.b)],
        }
    }

    pub fn to_scene(&self) -> anyhow::Result<Scene> {
        Ok(Scene {
            polygon: polygon(&self.polygon)?,
            source: segment(self.source, "source")?,
            target: segment(self.target, "target")?,
        })
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

/// Pretty JSON with every array of scalars kept on one line.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = String::new();
    write_value(
        &mut out,
        &serde_json::to_value(value).expect("value serializes"),
        0,
    );
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth + 1);
    match v {
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, item, depth + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(depth));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, depth + 1);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(depth));
            out.push('}');
        }
        _ => out.push_str(&v.to_string()),
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

pub fn load_scene(path: &Path) -> anyhow::Result<Scene> {
    let file: SceneFile = serde_json::from_value(read_json(path)?)
        .with_context(|| format!("{} is not a scene file", path.display()))?;
    file.to_scene()
}

/// Accepts a scene file, `{"polygon": [...]}`, or a bare vertex list.
pub fn load_polygon(path: &Path) -> anyhow::Result<Polygon> {
    let v = read_json(path)?;
    let raw = match &v {
        Value::Array(_) => v,
        Value::Object(m) => match m.get("polygon") {
            Some(p) => p.clone(),
            None => bail!("{} has no \"polygon\" key", path.display()),
        },
        _ => bail!("{} is neither a scene nor a polygon", path.display()),
    };
    let pts: Vec<Pair> =
        serde_json::from_value(raw).context("polygon must be a list of [x, y] pairs")?;
    polygon(&pts)
}
