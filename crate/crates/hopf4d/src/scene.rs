//! Scene documents and their canonical JSON form.
//!
//! Canonical text is compact UTF-8 JSON with object keys in lexicographic
//! order, every float written with 17 significant digits (`{:.16e}`), and a
//! single trailing newline. Writing the same document always gives the same
//! bytes, and reading them back gives the same document.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use hopf4d_core::projection::ViewFrame;
use hopf4d_core::surfaces::SpaceTag;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::SceneError;

pub const SCENE_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectKind {
    Point,
    Polyline,
    Mesh,
    Sphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Base,
    Xi,
    Omega,
    Stereo,
}

impl Space {
    pub fn as_str(self) -> &'static str {
        match self {
            Space::Base => "base",
            Space::Xi => "xi",
            Space::Omega => "omega",
            Space::Stereo => "stereo",
        }
    }
}

impl From<SpaceTag> for Space {
    fn from(t: SpaceTag) -> Self {
        match t {
            SpaceTag::Base => Space::Base,
            SpaceTag::Xi => Space::Xi,
            SpaceTag::Omega => Space::Omega,
            SpaceTag::Stereo => Space::Stereo,
        }
    }
}

impl std::str::FromStr for Space {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "base" => Ok(Space::Base),
            "xi" => Ok(Space::Xi),
            "omega" => Ok(Space::Omega),
            "stereo" => Ok(Space::Stereo),
            _ => Err(format!(
                "unknown space `{s}` (expected base, xi, omega or stereo)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Style {
    /// `#rrggbb`.
    pub color: String,
    pub opacity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetaValue {
    Bool(bool),
    Integer(i64),
    Number(f64),
    Text(String),
}

impl From<bool> for MetaValue {
    fn from(v: bool) -> Self {
        MetaValue::Bool(v)
    }
}

impl From<i64> for MetaValue {
    fn from(v: i64) -> Self {
        MetaValue::Integer(v)
    }
}

impl From<usize> for MetaValue {
    fn from(v: usize) -> Self {
        MetaValue::Integer(v as i64)
    }
}

impl From<f64> for MetaValue {
    fn from(v: f64) -> Self {
        MetaValue::Number(v)
    }
}

impl From<&str> for MetaValue {
    fn from(v: &str) -> Self {
        MetaValue::Text(v.to_owned())
    }
}

impl From<String> for MetaValue {
    fn from(v: String) -> Self {
        MetaValue::Text(v)
    }
}

pub type Meta = BTreeMap<String, MetaValue>;

/// One drawable item.
///
/// `vertices` is a flat `[x, y, z, x, y, z, ...]` list. A sphere has one
/// vertex (its center) and a `radius` entry in `meta`; a polyline records
/// `closed` in `meta`; only meshes carry `faces`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneObject {
    pub id: String,
    pub kind: ObjectKind,
    pub space: Space,
    pub vertices: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<u32>>>,
    pub style: Style,
    #[serde(default)]
    pub meta: Meta,
}

impl SceneObject {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len() / 3
    }

    pub fn vertex(&self, i: usize) -> [f64; 3] {
        [
            self.vertices[3 * i],
            self.vertices[3 * i + 1],
            self.vertices[3 * i + 2],
        ]
    }

    pub fn group(&self) -> Option<&str> {
        match self.meta.get("group") {
            Some(MetaValue::Text(g)) => Some(g),
            _ => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.meta.get("closed"), Some(MetaValue::Bool(true)))
    }

    fn validate(&self) -> Result<(), String> {
        let id = &self.id;
        if id.is_empty() {
            return Err("object with empty id".into());
        }
        if !self.vertices.len().is_multiple_of(3) {
            return Err(format!("{id}: vertex list length is not a multiple of 3"));
        }
        if self.vertices.iter().any(|v| !v.is_finite()) {
            return Err(format!("{id}: non-finite vertex coordinate"));
        }
        if !(0.0..=1.0).contains(&self.style.opacity) {
            return Err(format!("{id}: opacity outside [0, 1]"));
        }
        let c = self.style.color.as_bytes();
        if c.len() != 7 || c[0] != b'#' || !c[1..].iter().all(u8::is_ascii_hexdigit) {
            return Err(format!("{id}: color must be #rrggbb"));
        }
        if let Some(MetaValue::Number(x)) = self
            .meta
            .values()
            .find(|v| matches!(v, MetaValue::Number(x) if !x.is_finite()))
        {
            return Err(format!("{id}: non-finite meta value {x}"));
        }
        let n = self.vertex_count();
        match (self.kind, &self.faces) {
            (ObjectKind::Mesh, None) => return Err(format!("{id}: mesh without faces")),
            (ObjectKind::Mesh, Some(faces)) => {
                for f in faces {
                    if f.len() < 3 {
                        return Err(format!("{id}: face with fewer than 3 indices"));
                    }
                    if f.iter().any(|&i| i as usize >= n) {
                        return Err(format!("{id}: face index out of range"));
                    }
                }
            }
            (_, Some(_)) => return Err(format!("{id}: only meshes may have faces")),
            (ObjectKind::Point, None) if n == 0 => {
                return Err(format!("{id}: point object without vertices"))
            }
            (ObjectKind::Polyline, None) if n < 2 => {
                return Err(format!("{id}: polyline needs 2 vertices"))
            }
            (ObjectKind::Sphere, None) => {
                if n != 1 {
                    return Err(format!("{id}: sphere needs exactly one center vertex"));
                }
                match self.meta.get("radius") {
                    Some(MetaValue::Number(r)) if *r > 0.0 => {}
                    Some(MetaValue::Integer(r)) if *r > 0 => {}
                    _ => return Err(format!("{id}: sphere needs a positive radius")),
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// The view frame a document was built in, as plain coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameParams {
    pub sphere_center: [f64; 4],
    pub projection_center: [f64; 4],
    pub tangent_point: [f64; 4],
}

impl From<&ViewFrame> for FrameParams {
    fn from(f: &ViewFrame) -> Self {
        let a = |p: hopf4d_core::Point4| [p.x, p.y, p.z, p.w];
        FrameParams {
            sphere_center: a(f.sphere_center),
            projection_center: a(f.projection_center),
            tangent_point: a(f.tangent_point),
        }
    }
}

impl Default for FrameParams {
    fn default() -> Self {
        FrameParams::from(&ViewFrame::default())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneDocument {
    pub version: u64,
    pub frame: FrameParams,
    pub objects: Vec<SceneObject>,
}

impl Default for SceneDocument {
    fn default() -> Self {
        SceneDocument {
            version: SCENE_VERSION,
            frame: FrameParams::default(),
            objects: Vec::new(),
        }
    }
}

impl SceneDocument {
    pub fn validate(&self) -> Result<(), SceneError> {
        if self.version != SCENE_VERSION {
            return Err(SceneError::UnknownVersion(self.version));
        }
        let frame = [
            self.frame.sphere_center,
            self.frame.projection_center,
            self.frame.tangent_point,
        ];
        if frame.iter().flatten().any(|v| !v.is_finite()) {
            return Err(SceneError::Invalid("non-finite frame coordinate".into()));
        }
        let mut ids = BTreeSet::new();
        for o in &self.objects {
            o.validate().map_err(SceneError::Invalid)?;
            if !ids.insert(o.id.as_str()) {
                return Err(SceneError::Invalid(format!("duplicate id {}", o.id)));
            }
        }
        Ok(())
    }

    pub fn object(&self, id: &str) -> Option<&SceneObject> {
        self.objects.iter().find(|o| o.id == id)
    }

    pub fn in_space(&self, space: Space) -> impl Iterator<Item = &SceneObject> {
        self.objects.iter().filter(move |o| o.space == space)
    }

    /// Distinct `meta.group` values, sorted.
    pub fn groups(&self) -> BTreeSet<&str> {
        self.objects.iter().filter_map(SceneObject::group).collect()
    }
}

/// Canonical JSON bytes of a valid document.
pub fn write_scene(doc: &SceneDocument) -> Result<Vec<u8>, SceneError> {
    doc.validate()?;
    let value = serde_json::to_value(doc).map_err(|e| SceneError::Invalid(e.to_string()))?;
    let mut out = String::new();
    write_value(&mut out, &value);
    out.push('\n');
    Ok(out.into_bytes())
}

/// Parses and validates a scene document.
pub fn read_scene(bytes: &[u8]) -> Result<SceneDocument, SceneError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| SceneError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    match value.get("version").and_then(Value::as_u64) {
        Some(SCENE_VERSION) => {}
        Some(v) => return Err(SceneError::UnknownVersion(v)),
        None => return Err(SceneError::Invalid("missing integer version".into())),
    }
    let doc: SceneDocument =
        serde_json::from_value(value).map_err(|e| SceneError::Invalid(e.to_string()))?;
    doc.validate()?;
    Ok(doc)
}

/// `{:.16e}` is the shortest fixed-width form that round-trips every f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_value(out: &mut String, v: &Value) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                let _ = write!(out, "{i}");
            } else if let Some(u) = n.as_u64() {
                let _ = write!(out, "{u}");
            } else {
                out.push_str(&format_float(n.as_f64().expect("finite number")));
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("strings serialize")),
        Value::Array(items) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write_value(out, item);
            }
            out.push(']');
        }
        Value::Object(map) => {
            // serde_json::Map is a BTreeMap here, so keys are already sorted
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (k, key) in keys.into_iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(key).expect("strings serialize"));
                out.push(':');
                write_value(out, &map[key]);
            }
            out.push('}');
        }
    }
}
