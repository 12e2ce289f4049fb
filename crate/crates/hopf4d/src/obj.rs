//! Wavefront OBJ export.

use std::fmt::Write as _;

use crate::scene::{ObjectKind, SceneDocument, Space};
use crate::SceneError;

/// Meshes and polylines of one space as OBJ text.
///
/// Objects are written in id order, each as an `o <id>` group holding its
/// `v` lines followed by its `f` (meshes) or `l` (polylines) records.
/// Indices are 1-based and global; a closed polyline repeats its first index.
pub fn export_obj(doc: &SceneDocument, space: Space) -> Result<String, SceneError> {
    let mut objects: Vec<_> = doc
        .in_space(space)
        .filter(|o| matches!(o.kind, ObjectKind::Mesh | ObjectKind::Polyline))
        .collect();
    if objects.is_empty() {
        return Err(SceneError::EmptySelection(space.as_str().to_owned()));
    }
    objects.sort_by(|a, b| a.id.cmp(&b.id));

    let mut out = String::new();
    let mut base = 1usize;
    for o in objects {
        let _ = writeln!(out, "o {}", o.id);
        for i in 0..o.vertex_count() {
            let [x, y, z] = o.vertex(i);
            let _ = writeln!(out, "v {x} {y} {z}");
        }
        match (&o.faces, o.kind) {
            (Some(faces), ObjectKind::Mesh) => {
                for f in faces {
                    out.push('f');
                    for &i in f {
                        let _ = write!(out, " {}", base + i as usize);
                    }
                    out.push('\n');
                }
            }
            _ => {
                let n = o.vertex_count();
                out.push('l');
                for i in 0..n {
                    let _ = write!(out, " {}", base + i);
                }
                if o.is_closed() {
                    let _ = write!(out, " {base}");
                }
                out.push('\n');
            }
        }
        base += o.vertex_count();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{Meta, MetaValue, SceneObject, Style};

    fn object(
        id: &str,
        kind: ObjectKind,
        vertices: Vec<f64>,
        faces: Option<Vec<Vec<u32>>>,
    ) -> SceneObject {
        SceneObject {
            id: id.into(),
            kind,
            space: Space::Xi,
            vertices,
            faces,
            style: Style {
                color: "#000000".into(),
                opacity: 1.0,
            },
            meta: Meta::new(),
        }
    }

    #[test]
    fn single_triangle() {
        let doc = SceneDocument {
            objects: vec![object(
                "t",
                ObjectKind::Mesh,
                vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0],
                Some(vec![vec![0, 1, 2]]),
            )],
            ..SceneDocument::default()
        };
        let text = export_obj(&doc, Space::Xi).unwrap();
        assert_eq!(text, "o t\nv 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
    }

    #[test]
    fn ordering_offsets_and_polylines() {
        let mut closed = object(
            "a-line",
            ObjectKind::Polyline,
            vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0],
            None,
        );
        closed.meta.insert("closed".into(), MetaValue::Bool(true));
        let doc = SceneDocument {
            objects: vec![
                object(
                    "b-mesh",
                    ObjectKind::Mesh,
                    vec![0.0; 9],
                    Some(vec![vec![2, 1, 0]]),
                ),
                closed,
                object("c-point", ObjectKind::Point, vec![0.0; 3], None),
            ],
            ..SceneDocument::default()
        };
        let text = export_obj(&doc, Space::Xi).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "o a-line");
        assert_eq!(lines[4], "l 1 2 3 1");
        assert_eq!(lines[5], "o b-mesh");
        assert_eq!(lines[9], "f 6 5 4");
        assert!(!text.contains("c-point"));
    }

    #[test]
    fn empty_selection() {
        let doc = SceneDocument::default();
        assert!(
            matches!(export_obj(&doc, Space::Omega), Err(SceneError::EmptySelection(s)) if s == "omega")
        );
    }
}
