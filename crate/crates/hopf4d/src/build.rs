//! Scene requests and the pipelines that turn them into documents.
//!
//! Every 4D object is emitted as up to four sibling objects (base-sphere
//! trace, Ξ-image, Ω-image, stereographic image) sharing one `meta.group`.
//! Base-space objects live on the unit sphere centered at the origin.

use std::f64::consts::TAU;
use std::fmt;

use hopf4d_core::arrangements::{
    disk_tangency_graph, fiber_distance_for_angle, filament_tangency_graph,
    modulation_constellation, polyhedron_vertices, Backbone, PolyhedronKind, StereoCurve,
};
use hopf4d_core::geometry::{spherical_point, BaseAngles};
use hopf4d_core::projection::{omega_image, translate_to_view, xi_image, ViewFrame};
use hopf4d_core::surfaces::{
    arcs_shape_pipeline, lift_base_curve, masked_stereo, mu_grid, nested_family_xy,
    nested_family_z, torus_kappa, torus_mu, BaseCurve, FiberSurface, HopfCoords, NestedShape,
    ParamGrid, PlanarArc, SurfaceMesh,
};
use hopf4d_core::{Point3, Polyline3, Vector};
use serde::{Deserialize, Serialize};

use crate::scene::{
    FrameParams, Meta, MetaValue, ObjectKind, SceneDocument, SceneObject, Space, Style,
};

pub const DEFAULT_TORUS_GRID: [usize; 2] = [96, 96];
pub const DEFAULT_NESTED_GRID: [usize; 2] = [48, 48];
pub const DEFAULT_XY_COUNT: usize = 12;
pub const DEFAULT_Z_COUNT: usize = 6;
pub const DEFAULT_LIFT_BETA: usize = 64;
pub const DEFAULT_ARC_SAMPLES: usize = 16;
pub const DEFAULT_PACKING_SAMPLES: usize = 128;
const DISK_OUTLINE_SAMPLES: usize = 64;
const EDGE_SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorusMode {
    Kappa,
    Mu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Xy,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcSpec {
    /// `(x, z)` in the plane tangent to the base sphere.
    pub center: [f64; 2],
    pub radius: f64,
    pub start: f64,
    pub sweep: f64,
}

impl From<ArcSpec> for PlanarArc {
    fn from(a: ArcSpec) -> Self {
        PlanarArc {
            center: (a.center[0], a.center[1]),
            radius: a.radius,
            start: a.start,
            sweep: a.sweep,
        }
    }
}

fn default_true() -> bool {
    true
}

/// A scene request, tagged by `"type"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BuildRequest {
    Fiber {
        phi: f64,
        psi: f64,
        #[serde(default)]
        samples: Option<usize>,
    },
    Torus {
        mode: TorusMode,
        #[serde(default)]
        psi: Option<f64>,
        #[serde(default)]
        phi: Option<f64>,
        /// `[n_u, n_v]`: samples along each fiber, then fibers.
        #[serde(default)]
        grid: Option<[usize; 2]>,
    },
    Nested {
        family: Family,
        #[serde(default)]
        count: Option<usize>,
        #[serde(default)]
        grid: Option<[usize; 2]>,
    },
    CurveLift {
        /// `[φ, ψ]` rows.
        samples: Vec<[f64; 2]>,
        #[serde(default = "default_true")]
        closed: bool,
        #[serde(default)]
        n_beta: Option<usize>,
    },
    ArcsShape {
        arcs: Vec<ArcSpec>,
        #[serde(default)]
        samples_per_arc: Option<usize>,
        #[serde(default)]
        n_beta: Option<usize>,
    },
    Modulation {
        poly: String,
        m: usize,
        #[serde(default)]
        beta_offset: f64,
    },
    Packing {
        poly: String,
        #[serde(default)]
        radius: Option<f64>,
        #[serde(default)]
        samples: Option<usize>,
    },
}

impl BuildRequest {
    pub fn type_name(&self) -> &'static str {
        match self {
            BuildRequest::Fiber { .. } => "fiber",
            BuildRequest::Torus { .. } => "torus",
            BuildRequest::Nested { .. } => "nested",
            BuildRequest::CurveLift { .. } => "curve_lift",
            BuildRequest::ArcsShape { .. } => "arcs_shape",
            BuildRequest::Modulation { .. } => "modulation",
            BuildRequest::Packing { .. } => "packing",
        }
    }

    /// Short description used to give errors their context.
    pub fn context(&self) -> String {
        match self {
            BuildRequest::Fiber { phi, psi, .. } => format!("fiber(phi={phi}, psi={psi})"),
            BuildRequest::Torus { mode, psi, phi, .. } => match mode {
                TorusMode::Kappa => format!("torus(mode=kappa, psi={})", opt(*psi)),
                TorusMode::Mu => format!("torus(mode=mu, phi={})", opt(*phi)),
            },
            BuildRequest::Nested { family, count, .. } => {
                let f = if *family == Family::Xy { "xy" } else { "z" };
                format!(
                    "nested(family={f}, count={})",
                    count.map_or("default".into(), |c| c.to_string())
                )
            }
            BuildRequest::CurveLift { samples, .. } => {
                format!("curve_lift({} samples)", samples.len())
            }
            BuildRequest::ArcsShape { arcs, .. } => format!("arcs_shape({} arcs)", arcs.len()),
            BuildRequest::Modulation { poly, m, .. } => format!("modulation(poly={poly}, m={m})"),
            BuildRequest::Packing { poly, .. } => format!("packing(poly={poly})"),
        }
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "missing".into(), |v| v.to_string())
}

/// A pipeline error together with the request that caused it.
#[derive(Debug, Clone, PartialEq)]
pub struct BuildError {
    pub context: String,
    pub source: hopf4d_core::Error,
}

impl BuildError {
    pub fn name(&self) -> &'static str {
        self.source.name()
    }
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({})",
            self.context,
            self.source,
            self.source.name()
        )
    }
}

impl std::error::Error for BuildError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.source)
    }
}

/// Builds the scene for `request` in the default view frame.
pub fn build_scene(request: &BuildRequest) -> Result<SceneDocument, BuildError> {
    let frame = ViewFrame::default();
    let mut b = Builder::default();
    build_into(&mut b, request, &frame).map_err(|source| BuildError {
        context: request.context(),
        source,
    })?;
    Ok(SceneDocument {
        frame: FrameParams::from(&frame),
        objects: b.objects,
        ..SceneDocument::default()
    })
}

fn build_into(
    b: &mut Builder,
    request: &BuildRequest,
    frame: &ViewFrame,
) -> hopf4d_core::Result<()> {
    use hopf4d_core::Error;
    match request {
        BuildRequest::Fiber { phi, psi, samples } => {
            let base = BaseAngles::new(*phi, *psi)?;
            let bb = Backbone::new(
                base,
                samples.unwrap_or(hopf4d_core::DEFAULT_FIBER_SAMPLES),
                frame,
            )?;
            let meta = Meta::from([
                ("phi".into(), MetaValue::Number(*phi)),
                ("psi".into(), MetaValue::Number(*psi)),
            ]);
            b.backbone("fiber", &bb, &meta, Palette::plain());
            b.reference_spheres();
        }
        BuildRequest::Torus {
            mode,
            psi,
            phi,
            grid,
        } => {
            let [n_u, n_v] = grid.unwrap_or(DEFAULT_TORUS_GRID);
            let (surface, meta) = match mode {
                TorusMode::Kappa => {
                    let psi = psi.ok_or(Error::DegenerateInput("kappa torus needs psi"))?;
                    let t = torus_kappa(psi, &ParamGrid::torus(n_u, n_v)?, frame)?;
                    (
                        t,
                        Meta::from([("mode".into(), "kappa".into()), ("psi".into(), psi.into())]),
                    )
                }
                TorusMode::Mu => {
                    let phi = phi.ok_or(Error::DegenerateInput("mu torus needs phi"))?;
                    let t = torus_mu(phi, &mu_grid(n_u, n_v)?, frame)?;
                    (
                        t,
                        Meta::from([("mode".into(), "mu".into()), ("phi".into(), phi.into())]),
                    )
                }
            };
            b.surface("torus", &surface, &meta, Palette::plain(), frame);
        }
        BuildRequest::Nested {
            family,
            count,
            grid,
        } => {
            let [n_u, n_v] = grid.unwrap_or(DEFAULT_NESTED_GRID);
            let (members, index_key, angle_key) = match family {
                Family::Xy => {
                    let count = count.unwrap_or(DEFAULT_XY_COUNT);
                    (
                        nested_family_xy(count, &ParamGrid::torus(n_u, n_v)?, frame)?,
                        "psi_family_index",
                        "psi",
                    )
                }
                Family::Z => {
                    let count = count.unwrap_or(DEFAULT_Z_COUNT);
                    (
                        nested_family_z(count, &mu_grid(n_u, n_v)?, frame)?,
                        "phi_family_index",
                        "phi",
                    )
                }
            };
            let last = members.len().saturating_sub(1).max(1);
            for m in &members {
                let group = format!("nested-{:02}", m.index);
                let meta = Meta::from([
                    (index_key.into(), MetaValue::from(m.index)),
                    (angle_key.into(), MetaValue::Number(m.angle)),
                ]);
                let palette = Palette::ramp(m.index as f64 / last as f64);
                match &m.shape {
                    NestedShape::Torus(t) => b.surface(&group, t, &meta, palette, frame),
                    NestedShape::Fiber { base, .. } => {
                        let bb = Backbone::new(*base, n_u, frame)?;
                        b.backbone(&group, &bb, &meta, palette);
                    }
                }
            }
        }
        BuildRequest::CurveLift {
            samples,
            closed,
            n_beta,
        } => {
            let angles = samples
                .iter()
                .map(|[p, s]| BaseAngles::new(*p, *s))
                .collect::<hopf4d_core::Result<Vec<_>>>()?;
            let curve = BaseCurve::new(angles, *closed)?;
            let lifted = lift_base_curve(&curve, n_beta.unwrap_or(DEFAULT_LIFT_BETA), frame)?;
            let meta = Meta::from([("closed".into(), MetaValue::Bool(*closed))]);
            b.cyclic(
                "lift",
                &lifted.surface,
                &lifted.stereo,
                &meta,
                Palette::plain(),
            );
        }
        BuildRequest::ArcsShape {
            arcs,
            samples_per_arc,
            n_beta,
        } => {
            let planar: Vec<PlanarArc> = arcs.iter().map(|a| PlanarArc::from(*a)).collect();
            let n_beta = n_beta.unwrap_or(DEFAULT_LIFT_BETA);
            let shape = arcs_shape_pipeline(
                &planar,
                samples_per_arc.unwrap_or(DEFAULT_ARC_SAMPLES),
                n_beta,
                frame,
            )?;
            for (i, part) in shape.parts.iter().enumerate() {
                let meta = Meta::from([("part".into(), MetaValue::from(i))]);
                b.cyclic(
                    &format!("part-{i:02}"),
                    &part.surface,
                    &part.stereo,
                    &meta,
                    Palette::ramp(0.0),
                );
            }
            for (i, j) in shape.junctions.iter().enumerate() {
                let bb = Backbone::new(j.base, n_beta, frame)?;
                let meta = Meta::from([("after_part".into(), MetaValue::from(j.part))]);
                b.backbone(&format!("junction-{i:02}"), &bb, &meta, Palette::ramp(0.6));
            }
        }
        BuildRequest::Modulation {
            poly,
            m,
            beta_offset,
        } => {
            let vs = polyhedron_vertices(poly.parse::<PolyhedronKind>()?);
            let c = modulation_constellation(&vs, *m, *beta_offset)?;
            for (i, base) in vs.base_angles().into_iter().enumerate() {
                let group = format!("fiber-{i:02}");
                let pts = c.fiber(i);
                let view: Vec<_> = pts.iter().map(|p| translate_to_view(*p, frame)).collect();
                let stereo: Vec<Point3> = (0..*m)
                    .filter_map(|k| {
                        let coords = HopfCoords {
                            phi: base.phi(),
                            psi: base.psi(),
                            beta: beta_offset + TAU * k as f64 / *m as f64,
                        };
                        masked_stereo(&coords, frame)
                    })
                    .collect();
                let mut meta = Meta::from([
                    ("phi".into(), MetaValue::Number(base.phi())),
                    ("psi".into(), MetaValue::Number(base.psi())),
                    ("m".into(), MetaValue::from(*m)),
                ]);
                b.points(
                    &group,
                    Space::Base,
                    &[vs.points()[i]],
                    &meta,
                    Palette::plain(),
                );
                let xi: Vec<Point3> = view.iter().map(|p| xi_image(*p)).collect();
                let om: Vec<Point3> = view.iter().map(|p| omega_image(*p)).collect();
                b.points(&group, Space::Xi, &xi, &meta, Palette::plain());
                b.points(&group, Space::Omega, &om, &meta, Palette::plain());
                meta.insert(
                    "dropped_at_infinity".into(),
                    MetaValue::from(*m - stereo.len()),
                );
                if !stereo.is_empty() {
                    b.points(&group, Space::Stereo, &stereo, &meta, Palette::plain());
                }
            }
        }
        BuildRequest::Packing {
            poly,
            radius,
            samples,
        } => {
            let vs = polyhedron_vertices(poly.parse::<PolyhedronKind>()?);
            let samples = samples.unwrap_or(DEFAULT_PACKING_SAMPLES);
            let disks = disk_tangency_graph(&vs, *radius)?;
            let tube = fiber_distance_for_angle(2.0 * disks.disk_radius) / 2.0;
            let filaments = filament_tangency_graph(&vs, Some(tube), samples)?;
            for (i, base) in vs.base_angles().into_iter().enumerate() {
                let group = format!("filament-{i:02}");
                let bb = Backbone::new(base, samples, frame)?;
                let meta = Meta::from([
                    ("disk_radius".into(), MetaValue::Number(disks.disk_radius)),
                    ("tube_scale".into(), MetaValue::Number(tube)),
                    ("disk_degree".into(), MetaValue::from(disks.degree(i))),
                    (
                        "filament_degree".into(),
                        MetaValue::from(filaments.degree(i)),
                    ),
                ]);
                b.backbone(&group, &bb, &meta, Palette::plain());
                let outline = disk_outline(vs.points()[i], disks.disk_radius);
                b.polyline(
                    &format!("{group}-disk"),
                    Space::Base,
                    &outline,
                    true,
                    &group,
                    &meta,
                    Palette::plain(),
                );
            }
            for &(i, j) in &disks.edges {
                let meta = Meta::from([
                    ("from".into(), MetaValue::from(i)),
                    ("to".into(), MetaValue::from(j)),
                    (
                        "in_filament_graph".into(),
                        MetaValue::Bool(filaments.has_edge(i, j)),
                    ),
                ]);
                let arc = great_arc(vs.points()[i], vs.points()[j]);
                let id = format!("edge-{i:02}-{j:02}");
                b.polyline(
                    &id,
                    Space::Base,
                    &arc,
                    false,
                    "tangency",
                    &meta,
                    Palette::plain(),
                );
            }
        }
    }
    Ok(())
}

/// Circle of angular radius `r` around the unit vector `c`.
fn disk_outline(c: Point3, r: f64) -> Vec<Point3> {
    let helper = if c.x.abs() < 0.9 {
        Point3::new(1.0, 0.0, 0.0)
    } else {
        Point3::new(0.0, 1.0, 0.0)
    };
    let e1 = c
        .cross(helper)
        .normalized()
        .expect("helper is not parallel");
    let e2 = c.cross(e1);
    (0..DISK_OUTLINE_SAMPLES)
        .map(|k| {
            let t = TAU * k as f64 / DISK_OUTLINE_SAMPLES as f64;
            c * r.cos() + (e1 * t.cos() + e2 * t.sin()) * r.sin()
        })
        .collect()
}

/// Great-circle arc between non-antipodal unit vectors.
fn great_arc(a: Point3, b: Point3) -> Vec<Point3> {
    (0..=EDGE_SAMPLES)
        .map(|k| {
            let t = k as f64 / EDGE_SAMPLES as f64;
            let p = a * (1.0 - t) + b * t;
            p * (1.0 / p.norm())
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
struct Palette {
    lighten: f64,
}

impl Palette {
    fn plain() -> Self {
        Palette { lighten: 0.0 }
    }

    /// Shade for member `t ∈ [0, 1]` of a family.
    fn ramp(t: f64) -> Self {
        Palette { lighten: 0.6 * t }
    }

    fn color(&self, space: Space) -> String {
        let (r, g, b) = match space {
            Space::Base => (0x55, 0x55, 0x55),
            Space::Xi => (0x1f, 0x5f, 0xb4),
            Space::Omega => (0xc6, 0x28, 0x28),
            Space::Stereo => (0x2c, 0x8a, 0x2c),
        };
        let mix = |c: u8| (c as f64 + (255.0 - c as f64) * self.lighten).round() as u8;
        format!("#{:02x}{:02x}{:02x}", mix(r), mix(g), mix(b))
    }
}

#[derive(Default)]
struct Builder {
    objects: Vec<SceneObject>,
}

fn flat(points: &[Point3]) -> Vec<f64> {
    points.iter().flat_map(|p| p.to_array()).collect()
}

fn with_group(meta: &Meta, group: &str) -> Meta {
    let mut m = meta.clone();
    m.insert("group".into(), MetaValue::Text(group.into()));
    m
}

impl Builder {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        id: String,
        kind: ObjectKind,
        space: Space,
        vertices: Vec<f64>,
        faces: Option<Vec<Vec<u32>>>,
        meta: Meta,
        palette: Palette,
    ) {
        let opacity = match kind {
            ObjectKind::Mesh => 0.6,
            ObjectKind::Sphere => 0.15,
            _ => 1.0,
        };
        self.objects.push(SceneObject {
            id,
            kind,
            space,
            vertices,
            faces,
            style: Style {
                color: palette.color(space),
                opacity,
            },
            meta,
        });
    }

    fn points(&mut self, group: &str, space: Space, pts: &[Point3], meta: &Meta, palette: Palette) {
        let id = format!("{group}-{}", space.as_str());
        self.push(
            id,
            ObjectKind::Point,
            space,
            flat(pts),
            None,
            with_group(meta, group),
            palette,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn polyline(
        &mut self,
        id: &str,
        space: Space,
        pts: &[Point3],
        closed: bool,
        group: &str,
        meta: &Meta,
        palette: Palette,
    ) {
        let mut meta = with_group(meta, group);
        meta.insert("closed".into(), MetaValue::Bool(closed));
        self.push(
            id.into(),
            ObjectKind::Polyline,
            space,
            flat(pts),
            None,
            meta,
            palette,
        );
    }

    fn curve(
        &mut self,
        group: &str,
        space: Space,
        line: &Polyline3,
        meta: &Meta,
        palette: Palette,
    ) {
        let id = format!("{group}-{}", space.as_str());
        self.polyline(
            &id,
            space,
            line.vertices(),
            line.is_closed(),
            group,
            meta,
            palette,
        );
    }

    fn mesh(&mut self, group: &str, mesh: &SurfaceMesh, meta: &Meta, palette: Palette) {
        let space = Space::from(mesh.space);
        let id = format!("{group}-{}", space.as_str());
        let faces = mesh.faces.iter().map(|f| f.indices().to_vec()).collect();
        self.push(
            id,
            ObjectKind::Mesh,
            space,
            flat(&mesh.vertices),
            Some(faces),
            with_group(meta, group),
            palette,
        );
    }

    fn sphere(&mut self, id: &str, space: Space, center: Point3, radius: f64, role: &str) {
        let meta = Meta::from([
            ("radius".into(), MetaValue::Number(radius)),
            ("role".into(), MetaValue::Text(role.into())),
        ]);
        self.push(
            id.into(),
            ObjectKind::Sphere,
            space,
            flat(&[center]),
            None,
            meta,
            Palette::plain(),
        );
    }

    /// The base sphere and the contours of the 3-sphere in both conjugated images.
    fn reference_spheres(&mut self) {
        self.sphere(
            "sphere-base",
            Space::Base,
            Point3::ORIGIN,
            1.0,
            "base_sphere",
        );
        self.sphere(
            "sphere-xi",
            Space::Xi,
            Point3::new(0.0, 1.0, 0.0),
            1.0,
            "contour",
        );
        self.sphere(
            "sphere-omega",
            Space::Omega,
            Point3::new(0.0, -1.0, 0.0),
            1.0,
            "contour",
        );
    }

    fn backbone(&mut self, group: &str, bb: &Backbone, meta: &Meta, palette: Palette) {
        self.points(
            group,
            Space::Base,
            &[spherical_point(bb.base)],
            meta,
            palette,
        );
        self.curve(group, Space::Xi, &bb.xi, meta, palette);
        self.curve(group, Space::Omega, &bb.omega, meta, palette);
        let mut meta = meta.clone();
        let line = match &bb.stereo {
            StereoCurve::Circle(c) => c,
            StereoCurve::Line(l) => {
                meta.insert("at_infinity".into(), MetaValue::Bool(true));
                l
            }
        };
        self.curve(group, Space::Stereo, line, &meta, palette);
    }

    /// Base trace through the first sample of every grid row.
    fn base_trace(&mut self, group: &str, s: &FiberSurface, meta: &Meta, palette: Palette) {
        let pts: Vec<Point3> = (0..s.grid.n_v)
            .map(|j| {
                let c = s.coords[j * s.grid.n_u];
                let (sp, cp) = (c.psi.sin(), c.psi.cos());
                Point3::new(sp * c.phi.cos(), sp * c.phi.sin(), cp)
            })
            .collect();
        let id = format!("{group}-base");
        self.polyline(
            &id,
            Space::Base,
            &pts,
            s.grid.closed_v,
            group,
            meta,
            palette,
        );
    }

    fn surface(
        &mut self,
        group: &str,
        s: &FiberSurface,
        meta: &Meta,
        palette: Palette,
        frame: &ViewFrame,
    ) {
        let stereo = s.stereo(frame);
        self.cyclic(group, s, &stereo, meta, palette);
    }

    fn cyclic(
        &mut self,
        group: &str,
        s: &FiberSurface,
        stereo: &SurfaceMesh,
        meta: &Meta,
        palette: Palette,
    ) {
        let mut meta = meta.clone();
        meta.insert("n_u".into(), MetaValue::from(s.grid.n_u));
        meta.insert("n_v".into(), MetaValue::from(s.grid.n_v));
        self.base_trace(group, s, &meta, palette);
        self.mesh(group, &s.xi, &meta, palette);
        self.mesh(group, &s.omega, &meta, palette);
        let mut smeta = meta.clone();
        smeta.insert(
            "masked_vertices".into(),
            MetaValue::from(s.points4.len() - stereo.vertices.len()),
        );
        self.mesh(group, stereo, &smeta, palette);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{read_scene, write_scene};

    fn count(doc: &SceneDocument, kind: ObjectKind, space: Space) -> usize {
        doc.objects
            .iter()
            .filter(|o| o.kind == kind && o.space == space)
            .count()
    }

    #[test]
    fn fiber_scene_layout() {
        let doc = build_scene(&BuildRequest::Fiber {
            phi: 0.3,
            psi: 1.2,
            samples: None,
        })
        .unwrap();
        assert_eq!(count(&doc, ObjectKind::Point, Space::Base), 1);
        let curves: Vec<_> = doc
            .objects
            .iter()
            .filter(|o| o.kind == ObjectKind::Polyline)
            .collect();
        assert_eq!(curves.len(), 3);
        assert!(curves
            .iter()
            .all(|o| o.group() == Some("fiber") && o.is_closed() && o.vertex_count() == 256));
        assert_eq!(
            doc.objects
                .iter()
                .filter(|o| o.kind == ObjectKind::Sphere)
                .count(),
            3
        );
        let back = read_scene(&write_scene(&doc).unwrap()).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn north_fiber_scene_marks_line() {
        let doc = build_scene(&BuildRequest::Fiber {
            phi: 0.0,
            psi: 0.0,
            samples: Some(64),
        })
        .unwrap();
        let st = doc.object("fiber-stereo").unwrap();
        assert!(!st.is_closed());
        assert_eq!(st.meta.get("at_infinity"), Some(&MetaValue::Bool(true)));
    }

    #[test]
    fn nested_xy_groups() {
        let doc = build_scene(&BuildRequest::Nested {
            family: Family::Xy,
            count: Some(12),
            grid: Some([12, 12]),
        })
        .unwrap();
        assert_eq!(doc.groups().len(), 13);
        assert_eq!(count(&doc, ObjectKind::Mesh, Space::Xi), 11);
        assert_eq!(count(&doc, ObjectKind::Polyline, Space::Xi), 2);
        for g in doc.groups() {
            let spaces: Vec<Space> = doc
                .objects
                .iter()
                .filter(|o| o.group() == Some(g))
                .map(|o| o.space)
                .collect();
            assert_eq!(spaces.len(), 4, "{g}");
            for s in [Space::Base, Space::Xi, Space::Omega, Space::Stereo] {
                assert!(spaces.contains(&s));
            }
        }
    }

    #[test]
    fn degenerate_torus_carries_context() {
        let err = build_scene(&BuildRequest::Torus {
            mode: TorusMode::Kappa,
            psi: Some(0.0),
            phi: None,
            grid: None,
        })
        .unwrap_err();
        assert_eq!(err.name(), "DegenerateTorus");
        assert!(err.to_string().starts_with("torus(mode=kappa, psi=0)"));
    }

    #[test]
    fn modulation_counts_points() {
        let doc = build_scene(&BuildRequest::Modulation {
            poly: "tetrakis".into(),
            m: 8,
            beta_offset: 0.0,
        })
        .unwrap();
        let xi: usize = doc.in_space(Space::Xi).map(|o| o.vertex_count()).sum();
        assert_eq!(xi, 112);
        let dropped: i64 = doc
            .in_space(Space::Stereo)
            .filter_map(|o| match o.meta.get("dropped_at_infinity") {
                Some(MetaValue::Integer(d)) => Some(*d),
                _ => None,
            })
            .sum();
        let stereo: usize = doc.in_space(Space::Stereo).map(|o| o.vertex_count()).sum();
        assert_eq!(stereo as i64 + dropped, 112);
    }

    #[test]
    fn packing_marks_filament_edges() {
        let doc = build_scene(&BuildRequest::Packing {
            poly: "octahedron".into(),
            radius: None,
            samples: Some(64),
        })
        .unwrap();
        let edges: Vec<_> = doc
            .objects
            .iter()
            .filter(|o| o.group() == Some("tangency"))
            .collect();
        assert_eq!(edges.len(), 12);
        assert!(edges
            .iter()
            .all(|e| e.meta.get("in_filament_graph") == Some(&MetaValue::Bool(true))));
    }

    #[test]
    fn arcs_and_lift_scenes() {
        let arcs = vec![ArcSpec {
            center: [0.0, 0.0],
            radius: 1.0,
            start: 0.0,
            sweep: TAU,
        }];
        let doc = build_scene(&BuildRequest::ArcsShape {
            arcs,
            samples_per_arc: Some(24),
            n_beta: Some(16),
        })
        .unwrap();
        assert!(doc.object("part-00-xi").is_some());

        let samples = (0..8).map(|k| [TAU * k as f64 / 8.0, 1.0]).collect();
        let doc = build_scene(&BuildRequest::CurveLift {
            samples,
            closed: true,
            n_beta: Some(16),
        })
        .unwrap();
        // resampled so consecutive base samples are less than π/8 apart
        let base = doc.object("lift-base").unwrap();
        let n = base.vertex_count();
        assert!(n > 8);
        for i in 0..n {
            let [a, b] = [base.vertex(i), base.vertex((i + 1) % n)];
            let dot: f64 = (0..3).map(|k| a[k] * b[k]).sum();
            assert!(dot.clamp(-1.0, 1.0).acos() < std::f64::consts::FRAC_PI_8);
        }
    }

    #[test]
    fn request_json_shape() {
        let r: BuildRequest =
            serde_json::from_str(r#"{"type":"torus","mode":"mu","phi":0.5,"grid":[8,9]}"#).unwrap();
        assert_eq!(
            r,
            BuildRequest::Torus {
                mode: TorusMode::Mu,
                psi: None,
                phi: Some(0.5),
                grid: Some([8, 9])
            }
        );
        assert!(
            serde_json::from_str::<BuildRequest>(r#"{"type":"torus","mode":"mu","bogus":1}"#)
                .is_err()
        );
    }
}
