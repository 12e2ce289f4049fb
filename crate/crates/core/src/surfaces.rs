//! Hopf tori, nested torus families and cyclic surfaces swept by fibers.
//!
//! A fiber surface is sampled on a grid whose `u` direction runs along each
//! fiber (the `β′` parameter) and whose `v` direction steps from fiber to
//! fiber. Vertex `(i, j)` (column `i`, row `j`) is stored at `j · n_u + i`, so
//! every row of the grid is one sampled fiber.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_8, PI, TAU};

use crate::geometry::{
    angles_from_base_point, fiber_circle, fiber_point_raw, spherical_point, BaseAngles, Circle4,
};
use crate::math::{cos, sin, sqrt};
use crate::projection::{
    omega_image, plane_point_base_angles, stereo_closed_form_raw, translate_to_view, xi_image,
    ViewFrame,
};
use crate::{Error, Point3, Point4, Polyline4, Result, Vector, INPUT_TOL};

/// Which image space a mesh or curve lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceTag {
    Base,
    Xi,
    Omega,
    Stereo,
}

impl SpaceTag {
    pub fn as_str(self) -> &'static str {
        match self {
            SpaceTag::Base => "base",
            SpaceTag::Xi => "xi",
            SpaceTag::Omega => "omega",
            SpaceTag::Stereo => "stereo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Face {
    Tri([u32; 3]),
    Quad([u32; 4]),
}

impl Face {
    pub fn indices(&self) -> &[u32] {
        match self {
            Face::Tri(i) => i,
            Face::Quad(i) => i,
        }
    }
}

/// Vertex stereographic denominators at or below this are masked out.
pub const STEREO_MASK: f64 = 1e-6;

/// Default tessellation of a torus.
pub const DEFAULT_TORUS_GRID: usize = 96;

/// Largest angular step between consecutive samples of a lifted base curve.
pub const MAX_CURVE_STEP: f64 = FRAC_PI_8;

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<Point3>,
    pub faces: Vec<Face>,
    pub space: SpaceTag,
}

impl SurfaceMesh {
    pub fn face_area(&self, face: &Face) -> f64 {
        let idx = face.indices();
        let p0 = self.vertices[idx[0] as usize];
        let mut area = Point3::ORIGIN;
        for w in idx[1..].windows(2) {
            let a = self.vertices[w[0] as usize] - p0;
            let b = self.vertices[w[1] as usize] - p0;
            area = area + a.cross(b);
        }
        area.norm() / 2.0
    }

    /// Every face index refers to an existing vertex.
    pub fn indices_in_range(&self) -> bool {
        let n = self.vertices.len() as u32;
        self.faces
            .iter()
            .all(|f| f.indices().iter().all(|&i| i < n))
    }

    /// Number of undirected edges used by exactly one face.
    pub fn boundary_edge_count(&self) -> usize {
        let mut uses: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for f in &self.faces {
            let idx = f.indices();
            for k in 0..idx.len() {
                let (a, b) = (idx[k], idx[(k + 1) % idx.len()]);
                *uses.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        uses.values().filter(|&&c| c == 1).count()
    }
}

/// Sampling of a rectangle of parameters.
///
/// A closed direction is sampled half-open (`n` points, the last joining the
/// first); an open direction includes both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamGrid {
    pub n_u: usize,
    pub n_v: usize,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    pub closed_u: bool,
    pub closed_v: bool,
}

impl ParamGrid {
    pub fn new(
        n_u: usize,
        n_v: usize,
        u_range: (f64, f64),
        v_range: (f64, f64),
        closed_u: bool,
        closed_v: bool,
    ) -> Result<Self> {
        for n in [n_u, n_v] {
            if n < 3 {
                return Err(Error::BadSampleCount { min: 3, got: n });
            }
        }
        for (a, b) in [u_range, v_range] {
            if !a.is_finite() || !b.is_finite() || a == b {
                return Err(Error::DegenerateInput(
                    "parameter range is empty or not finite",
                ));
            }
        }
        Ok(ParamGrid {
            n_u,
            n_v,
            u_range,
            v_range,
            closed_u,
            closed_v,
        })
    }

    /// Full torus `[0, 2π)²`, closed both ways.
    pub fn torus(n_u: usize, n_v: usize) -> Result<Self> {
        Self::new(n_u, n_v, (0.0, TAU), (0.0, TAU), true, true)
    }

    /// Full fibers (`u` closed over `[0, 2π)`) and a `v` window.
    pub fn fibers_over(
        n_u: usize,
        n_v: usize,
        v_range: (f64, f64),
        closed_v: bool,
    ) -> Result<Self> {
        Self::new(n_u, n_v, (0.0, TAU), v_range, true, closed_v)
    }

    /// Replaces the `u` range with an open display window.
    pub fn with_u_window(mut self, lo: f64, hi: f64) -> Result<Self> {
        self.u_range = (lo, hi);
        self.closed_u = false;
        Self::new(
            self.n_u,
            self.n_v,
            self.u_range,
            self.v_range,
            false,
            self.closed_v,
        )
    }

    fn sample(n: usize, (a, b): (f64, f64), closed: bool, k: usize) -> f64 {
        // an open direction ends exactly on its upper bound
        if !closed && k == n - 1 {
            return b;
        }
        let denom = if closed { n } else { n - 1 };
        a + (b - a) * k as f64 / denom as f64
    }

    pub fn u_values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_u).map(|i| Self::sample(self.n_u, self.u_range, self.closed_u, i))
    }

    pub fn v_values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_v).map(|j| Self::sample(self.n_v, self.v_range, self.closed_v, j))
    }

    pub fn vertex_count(&self) -> usize {
        self.n_u * self.n_v
    }

    pub fn index(&self, i: usize, j: usize) -> u32 {
        (j * self.n_u + i) as u32
    }

    /// Quads between neighboring samples, wrapping in closed directions.
    pub fn quads(&self) -> Vec<Face> {
        let cols = if self.closed_u {
            self.n_u
        } else {
            self.n_u - 1
        };
        let rows = if self.closed_v {
            self.n_v
        } else {
            self.n_v - 1
        };
        let mut faces = Vec::with_capacity(cols * rows);
        for j in 0..rows {
            let j1 = (j + 1) % self.n_v;
            for i in 0..cols {
                let i1 = (i + 1) % self.n_u;
                faces.push(Face::Quad([
                    self.index(i, j),
                    self.index(i1, j),
                    self.index(i1, j1),
                    self.index(i, j1),
                ]));
            }
        }
        faces
    }
}

/// Hopf coordinates of one grid vertex, not reduced mod 2π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopfCoords {
    pub phi: f64,
    pub psi: f64,
    pub beta: f64,
}

/// How a fiber surface was generated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceKind {
    /// Torus over the circle of latitude at polar angle `psi`.
    Kappa { psi: f64 },
    /// Torus over the meridian half-circle at azimuth `phi`.
    Mu { phi: f64 },
    /// Surface over an arbitrary base curve.
    Cyclic,
}

/// A surface swept by fibers, with its points in 4-space and both
/// conjugated images.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberSurface {
    pub kind: SurfaceKind,
    pub grid: ParamGrid,
    pub coords: Vec<HopfCoords>,
    /// Points on the unit 3-sphere centered at the origin.
    pub points4: Vec<Point4>,
    pub xi: SurfaceMesh,
    pub omega: SurfaceMesh,
}

impl FiberSurface {
    fn build(
        kind: SurfaceKind,
        grid: ParamGrid,
        coords: Vec<HopfCoords>,
        frame: &ViewFrame,
    ) -> Self {
        let points4: Vec<Point4> = coords
            .iter()
            .map(|c| fiber_point_raw(c.phi, c.psi, c.beta))
            .collect();
        let faces = grid.quads();
        let view: Vec<Point4> = points4
            .iter()
            .map(|p| translate_to_view(*p, frame))
            .collect();
        let xi = SurfaceMesh {
            vertices: view.iter().map(|p| xi_image(*p)).collect(),
            faces: faces.clone(),
            space: SpaceTag::Xi,
        };
        let omega = SurfaceMesh {
            vertices: view.iter().map(|p| omega_image(*p)).collect(),
            faces,
            space: SpaceTag::Omega,
        };
        FiberSurface {
            kind,
            grid,
            coords,
            points4,
            xi,
            omega,
        }
    }

    /// Sampled fiber of row `j` (untranslated).
    pub fn row(&self, j: usize) -> &[Point4] {
        let n = self.grid.n_u;
        &self.points4[j * n..(j + 1) * n]
    }

    pub fn row_count(&self) -> usize {
        self.grid.n_v
    }

    /// Row `j` as a polyline, closed when fibers are sampled in full.
    pub fn row_polyline(&self, j: usize) -> Polyline4 {
        Polyline4::new(self.row(j).to_vec(), self.grid.closed_u)
            .expect("rows have at least 3 samples")
    }

    /// Stereographic image, see [`torus_stereo`].
    pub fn stereo(&self, frame: &ViewFrame) -> SurfaceMesh {
        torus_stereo(self, frame)
    }
}

/// Stereographic image of a grid vertex in `frame`, and its denominator.
pub(crate) fn stereo_of_coords(c: &HopfCoords, frame: &ViewFrame) -> (Point3, f64) {
    // the closed form is written for the sphere centered at [0,1,0,1]; other
    // centers only shift the image
    let (img, d) = stereo_closed_form_raw(c.phi, c.psi, c.beta);
    let s = frame.sphere_center;
    (img + Point3::new(s.x, s.z, s.w - 1.0), d)
}

/// Stereographic image of a point given by Hopf coordinates, `None` when
/// its denominator is within [`STEREO_MASK`] of zero.
pub fn masked_stereo(c: &HopfCoords, frame: &ViewFrame) -> Option<Point3> {
    let (img, d) = stereo_of_coords(c, frame);
    (d.abs() > STEREO_MASK).then_some(img)
}

/// Torus over the circle of latitude at polar angle `psi`.
///
/// Rows run over the azimuth `φ′` (grid `v`), columns over `β′` (grid `u`).
pub fn torus_kappa(psi: f64, grid: &ParamGrid, frame: &ViewFrame) -> Result<FiberSurface> {
    if !(psi > 0.0 && psi < PI) {
        return Err(Error::DegenerateTorus { psi });
    }
    let mut coords = Vec::with_capacity(grid.vertex_count());
    for phi in grid.v_values() {
        for beta in grid.u_values() {
            coords.push(HopfCoords { phi, psi, beta });
        }
    }
    Ok(FiberSurface::build(
        SurfaceKind::Kappa { psi },
        *grid,
        coords,
        frame,
    ))
}

/// Torus over the half great circle at azimuth `phi`, `ψ′ ∈ [0, π]`.
///
/// Rows run over `ψ′` (grid `v`, normally `[0, π]` open), columns over `β′`.
/// When the grid samples whole fibers, `β′` is counted from `π/2 − φ`, so
/// column 0 of row `ψ′ = 0` is the point `[0,1,0,0]` that projects to
/// infinity and the `ψ′ = 0` row is the same sampled fiber for every `φ`.
pub fn torus_mu(phi: f64, grid: &ParamGrid, frame: &ViewFrame) -> Result<FiberSurface> {
    if !phi.is_finite() {
        return Err(Error::BadAngle {
            name: "phi",
            value: phi,
        });
    }
    let offset = if grid.closed_u { FRAC_PI_2 - phi } else { 0.0 };
    let mut coords = Vec::with_capacity(grid.vertex_count());
    for psi in grid.v_values() {
        if !(0.0..=PI).contains(&psi) {
            return Err(Error::BadAngle {
                name: "psi",
                value: psi,
            });
        }
        for u in grid.u_values() {
            coords.push(HopfCoords {
                phi,
                psi,
                beta: offset + u,
            });
        }
    }
    Ok(FiberSurface::build(
        SurfaceKind::Mu { phi },
        *grid,
        coords,
        frame,
    ))
}

/// Default grid for a μ torus: full fibers, `ψ′` over `[0, π]` inclusive.
pub fn mu_grid(n_u: usize, n_v: usize) -> Result<ParamGrid> {
    ParamGrid::fibers_over(n_u, n_v, (0.0, PI), false)
}

/// Stereographic image of a fiber surface.
///
/// Vertices whose denominator is within [`STEREO_MASK`] of zero are dropped
/// together with every face touching them.
pub fn torus_stereo(surface: &FiberSurface, frame: &ViewFrame) -> SurfaceMesh {
    stereo_mesh(&surface.coords, &surface.grid.quads(), frame)
}

fn stereo_mesh(coords: &[HopfCoords], faces: &[Face], frame: &ViewFrame) -> SurfaceMesh {
    let mut remap = Vec::with_capacity(coords.len());
    let mut vertices = Vec::with_capacity(coords.len());
    for c in coords {
        let (img, d) = stereo_of_coords(c, frame);
        if d.abs() <= STEREO_MASK {
            remap.push(None);
        } else {
            remap.push(Some(vertices.len() as u32));
            vertices.push(img);
        }
    }
    let faces = faces
        .iter()
        .filter_map(|f| match f {
            Face::Quad(q) => {
                let m = [
                    remap[q[0] as usize]?,
                    remap[q[1] as usize]?,
                    remap[q[2] as usize]?,
                    remap[q[3] as usize]?,
                ];
                Some(Face::Quad(m))
            }
            Face::Tri(t) => {
                let m = [
                    remap[t[0] as usize]?,
                    remap[t[1] as usize]?,
                    remap[t[2] as usize]?,
                ];
                Some(Face::Tri(m))
            }
        })
        .collect();
    SurfaceMesh {
        vertices,
        faces,
        space: SpaceTag::Stereo,
    }
}

/// Member of a nested family: a torus, or one of the two fibers at the ends.
#[derive(Debug, Clone, PartialEq)]
pub enum NestedShape {
    Torus(FiberSurface),
    Fiber {
        base: BaseAngles,
        circle: Circle4,
        samples: Polyline4,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NestedMember {
    pub index: usize,
    /// `ψ` for the xy family, `φ` for the z family.
    pub angle: f64,
    pub shape: NestedShape,
}

impl NestedMember {
    pub fn torus(&self) -> Option<&FiberSurface> {
        match &self.shape {
            NestedShape::Torus(t) => Some(t),
            NestedShape::Fiber { .. } => None,
        }
    }
}

/// Tori over the circles of latitude `ψ = kπ/count`.
///
/// `k = 1..count−1` are tori; `k = 0` and `k = count` are the single fibers
/// over the poles. Fibers are sampled with the grid's `n_u`.
pub fn nested_family_xy(
    count: usize,
    grid: &ParamGrid,
    frame: &ViewFrame,
) -> Result<Vec<NestedMember>> {
    if count < 2 {
        return Err(Error::BadCount(count));
    }
    let mut members = Vec::with_capacity(count + 1);
    for k in 0..=count {
        let psi = PI * k as f64 / count as f64;
        let shape = if k == 0 || k == count {
            let base = BaseAngles::new(0.0, if k == 0 { 0.0 } else { PI })?;
            let samples = Polyline4::closed(
                grid.u_values()
                    .map(|beta| fiber_point_raw(0.0, base.psi(), beta))
                    .collect(),
            )?;
            NestedShape::Fiber {
                base,
                circle: fiber_circle(base),
                samples,
            }
        } else {
            NestedShape::Torus(torus_kappa(psi, grid, frame)?)
        };
        members.push(NestedMember {
            index: k,
            angle: psi,
            shape,
        });
    }
    Ok(members)
}

/// μ tori over the meridians `φ = kπ/count`, `k = 0..=count`.
pub fn nested_family_z(
    count: usize,
    grid: &ParamGrid,
    frame: &ViewFrame,
) -> Result<Vec<NestedMember>> {
    if count < 2 {
        return Err(Error::BadCount(count));
    }
    (0..=count)
        .map(|k| {
            let phi = PI * k as f64 / count as f64;
            Ok(NestedMember {
                index: k,
                angle: phi,
                shape: NestedShape::Torus(torus_mu(phi, grid, frame)?),
            })
        })
        .collect()
}

/// A sampled curve on the base sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseCurve {
    samples: Vec<BaseAngles>,
    closed: bool,
}

impl BaseCurve {
    pub fn new(samples: Vec<BaseAngles>, closed: bool) -> Result<Self> {
        if samples.len() < 3 {
            return Err(Error::BadCurve("a base curve needs at least 3 samples"));
        }
        Ok(BaseCurve { samples, closed })
    }

    pub fn samples(&self) -> &[BaseAngles] {
        &self.samples
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Points on the unit base sphere.
    pub fn points(&self) -> Vec<Point3> {
        self.samples.iter().map(|b| spherical_point(*b)).collect()
    }

    /// Subdivides every step of `max_step` or more along its great-circle arc
    /// into equal pieces shorter than `max_step`. Existing samples are kept.
    pub fn resampled(&self, max_step: f64) -> Result<BaseCurve> {
        let pts = self.points();
        let n = pts.len();
        let steps = if self.closed { n } else { n - 1 };
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.samples[k]);
            if k >= steps {
                continue;
            }
            let (a, b) = (pts[k], pts[(k + 1) % n]);
            let theta = crate::math::atan2(a.cross(b).norm(), a.dot(b));
            if theta < max_step {
                continue;
            }
            if PI - theta <= 1e-9 {
                return Err(Error::BadCurve("consecutive samples are antipodal"));
            }
            // truncation keeps every piece strictly below max_step
            let pieces = (theta / max_step) as usize + 1;
            for s in 1..pieces {
                let t = s as f64 / pieces as f64;
                let wa = sin((1.0 - t) * theta) / sin(theta);
                let wb = sin(t * theta) / sin(theta);
                let p = a * wa + b * wb;
                let unit = p * (1.0 / p.norm());
                out.push(angles_from_base_point(unit)?.angles);
            }
        }
        BaseCurve::new(out, self.closed)
    }

    /// Largest angular step between consecutive samples.
    pub fn max_step(&self) -> f64 {
        let pts = self.points();
        let n = pts.len();
        let steps = if self.closed { n } else { n - 1 };
        (0..steps)
            .map(|k| {
                let (a, b) = (pts[k], pts[(k + 1) % n]);
                crate::math::atan2(a.cross(b).norm(), a.dot(b))
            })
            .fold(0.0, f64::max)
    }
}

/// A cyclic surface lifted from a base curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicSurface {
    /// The curve actually lifted, after resampling.
    pub curve: BaseCurve,
    pub surface: FiberSurface,
    pub stereo: SurfaceMesh,
}

/// Fibers over the samples of `curve`, one grid row per sample.
pub fn lift_base_curve(
    curve: &BaseCurve,
    n_beta: usize,
    frame: &ViewFrame,
) -> Result<CyclicSurface> {
    let curve = curve.resampled(MAX_CURVE_STEP)?;
    let rows = curve.samples.len();
    let grid = ParamGrid::new(
        n_beta,
        rows,
        (0.0, TAU),
        (0.0, rows as f64),
        true,
        curve.closed,
    )?;
    let mut coords = Vec::with_capacity(grid.vertex_count());
    for b in &curve.samples {
        for beta in grid.u_values() {
            coords.push(HopfCoords {
                phi: b.phi(),
                psi: b.psi(),
                beta,
            });
        }
    }
    let surface = FiberSurface::build(SurfaceKind::Cyclic, grid, coords, frame);
    let stereo = torus_stereo(&surface, frame);
    Ok(CyclicSurface {
        curve,
        surface,
        stereo,
    })
}

/// A circular arc in the `(x, z)` plane: `center + radius (cos θ, sin θ)` for
/// `θ` from `start` to `start + sweep`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarArc {
    pub center: (f64, f64),
    pub radius: f64,
    pub start: f64,
    pub sweep: f64,
}

impl PlanarArc {
    pub fn point_at(&self, t: f64) -> (f64, f64) {
        let th = self.start + self.sweep * t;
        (
            self.center.0 + self.radius * cos(th),
            self.center.1 + self.radius * sin(th),
        )
    }

    pub fn start_point(&self) -> (f64, f64) {
        self.point_at(0.0)
    }

    pub fn end_point(&self) -> (f64, f64) {
        self.point_at(1.0)
    }

    fn is_full_circle(&self) -> bool {
        (self.sweep.abs() - TAU).abs() <= 1e-12
    }
}

fn plane_gap(a: (f64, f64), b: (f64, f64)) -> f64 {
    sqrt((a.0 - b.0) * (a.0 - b.0) + (a.1 - b.1) * (a.1 - b.1))
}

/// Fiber shared by two consecutive parts of an arc shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Junction {
    /// The part ending at the junction; the next part (cyclically) starts there.
    pub part: usize,
    pub base: BaseAngles,
    pub fiber: Circle4,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArcsShape {
    pub parts: Vec<CyclicSurface>,
    pub junctions: Vec<Junction>,
    pub closed: bool,
}

/// Lifts a chain of planar arcs onto the base sphere and sweeps each one
/// into a cyclic surface. Consecutive parts share the fiber over their
/// common endpoint.
pub fn arcs_shape_pipeline(
    arcs: &[PlanarArc],
    samples_per_arc: usize,
    n_beta: usize,
    frame: &ViewFrame,
) -> Result<ArcsShape> {
    if arcs.is_empty() {
        return Err(Error::DegenerateInput("no arcs"));
    }
    if samples_per_arc < 3 {
        return Err(Error::BadSampleCount {
            min: 3,
            got: samples_per_arc,
        });
    }
    for a in arcs {
        if !a.radius.is_finite() || a.radius <= 0.0 || !a.sweep.is_finite() || a.sweep == 0.0 || !a.start.is_finite() {
            return Err(Error::DegenerateInput(
                "arc needs a positive radius and a nonzero sweep",
            ));
        }
    }
    for i in 1..arcs.len() {
        let gap = plane_gap(arcs[i - 1].end_point(), arcs[i].start_point());
        if gap >= INPUT_TOL {
            return Err(Error::DisconnectedArcs { index: i, gap });
        }
    }
    let closed = plane_gap(arcs[arcs.len() - 1].end_point(), arcs[0].start_point()) < INPUT_TOL;

    let lift = |p: (f64, f64)| plane_point_base_angles(p.0, p.1, frame);
    let mut parts = Vec::with_capacity(arcs.len());
    if arcs.len() == 1 && arcs[0].is_full_circle() {
        let arc = &arcs[0];
        let samples = (0..samples_per_arc)
            .map(|k| lift(arc.point_at(k as f64 / samples_per_arc as f64)))
            .collect::<Result<Vec<_>>>()?;
        parts.push(lift_base_curve(
            &BaseCurve::new(samples, true)?,
            n_beta,
            frame,
        )?);
        return Ok(ArcsShape {
            parts,
            junctions: Vec::new(),
            closed: true,
        });
    }

    let mut ends = Vec::with_capacity(arcs.len());
    for (i, arc) in arcs.iter().enumerate() {
        let mut samples = Vec::with_capacity(samples_per_arc);
        for k in 0..samples_per_arc {
            // consecutive arcs share the exact same endpoint sample
            let p = if k == 0 && i > 0 {
                arcs[i - 1].end_point()
            } else if k + 1 == samples_per_arc && closed && i + 1 == arcs.len() {
                arcs[0].start_point()
            } else {
                arc.point_at(k as f64 / (samples_per_arc - 1) as f64)
            };
            samples.push(lift(p)?);
        }
        ends.push(*samples.last().expect("at least 3 samples"));
        parts.push(lift_base_curve(
            &BaseCurve::new(samples, false)?,
            n_beta,
            frame,
        )?);
    }
    let junction_count = if closed && arcs.len() > 1 {
        arcs.len()
    } else {
        arcs.len() - 1
    };
    let junctions = (0..junction_count)
        .map(|i| Junction {
            part: i,
            base: ends[i],
            fiber: fiber_circle(ends[i]),
        })
        .collect();
    Ok(ArcsShape {
        parts,
        junctions,
        closed,
    })
}
