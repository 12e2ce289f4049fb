//! Point arrangements on the base sphere and the fiber configurations over
//! them: polarization/phase constellations and filament packings.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use core::fmt;
use core::str::FromStr;

use crate::analysis::min_distance;
use crate::geometry::{angles_from_base_point, fiber_point_raw, BaseAngles};
use crate::math::{atan2, sin, sqrt};
use crate::projection::{omega_image, translate_to_view, xi_image, ViewFrame};
use crate::surfaces::{stereo_of_coords, HopfCoords, STEREO_MASK};
use crate::{Error, Point3, Point4, Polyline3, Polyline4, Result, Vector};

/// Relative tolerance on inter-fiber distances when detecting tangent filaments.
pub const FILAMENT_TOL: f64 = 0.05;

/// Absolute tolerance on angular distances when detecting tangent disks.
pub const DISK_TOL: f64 = 1e-6;

/// Fiber samples used for filament distances unless told otherwise.
pub const DEFAULT_FILAMENT_SAMPLES: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolyhedronKind {
    Triangle,
    Tetrahedron,
    Hexahedron,
    Octahedron,
    Icosahedron,
    Dodecahedron,
    TetrakisHexahedron,
    Buckminsterfullerene,
}

impl PolyhedronKind {
    pub const ALL: [PolyhedronKind; 8] = [
        PolyhedronKind::Triangle,
        PolyhedronKind::Tetrahedron,
        PolyhedronKind::Hexahedron,
        PolyhedronKind::Octahedron,
        PolyhedronKind::Icosahedron,
        PolyhedronKind::Dodecahedron,
        PolyhedronKind::TetrakisHexahedron,
        PolyhedronKind::Buckminsterfullerene,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolyhedronKind::Triangle => "triangle",
            PolyhedronKind::Tetrahedron => "tetrahedron",
            PolyhedronKind::Hexahedron => "hexahedron",
            PolyhedronKind::Octahedron => "octahedron",
            PolyhedronKind::Icosahedron => "icosahedron",
            PolyhedronKind::Dodecahedron => "dodecahedron",
            PolyhedronKind::TetrakisHexahedron => "tetrakis_hexahedron",
            PolyhedronKind::Buckminsterfullerene => "buckminsterfullerene",
        }
    }

    /// The triangle and the five regular solids.
    pub fn is_platonic_or_triangle(self) -> bool {
        !matches!(
            self,
            PolyhedronKind::TetrakisHexahedron | PolyhedronKind::Buckminsterfullerene
        )
    }
}

impl fmt::Display for PolyhedronKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolyhedronKind {
    type Err = Error;

    /// Accepts the canonical names plus `cube`, `tetrakis` and `fullerene`.
    fn from_str(s: &str) -> Result<Self> {
        Ok(
            match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
                "triangle" => PolyhedronKind::Triangle,
                "tetrahedron" => PolyhedronKind::Tetrahedron,
                "hexahedron" | "cube" => PolyhedronKind::Hexahedron,
                "octahedron" => PolyhedronKind::Octahedron,
                "icosahedron" => PolyhedronKind::Icosahedron,
                "dodecahedron" => PolyhedronKind::Dodecahedron,
                "tetrakis_hexahedron" | "tetrakis" => PolyhedronKind::TetrakisHexahedron,
                "buckminsterfullerene" | "fullerene" => PolyhedronKind::Buckminsterfullerene,
                _ => return Err(Error::UnknownKind),
            },
        )
    }
}

/// Distinct unit vectors on the base sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexSet {
    name: String,
    points: Vec<Point3>,
}

impl VertexSet {
    /// Points must be unit within 1e-12 and pairwise more than 1e-9 apart in angle.
    pub fn new(name: impl Into<String>, points: Vec<Point3>) -> Result<Self> {
        for p in &points {
            if !p.is_finite() || (p.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::NotOnSphere { norm: p.norm() });
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if angular_distance(points[i], points[j]) <= 1e-9 {
                    return Err(Error::DegenerateInput("vertex set has repeated points"));
                }
            }
        }
        Ok(VertexSet {
            name: name.into(),
            points,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Base angles of every vertex; poles get `φ = 0`.
    pub fn base_angles(&self) -> Vec<BaseAngles> {
        self.points
            .iter()
            .map(|p| {
                angles_from_base_point(*p)
                    .expect("vertices are unit")
                    .angles
            })
            .collect()
    }

    /// Smallest angle between two distinct vertices, `None` below two vertices.
    pub fn min_angular_distance(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                let d = angular_distance(self.points[i], self.points[j]);
                best = Some(best.map_or(d, |b: f64| b.min(d)));
            }
        }
        best
    }
}

/// Great-circle angle between unit vectors.
pub fn angular_distance(a: Point3, b: Point3) -> f64 {
    atan2(a.cross(b).norm(), a.dot(b))
}

fn unit(x: f64, y: f64, z: f64) -> Point3 {
    let p = Point3::new(x, y, z);
    p * (1.0 / p.norm())
}

fn push_signed(out: &mut Vec<Point3>, v: [f64; 3], cyclic: bool) {
    let shifts = if cyclic { 3 } else { 1 };
    for s in 0..shifts {
        let c = [v[s % 3], v[(s + 1) % 3], v[(s + 2) % 3]];
        for mask in 0..8u8 {
            let mut p = c;
            let mut skip = false;
            for (k, coord) in p.iter_mut().enumerate() {
                if mask & (1 << k) != 0 {
                    // flipping a zero coordinate would repeat a point
                    if *coord == 0.0 {
                        skip = true;
                    }
                    *coord = -*coord;
                }
            }
            if !skip {
                out.push(unit(p[0], p[1], p[2]));
            }
        }
    }
}

/// Canonical vertex sets.
///
/// The triangle lies on the equator with a vertex on `+x`; the cube and
/// octahedron are axis-aligned; the icosahedron uses cyclic permutations of
/// `(0, ±1, ±ϕ)` and the dodecahedron adds cyclic permutations of
/// `(0, ±1/ϕ, ±ϕ)` to the cube. The fullerene is the truncated icosahedron
/// with cyclic permutations of `(0, ±1, ±3ϕ)`, `(±1, ±(2+ϕ), ±2ϕ)` and
/// `(±ϕ, ±2, ±ϕ³)`, which puts 2-fold axes on the coordinate axes.
pub fn polyhedron_vertices(kind: PolyhedronKind) -> VertexSet {
    let phi = (1.0 + sqrt(5.0)) / 2.0;
    let mut pts = Vec::new();
    match kind {
        PolyhedronKind::Triangle => {
            for k in 0..3 {
                let a = TAU * k as f64 / 3.0;
                pts.push(Point3::new(crate::math::cos(a), sin(a), 0.0));
            }
        }
        PolyhedronKind::Tetrahedron => {
            for (x, y, z) in [
                (1.0, 1.0, 1.0),
                (1.0, -1.0, -1.0),
                (-1.0, 1.0, -1.0),
                (-1.0, -1.0, 1.0),
            ] {
                pts.push(unit(x, y, z));
            }
        }
        PolyhedronKind::Hexahedron => push_signed(&mut pts, [1.0, 1.0, 1.0], false),
        PolyhedronKind::Octahedron => push_signed(&mut pts, [1.0, 0.0, 0.0], true),
        PolyhedronKind::Icosahedron => push_signed(&mut pts, [0.0, 1.0, phi], true),
        PolyhedronKind::Dodecahedron => {
            push_signed(&mut pts, [1.0, 1.0, 1.0], false);
            push_signed(&mut pts, [0.0, 1.0 / phi, phi], true);
        }
        PolyhedronKind::TetrakisHexahedron => {
            push_signed(&mut pts, [1.0, 1.0, 1.0], false);
            push_signed(&mut pts, [1.0, 0.0, 0.0], true);
        }
        PolyhedronKind::Buckminsterfullerene => {
            push_signed(&mut pts, [0.0, 1.0, 3.0 * phi], true);
            push_signed(&mut pts, [1.0, 2.0 + phi, 2.0 * phi], true);
            push_signed(&mut pts, [phi, 2.0, phi * phi * phi], true);
        }
    }
    VertexSet::new(kind.name(), pts).expect("canonical vertex sets are valid")
}

/// `m` equally spaced phase points on the fiber over each vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    pub source: VertexSet,
    pub m: usize,
    pub beta_offset: f64,
    /// Fiber `i`, phase `k` at index `i · m + k`.
    pub points4: Vec<Point4>,
}

impl Constellation {
    pub fn fiber(&self, i: usize) -> &[Point4] {
        &self.points4[i * self.m..(i + 1) * self.m]
    }

    /// Smallest chordal distance between any two points, `None` for one point.
    pub fn min_pairwise_distance(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for i in 0..self.points4.len() {
            for j in i + 1..self.points4.len() {
                let d = self.points4[i].distance(self.points4[j]);
                best = Some(best.map_or(d, |b: f64| b.min(d)));
            }
        }
        best
    }
}

/// Points at `β = beta_offset + 2πk/m` on every fiber over `vs`.
pub fn modulation_constellation(
    vs: &VertexSet,
    m: usize,
    beta_offset: f64,
) -> Result<Constellation> {
    if m < 1 {
        return Err(Error::BadPhaseCount);
    }
    if !beta_offset.is_finite() {
        return Err(Error::BadAngle {
            name: "beta_offset",
            value: beta_offset,
        });
    }
    let mut points4 = Vec::with_capacity(vs.len() * m);
    for b in vs.base_angles() {
        for k in 0..m {
            let beta = beta_offset + TAU * k as f64 / m as f64;
            points4.push(fiber_point_raw(b.phi(), b.psi(), beta));
        }
    }
    Ok(Constellation {
        source: vs.clone(),
        m,
        beta_offset,
        points4,
    })
}

/// Undirected graph on vertex indices.
#[derive(Debug, Clone, PartialEq)]
pub struct TangencyGraph {
    pub nodes: Vec<usize>,
    /// Pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Angular radius of the disks on the base sphere.
    pub disk_radius: f64,
}

impl TangencyGraph {
    pub fn degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|(a, b)| *a == node || *b == node)
            .count()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }
}

/// Largest radius of equal non-overlapping disks centered on `vs`.
pub fn default_disk_radius(vs: &VertexSet) -> f64 {
    vs.min_angular_distance().map_or(PI, |d| d / 2.0)
}

/// Equal disks of angular `radius` (default: the largest that do not overlap)
/// around each vertex; an edge joins every pair of touching disks.
pub fn disk_tangency_graph(vs: &VertexSet, radius: Option<f64>) -> Result<TangencyGraph> {
    let bound = default_disk_radius(vs);
    let r = match radius {
        Some(r) if !r.is_finite() || r <= 0.0 => {
            return Err(Error::BadAngle {
                name: "radius",
                value: r,
            })
        }
        Some(r) if r > bound + INPUT_BOUND_SLACK => {
            return Err(Error::RadiusTooLarge { radius: r, bound })
        }
        Some(r) => r,
        None => bound,
    };
    let pts = vs.points();
    let mut edges = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if (angular_distance(pts[i], pts[j]) - 2.0 * r).abs() <= DISK_TOL {
                edges.push((i, j));
            }
        }
    }
    Ok(TangencyGraph {
        nodes: (0..pts.len()).collect(),
        edges,
        disk_radius: r,
    })
}

const INPUT_BOUND_SLACK: f64 = 1e-9;

/// Stereographic image of one backbone fiber.
#[derive(Debug, Clone, PartialEq)]
pub enum StereoCurve {
    Circle(Polyline3),
    /// The fiber through the projection center: an open run of the samples
    /// that stay clear of it, starting right after the singular sample.
    Line(Polyline3),
}

impl StereoCurve {
    pub fn polyline(&self) -> &Polyline3 {
        match self {
            StereoCurve::Circle(p) | StereoCurve::Line(p) => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Backbone {
    pub base: BaseAngles,
    /// Fiber samples on the unit 3-sphere, closed.
    pub fiber: Polyline4,
    /// Ξ-image of the fiber in the view frame.
    pub xi: Polyline3,
    /// Ω-image of the fiber in the view frame.
    pub omega: Polyline3,
    pub stereo: StereoCurve,
}

impl Backbone {
    /// Samples `β = 2πk/samples` on the fiber over `base` and all its images.
    pub fn new(base: BaseAngles, samples: usize, frame: &ViewFrame) -> Result<Self> {
        if samples < 3 {
            return Err(Error::BadSampleCount {
                min: 3,
                got: samples,
            });
        }
        let coords: Vec<HopfCoords> = (0..samples)
            .map(|k| HopfCoords {
                phi: base.phi(),
                psi: base.psi(),
                beta: TAU * k as f64 / samples as f64,
            })
            .collect();
        let fiber = Polyline4::closed(
            coords
                .iter()
                .map(|c| fiber_point_raw(c.phi, c.psi, c.beta))
                .collect(),
        )?;
        let xi = fiber.map(|p| xi_image(translate_to_view(*p, frame)));
        let omega = fiber.map(|p| omega_image(translate_to_view(*p, frame)));
        let images: Vec<(Point3, f64)> =
            coords.iter().map(|c| stereo_of_coords(c, frame)).collect();
        let clear = |k: &usize| images[*k].1.abs() > STEREO_MASK;
        let stereo = match (0..samples).rev().find(|k| !clear(k)) {
            None => {
                StereoCurve::Circle(Polyline3::closed(images.iter().map(|(p, _)| *p).collect())?)
            }
            Some(last_singular) => {
                let run: Vec<Point3> = (1..=samples)
                    .map(|k| (last_singular + k) % samples)
                    .take_while(clear)
                    .map(|k| images[k].0)
                    .collect();
                StereoCurve::Line(Polyline3::open(run)?)
            }
        };
        Ok(Backbone {
            base,
            fiber,
            xi,
            omega,
            stereo,
        })
    }
}

/// The fiber over every vertex, sampled at `samples` equally spaced phases.
pub fn filament_backbones(
    vs: &VertexSet,
    samples: usize,
    frame: &ViewFrame,
) -> Result<Vec<Backbone>> {
    vs.base_angles()
        .into_iter()
        .map(|base| Backbone::new(base, samples, frame))
        .collect()
}

/// Chordal distance in the 3-sphere between fibers over base points
/// `θ` apart.
pub fn fiber_distance_for_angle(theta: f64) -> f64 {
    2.0 * sin(theta / 4.0)
}

/// Symmetric matrix of sampled minimum distances between backbone fibers,
/// row-major `n × n` with zero diagonal.
pub fn fiber_distance_matrix(backbones: &[Backbone]) -> Vec<f64> {
    let n = backbones.len();
    let mut m = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = min_distance(&backbones[i].fiber, &backbones[j].fiber);
            m[i * n + j] = d;
            m[j * n + i] = d;
        }
    }
    m
}

/// Tangent filaments: tubes of chordal radius `tube_scale` (default: the
/// half-distance between fibers over tangent disks) around every backbone;
/// an edge joins fibers whose sampled distance is `2 · tube_scale` within
/// [`FILAMENT_TOL`].
pub fn filament_tangency_graph(
    vs: &VertexSet,
    tube_scale: Option<f64>,
    samples: usize,
) -> Result<TangencyGraph> {
    let r = default_disk_radius(vs);
    let tube = match tube_scale {
        Some(t) if !t.is_finite() || t <= 0.0 => {
            return Err(Error::DegenerateInput("tube scale must be positive"))
        }
        Some(t) => t,
        None => fiber_distance_for_angle(2.0 * r) / 2.0,
    };
    let backbones = filament_backbones(vs, samples, &ViewFrame::default())?;
    let dist = fiber_distance_matrix(&backbones);
    let n = backbones.len();
    let target = 2.0 * tube;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if (dist[i * n + j] - target).abs() <= FILAMENT_TOL * target {
                edges.push((i, j));
            }
        }
    }
    Ok(TangencyGraph {
        nodes: (0..n).collect(),
        edges,
        disk_radius: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{hopf_map, sample_fiber};
    use alloc::vec;
    use proptest::prelude::*;

    fn contains(set: &[Point3], p: Point3, tol: f64) -> bool {
        set.iter().any(|q| q.distance(p) < tol)
    }

    fn same_set(a: &[Point3], b: &[Point3], tol: f64) -> bool {
        a.len() == b.len() && a.iter().all(|p| contains(b, *p, tol))
    }

    fn rotate(p: Point3, axis: Point3, angle: f64) -> Point3 {
        let k = axis * (1.0 / axis.norm());
        let (s, c) = (sin(angle), crate::math::cos(angle));
        p * c + k.cross(p) * s + k * (k.dot(p) * (1.0 - c))
    }

    #[test]
    fn counts_and_unit_norms() {
        let expected = [3, 4, 8, 6, 12, 20, 14, 60];
        for (kind, n) in PolyhedronKind::ALL.iter().zip(expected) {
            let vs = polyhedron_vertices(*kind);
            assert_eq!(vs.len(), n, "{kind}");
            assert!(vs.points().iter().all(|p| (p.norm() - 1.0).abs() < 1e-12));
            assert_eq!(vs.name(), kind.name());
        }
    }

    #[test]
    fn names_parse() {
        for kind in PolyhedronKind::ALL {
            assert_eq!(kind.name().parse::<PolyhedronKind>().unwrap(), kind);
        }
        assert_eq!(
            "tetrakis".parse::<PolyhedronKind>().unwrap(),
            PolyhedronKind::TetrakisHexahedron
        );
        assert_eq!(
            "Cube".parse::<PolyhedronKind>().unwrap(),
            PolyhedronKind::Hexahedron
        );
        assert_eq!(
            "heptahedron".parse::<PolyhedronKind>().unwrap_err(),
            Error::UnknownKind
        );
    }

    #[test]
    fn octahedron_is_axis_aligned() {
        let vs = polyhedron_vertices(PolyhedronKind::Octahedron);
        let axes = [
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(-1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
            Point3::new(0.0, -1.0, 0.0),
            Point3::new(0.0, 0.0, 1.0),
            Point3::new(0.0, 0.0, -1.0),
        ];
        assert!(same_set(vs.points(), &axes, 1e-15));
    }

    #[test]
    fn tetrakis_is_cube_union_octahedron() {
        let t = polyhedron_vertices(PolyhedronKind::TetrakisHexahedron);
        let mut union = polyhedron_vertices(PolyhedronKind::Hexahedron)
            .points()
            .to_vec();
        union.extend_from_slice(polyhedron_vertices(PolyhedronKind::Octahedron).points());
        assert!(same_set(t.points(), &union, 1e-15));
    }

    #[test]
    fn fullerene_matches_truncated_icosahedron() {
        // cut every icosahedron edge at one and two thirds
        let phi = (1.0 + libm::sqrt(5.0)) / 2.0;
        let mut ico = Vec::new();
        for s in 0..3 {
            for (a, b) in [(1.0, phi), (1.0, -phi), (-1.0, phi), (-1.0, -phi)] {
                let v = [0.0, a, b];
                ico.push(Point3::new(v[s % 3], v[(s + 1) % 3], v[(s + 2) % 3]));
            }
        }
        let mut oracle: Vec<Point3> = Vec::new();
        for i in 0..12 {
            for j in 0..12 {
                if i != j && (ico[i].distance(ico[j]) - 2.0).abs() < 1e-12 {
                    let p = ico[i] + (ico[j] - ico[i]) * (1.0 / 3.0);
                    oracle.push(p * (1.0 / p.norm()));
                }
            }
        }
        assert_eq!(oracle.len(), 60);
        let ful = polyhedron_vertices(PolyhedronKind::Buckminsterfullerene);
        assert!(same_set(ful.points(), &oracle, 1e-12));
    }

    #[test]
    fn fullerene_orbit_is_icosahedral() {
        let phi = (1.0 + libm::sqrt(5.0)) / 2.0;
        let ful = polyhedron_vertices(PolyhedronKind::Buckminsterfullerene);
        let pts = ful.points();
        let five_fold = Point3::new(0.0, 1.0, phi);
        let three_fold = Point3::new(1.0, 1.0, 1.0);
        let two_fold = Point3::new(0.0, 0.0, 1.0);
        for (axis, order) in [(five_fold, 5), (three_fold, 3), (two_fold, 2)] {
            let moved: Vec<Point3> = pts
                .iter()
                .map(|p| rotate(*p, axis, TAU / order as f64))
                .collect();
            assert!(same_set(&moved, pts, 1e-12), "order {order}");
        }
        // every vertex has three nearest neighbors at the same distance
        let d = ful.min_angular_distance().unwrap();
        for p in pts {
            let near = pts
                .iter()
                .filter(|q| (angular_distance(*p, **q) - d).abs() < 1e-9)
                .count();
            assert_eq!(near, 3);
        }
    }

    #[test]
    fn tetrakis_constellation() {
        let vs = polyhedron_vertices(PolyhedronKind::TetrakisHexahedron);
        let c = modulation_constellation(&vs, 8, 0.0).unwrap();
        assert_eq!(c.points4.len(), 112);
        assert!(c.points4.iter().all(|p| (p.norm() - 1.0).abs() < 1e-12));
        let step = 2.0 * sin(PI / 8.0);
        for i in 0..14 {
            let f = c.fiber(i);
            for k in 0..8 {
                assert!((f[k].distance(f[(k + 1) % 8]) - step).abs() < 1e-12);
            }
            for p in f {
                assert!(hopf_map(*p).unwrap().distance(vs.points()[i]) < 1e-12);
            }
        }
        assert!(c.min_pairwise_distance().unwrap() > 1e-6);
    }

    #[test]
    fn single_phase_and_bad_count() {
        let vs = polyhedron_vertices(PolyhedronKind::Icosahedron);
        assert_eq!(
            modulation_constellation(&vs, 1, 0.3).unwrap().points4.len(),
            12
        );
        assert_eq!(
            modulation_constellation(&vs, 0, 0.0).unwrap_err(),
            Error::BadPhaseCount
        );
    }

    #[test]
    fn constellations_are_distinct_on_platonic_inputs() {
        for kind in PolyhedronKind::ALL
            .into_iter()
            .filter(|k| k.is_platonic_or_triangle())
        {
            let vs = polyhedron_vertices(kind);
            for m in [1, 2, 7, 64] {
                let c = modulation_constellation(&vs, m, 0.1).unwrap();
                assert_eq!(c.points4.len(), vs.len() * m);
                assert!(c.min_pairwise_distance().unwrap() > 1e-6, "{kind} m={m}");
            }
        }
    }

    fn brute_disk_edges(vs: &VertexSet) -> Vec<(usize, usize)> {
        let pts = vs.points();
        let mut min = f64::INFINITY;
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                if i != j {
                    let c = pts[i].dot(pts[j]).clamp(-1.0, 1.0);
                    min = min.min(libm::acos(c));
                }
            }
        }
        let mut e = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if (libm::acos(pts[i].dot(pts[j]).clamp(-1.0, 1.0)) - min).abs() < 1e-7 {
                    e.push((i, j));
                }
            }
        }
        e
    }

    #[test]
    fn disk_graphs() {
        let oct = polyhedron_vertices(PolyhedronKind::Octahedron);
        let g = disk_tangency_graph(&oct, None).unwrap();
        assert!((g.disk_radius - PI / 4.0).abs() < 1e-12);
        assert_eq!(g.edges.len(), 12);
        assert!((0..6).all(|i| g.degree(i) == 4));
        assert_eq!(g.edges, brute_disk_edges(&oct));

        let tet = polyhedron_vertices(PolyhedronKind::Tetrahedron);
        assert_eq!(disk_tangency_graph(&tet, None).unwrap().edges.len(), 6);

        for kind in PolyhedronKind::ALL {
            let vs = polyhedron_vertices(kind);
            assert_eq!(
                disk_tangency_graph(&vs, None).unwrap().edges,
                brute_disk_edges(&vs),
                "{kind}"
            );
        }
    }

    #[test]
    fn disk_radius_bounds() {
        let oct = polyhedron_vertices(PolyhedronKind::Octahedron);
        let err = disk_tangency_graph(&oct, Some(PI / 4.0 + 1e-3)).unwrap_err();
        assert_eq!(err.name(), "RadiusTooLarge");
        assert!(disk_tangency_graph(&oct, Some(PI / 4.0 + 1e-10)).is_ok());
        assert!(disk_tangency_graph(&oct, Some(0.2))
            .unwrap()
            .edges
            .is_empty());
    }

    #[test]
    fn disk_graph_is_rotation_invariant() {
        let axis = Point3::new(0.3, -0.5, 0.8);
        for kind in PolyhedronKind::ALL {
            let vs = polyhedron_vertices(kind);
            let moved = VertexSet::new(
                "rotated",
                vs.points()
                    .iter()
                    .map(|p| {
                        let q = rotate(*p, axis, 0.77);
                        q * (1.0 / q.norm())
                    })
                    .collect(),
            )
            .unwrap();
            assert_eq!(
                disk_tangency_graph(&vs, None).unwrap().edges,
                disk_tangency_graph(&moved, None).unwrap().edges
            );
        }
    }

    #[test]
    fn backbones_and_north_fiber_line() {
        let f = ViewFrame::default();
        let oct = polyhedron_vertices(PolyhedronKind::Octahedron);
        let bb = filament_backbones(&oct, 64, &f).unwrap();
        assert_eq!(bb.len(), 6);
        let lines = bb
            .iter()
            .filter(|b| matches!(b.stereo, StereoCurve::Line(_)))
            .count();
        assert_eq!(lines, 1);
        for b in &bb {
            match &b.stereo {
                StereoCurve::Line(p) => {
                    assert!(!p.is_closed());
                    assert_eq!(p.len(), 63);
                    assert!(crate::analysis::collinearity_deviation(p.vertices()) < 1e-9);
                }
                StereoCurve::Circle(p) => {
                    assert!(crate::analysis::fit_circle(p.vertices()).unwrap().max_dev < 1e-9);
                }
            }
        }
        for i in 0..6 {
            for j in i + 1..6 {
                assert!(min_distance(&bb[i].fiber, &bb[j].fiber) > 1e-4);
            }
        }
    }

    #[test]
    fn filament_graph_matches_disk_graph() {
        for kind in PolyhedronKind::ALL
            .into_iter()
            .filter(|k| k.is_platonic_or_triangle())
        {
            let vs = polyhedron_vertices(kind);
            let fil = filament_tangency_graph(&vs, None, 64).unwrap();
            let disk = disk_tangency_graph(&vs, None).unwrap();
            assert_eq!(fil.edges, disk.edges, "{kind}");
        }
        let ico = polyhedron_vertices(PolyhedronKind::Icosahedron);
        assert_eq!(
            filament_tangency_graph(&ico, None, 64).unwrap().edges.len(),
            30
        );
        assert_eq!(
            filament_tangency_graph(&polyhedron_vertices(PolyhedronKind::Triangle), None, 64)
                .unwrap()
                .edges
                .len(),
            3
        );
    }

    #[test]
    fn single_vertex_graphs_are_empty() {
        let vs = VertexSet::new("one", vec![Point3::new(0.0, 0.0, 1.0)]).unwrap();
        assert!(filament_tangency_graph(&vs, None, 16)
            .unwrap()
            .edges
            .is_empty());
        assert!(disk_tangency_graph(&vs, None).unwrap().edges.is_empty());
    }

    #[test]
    fn sampled_fiber_distance_matches_closed_form() {
        let a = BaseAngles::new(0.0, 0.4).unwrap();
        for theta in [0.2, 0.9, 1.7, 2.6] {
            let b = BaseAngles::new(0.0, 0.4 + theta).unwrap();
            let d = min_distance(
                &sample_fiber(a, 2048).unwrap(),
                &sample_fiber(b, 2048).unwrap(),
            );
            assert!(
                (d - fiber_distance_for_angle(theta)).abs() < 1e-5,
                "θ={theta}: {d}"
            );
        }
    }

    proptest! {
        #[test]
        fn fiber_distance_is_monotone(t1 in 0.05f64..3.0, dt in 0.02f64..0.14) {
            let a = BaseAngles::new(0.3, 0.0).unwrap();
            let near = BaseAngles::new(0.3, t1).unwrap();
            let far = BaseAngles::new(0.3, t1 + dt).unwrap();
            let fa = sample_fiber(a, 512).unwrap();
            let d1 = min_distance(&fa, &sample_fiber(near, 512).unwrap());
            let d2 = min_distance(&fa, &sample_fiber(far, 512).unwrap());
            prop_assert!(d2 >= d1);
        }
    }
}
