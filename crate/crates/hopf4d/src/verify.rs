//! Property suites over the geometry, with measured worst cases.
//!
//! Random sampling is driven by a ChaCha generator seeded from
//! `HOPF4D_SEED` (decimal or `0x` hex), default [`DEFAULT_SEED`].

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use hopf4d_core::analysis::{
    collinearity_deviation, fit_circle, fit_cylinder, linking_number, point_circle_distance,
    sampled_circle_distance,
};
use hopf4d_core::arrangements::{
    disk_tangency_graph, filament_tangency_graph, modulation_constellation, polyhedron_vertices,
    Backbone, PolyhedronKind, StereoCurve, DEFAULT_FILAMENT_SAMPLES,
};
use hopf4d_core::geometry::{
    fiber_circle, fiber_point, hopf_map, sample_fiber, spherical_point, BaseAngles, FiberParams,
};
use hopf4d_core::projection::{
    stereo_denominator, stereographic_closed_form, stereographic_point, translate_to_view,
    ViewFrame,
};
use hopf4d_core::surfaces::{
    mu_grid, nested_family_xy, nested_family_z, torus_kappa, torus_mu, ParamGrid,
};
use hopf4d_core::{Point3, Point4, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::build::{build_scene, BuildRequest, TorusMode};
use crate::obj::export_obj;
use crate::scene::{write_scene, Space};

/// `0x40BF`.
pub const DEFAULT_SEED: u64 = 16575;

pub const SEED_VAR: &str = "HOPF4D_SEED";

/// Seed from `HOPF4D_SEED`, or the default when unset or unparsable.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| parse_seed(&s))
        .unwrap_or(DEFAULT_SEED)
}

pub fn parse_seed(s: &str) -> Option<u64> {
    let s = s.trim();
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16).ok(),
        None => s.parse().ok(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Prop1,
    Prop2,
    Prop3,
    Stereo,
    Conformality,
    Linking,
    Torus,
    Nested,
    Modulation,
    Packing,
    Determinism,
}

/// Outcome of one criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Measured quantities, by name.
    pub metrics: Vec<(&'static str, f64)>,
    pub detail: String,
}

impl Check {
    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn check(
    name: &'static str,
    passed: bool,
    metrics: Vec<(&'static str, f64)>,
    detail: String,
) -> Check {
    Check {
        name,
        passed,
        metrics,
        detail,
    }
}

fn failure(name: &'static str, err: impl fmt::Display) -> Check {
    check(name, false, Vec::new(), format!("error: {err}"))
}

pub fn run(suite: Suite, seed: u64) -> Vec<Check> {
    use Suite::*;
    let suites = match suite {
        All => vec![
            Prop1,
            Prop2,
            Prop3,
            Stereo,
            Conformality,
            Linking,
            Torus,
            Nested,
            Modulation,
            Packing,
            Determinism,
        ],
        s => vec![s],
    };
    let mut out = Vec::new();
    for s in suites {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match s {
            Prop1 => out.push(unit_norm_grid()),
            Prop2 => out.push(fibers_map_to_base_point(&mut rng)),
            Prop3 => out.push(fibers_are_disjoint(&mut rng)),
            Stereo => out.push(stereo_equivalence(&mut rng)),
            Conformality => out.push(conformality(&mut rng)),
            Linking => out.push(linking(&mut rng)),
            Torus => out.push(torus_invariants()),
            Nested => out.push(nested_families()),
            Modulation => out.push(modulation()),
            Packing => out.push(packings()),
            Determinism => out.push(determinism()),
            All => unreachable!(),
        }
    }
    out
}

/// Uniform point on the base sphere.
fn random_base(rng: &mut impl Rng) -> BaseAngles {
    let phi = rng.random_range(0.0..TAU);
    let psi = (1.0 - 2.0 * rng.random::<f64>()).clamp(-1.0, 1.0).acos();
    BaseAngles::new(phi, psi).expect("angles in range")
}

pub fn unit_norm_grid() -> Check {
    let (n_phi, n_psi, n_beta) = (32, 17, 32);
    let mut worst = 0.0f64;
    for i in 0..n_phi {
        for j in 0..n_psi {
            for k in 0..n_beta {
                let f = FiberParams::from_angles(
                    TAU * i as f64 / n_phi as f64,
                    PI * j as f64 / (n_psi - 1) as f64,
                    TAU * k as f64 / n_beta as f64,
                )
                .expect("grid angles are valid");
                worst = worst.max((fiber_point(f).norm() - 1.0).abs());
            }
        }
    }
    check(
        "unit-norm",
        worst < 1e-12,
        vec![("max_norm_error", worst)],
        format!("32x17x32 grid, max | |p| - 1 | = {worst:.3e}"),
    )
}

pub fn fibers_map_to_base_point(rng: &mut impl Rng) -> Check {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let b = BaseAngles::new(rng.random_range(0.0..TAU), rng.random_range(0.0..=PI))
            .expect("in range");
        let q = spherical_point(b);
        let fiber = sample_fiber(b, 64).expect("64 samples");
        for p in fiber.vertices() {
            let image = match hopf_map(*p) {
                Ok(i) => i,
                Err(e) => return failure("fiber-maps-to-point", e),
            };
            worst = worst.max(image.distance(q));
        }
    }
    check(
        "fiber-maps-to-point",
        worst < 1e-12,
        vec![("max_deviation", worst)],
        format!("1000 fibers x 64 samples, max |h(p) - Q| = {worst:.3e}"),
    )
}

pub fn fibers_are_disjoint(rng: &mut impl Rng) -> Check {
    let mut worst = f64::INFINITY;
    let mut pairs = 0;
    while pairs < 1000 {
        let (a, b) = (random_base(rng), random_base(rng));
        let (qa, qb) = (spherical_point(a), spherical_point(b));
        if qa.cross(qb).norm().atan2(qa.dot(qb)) <= 1e-3 {
            continue;
        }
        pairs += 1;
        let fa = sample_fiber(a, 64).expect("64 samples");
        worst = worst.min(sampled_circle_distance(&fa, &fiber_circle(b)));
    }
    check(
        "fibers-disjoint",
        worst > 1e-4,
        vec![("min_distance", worst)],
        format!("1000 pairs separated by > 1e-3 rad, min fiber distance = {worst:.3e}"),
    )
}

pub fn stereo_equivalence(rng: &mut impl Rng) -> Check {
    let frame = ViewFrame::default();
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 10_000 {
        let (phi, psi, beta) = (
            rng.random_range(0.0..TAU),
            rng.random_range(0.0..=PI),
            rng.random_range(0.0..TAU),
        );
        if stereo_denominator(phi, psi, beta).abs() <= 0.05 {
            continue;
        }
        n += 1;
        let f = FiberParams::from_angles(phi, psi, beta).expect("in range");
        let generic = stereographic_point(translate_to_view(fiber_point(f), &frame), &frame);
        let closed = stereographic_closed_form(f);
        match (generic, closed) {
            (Ok(g), Ok(c)) => worst = worst.max(g.distance(c)),
            (Err(e), _) | (_, Err(e)) => return failure("stereo-closed-form", e),
        }
    }
    check(
        "stereo-closed-form",
        worst < 1e-10,
        vec![("max_deviation", worst)],
        format!("10^4 samples with |D| > 0.05, max deviation = {worst:.3e}"),
    )
}

pub fn conformality(rng: &mut impl Rng) -> Check {
    let frame = ViewFrame::default();
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 100 {
        let b = random_base(rng);
        if b.psi() < 0.1 {
            continue;
        }
        n += 1;
        let bb = match Backbone::new(b, 256, &frame) {
            Ok(bb) => bb,
            Err(e) => return failure("stereo-circles", e),
        };
        let StereoCurve::Circle(c) = &bb.stereo else {
            return failure(
                "stereo-circles",
                "fiber away from the pole projected to a line",
            );
        };
        match fit_circle(c.vertices()) {
            Ok(fit) => worst = worst.max(fit.max_dev),
            Err(e) => return failure("stereo-circles", e),
        }
    }
    let north =
        Backbone::new(BaseAngles::new(0.0, 0.0).expect("pole"), 256, &frame).expect("north fiber");
    let line_dev = match &north.stereo {
        StereoCurve::Line(l) => collinearity_deviation(l.vertices()),
        StereoCurve::Circle(_) => f64::INFINITY,
    };
    check(
        "stereo-circles",
        worst < 1e-9 && line_dev < 1e-9,
        vec![("max_circle_dev", worst), ("line_dev", line_dev)],
        format!("100 fibers: max circle deviation = {worst:.3e}; fiber through N: collinearity = {line_dev:.3e}"),
    )
}

pub fn linking(rng: &mut impl Rng) -> Check {
    let frame = ViewFrame::default();
    let mut signs = Vec::new();
    let mut worst_residual = 0.0f64;
    let mut n = 0;
    while n < 50 {
        let (a, b) = (random_base(rng), random_base(rng));
        if a.psi() < 0.1 || b.psi() < 0.1 {
            continue;
        }
        n += 1;
        let curves =
            [a, b].map(
                |base| match Backbone::new(base, 256, &frame).map(|bb| bb.stereo) {
                    Ok(StereoCurve::Circle(c)) => Some(c),
                    _ => None,
                },
            );
        let [Some(ca), Some(cb)] = curves else {
            return failure("fibers-link", "stereo image is not a closed curve");
        };
        match linking_number(&ca, &cb) {
            Ok(l) => {
                worst_residual = worst_residual.max(l.residual);
                signs.push(l.number);
            }
            Err(e) => return failure("fibers-link", e),
        }
    }
    let all_unit = signs.iter().all(|s| s.abs() == 1);
    let consistent = signs.windows(2).all(|w| w[0] == w[1]);
    check(
        "fibers-link",
        all_unit && consistent && worst_residual < 0.05,
        vec![
            ("max_residual", worst_residual),
            ("sign", signs.first().copied().unwrap_or(0) as f64),
            ("consistent", f64::from(u8::from(all_unit && consistent))),
        ],
        format!(
            "50 pairs: linking numbers {} (all {}), max residual = {worst_residual:.3e}",
            if all_unit { "unit" } else { "NOT unit" },
            signs.first().copied().unwrap_or(0)
        ),
    )
}

pub fn torus_invariants() -> Check {
    let frame = ViewFrame::default();
    let run = || -> hopf4d_core::Result<(f64, f64, f64, f64, f64)> {
        let k = torus_kappa(FRAC_PI_2, &ParamGrid::torus(96, 96)?, &frame)?;
        let xi = fit_cylinder(&k.xi.vertices, Point3::new(0.0, 0.0, 1.0))?;
        let om = fit_cylinder(&k.omega.vertices, Point3::new(1.0, 0.0, 0.0))?;
        let half = std::f64::consts::SQRT_2 / 2.0;
        let radius_err = (xi.radius - half).abs().max((om.radius - half).abs());
        let axis_err = (1.0 - xi.axis_dir.z.abs()).max(1.0 - om.axis_dir.x.abs());
        let n = Point4::new(0.0, 1.0, 0.0, 0.0);
        let mut mu_err = 0.0f64;
        for phi in [0.0, 0.5, 1.3, PI, 4.0] {
            let t = torus_mu(phi, &mu_grid(96, 49)?, &frame)?;
            let d = t
                .points4
                .iter()
                .map(|p| p.distance(n))
                .fold(f64::INFINITY, f64::min);
            mu_err = mu_err.max(d);
        }
        Ok((xi.radius, om.radius, radius_err, axis_err, mu_err))
    };
    match run() {
        Ok((rx, ro, radius_err, axis_err, mu_err)) => check(
            "torus-invariants",
            radius_err < 1e-9 && axis_err < 1e-9 && mu_err < 1e-12,
            vec![("radius_error", radius_err), ("axis_error", axis_err), ("mu_center_distance", mu_err)],
            format!(
                "kappa(pi/2) radii xi={rx:.12} omega={ro:.12} (axis error {axis_err:.1e}); mu tori reach [0,1,0,0] within {mu_err:.1e}"
            ),
        ),
        Err(e) => failure("torus-invariants", e),
    }
}

pub fn nested_families() -> Check {
    let frame = ViewFrame::default();
    let run = || -> hopf4d_core::Result<(usize, usize, bool, f64, f64)> {
        let xy = nested_family_xy(12, &ParamGrid::torus(48, 48)?, &frame)?;
        let tori: Vec<_> = xy.iter().filter_map(|m| m.torus()).collect();
        let circles = xy.len() - tori.len();
        let mut radii = Vec::new();
        for t in &tori {
            radii.push(fit_cylinder(&t.xi.vertices, Point3::new(0.0, 0.0, 1.0))?.radius);
        }
        let decreasing = radii.windows(2).all(|w| w[1] < w[0]);

        let z = nested_family_z(6, &mu_grid(48, 48)?, &frame)?;
        let zt: Vec<_> = z
            .iter()
            .map(|m| m.torus().expect("z family has only tori"))
            .collect();
        let poles = [
            fiber_circle(BaseAngles::new(0.0, 0.0)?),
            fiber_circle(BaseAngles::new(0.0, PI)?),
        ];
        let rows = zt[0].row_count();
        // shared rows lie on the pole fibers; other rows keep apart
        let mut shared = 0.0f64;
        let mut apart = f64::INFINITY;
        for t in &zt {
            for (j, pole) in [(0, &poles[0]), (rows - 1, &poles[1])] {
                for p in t.row(j) {
                    shared = shared.max(point_circle_distance(*p, pole));
                }
            }
        }
        for a in 0..zt.len() {
            for b in a + 1..zt.len() {
                for j in 1..rows - 1 {
                    let c = zt[b].coords[j * zt[b].grid.n_u];
                    let circle = fiber_circle(BaseAngles::new(c.phi, c.psi)?);
                    apart = apart.min(sampled_circle_distance(&zt[a].row_polyline(j), &circle));
                }
            }
        }
        Ok((tori.len(), circles, decreasing, shared, apart))
    };
    match run() {
        Ok((tori, circles, decreasing, shared, apart)) => check(
            "nested-families",
            tori == 11 && circles == 2 && decreasing && shared < 1e-10 && apart > 1e-6,
            vec![
                ("xy_tori", tori as f64),
                ("xy_circles", circles as f64),
                ("xy_decreasing", f64::from(u8::from(decreasing))),
                ("z_shared_distance", shared),
                ("z_other_min_distance", apart),
            ],
            format!(
                "xy: {tori} tori + {circles} circles, radii strictly decreasing: {decreasing}; z: shared fibers within {shared:.1e}, other fibers >= {apart:.3e} apart"
            ),
        ),
        Err(e) => failure("nested-families", e),
    }
}

pub fn modulation() -> Check {
    let vs = polyhedron_vertices(PolyhedronKind::TetrakisHexahedron);
    let c = match modulation_constellation(&vs, 8, 0.0) {
        Ok(c) => c,
        Err(e) => return failure("modulation", e),
    };
    let norm_err = c
        .points4
        .iter()
        .map(|p| (p.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    let step = 2.0 * (PI / 8.0).sin();
    let mut spacing_err = 0.0f64;
    for i in 0..vs.len() {
        let f = c.fiber(i);
        for k in 0..8 {
            spacing_err = spacing_err.max((f[k].distance(f[(k + 1) % 8]) - step).abs());
        }
    }
    let min_d = c.min_pairwise_distance().unwrap_or(0.0);
    let count = c.points4.len();
    check(
        "modulation",
        count == 112 && norm_err < 1e-12 && spacing_err < 1e-12 && min_d > 0.0,
        vec![
            ("count", count as f64),
            ("norm_error", norm_err),
            ("spacing_error", spacing_err),
            ("min_distance", min_d),
        ],
        format!("tetrakis m=8: {count} points, norm error {norm_err:.1e}, spacing error {spacing_err:.1e}, min distance {min_d:.4}"),
    )
}

pub fn packings() -> Check {
    let mut mismatched = Vec::new();
    let mut summary = Vec::new();
    for kind in PolyhedronKind::ALL
        .into_iter()
        .filter(|k| k.is_platonic_or_triangle())
    {
        let vs = polyhedron_vertices(kind);
        let graphs = disk_tangency_graph(&vs, None).and_then(|d| {
            filament_tangency_graph(&vs, None, DEFAULT_FILAMENT_SAMPLES).map(|f| (d, f))
        });
        match graphs {
            Ok((d, f)) => {
                if d.edges != f.edges {
                    mismatched.push(kind.name());
                }
                summary.push(format!("{}={}", kind.name(), d.edges.len()));
            }
            Err(e) => return failure("packings", e),
        }
    }
    check(
        "packings",
        mismatched.is_empty(),
        vec![("mismatched", mismatched.len() as f64)],
        if mismatched.is_empty() {
            format!("filament graphs equal disk graphs ({})", summary.join(", "))
        } else {
            format!("graphs differ for {}", mismatched.join(", "))
        },
    )
}

pub fn determinism() -> Check {
    let nested = BuildRequest::Nested {
        family: crate::build::Family::Xy,
        count: Some(12),
        grid: None,
    };
    let torus = BuildRequest::Torus {
        mode: TorusMode::Kappa,
        psi: Some(FRAC_PI_2),
        phi: None,
        grid: Some([96, 96]),
    };
    let run = || -> Result<(bool, usize, usize), String> {
        let a = write_scene(&build_scene(&nested).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let b = write_scene(&build_scene(&nested).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let doc = build_scene(&torus).map_err(|e| e.to_string())?;
        let obj = export_obj(&doc, Space::Xi).map_err(|e| e.to_string())?;
        let v = obj.lines().filter(|l| l.starts_with("v ")).count();
        let f = obj.lines().filter(|l| l.starts_with("f ")).count();
        Ok((a == b, v, f))
    };
    match run() {
        Ok((same, v, f)) => check(
            "determinism",
            same && v == 9216 && f == 9216,
            vec![
                ("identical", f64::from(u8::from(same))),
                ("obj_vertices", v as f64),
                ("obj_faces", f as f64),
            ],
            format!(
                "nested xy scene bytes identical: {same}; 96x96 torus OBJ: {v} vertices, {f} faces"
            ),
        ),
        Err(e) => failure("determinism", e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_parsing() {
        assert_eq!(parse_seed("0x40BF"), Some(DEFAULT_SEED));
        assert_eq!(parse_seed("16575"), Some(DEFAULT_SEED));
        assert_eq!(parse_seed("0xH0PF"), None);
    }

    #[test]
    fn cheap_suites_pass() {
        for s in [Suite::Prop1, Suite::Modulation] {
            for c in run(s, DEFAULT_SEED) {
                assert!(c.passed, "{c}");
            }
        }
    }
}
