use core::f64::consts::{PI, TAU};

use hopf4d_core::analysis::point_circle_distance;
use hopf4d_core::arrangements::{
    fiber_distance_for_angle, modulation_constellation, polyhedron_vertices, PolyhedronKind,
};
use hopf4d_core::geometry::{
    angles_from_base_point, fiber_circle, fiber_point, hopf_map, sample_fiber, spherical_point,
    BaseAngles, FiberParams,
};
use hopf4d_core::projection::{
    inverse_stereo_plane_to_base, omega_image, stereo_base_to_plane, stereo_denominator,
    stereographic_closed_form, stereographic_point, translate_to_view, xi_image, ViewFrame,
};
use hopf4d_core::surfaces::{mu_grid, torus_kappa, torus_mu, ParamGrid};
use hopf4d_core::Vector;
use proptest::prelude::*;

fn angles() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.0..TAU, 0.0..=PI, 0.0..TAU)
}

proptest! {
    #[test]
    fn fiber_points_are_unit((phi, psi, beta) in angles()) {
        let p = fiber_point(FiberParams::from_angles(phi, psi, beta).unwrap());
        prop_assert!((p.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hopf_map_recovers_the_base_point((phi, psi, beta) in angles()) {
        let b = BaseAngles::new(phi, psi).unwrap();
        let p = fiber_point(FiberParams::new(b, beta).unwrap());
        prop_assert!(hopf_map(p).unwrap().distance(spherical_point(b)) < 1e-12);
    }

    #[test]
    fn base_angles_round_trip(phi in 0.0..TAU, psi in 0.01..PI - 0.01) {
        let b = BaseAngles::new(phi, psi).unwrap();
        let r = angles_from_base_point(spherical_point(b)).unwrap();
        prop_assert!(!r.pole_degenerate);
        prop_assert!(spherical_point(r.angles).distance(spherical_point(b)) < 1e-12);
    }

    // Ξ and Ω drop a different coordinate of the same 4D point
    #[test]
    fn xi_and_omega_share_x_and_z((phi, psi, beta) in angles()) {
        let p = fiber_point(FiberParams::from_angles(phi, psi, beta).unwrap());
        let (a, b) = (xi_image(p), omega_image(p));
        prop_assert_eq!((a.x, a.z), (b.x, b.z));
        prop_assert_eq!(b.y, -p.w);
    }

    #[test]
    fn closed_form_matches_projection((phi, psi, beta) in angles()) {
        prop_assume!(stereo_denominator(phi, psi, beta).abs() > 0.05);
        let frame = ViewFrame::default();
        let f = FiberParams::from_angles(phi, psi, beta).unwrap();
        let generic = stereographic_point(translate_to_view(fiber_point(f), &frame), &frame).unwrap();
        prop_assert!(generic.distance(stereographic_closed_form(f).unwrap()) < 1e-10);
    }

    #[test]
    fn plane_lift_round_trips(x in -50.0..50.0f64, z in -50.0..50.0f64) {
        let q = inverse_stereo_plane_to_base(x, z);
        let (x2, z2) = stereo_base_to_plane(q).unwrap();
        prop_assert!((x - x2).abs() < 1e-9 && (z - z2).abs() < 1e-9);
    }

    // Clifford-parallel: every point of one fiber is equally far from the other
    #[test]
    fn fiber_distance_is_chordal((a, b) in ((0.0..TAU, 0.0..=PI), (0.0..TAU, 0.0..=PI))) {
        let (fa, fb) = (BaseAngles::new(a.0, a.1).unwrap(), BaseAngles::new(b.0, b.1).unwrap());
        let (qa, qb) = (spherical_point(fa), spherical_point(fb));
        let theta = qa.cross(qb).norm().atan2(qa.dot(qb));
        let expected = fiber_distance_for_angle(theta);
        let circle = fiber_circle(fb);
        for p in sample_fiber(fa, 16).unwrap().vertices() {
            prop_assert!((point_circle_distance(*p, &circle) - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn torus_grids_have_full_quad_topology(n_u in 3usize..40, n_v in 3usize..40, psi in 0.05..PI - 0.05) {
        let grid = ParamGrid::torus(n_u, n_v).unwrap();
        let t = torus_kappa(psi, &grid, &ViewFrame::default()).unwrap();
        prop_assert_eq!(t.xi.vertices.len(), n_u * n_v);
        prop_assert_eq!(t.xi.faces.len(), n_u * n_v);
        prop_assert!(t.xi.indices_in_range());
        prop_assert_eq!(t.xi.boundary_edge_count(), 0);
    }

    #[test]
    fn mu_tori_lie_on_the_sphere(phi in 0.0..TAU) {
        let t = torus_mu(phi, &mu_grid(12, 9).unwrap(), &ViewFrame::default()).unwrap();
        for p in &t.points4 {
            prop_assert!((p.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constellation_size_is_vertices_times_phases(m in 1usize..24, offset in 0.0..TAU) {
        let vs = polyhedron_vertices(PolyhedronKind::Octahedron);
        let c = modulation_constellation(&vs, m, offset).unwrap();
        prop_assert_eq!(c.points4.len(), 6 * m);
    }
}
