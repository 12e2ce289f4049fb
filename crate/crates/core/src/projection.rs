//! Conjugated images and stereographic projection.
//!
//! Drawing happens in a translated frame: the 3-sphere is moved to center
//! `[0,1,0,1]` so that its Ξ-image `(x, y, z)` and Ω-image `(x, −w, z)` do not
//! overlap in the shared modeling space. The stereographic projection is taken
//! from `N = [0,2,0,1]` onto the tangent 3-space `y = 0`, which touches the
//! sphere at `M = [0,0,0,1]`; its images are reported in `(x, z, w)`.

use crate::geometry::{BaseAngles, FiberParams};
use crate::math::{cos, sin, sqrt};
use crate::{Error, Point3, Point4, Result, Vector, INPUT_TOL};

/// Where the 3-sphere sits for drawing and how it is projected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViewFrame {
    pub sphere_center: Point4,
    /// `N`, the center of the stereographic projection.
    pub projection_center: Point4,
    /// `M`, antipodal to `N`; the tangent 3-space is `y = M.y`.
    pub tangent_point: Point4,
}

impl ViewFrame {
    /// Frame with the unit 3-sphere at `center`, `N = center + e_y` and
    /// `M = center − e_y`.
    pub fn centered_at(center: Point4) -> Self {
        let e_y = Point4::new(0.0, 1.0, 0.0, 0.0);
        ViewFrame {
            sphere_center: center,
            projection_center: center + e_y,
            tangent_point: center - e_y,
        }
    }

    /// Height of the tangent 3-space `y = const`.
    pub fn tangent_level(&self) -> f64 {
        self.tangent_point.y
    }

    /// `N` and `M` on the sphere and antipodal.
    pub fn is_valid(&self) -> bool {
        let c = self.sphere_center;
        let n = self.projection_center - c;
        let m = self.tangent_point - c;
        (n.norm() - 1.0).abs() <= 1e-12
            && (m.norm() - 1.0).abs() <= 1e-12
            && (n + m).norm() <= 1e-12
            && n.x == 0.0
            && n.z == 0.0
            && n.w == 0.0
    }
}

impl Default for ViewFrame {
    fn default() -> Self {
        ViewFrame::centered_at(Point4::new(0.0, 1.0, 0.0, 1.0))
    }
}

/// Section of the 3-sphere by a 3-space `w = w_level` (parallel to Ξ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatitudeSphere {
    /// Center of the section's Ξ-image.
    pub center3: Point3,
    pub radius: f64,
    pub w_level: f64,
}

/// A 2-sphere in the stereographic image space `(x, z, w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StereoSphere {
    pub center: Point3,
    pub radius: f64,
}

pub fn translate_to_view(p: Point4, frame: &ViewFrame) -> Point4 {
    p + frame.sphere_center
}

/// Base-sphere point in the Ξ modeling frame (center `[0,1,0]`).
pub fn base_to_view(q: Point3, frame: &ViewFrame) -> Point3 {
    q + xi_image(frame.sphere_center)
}

pub fn view_to_base(q: Point3, frame: &ViewFrame) -> Point3 {
    q - xi_image(frame.sphere_center)
}

/// Ξ-image: `(x, y, z)`.
pub fn xi_image(p: Point4) -> Point3 {
    Point3::new(p.x, p.y, p.z)
}

/// Ω-image in modeling coordinates: `(x, −w, z)`.
pub fn omega_image(p: Point4) -> Point3 {
    Point3::new(p.x, -p.w, p.z)
}

fn check_on_view_sphere(p: Point4, frame: &ViewFrame) -> Result<()> {
    let norm = (p - frame.sphere_center).norm();
    if (norm - 1.0).abs() > INPUT_TOL || !norm.is_finite() {
        return Err(Error::NotOnSphere { norm });
    }
    Ok(())
}

/// Intersection of the ray `N + t (p − N)` with the tangent 3-space, as
/// `(x, z, w)`. No membership checks.
fn project_from_center(p: Point4, frame: &ViewFrame) -> Option<Point3> {
    let n = frame.projection_center;
    let dy = p.y - n.y;
    if dy == 0.0 {
        return None;
    }
    let t = (frame.tangent_level() - n.y) / dy;
    let q = n + (p - n) * t;
    Some(Point3::new(q.x, q.z, q.w))
}

/// Stereographic image of a point of the translated 3-sphere, in `(x, z, w)`.
pub fn stereographic_point(p: Point4, frame: &ViewFrame) -> Result<Point3> {
    check_on_view_sphere(p, frame)?;
    if p.distance(frame.projection_center) < INPUT_TOL {
        return Err(Error::AtProjectionCenter);
    }
    project_from_center(p, frame).ok_or(Error::AtProjectionCenter)
}

/// Denominator `1 − cos(ψ/2) sin(φ+β)` of the closed-form projection.
pub fn stereo_denominator(phi: f64, psi: f64, beta: f64) -> f64 {
    1.0 - cos(psi / 2.0) * sin(phi + beta)
}

/// Closed form of the stereographic image for the default frame, without
/// validation; returns the image and its denominator.
pub(crate) fn stereo_closed_form_raw(phi: f64, psi: f64, beta: f64) -> (Point3, f64) {
    let (ca, sa) = (cos(psi / 2.0), sin(psi / 2.0));
    let d = 1.0 - ca * sin(phi + beta);
    let s = 2.0 / d;
    (
        Point3::new(
            s * ca * cos(phi + beta),
            s * sa * cos(beta),
            s * sa * sin(beta) + 1.0,
        ),
        d,
    )
}

/// Stereographic image of the point with Hopf coordinates `f`, for the
/// default frame, computed from the closed-form parameterization.
pub fn stereographic_closed_form(f: FiberParams) -> Result<Point3> {
    let (image, d) = stereo_closed_form_raw(f.base.phi(), f.base.psi(), f.beta());
    if d.abs() <= INPUT_TOL {
        return Err(Error::SingularDenominator { denominator: d });
    }
    Ok(image)
}

/// The latitude sphere through `p` (a point of the translated 3-sphere).
pub fn latitude_sphere_of(p: Point4, frame: &ViewFrame) -> Result<LatitudeSphere> {
    check_on_view_sphere(p, frame)?;
    let dw = p.w - frame.sphere_center.w;
    let radius = sqrt((1.0 - dw * dw).max(0.0));
    Ok(LatitudeSphere {
        center3: xi_image(frame.sphere_center),
        radius,
        w_level: p.w,
    })
}

/// Stereographic image of a latitude sphere.
///
/// The frame is symmetric under rotations of `(x, z)` about the sphere
/// center, so the image is a sphere centered on the image of that axis. The
/// two points of the section on the axis map to the ends of a diameter.
pub fn stereographic_sphere_image(s: &LatitudeSphere, frame: &ViewFrame) -> Result<StereoSphere> {
    let c = frame.sphere_center;
    let n = frame.projection_center;
    let dw = s.w_level - c.w;
    let on_axis = (s.center3.x - n.x).abs() <= INPUT_TOL && (s.center3.z - n.z).abs() <= INPUT_TOL;
    let consistent = (s.radius * s.radius + dw * dw - 1.0).abs() <= INPUT_TOL
        && s.center3.distance(xi_image(c)) <= INPUT_TOL;
    if !on_axis || !consistent || s.radius < 0.0 {
        return Err(Error::NotALatitudeSphere);
    }
    let top = Point4::new(s.center3.x, s.center3.y + s.radius, s.center3.z, s.w_level);
    let bottom = Point4::new(s.center3.x, s.center3.y - s.radius, s.center3.z, s.w_level);
    if top.distance(n) < INPUT_TOL {
        return Err(Error::PassesThroughCenter);
    }
    let a = project_from_center(top, frame).ok_or(Error::PassesThroughCenter)?;
    let b = project_from_center(bottom, frame).ok_or(Error::PassesThroughCenter)?;
    Ok(StereoSphere {
        center: (a + b) * 0.5,
        radius: a.distance(b) / 2.0,
    })
}

// The base sphere B² sits at center [0,1,0] of the Ξ frame and touches the
// plane y = 0 at the origin; the projection pole is the opposite point [0,2,0].
const PLANE_POLE_HEIGHT: f64 = 2.0;

/// Lifts a point of the `(x, z)` plane onto the base sphere (Ξ frame) by
/// inverse stereographic projection from `[0,2,0]`.
pub fn inverse_stereo_plane_to_base(x: f64, z: f64) -> Point3 {
    let h = PLANE_POLE_HEIGHT;
    // pole + t (P − pole) hits the sphere again at t = 2h / (x² + z² + h²)
    let t = 2.0 * h / (x * x + z * z + h * h);
    Point3::new(t * x, h - h * t, t * z)
}

/// Forward projection of a base-sphere point (Ξ frame) to the `(x, z)` plane.
pub fn stereo_base_to_plane(q: Point3) -> Result<(f64, f64)> {
    let h = PLANE_POLE_HEIGHT;
    let d = h - q.y;
    if d.abs() <= INPUT_TOL {
        return Err(Error::AtProjectionCenter);
    }
    let t = h / d;
    Ok((t * q.x, t * q.z))
}

/// Convenience: base angles of a plane point lifted onto the base sphere.
pub fn plane_point_base_angles(x: f64, z: f64, frame: &ViewFrame) -> Result<BaseAngles> {
    let q = view_to_base(inverse_stereo_plane_to_base(x, z), frame);
    let unit = q.normalized().ok_or(Error::NotOnSphere { norm: 0.0 })?;
    Ok(crate::geometry::angles_from_base_point(unit)?.angles)
}
