//! The Hopf map, spherical and Hopf coordinates, and fiber synthesis.
//!
//! Everything here lives on the unit 3-sphere centered at the origin. The
//! translated frame used for drawing is applied by [`crate::projection`].

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::math::{atan2, cos, hypot, sin, wrap_tau};
use crate::{
    ComplexPair, Error, Point3, Point4, Polyline4, Result, Vector, IDENTITY_TOL, INPUT_TOL,
};

/// Spherical coordinates of a point on the base 2-sphere.
///
/// `phi` is the azimuth in `[0, 2π)` and `psi` the polar angle in `[0, π]`
/// measured from the north pole `(0, 0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseAngles {
    phi: f64,
    psi: f64,
}

impl BaseAngles {
    /// Reduces `phi` mod 2π; rejects `psi` outside `[0, π]` or non-finite input.
    pub fn new(phi: f64, psi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::BadAngle {
                name: "phi",
                value: phi,
            });
        }
        if !(0.0..=PI).contains(&psi) {
            return Err(Error::BadAngle {
                name: "psi",
                value: psi,
            });
        }
        Ok(BaseAngles {
            phi: wrap_tau(phi),
            psi,
        })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    /// Half of the polar angle; the moduli of `z1`, `z2` are its cosine and sine.
    pub fn gamma(&self) -> f64 {
        self.psi / 2.0
    }

    /// Modulus of `z1` for every point of the fiber.
    pub fn r_a(&self) -> f64 {
        cos(self.gamma())
    }

    /// Modulus of `z2` for every point of the fiber.
    pub fn r_b(&self) -> f64 {
        sin(self.gamma())
    }

    pub fn is_pole(&self) -> bool {
        self.psi == 0.0 || self.psi == PI
    }
}

/// Hopf coordinates `(φ, ψ, β)` of a point on the 3-sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberParams {
    pub base: BaseAngles,
    beta: f64,
}

impl FiberParams {
    pub fn new(base: BaseAngles, beta: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::BadAngle {
                name: "beta",
                value: beta,
            });
        }
        Ok(FiberParams {
            base,
            beta: wrap_tau(beta),
        })
    }

    /// Shorthand for `FiberParams::new(BaseAngles::new(phi, psi)?, beta)`.
    pub fn from_angles(phi: f64, psi: f64, beta: f64) -> Result<Self> {
        Self::new(BaseAngles::new(phi, psi)?, beta)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Argument of `z1`, `α = φ + β` reduced mod 2π.
    pub fn alpha(&self) -> f64 {
        wrap_tau(self.base.phi + self.beta)
    }
}

/// A circle in 4-space: `center + radius · (cos t · u + sin t · v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle4 {
    pub center: Point4,
    pub u: Point4,
    pub v: Point4,
    pub radius: f64,
}

impl Circle4 {
    pub fn point_at(&self, t: f64) -> Point4 {
        self.center + (self.u * cos(t) + self.v * sin(t)) * self.radius
    }

    /// Checks unit spanning vectors, their orthogonality and a positive radius.
    pub fn is_valid(&self) -> bool {
        (self.u.norm() - 1.0).abs() <= IDENTITY_TOL
            && (self.v.norm() - 1.0).abs() <= IDENTITY_TOL
            && self.u.dot(self.v).abs() <= IDENTITY_TOL
            && self.radius > 0.0
    }
}

/// Base angles recovered from a point of the base sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveredAngles {
    pub angles: BaseAngles,
    /// Set at the poles, where `phi` is indeterminate and reported as 0.
    pub pole_degenerate: bool,
}

fn check_unit(norm: f64) -> Result<()> {
    if (norm - 1.0).abs() > INPUT_TOL || !norm.is_finite() {
        Err(Error::NotOnSphere { norm })
    } else {
        Ok(())
    }
}

/// The Hopf map `(z1, z2) ↦ (2 z1 conj(z2), |z1|² − |z2|²)`.
pub fn hopf_map(p: Point4) -> Result<Point3> {
    check_unit(p.norm())?;
    let c = ComplexPair::from(p);
    let (re, im) = c.z1_conj_z2();
    Ok(Point3::new(
        2.0 * re,
        2.0 * im,
        c.z1_norm_sqr() - c.z2_norm_sqr(),
    ))
}

pub fn spherical_point(b: BaseAngles) -> Point3 {
    let s = sin(b.psi);
    Point3::new(s * cos(b.phi), s * sin(b.phi), cos(b.psi))
}

/// Inverse of [`spherical_point`]. At the poles `phi` is set to 0 and the
/// result is flagged.
pub fn angles_from_base_point(q: Point3) -> Result<RecoveredAngles> {
    check_unit(q.norm())?;
    let rho = hypot(q.x, q.y);
    let psi = atan2(rho, q.z);
    if rho <= IDENTITY_TOL {
        let psi = if q.z > 0.0 { 0.0 } else { PI };
        return Ok(RecoveredAngles {
            angles: BaseAngles { phi: 0.0, psi },
            pole_degenerate: true,
        });
    }
    Ok(RecoveredAngles {
        angles: BaseAngles {
            phi: wrap_tau(atan2(q.y, q.x)),
            psi: psi.clamp(0.0, PI),
        },
        pole_degenerate: false,
    })
}

/// Point with Hopf coordinates `f`:
/// `(cos(ψ/2) cos(φ+β), cos(ψ/2) sin(φ+β), sin(ψ/2) cos β, sin(ψ/2) sin β)`.
pub fn fiber_point(f: FiberParams) -> Point4 {
    fiber_point_raw(f.base.phi, f.base.psi, f.beta)
}

/// [`fiber_point`] without range checks, for parameter grids.
pub(crate) fn fiber_point_raw(phi: f64, psi: f64, beta: f64) -> Point4 {
    let (ca, sa) = (cos(psi / 2.0), sin(psi / 2.0));
    let alpha = phi + beta;
    Point4::new(
        ca * cos(alpha),
        ca * sin(alpha),
        sa * cos(beta),
        sa * sin(beta),
    )
}

/// The great circle of all points over `b`, parameterized by `β`.
pub fn fiber_circle(b: BaseAngles) -> Circle4 {
    let at = |beta| fiber_point_raw(b.phi, b.psi, beta);
    Circle4 {
        center: Point4::ORIGIN,
        u: at(0.0),
        v: at(FRAC_PI_2),
        radius: 1.0,
    }
}

/// `n` points of the fiber at `β = 2πk/n`.
pub fn sample_fiber(b: BaseAngles, n: usize) -> Result<Polyline4> {
    if n < 3 {
        return Err(Error::BadSampleCount { min: 3, got: n });
    }
    let vertices: Vec<Point4> = (0..n)
        .map(|k| fiber_point_raw(b.phi, b.psi, TAU * k as f64 / n as f64))
        .collect();
    Polyline4::closed(vertices)
}

/// The point opposite `f` on its own fiber (`β + π`).
pub fn antipodal_point(f: FiberParams) -> Point4 {
    -fiber_point(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn close4(a: Point4, b: Point4, tol: f64) -> bool {
        a.distance(b) <= tol
    }

    fn close3(a: Point3, b: Point3, tol: f64) -> bool {
        a.distance(b) <= tol
    }

    fn angles(phi: f64, psi: f64) -> BaseAngles {
        BaseAngles::new(phi, psi).unwrap()
    }

    #[test]
    fn hopf_map_examples() {
        let h = |p| hopf_map(p).unwrap();
        assert_eq!(
            h(Point4::new(1.0, 0.0, 0.0, 0.0)),
            Point3::new(0.0, 0.0, 1.0)
        );
        assert_eq!(
            h(Point4::new(0.0, 0.0, 1.0, 0.0)),
            Point3::new(0.0, 0.0, -1.0)
        );
        let q = h(Point4::new(FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0));
        assert!(close3(q, Point3::new(1.0, 0.0, 0.0), 1e-15));
    }

    #[test]
    fn hopf_map_rejects_unnormalized_points() {
        let err = hopf_map(Point4::new(1.0, 1.0, 0.0, 0.0)).unwrap_err();
        assert_eq!(err.name(), "NotOnSphere");
        // within validation tolerance is accepted
        assert!(hopf_map(Point4::new(1.0 + 5e-10, 0.0, 0.0, 0.0)).is_ok());
    }

    #[test]
    fn spherical_point_examples() {
        assert!(close3(
            spherical_point(angles(0.0, 0.0)),
            Point3::new(0.0, 0.0, 1.0),
            1e-15
        ));
        assert!(close3(
            spherical_point(angles(0.0, PI)),
            Point3::new(0.0, 0.0, -1.0),
            1e-15
        ));
        assert!(close3(
            spherical_point(angles(0.0, FRAC_PI_2)),
            Point3::new(1.0, 0.0, 0.0),
            1e-15
        ));
    }

    #[test]
    fn angles_from_base_point_examples() {
        let north = angles_from_base_point(Point3::new(0.0, 0.0, 1.0)).unwrap();
        assert!(north.pole_degenerate);
        assert_eq!((north.angles.phi(), north.angles.psi()), (0.0, 0.0));

        let south = angles_from_base_point(Point3::new(0.0, 0.0, -1.0)).unwrap();
        assert!(south.pole_degenerate);
        assert_eq!(south.angles.psi(), PI);

        let x = angles_from_base_point(Point3::new(1.0, 0.0, 0.0)).unwrap();
        assert!(!x.pole_degenerate);
        assert!(x.angles.phi().abs() < 1e-15 && (x.angles.psi() - FRAC_PI_2).abs() < 1e-15);

        let y = angles_from_base_point(Point3::new(0.0, 1.0, 0.0)).unwrap();
        assert!((y.angles.phi() - FRAC_PI_2).abs() < 1e-15);
        assert!((y.angles.psi() - FRAC_PI_2).abs() < 1e-15);

        assert!(angles_from_base_point(Point3::new(0.0, 0.0, 2.0)).is_err());
    }

    #[test]
    fn fiber_point_examples() {
        let fp = |phi, psi, beta| fiber_point(FiberParams::from_angles(phi, psi, beta).unwrap());
        assert!(close4(
            fp(0.0, 0.0, 0.0),
            Point4::new(1.0, 0.0, 0.0, 0.0),
            1e-15
        ));
        assert!(close4(
            fp(0.0, PI, 0.0),
            Point4::new(0.0, 0.0, 1.0, 0.0),
            1e-15
        ));
        assert!(close4(
            fp(FRAC_PI_2, FRAC_PI_2, 0.0),
            Point4::new(0.0, SQRT_2 / 2.0, SQRT_2 / 2.0, 0.0),
            1e-15
        ));
    }

    #[test]
    fn fiber_circle_examples() {
        let north = fiber_circle(angles(0.0, 0.0));
        assert_eq!(north.center, Point4::ORIGIN);
        assert!(close4(north.u, Point4::new(1.0, 0.0, 0.0, 0.0), 1e-15));
        assert!(close4(north.v, Point4::new(0.0, 1.0, 0.0, 0.0), 1e-15));
        assert_eq!(north.radius, 1.0);

        let south = fiber_circle(angles(0.0, PI));
        assert!(close4(south.u, Point4::new(0.0, 0.0, 1.0, 0.0), 1e-15));
        assert!(close4(south.v, Point4::new(0.0, 0.0, 0.0, 1.0), 1e-15));

        for i in 0..16 {
            let b = angles(0.4 * i as f64, PI * i as f64 / 15.0);
            let c = fiber_circle(b);
            assert!(c.is_valid());
            for k in 0..64 {
                let beta = TAU * k as f64 / 64.0;
                let on = fiber_point(FiberParams::new(b, beta).unwrap());
                assert!(close4(on, c.point_at(beta), 1e-12));
            }
        }
    }

    #[test]
    fn sample_fiber_examples() {
        let poly = sample_fiber(angles(0.0, 0.0), 4).unwrap();
        let expected = [
            Point4::new(1.0, 0.0, 0.0, 0.0),
            Point4::new(0.0, 1.0, 0.0, 0.0),
            Point4::new(-1.0, 0.0, 0.0, 0.0),
            Point4::new(0.0, -1.0, 0.0, 0.0),
        ];
        assert!(poly.is_closed());
        for (got, want) in poly.vertices().iter().zip(expected) {
            assert!(close4(*got, want, 1e-15));
        }
        assert_eq!(sample_fiber(angles(1.0, 1.0), 3).unwrap().len(), 3);
        assert_eq!(
            sample_fiber(angles(1.0, 1.0), 2).unwrap_err(),
            Error::BadSampleCount { min: 3, got: 2 }
        );
    }

    #[test]
    fn antipodal_point_examples() {
        let f = FiberParams::from_angles(0.0, 0.0, 0.0).unwrap();
        assert!(close4(
            antipodal_point(f),
            Point4::new(-1.0, 0.0, 0.0, 0.0),
            1e-15
        ));
        let f = FiberParams::from_angles(0.0, PI, 0.0).unwrap();
        assert!(close4(
            antipodal_point(f),
            Point4::new(0.0, 0.0, -1.0, 0.0),
            1e-15
        ));

        let f = FiberParams::from_angles(1.3, 2.1, 0.7).unwrap();
        let shifted = FiberParams::new(f.base, f.beta() + PI).unwrap();
        assert!(close4(antipodal_point(f), fiber_point(shifted), 1e-12));
        assert!(close4(-antipodal_point(f), fiber_point(f), 0.0));
    }

    #[test]
    fn alpha_is_phi_plus_beta() {
        let f = FiberParams::from_angles(5.0, 1.0, 2.0).unwrap();
        assert!((f.alpha() - (7.0 - TAU)).abs() < 1e-15);
        assert!(BaseAngles::new(0.0, -0.1).is_err());
        assert!(BaseAngles::new(f64::NAN, 0.1).is_err());
    }
}
