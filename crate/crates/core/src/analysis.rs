//! Numerical oracles: circle and cylinder fits, collinearity, segment
//! distances between polylines and the Gauss linking number.

use core::f64::consts::PI;

use nalgebra::{Matrix3, SymmetricEigen, Vector3};

use crate::geometry::Circle4;
use crate::math::{asin, round, sqrt};
use crate::{Error, Point3, Point4, Polyline, Polyline3, Polyline4, Result, Vector};

/// Best-fit circle of a 3D point set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleFit {
    pub center: Point3,
    pub radius: f64,
    /// Unit normal of the best-fit plane.
    pub normal: Point3,
    pub rms: f64,
    pub max_dev: f64,
}

/// Best-fit circular cylinder with a prescribed axis direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderFit {
    pub axis_point: Point3,
    pub axis_dir: Point3,
    pub radius: f64,
    pub max_dev: f64,
}

/// Gauss linking number of two closed polylines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linking {
    pub number: i64,
    /// Raw value of the double sum before rounding.
    pub sum: f64,
    /// `sum − number`.
    pub residual: f64,
}

/// Maximum linking-sum residual accepted before rounding.
pub const LINKING_RESIDUAL_GATE: f64 = 0.05;

/// Minimum distance between curves for their linking number to be computed.
pub const LINKING_MIN_DISTANCE: f64 = 1e-6;

fn to_na(p: Point3) -> Vector3<f64> {
    Vector3::new(p.x, p.y, p.z)
}

fn from_na(v: &Vector3<f64>) -> Point3 {
    Point3::new(v.x, v.y, v.z)
}

/// Centroid, RMS spread and eigen-decomposition of the normalized scatter
/// matrix; eigenpairs are returned in ascending order.
struct Principal {
    centroid: Point3,
    scale: f64,
    values: [f64; 3],
    vectors: [Point3; 3],
}

fn principal_axes(points: &[Point3]) -> Option<Principal> {
    let n = points.len() as f64;
    let centroid = points.iter().fold(Point3::ORIGIN, |acc, p| acc + *p) * (1.0 / n);
    let spread = points
        .iter()
        .map(|p| (*p - centroid).norm_squared())
        .sum::<f64>()
        / n;
    let scale = sqrt(spread);
    if !scale.is_finite() || scale <= 0.0 {
        return None;
    }
    let mut m = Matrix3::zeros();
    for p in points {
        let d = to_na((*p - centroid) * (1.0 / scale));
        m += d * d.transpose();
    }
    m /= n;
    let eig = SymmetricEigen::new(m);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.map(|i| eig.eigenvalues[i]);
    let vectors = order.map(|i| from_na(&eig.eigenvectors.column(i).into_owned()));
    Some(Principal {
        centroid,
        scale,
        values,
        vectors,
    })
}

/// Circle through 2D points: algebraic fit refined by one Gauss-Newton step
/// on the geometric residuals. Returns `(a, b, r)`.
fn fit_circle_2d(uv: impl Iterator<Item = (f64, f64)> + Clone) -> Option<(f64, f64, f64)> {
    // minimize Σ (u² + v² + D u + E v + F)²
    let mut ata = Matrix3::<f64>::zeros();
    let mut atb = Vector3::<f64>::zeros();
    for (u, v) in uv.clone() {
        let row = Vector3::new(u, v, 1.0);
        ata += row * row.transpose();
        atb -= row * (u * u + v * v);
    }
    let sol = ata.lu().solve(&atb)?;
    let (a, b) = (-sol.x / 2.0, -sol.y / 2.0);
    let r2 = a * a + b * b - sol.z;
    if r2.is_nan() || r2 <= 0.0 {
        return None;
    }
    let mut params = Vector3::new(a, b, sqrt(r2));

    let mut jtj = Matrix3::<f64>::zeros();
    let mut jtr = Vector3::<f64>::zeros();
    for (u, v) in uv {
        let (du, dv) = (u - params.x, v - params.y);
        let d = sqrt(du * du + dv * dv);
        if d == 0.0 {
            continue;
        }
        let j = Vector3::new(-du / d, -dv / d, -1.0);
        let res = d - params.z;
        jtj += j * j.transpose();
        jtr += j * res;
    }
    if let Some(step) = jtj.lu().solve(&(-jtr)) {
        if step.iter().all(|s| s.is_finite()) {
            params += step;
        }
    }
    Some((params.x, params.y, params.z))
}

/// Least-squares circle through 3D points.
///
/// Fits the plane first, then the circle inside it. `max_dev` adds the
/// in-plane radial deviation and the out-of-plane distance per point.
pub fn fit_circle(points: &[Point3]) -> Result<CircleFit> {
    if points.len() < 3 {
        return Err(Error::CollinearInput);
    }
    let pa = principal_axes(points).ok_or(Error::CollinearInput)?;
    // normalized scatter has unit trace, so this is a relative test
    if pa.values[1] <= 1e-18 {
        return Err(Error::CollinearInput);
    }
    let normal = pa.vectors[0];
    let e1 = pa.vectors[2];
    let e2 = normal.cross(e1);
    let local = |p: &Point3| {
        let d = (*p - pa.centroid) * (1.0 / pa.scale);
        (d.dot(e1), d.dot(e2))
    };
    let (a, b, r) = fit_circle_2d(points.iter().map(local)).ok_or(Error::CollinearInput)?;
    let center = pa.centroid + (e1 * a + e2 * b) * pa.scale;
    let radius = r * pa.scale;

    let mut max_dev = 0.0f64;
    let mut sum_sq = 0.0;
    for p in points {
        let d = *p - center;
        let off = d.dot(normal);
        let in_plane = d - normal * off;
        let dev = (in_plane.norm() - radius).abs() + off.abs();
        max_dev = max_dev.max(dev);
        sum_sq += dev * dev;
    }
    Ok(CircleFit {
        center,
        radius,
        normal,
        rms: sqrt(sum_sq / points.len() as f64),
        max_dev,
    })
}

/// Largest distance from the principal line through the centroid.
pub fn collinearity_deviation(points: &[Point3]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let Some(pa) = principal_axes(points) else {
        return 0.0;
    };
    let dir = pa.vectors[2];
    points
        .iter()
        .map(|p| {
            let d = *p - pa.centroid;
            (d - dir * d.dot(dir)).norm()
        })
        .fold(0.0, f64::max)
}

/// Least-squares cylinder whose axis is parallel to `axis_hint`.
pub fn fit_cylinder(points: &[Point3], axis_hint: Point3) -> Result<CylinderFit> {
    if points.len() < 6 {
        return Err(Error::DegenerateInput(
            "cylinder fit needs at least 6 points",
        ));
    }
    let axis = axis_hint
        .normalized()
        .ok_or(Error::DegenerateInput("axis hint is the zero vector"))?;
    let helper = if axis.x.abs() < 0.9 {
        Point3::new(1.0, 0.0, 0.0)
    } else {
        Point3::new(0.0, 1.0, 0.0)
    };
    let e1 = axis
        .cross(helper)
        .normalized()
        .expect("helper is not parallel to axis");
    let e2 = axis.cross(e1);

    let n = points.len() as f64;
    let centroid = points.iter().fold(Point3::ORIGIN, |acc, p| acc + *p) * (1.0 / n);
    let spread = points
        .iter()
        .map(|p| {
            let d = *p - centroid;
            let (u, v) = (d.dot(e1), d.dot(e2));
            u * u + v * v
        })
        .sum::<f64>()
        / n;
    let scale = sqrt(spread);
    if scale.is_nan() || scale <= 0.0 {
        return Err(Error::DegenerateInput(
            "points lie on one axis-parallel line",
        ));
    }
    let local = |p: &Point3| {
        let d = (*p - centroid) * (1.0 / scale);
        (d.dot(e1), d.dot(e2))
    };
    let (a, b, r) = fit_circle_2d(points.iter().map(local))
        .ok_or(Error::DegenerateInput("projected points admit no circle"))?;
    let axis_point = centroid + (e1 * a + e2 * b) * scale;
    let radius = r * scale;
    let max_dev = points
        .iter()
        .map(|p| {
            let d = *p - axis_point;
            ((d - axis * d.dot(axis)).norm() - radius).abs()
        })
        .fold(0.0, f64::max);
    Ok(CylinderFit {
        axis_point,
        axis_dir: axis,
        radius,
        max_dev,
    })
}

/// Distance between segments `[p0, p1]` and `[q0, q1]` in any dimension.
pub fn segment_distance<P: Vector>(p0: P, p1: P, q0: P, q1: P) -> f64 {
    let d1 = p1 - p0;
    let d2 = q1 - q0;
    let r = p0 - q0;
    let a = d1.dot(d1);
    let e = d2.dot(d2);
    let f = d2.dot(r);
    let (s, t);
    if a <= f64::EPSILON && e <= f64::EPSILON {
        return r.norm();
    }
    if a <= f64::EPSILON {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = d1.dot(r);
        if e <= f64::EPSILON {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = d1.dot(d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > 0.0 {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let mut t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t0 = 0.0;
                s0 = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t0 = 1.0;
                s0 = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s0;
            t = t0;
        }
    }
    ((p0 + d1 * s) - (q0 + d2 * t)).norm()
}

/// Minimum distance between two polylines over all segment pairs.
pub fn min_distance<P: Vector>(a: &Polyline<P>, b: &Polyline<P>) -> f64 {
    let mut best = f64::INFINITY;
    for (p0, p1) in a.segments() {
        for (q0, q1) in b.segments() {
            let d = segment_distance(p0, p1, q0, q1);
            if d < best {
                best = d;
            }
        }
    }
    best
}

/// Distance from `p` to the circle `c`.
pub fn point_circle_distance(p: Point4, c: &Circle4) -> f64 {
    let d = p - c.center;
    let (a, b) = (d.dot(c.u), d.dot(c.v));
    let in_plane = c.u * a + c.v * b;
    let off_plane = d - in_plane;
    let rho = sqrt(a * a + b * b);
    if rho == 0.0 {
        return sqrt(off_plane.norm_squared() + c.radius * c.radius);
    }
    let nearest = c.center + in_plane * (c.radius / rho);
    p.distance(nearest)
}

/// Smallest distance from any sample of `a` to the exact circle `b`.
pub fn sampled_circle_distance(a: &Polyline4, b: &Circle4) -> f64 {
    a.vertices()
        .iter()
        .map(|p| point_circle_distance(*p, b))
        .fold(f64::INFINITY, f64::min)
}

/// Exact Gauss integral over one pair of straight segments, as the signed
/// solid angle of the quadrilateral they span divided by 4π.
fn segment_pair_linking(p1: Point3, p2: Point3, p3: Point3, p4: Point3) -> f64 {
    let r13 = p3 - p1;
    let r14 = p4 - p1;
    let r23 = p3 - p2;
    let r24 = p4 - p2;
    let (Some(n1), Some(n2), Some(n3), Some(n4)) = (
        r13.cross(r14).normalized(),
        r14.cross(r24).normalized(),
        r24.cross(r23).normalized(),
        r23.cross(r13).normalized(),
    ) else {
        return 0.0;
    };
    let as_ = |x: f64| asin(x.clamp(-1.0, 1.0));
    let omega = as_(n1.dot(n2)) + as_(n2.dot(n3)) + as_(n3.dot(n4)) + as_(n4.dot(n1));
    let orient = (p4 - p3).cross(p2 - p1).dot(r13);
    if orient > 0.0 {
        omega / (4.0 * PI)
    } else if orient < 0.0 {
        -omega / (4.0 * PI)
    } else {
        0.0
    }
}

/// Linking number of two closed polylines by the Gauss double sum.
pub fn linking_number(a: &Polyline3, b: &Polyline3) -> Result<Linking> {
    if !a.is_closed() || !b.is_closed() {
        return Err(Error::DegenerateInput("linking number needs closed curves"));
    }
    let distance = min_distance(a, b);
    if distance <= LINKING_MIN_DISTANCE {
        return Err(Error::CurvesTooClose { distance });
    }
    let mut sum = 0.0;
    for (p1, p2) in a.segments() {
        for (p3, p4) in b.segments() {
            sum += segment_pair_linking(p1, p2, p3, p4);
        }
    }
    let number = round(sum);
    let residual = sum - number;
    if residual.abs() >= LINKING_RESIDUAL_GATE {
        return Err(Error::LinkingUnresolved { residual });
    }
    Ok(Linking {
        number: number as i64,
        sum,
        residual,
    })
}
