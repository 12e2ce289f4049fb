use core::ops::{Add, Mul, Neg, Sub};

use crate::math::sqrt;

/// Operations shared by [`Point3`] and [`Point4`], enough for distance and
/// polyline computations that do not care about the dimension.
pub trait Vector: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn dot(self, other: Self) -> f64;

    fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    fn norm(self) -> f64 {
        sqrt(self.norm_squared())
    }

    fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }

    fn is_finite(self) -> bool;
}

/// A point (or vector) of the modeling 3-space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn cross(self, o: Point3) -> Point3 {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Point3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Point3 {
    fn from(a: [f64; 3]) -> Self {
        Point3::new(a[0], a[1], a[2])
    }
}

impl Vector for Point3 {
    fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

/// A point of the embedding 4-space with coordinates `(x, y, z, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point4 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub w: f64,
}

impl Point4 {
    pub const ORIGIN: Point4 = Point4::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64, w: f64) -> Self {
        Point4 { x, y, z, w }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x, self.y, self.z, self.w]
    }
}

impl From<[f64; 4]> for Point4 {
    fn from(a: [f64; 4]) -> Self {
        Point4::new(a[0], a[1], a[2], a[3])
    }
}

impl Vector for Point4 {
    fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z + self.w * o.w
    }

    fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite() && self.w.is_finite()
    }
}

impl Add for Point4 {
    type Output = Point4;
    fn add(self, o: Point4) -> Point4 {
        Point4::new(self.x + o.x, self.y + o.y, self.z + o.z, self.w + o.w)
    }
}

impl Sub for Point4 {
    type Output = Point4;
    fn sub(self, o: Point4) -> Point4 {
        Point4::new(self.x - o.x, self.y - o.y, self.z - o.z, self.w - o.w)
    }
}

impl Mul<f64> for Point4 {
    type Output = Point4;
    fn mul(self, s: f64) -> Point4 {
        Point4::new(self.x * s, self.y * s, self.z * s, self.w * s)
    }
}

impl Neg for Point4 {
    type Output = Point4;
    fn neg(self) -> Point4 {
        Point4::new(-self.x, -self.y, -self.z, -self.w)
    }
}

/// A point of `C²`: `z1 = x + iy`, `z2 = z + iw`, each stored as `(re, im)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPair {
    pub z1: (f64, f64),
    pub z2: (f64, f64),
}

impl ComplexPair {
    /// `z1 · conj(z2)`.
    pub fn z1_conj_z2(&self) -> (f64, f64) {
        let (a, b) = self.z1;
        let (c, d) = self.z2;
        (a * c + b * d, b * c - a * d)
    }

    pub fn z1_norm_sqr(&self) -> f64 {
        self.z1.0 * self.z1.0 + self.z1.1 * self.z1.1
    }

    pub fn z2_norm_sqr(&self) -> f64 {
        self.z2.0 * self.z2.0 + self.z2.1 * self.z2.1
    }
}

impl From<Point4> for ComplexPair {
    fn from(p: Point4) -> Self {
        ComplexPair {
            z1: (p.x, p.y),
            z2: (p.z, p.w),
        }
    }
}

impl From<ComplexPair> for Point4 {
    fn from(c: ComplexPair) -> Self {
        Point4::new(c.z1.0, c.z1.1, c.z2.0, c.z2.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn complex_pair_round_trip_is_bit_exact(
            x in proptest::num::f64::ANY,
            y in proptest::num::f64::ANY,
            z in proptest::num::f64::ANY,
            w in proptest::num::f64::ANY,
        ) {
            let p = Point4::new(x, y, z, w);
            let back = Point4::from(ComplexPair::from(p));
            prop_assert_eq!(p.x.to_bits(), back.x.to_bits());
            prop_assert_eq!(p.y.to_bits(), back.y.to_bits());
            prop_assert_eq!(p.z.to_bits(), back.z.to_bits());
            prop_assert_eq!(p.w.to_bits(), back.w.to_bits());
        }
    }

    #[test]
    fn cross_product_is_right_handed() {
        let x = Point3::new(1.0, 0.0, 0.0);
        let y = Point3::new(0.0, 1.0, 0.0);
        assert_eq!(x.cross(y), Point3::new(0.0, 0.0, 1.0));
        assert!(Point3::ORIGIN.normalized().is_none());
    }
}
