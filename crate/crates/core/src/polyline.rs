use alloc::vec::Vec;

use crate::{Error, Point3, Point4, Result, Vector};

/// An ordered vertex list, optionally closed (last vertex joins the first).
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline<P> {
    vertices: Vec<P>,
    closed: bool,
}

pub type Polyline3 = Polyline<Point3>;
pub type Polyline4 = Polyline<Point4>;

impl<P: Vector> Polyline<P> {
    /// Requires at least two vertices.
    pub fn new(vertices: Vec<P>, closed: bool) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::TooFewVertices {
                min: 2,
                got: vertices.len(),
            });
        }
        Ok(Polyline { vertices, closed })
    }

    pub fn closed(vertices: Vec<P>) -> Result<Self> {
        Self::new(vertices, true)
    }

    pub fn open(vertices: Vec<P>) -> Result<Self> {
        Self::new(vertices, false)
    }

    pub fn vertices(&self) -> &[P] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<P> {
        self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges as `(start, end)` pairs, including the closing edge.
    pub fn segments(&self) -> impl Iterator<Item = (P, P)> + '_ {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n - 1 };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Polyline {
            vertices,
            closed: self.closed,
        }
    }

    pub fn map<Q: Vector>(&self, f: impl FnMut(&P) -> Q) -> Polyline<Q> {
        Polyline {
            vertices: self.vertices.iter().map(f).collect(),
            closed: self.closed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn closed_polyline_has_closing_edge() {
        let pts = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
        ];
        assert_eq!(Polyline::closed(pts.clone()).unwrap().segments().count(), 3);
        assert_eq!(Polyline::open(pts).unwrap().segments().count(), 2);
    }

    #[test]
    fn single_vertex_is_rejected() {
        let err = Polyline::open(vec![Point3::ORIGIN]).unwrap_err();
        assert_eq!(err, Error::TooFewVertices { min: 2, got: 1 });
    }
}
