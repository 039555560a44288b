//! Validated simple polygons.

use crate::error::{Error, Result};
use crate::geom::{side, Point, Segment, SegmentIntersection, EPS};

/// A simple polygon stored counter-clockwise, with per-vertex reflex flags.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
    reflex: Vec<bool>,
}

/// Non-fatal findings from [`Polygon::validate_with_report`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Input was clockwise and has been reversed.
    pub reversed: bool,
    /// Indices (in the stored order) of vertices whose neighbours are collinear with them.
    pub collinear: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointLocation {
    Interior,
    Boundary,
    Exterior,
}

impl Polygon {
    pub fn validate(raw: &[Point]) -> Result<Polygon> {
        Self::validate_with_report(raw).map(|(p, _)| p)
    }

    pub fn validate_with_report(raw: &[Point]) -> Result<(Polygon, ValidationReport)> {
        let n = raw.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        if raw.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        for i in 0..n {
            for j in i + 1..n {
                if raw[i] == raw[j] {
                    return Err(Error::DuplicateVertex(j));
                }
            }
        }
        let edge = |i: usize| Segment {
            a: raw[i],
            b: raw[(i + 1) % n],
        };
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let hit = crate::geom::segment_intersection(edge(i), edge(j));
                let bad = match hit {
                    SegmentIntersection::None => false,
                    SegmentIntersection::Overlap(..) => true,
                    SegmentIntersection::Point(_) => !adjacent,
                };
                if bad {
                    return Err(Error::SelfIntersecting(i, j));
                }
            }
        }
        let mut vertices = raw.to_vec();
        let reversed = signed_area(&vertices) < 0.0;
        if reversed {
            vertices.reverse();
        }
        let mut report = ValidationReport {
            reversed,
            collinear: Vec::new(),
        };
        let reflex = (0..n)
            .map(|i| {
                let s = side(
                    vertices[(i + n - 1) % n],
                    vertices[i],
                    vertices[(i + 1) % n],
                );
                if s == 0 {
                    report.collinear.push(i);
                }
                s < 0
            })
            .collect();
        Ok((Polygon { vertices, reflex }, report))
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.len()]
    }

    pub fn prev(&self, i: usize) -> Point {
        self.vertices[(i + self.len() - 1) % self.len()]
    }

    pub fn next(&self, i: usize) -> Point {
        self.vertices[(i + 1) % self.len()]
    }

    pub fn is_reflex(&self, i: usize) -> bool {
        self.reflex[i]
    }

    pub fn reflex_flags(&self) -> &[bool] {
        &self.reflex
    }

    pub fn reflex_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.reflex[i]).collect()
    }

    pub fn reflex_vertices(&self) -> Vec<Point> {
        self.reflex_indices()
            .into_iter()
            .map(|i| self.vertices[i])
            .collect()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> Segment {
        Segment {
            a: self.vertex(i),
            b: self.next(i),
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Sum of exterior turn angles; `2π` for a counter-clockwise simple polygon.
    pub fn total_turning(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let d0 = self.vertex(i) - self.prev(i);
                let d1 = self.next(i) - self.vertex(i);
                d0.cross(d1).atan2(d0.dot(d1))
            })
            .sum()
    }

    pub fn bbox(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (lo, hi)
    }

    /// Applies `f` to every vertex and re-validates.
    pub fn map(&self, f: impl Fn(Point) -> Point) -> Result<Polygon> {
        let pts: Vec<Point> = self.vertices.iter().map(|&p| f(p)).collect();
        Polygon::validate(&pts)
    }

    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.edges()
            .map(|e| e.distance_to(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Classification with an [`EPS`] band around the boundary.
    pub fn locate(&self, p: Point) -> PointLocation {
        if self.boundary_distance(p) <= EPS {
            PointLocation::Boundary
        } else if self.contains_parity(p) {
            PointLocation::Interior
        } else {
            PointLocation::Exterior
        }
    }

    /// Even-odd test with no tolerance band; points exactly on the boundary
    /// may land on either side.
    pub fn contains_parity(&self, p: Point) -> bool {
        let mut inside = false;
        for e in self.edges() {
            let (a, b) = (e.a, e.b);
            if (a.y > p.y) != (b.y > p.y) {
                // Crossing is to the right of p iff p is on the left of the
                // upward-directed edge.
                let s = if b.y > a.y {
                    side(a, b, p)
                } else {
                    side(b, a, p)
                };
                if s > 0 {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Closed containment: interior or within [`EPS`] of the boundary.
    pub fn contains_closed(&self, p: Point) -> bool {
        self.locate(p) != PointLocation::Exterior
    }

    /// Convex hull of the vertex set, counter-clockwise, without collinear
    /// hull vertices, starting at the lexicographically smallest vertex.
    pub fn convex_hull(&self) -> Polygon {
        let hull = convex_hull_points(&self.vertices);
        let n = hull.len();
        Polygon {
            reflex: vec![false; n],
            vertices: hull,
        }
    }
}

pub fn signed_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum::<f64>() * 0.5
}

/// Andrew's monotone chain with exact turn tests.
pub fn convex_hull_points(pts: &[Point]) -> Vec<Point> {
    let mut p: Vec<Point> = pts.to_vec();
    p.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && side(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && side(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
