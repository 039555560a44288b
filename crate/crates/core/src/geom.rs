//! Planar primitives and predicates.
//!
//! Orientation tests are exact (adaptive-precision, via `robust`). Points
//! produced by constructions such as [`line_cross_segment`] are ordinary
//! floats; comparisons on them use the absolute tolerance [`EPS`].

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Absolute comparison tolerance for constructed coordinates.
pub const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        let p = Point { x, y };
        if p.is_finite() {
            Ok(p)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        Point::new(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }

    pub fn approx_eq(self, o: Point) -> bool {
        (self.x - o.x).abs() <= EPS && (self.y - o.y).abs() <= EPS
    }

    fn coord(self) -> robust::Coord<f64> {
        robust::Coord {
            x: self.x,
            y: self.y,
        }
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Orientation::CounterClockwise => 1,
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
        }
    }
}

/// Exact determinant sign for the triangle `pqr`; positive when counter-clockwise.
///
/// The magnitude is the adaptive-precision approximation of twice the signed
/// area, so its sign is always correct for finite inputs.
pub fn orient2d(p: Point, q: Point, r: Point) -> f64 {
    robust::orient2d(p.coord(), q.coord(), r.coord())
}

/// Sign of [`orient2d`] as -1, 0 or 1.
pub fn side(p: Point, q: Point, r: Point) -> i8 {
    let d = orient2d(p, q, r);
    if d > 0.0 {
        1
    } else if d < 0.0 {
        -1
    } else {
        0
    }
}

pub fn orient(p: Point, q: Point, r: Point) -> Result<Orientation> {
    if !(p.is_finite() && q.is_finite() && r.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(match side(p, q, r) {
        1 => Orientation::CounterClockwise,
        -1 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    })
}

/// Distance from `p` to the infinite line through `a` and `b`.
pub fn line_distance(a: Point, b: Point, p: Point) -> f64 {
    let d = b - a;
    (d.cross(p - a)).abs() / d.norm()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::NonFinite);
        }
        if a == b {
            return Err(Error::DegenerateSegment(a));
        }
        Ok(Segment { a, b })
    }

    pub fn at(&self, t: f64) -> Point {
        self.a.lerp(self.b, t)
    }

    pub fn dir(&self) -> Point {
        self.b - self.a
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn reversed(&self) -> Segment {
        Segment {
            a: self.b,
            b: self.a,
        }
    }

    /// Parameter of the orthogonal projection of `p` onto the supporting line.
    pub fn project(&self, p: Point) -> f64 {
        let d = self.dir();
        (p - self.a).dot(d) / d.dot(d)
    }

    /// Distance from `p` to the closed segment.
    pub fn distance_to(&self, p: Point) -> f64 {
        let t = self.project(p).clamp(0.0, 1.0);
        self.at(t).dist(p)
    }

    pub fn midpoint(&self) -> Point {
        self.at(0.5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentIntersection {
    None,
    /// Proper crossing or an endpoint touch.
    Point(Point),
    /// Collinear overlap, endpoints in lexicographic order.
    Overlap(Point, Point),
}

fn lex_lt(p: Point, q: Point) -> bool {
    (p.x, p.y) < (q.x, q.y)
}

fn canonical(s: Segment) -> Segment {
    if lex_lt(s.b, s.a) {
        s.reversed()
    } else {
        s
    }
}

pub fn segment_intersection(s1: Segment, s2: Segment) -> SegmentIntersection {
    // Canonical argument order keeps the constructed point bit-identical
    // regardless of argument order.
    let (mut s1, mut s2) = (canonical(s1), canonical(s2));
    if lex_lt(s2.a, s1.a) || (s2.a == s1.a && lex_lt(s2.b, s1.b)) {
        std::mem::swap(&mut s1, &mut s2);
    }
    let d1 = side(s1.a, s1.b, s2.a);
    let d2 = side(s1.a, s1.b, s2.b);
    let d3 = side(s2.a, s2.b, s1.a);
    let d4 = side(s2.a, s2.b, s1.b);

    if d1 == 0 && d2 == 0 {
        // Collinear: order along the shared direction.
        let key = |p: Point| (p.x, p.y);
        let lo = if key(s1.a) > key(s2.a) { s1.a } else { s2.a };
        let hi = if key(s1.b) < key(s2.b) { s1.b } else { s2.b };
        return match key(lo).partial_cmp(&key(hi)) {
            Some(std::cmp::Ordering::Less) => SegmentIntersection::Overlap(lo, hi),
            Some(std::cmp::Ordering::Equal) => SegmentIntersection::Point(lo),
            _ => SegmentIntersection::None,
        };
    }
    if d1 * d2 > 0 || d3 * d4 > 0 {
        return SegmentIntersection::None;
    }
    if d1 == 0 {
        return SegmentIntersection::Point(s2.a);
    }
    if d2 == 0 {
        return SegmentIntersection::Point(s2.b);
    }
    if d3 == 0 {
        return SegmentIntersection::Point(s1.a);
    }
    if d4 == 0 {
        return SegmentIntersection::Point(s1.b);
    }
    let o1 = orient2d(s1.a, s1.b, s2.a);
    let o2 = orient2d(s1.a, s1.b, s2.b);
    let t = o1 / (o1 - o2);
    SegmentIntersection::Point(s2.at(t))
}

/// Parameter on `s` where the infinite line through `p` and `q` meets it.
pub fn line_cross_param(p: Point, q: Point, s: Segment) -> Result<Option<f64>> {
    if p == q {
        return Err(Error::DegenerateSegment(p));
    }
    let da = side(p, q, s.a);
    let db = side(p, q, s.b);
    match (da, db) {
        (0, 0) => Err(Error::CollinearOverlap),
        (0, _) => Ok(Some(0.0)),
        (_, 0) => Ok(Some(1.0)),
        _ if da == db => Ok(None),
        _ => {
            let oa = orient2d(p, q, s.a);
            let ob = orient2d(p, q, s.b);
            Ok(Some((oa / (oa - ob)).clamp(0.0, 1.0)))
        }
    }
}

pub fn line_cross_segment(p: Point, q: Point, s: Segment) -> Result<Option<Point>> {
    // Endpoint hits return the stored endpoint exactly.
    Ok(line_cross_param(p, q, s)?.map(|t| {
        if t == 0.0 {
            s.a
        } else if t == 1.0 {
            s.b
        } else {
            s.at(t)
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn seg(a: (f64, f64), b: (f64, f64)) -> Segment {
        Segment::new(p(a.0, a.1), p(b.0, b.1)).unwrap()
    }

    #[test]
    fn orient_examples() {
        assert_eq!(
            orient(p(0., 0.), p(1., 0.), p(0., 1.)),
            Ok(Orientation::CounterClockwise)
        );
        assert_eq!(
            orient(p(0., 0.), p(1., 1.), p(2., 2.)),
            Ok(Orientation::Collinear)
        );
        assert_eq!(
            orient(p(0., 0.), p(0., 1.), p(1., 0.)),
            Ok(Orientation::Clockwise)
        );
        assert_eq!(
            orient(p(f64::NAN, 0.), p(0., 1.), p(1., 0.)),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn orient_is_exact_near_degenerate() {
        // Naive double evaluation misclassifies these nearly-collinear points.
        let a = p(0.5, 0.5);
        let b = p(12.0, 12.0);
        let c = p(24.0, 24.0);
        let nudged = p(0.5 + f64::EPSILON, 0.5);
        assert_eq!(orient(a, b, c).unwrap(), Orientation::Collinear);
        assert_eq!(orient(nudged, b, c).unwrap(), Orientation::Clockwise);
    }

    #[test]
    fn segment_intersection_examples() {
        assert_eq!(
            segment_intersection(seg((0., 0.), (2., 2.)), seg((0., 2.), (2., 0.))),
            SegmentIntersection::Point(p(1., 1.))
        );
        assert_eq!(
            segment_intersection(seg((0., 0.), (1., 0.)), seg((0., 1.), (1., 1.))),
            SegmentIntersection::None
        );
        assert_eq!(
            segment_intersection(seg((0., 0.), (2., 0.)), seg((1., 0.), (3., 0.))),
            SegmentIntersection::Overlap(p(1., 0.), p(2., 0.))
        );
        assert_eq!(
            segment_intersection(seg((0., 0.), (1., 0.)), seg((1., 0.), (1., 5.))),
            SegmentIntersection::Point(p(1., 0.))
        );
        assert_eq!(
            segment_intersection(seg((0., 0.), (1., 0.)), seg((2., 0.), (3., 0.))),
            SegmentIntersection::None
        );
    }

    #[test]
    fn line_cross_examples() {
        let r = line_cross_segment(p(0.5, 1.), p(5., 3.), seg((7.9, 2.5), (7.9, 7.9)))
            .unwrap()
            .unwrap();
        assert!((r.x - 7.9).abs() < 1e-12);
        assert!((r.y - 38.6 / 9.0).abs() < 1e-12);
        assert_eq!(
            line_cross_segment(p(0., 0.), p(1., 0.), seg((2., 1.), (2., 3.))),
            Ok(None)
        );
        assert_eq!(
            line_cross_segment(p(0., 0.), p(0., 1.), seg((0., 2.), (0., 5.))),
            Err(Error::CollinearOverlap)
        );
    }

    #[test]
    fn degenerate_segment_rejected() {
        assert!(matches!(
            Segment::new(p(1., 1.), p(1., 1.)),
            Err(Error::DegenerateSegment(_))
        ));
    }

    fn coord() -> impl Strategy<Value = f64> {
        -100.0..100.0f64
    }

    fn point() -> impl Strategy<Value = Point> {
        (coord(), coord()).prop_map(|(x, y)| p(x, y))
    }

    proptest! {
        #[test]
        fn orient_antisymmetric_and_cyclic(a in point(), b in point(), c in point()) {
            let o = orient(a, b, c).unwrap();
            prop_assert_eq!(orient(a, c, b).unwrap(), o.reversed());
            prop_assert_eq!(orient(b, c, a).unwrap(), o);
            prop_assert_eq!(orient(c, a, b).unwrap(), o);
        }

        #[test]
        fn intersection_symmetric_and_matches_straddle(
            a in point(), b in point(), c in point(), d in point()
        ) {
            prop_assume!(a != b && c != d);
            let s1 = Segment::new(a, b).unwrap();
            let s2 = Segment::new(c, d).unwrap();
            let r = segment_intersection(s1, s2);
            prop_assert_eq!(r, segment_intersection(s2, s1));
            prop_assert_eq!(r, segment_intersection(s1.reversed(), s2));
            let proper = side(a, b, c) * side(a, b, d) < 0 && side(c, d, a) * side(c, d, b) < 0;
            if proper {
                prop_assert!(matches!(r, SegmentIntersection::Point(_)));
            }
            if let SegmentIntersection::Point(x) = r {
                prop_assert!(s1.distance_to(x) < 1e-6 && s2.distance_to(x) < 1e-6);
            }
        }

        #[test]
        fn line_cross_lands_on_line(p1 in point(), q1 in point(), c in point(), d in point()) {
            prop_assume!(p1 != q1 && c != d);
            let s = Segment::new(c, d).unwrap();
            if let Ok(Some(x)) = line_cross_segment(p1, q1, s) {
                // Constructed point: collinear up to rounding of the construction.
                prop_assert!(line_distance(p1, q1, x) <= 1e-9 * (1.0 + x.norm()));
                if x == c || x == d {
                    prop_assert_eq!(orient(p1, q1, x).unwrap(), Orientation::Collinear);
                }
            }
        }
    }
}
