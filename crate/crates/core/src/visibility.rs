//! Point-to-point visibility, visibility polygons, visible parts of a
//! segment, and the three-way classification of a segment pair.
//!
//! Visibility is the open-segment-in-interior relation with one relaxation:
//! the sight segment may graze the boundary at isolated reflex vertices
//! (both neighbours of the vertex on the same side of the sight line).
//! Grazing is detected with the [`EPS`] tolerance so that constructed points
//! lying on a window line count as seen from that window's apex.

use crate::error::{Error, Result};
use crate::geom::{
    line_cross_param, line_distance, segment_intersection, side, Point, Segment,
    SegmentIntersection, EPS,
};
use crate::polygon::{PointLocation, Polygon};

fn tol_side(a: Point, b: Point, p: Point) -> i8 {
    if line_distance(a, b, p) <= EPS {
        0
    } else {
        side(a, b, p)
    }
}

/// Whether `a` and `b` see each other inside `poly`.
pub fn sees(poly: &Polygon, a: Point, b: Point) -> bool {
    if a.dist(b) <= EPS {
        return poly.contains_closed(a);
    }
    let seg = Segment { a, b };
    let len = seg.length();
    let n = poly.len();

    // Edges running along the sight segment.
    for e in poly.edges() {
        if line_distance(a, b, e.a) <= EPS && line_distance(a, b, e.b) <= EPS {
            let (mut lo, mut hi) = (seg.project(e.a), seg.project(e.b));
            if lo > hi {
                std::mem::swap(&mut lo, &mut hi);
            }
            if (hi.min(1.0) - lo.max(0.0)) * len > EPS {
                return false;
            }
        }
    }

    let mut touched = vec![false; n];
    let mut touches = vec![0.0, 1.0];
    for (i, hit) in touched.iter_mut().enumerate() {
        let w = poly.vertex(i);
        if w.dist(a) <= EPS || w.dist(b) <= EPS || seg.distance_to(w) > EPS {
            continue;
        }
        if !poly.is_reflex(i) {
            return false;
        }
        let sp = tol_side(a, b, poly.prev(i));
        let sn = tol_side(a, b, poly.next(i));
        if sp == 0 || sn == 0 || sp != sn {
            return false;
        }
        *hit = true;
        touches.push(seg.project(w));
    }

    for i in 0..n {
        let j = (i + 1) % n;
        if touched[i] || touched[j] {
            continue;
        }
        let e = poly.edge(i);
        let s1 = side(a, b, e.a);
        let s2 = side(a, b, e.b);
        let s3 = side(e.a, e.b, a);
        let s4 = side(e.a, e.b, b);
        if s1 * s2 < 0 && s3 * s4 < 0 {
            // Proper crossing; tolerated only as an endpoint contact.
            let o1 = crate::geom::orient2d(e.a, e.b, a);
            let o2 = crate::geom::orient2d(e.a, e.b, b);
            let t = o1 / (o1 - o2);
            if t * len > EPS && (1.0 - t) * len > EPS {
                return false;
            }
        }
    }

    touches.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (mut best, mut mid) = (-1.0, 0.5);
    for w in touches.windows(2) {
        if w[1] - w[0] > best {
            best = w[1] - w[0];
            mid = 0.5 * (w[0] + w[1]);
        }
    }
    let m = seg.at(mid);
    match poly.locate(m) {
        PointLocation::Interior => true,
        PointLocation::Exterior => false,
        PointLocation::Boundary => poly.contains_parity(m),
    }
}

/// A closed sub-interval `[lo, hi]` of a host segment, in its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalOnSegment {
    pub host: Segment,
    pub lo: f64,
    pub hi: f64,
}

impl IntervalOnSegment {
    pub fn length(&self) -> f64 {
        (self.hi - self.lo) * self.host.length()
    }

    pub fn start(&self) -> Point {
        self.host.at(self.lo)
    }

    pub fn end(&self) -> Point {
        self.host.at(self.hi)
    }

    /// Containment with a parameter slack equivalent to [`EPS`] in scene units.
    pub fn contains(&self, t: f64) -> bool {
        let tol = EPS / self.host.length();
        t >= self.lo - tol && t <= self.hi + tol
    }

    pub fn is_full(&self) -> bool {
        let tol = EPS / self.host.length();
        self.lo <= tol && self.hi >= 1.0 - tol
    }
}

/// Parameters on `t` where a sight line from `q` through a polygon vertex
/// meets `t`, or where `t` crosses the boundary; visibility from `q` is
/// constant between consecutive values.
fn critical_params(poly: &Polygon, q: Point, t: Segment) -> Vec<f64> {
    let mut cs = vec![0.0, 1.0];
    for e in poly.edges() {
        match segment_intersection(t, e) {
            SegmentIntersection::Point(x) => cs.push(t.project(x).clamp(0.0, 1.0)),
            SegmentIntersection::Overlap(a, b) => {
                cs.extend([t.project(a).clamp(0.0, 1.0), t.project(b).clamp(0.0, 1.0)])
            }
            SegmentIntersection::None => {}
        }
    }
    if side(t.a, t.b, q) == 0 {
        cs.extend(
            poly.vertices()
                .iter()
                .filter(|&&w| side(t.a, t.b, w) == 0)
                .map(|&w| t.project(w))
                .filter(|c| (0.0..=1.0).contains(c)),
        );
    } else {
        for &w in poly.vertices() {
            if w.dist(q) <= EPS {
                continue;
            }
            if let Ok(Some(c)) = line_cross_param(q, w, t) {
                cs.push(c);
            }
        }
    }
    cs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let tol = 1e-3 * EPS / t.length();
    cs.dedup_by(|a, b| (*a - *b).abs() <= tol);
    cs
}

/// Maximal parts of `t` visible from `q`, sorted by parameter.
///
/// Computed by testing every cell and breakpoint of the critical-parameter
/// decomposition. Isolated visible points come back as zero-length intervals.
pub fn visible_intervals(poly: &Polygon, q: Point, t: Segment) -> Vec<IntervalOnSegment> {
    let cs = critical_params(poly, q, t);
    let mut out: Vec<IntervalOnSegment> = Vec::new();
    let mut open: Option<f64> = None;
    let mut last_visible_end = 0.0;
    for k in 0..cs.len() {
        let at_crit = sees(poly, q, t.at(cs[k]));
        if at_crit {
            open.get_or_insert(cs[k]);
            last_visible_end = cs[k];
        } else if let Some(lo) = open.take() {
            out.push(IntervalOnSegment {
                host: t,
                lo,
                hi: last_visible_end,
            });
        }
        if k + 1 < cs.len() {
            let mid = 0.5 * (cs[k] + cs[k + 1]);
            if sees(poly, q, t.at(mid)) {
                open.get_or_insert(cs[k]);
                last_visible_end = cs[k + 1];
            } else if let Some(lo) = open.take() {
                out.push(IntervalOnSegment {
                    host: t,
                    lo,
                    hi: last_visible_end,
                });
            }
        }
    }
    if let Some(lo) = open {
        out.push(IntervalOnSegment {
            host: t,
            lo,
            hi: last_visible_end,
        });
    }
    out
}

/// Total visible length of `t` from `q`.
pub fn visible_length(poly: &Polygon, q: Point, t: Segment) -> f64 {
    visible_intervals(poly, q, t)
        .iter()
        .map(|i| i.length())
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct VisibilityPolygon {
    pub apex: Point,
    /// Star-shaped ring around `apex`, counter-clockwise.
    pub region: Vec<Point>,
}

impl VisibilityPolygon {
    pub fn area(&self) -> f64 {
        crate::polygon::signed_area(&self.region)
    }

    /// Length of `t` inside the region (even-odd clipping of `t` against the ring).
    pub fn clip_length(&self, t: Segment) -> f64 {
        let n = self.region.len();
        let mut cuts = vec![0.0, 1.0];
        for i in 0..n {
            let e = Segment {
                a: self.region[i],
                b: self.region[(i + 1) % n],
            };
            if e.a == e.b {
                continue;
            }
            let d = t.dir();
            let f = e.b - e.a;
            let den = d.cross(f);
            if den.abs() < 1e-300 {
                continue;
            }
            let s = (e.a - t.a).cross(f) / den;
            let u = (e.a - t.a).cross(d) / den;
            if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&u) {
                cuts.push(s);
            }
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut len = 0.0;
        for w in cuts.windows(2) {
            if w[1] - w[0] <= 0.0 {
                continue;
            }
            let m = t.at(0.5 * (w[0] + w[1]));
            if ring_contains(&self.region, m) {
                len += (w[1] - w[0]) * t.length();
            }
        }
        len
    }
}

fn ring_contains(ring: &[Point], p: Point) -> bool {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Where `q` sits on the boundary: nothing, an edge interior, or a vertex.
enum Anchor {
    Free,
    Edge(usize),
    Vertex(usize),
}

fn anchor(poly: &Polygon, q: Point) -> Anchor {
    if let Some(i) = (0..poly.len()).find(|&i| poly.vertex(i).dist(q) <= EPS) {
        return Anchor::Vertex(i);
    }
    if let Some(i) = (0..poly.len()).find(|&i| poly.edge(i).distance_to(q) <= EPS) {
        return Anchor::Edge(i);
    }
    Anchor::Free
}

fn inward(poly: &Polygon, at: &Anchor, d: Point) -> bool {
    match *at {
        Anchor::Free => true,
        Anchor::Edge(i) => poly.edge(i).dir().cross(d) > 0.0,
        Anchor::Vertex(i) => {
            let a = poly.vertex(i) - poly.prev(i);
            let b = poly.next(i) - poly.vertex(i);
            if poly.is_reflex(i) {
                a.cross(d) > 0.0 || b.cross(d) > 0.0
            } else {
                a.cross(d) > 0.0 && b.cross(d) > 0.0
            }
        }
    }
}

/// First boundary point hit by the ray from `q` along `d`, beyond [`EPS`].
pub(crate) fn ray_hit(poly: &Polygon, q: Point, d: Point) -> Option<Point> {
    let dn = d.norm();
    let mut best: Option<f64> = None;
    for e in poly.edges() {
        let f = e.b - e.a;
        let den = d.cross(f);
        if den == 0.0 {
            continue;
        }
        let s = (e.a - q).cross(f) / den;
        let u = (e.a - q).cross(d) / den;
        if !(-1e-12..=1.0 + 1e-12).contains(&u) || s * dn <= EPS {
            continue;
        }
        if best.is_none_or(|b| s < b) {
            best = Some(s);
        }
    }
    best.map(|s| q + d * s)
}

fn rotate(d: Point, a: f64) -> Point {
    let (s, c) = a.sin_cos();
    Point::new(d.x * c - d.y * s, d.x * s + d.y * c)
}

/// Visibility polygon of `q` by an angular sweep over the polygon vertices.
///
/// Each visible vertex contributes itself, and rays just before and after
/// its direction pick up the far side of any window it casts. O(n²).
pub fn visibility_polygon(poly: &Polygon, q: Point) -> Result<VisibilityPolygon> {
    if poly.locate(q) == PointLocation::Exterior {
        return Err(Error::QueryOutsidePolygon(q));
    }
    const DELTA: f64 = 1e-8;
    let at = anchor(poly, q);
    let reference = match at {
        Anchor::Free => Point::new(-1.0, 0.0),
        Anchor::Edge(i) => poly.edge(i).dir().perp() * -1.0,
        Anchor::Vertex(i) => {
            let a = poly.vertex(i) - poly.prev(i);
            let b = poly.next(i) - poly.vertex(i);
            (a.perp() * (-1.0 / a.norm())) + (b.perp() * (-1.0 / b.norm()))
        }
    };
    let base = reference.y.atan2(reference.x);
    let key = |d: Point| (d.y.atan2(d.x) - base).rem_euclid(std::f64::consts::TAU);

    let mut pts: Vec<(f64, f64, Point)> = Vec::new();
    for &w in poly.vertices() {
        let d = w - q;
        if d.norm() <= EPS {
            continue;
        }
        if sees(poly, q, w) {
            pts.push((key(d), d.norm(), w));
        }
        for rot in [-DELTA, DELTA] {
            let r = rotate(d, rot);
            if !inward(poly, &at, r) {
                continue;
            }
            if let Some(h) = ray_hit(poly, q, r) {
                pts.push((key(r), (h - q).norm(), h));
            }
        }
    }
    pts.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then(a.1.partial_cmp(&b.1).unwrap())
    });
    let mut region: Vec<Point> = Vec::with_capacity(pts.len() + 1);
    if !matches!(at, Anchor::Free) {
        region.push(q);
    }
    for (_, _, p) in pts {
        if region.last().is_none_or(|l: &Point| l.dist(p) > EPS) {
            region.push(p);
        }
    }
    if region.len() > 1 && region[0].dist(*region.last().unwrap()) <= EPS {
        region.pop();
    }
    Ok(VisibilityPolygon { apex: q, region })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairClass {
    CompletelyVisible,
    PartiallyInvisible,
    WeaklyVisible,
}

impl PairClass {
    pub fn label(self) -> &'static str {
        match self {
            PairClass::CompletelyVisible => "completely-visible",
            PairClass::PartiallyInvisible => "partially-invisible",
            PairClass::WeaklyVisible => "weakly-visible",
        }
    }
}

/// Whether the open part of `s` lies in the interior (endpoints may touch the boundary).
pub fn segment_inside(poly: &Polygon, s: Segment) -> bool {
    poly.contains_closed(s.a) && poly.contains_closed(s.b) && sees(poly, s.a, s.b)
}

/// Sample parameters on `on` covering every cell of the decomposition
/// induced by lines through (reflex, reflex) and (reflex, endpoint of `other`).
fn event_samples(poly: &Polygon, on: Segment, other: Segment) -> Vec<f64> {
    let reflex = poly.reflex_vertices();
    let mut cs = vec![0.0, 1.0];
    let mut add = |p: Point, q: Point| {
        if p.dist(q) > EPS {
            if let Ok(Some(c)) = line_cross_param(p, q, on) {
                cs.push(c);
            }
        }
    };
    for (i, &r) in reflex.iter().enumerate() {
        add(r, other.a);
        add(r, other.b);
        for &r2 in &reflex[i + 1..] {
            add(r, r2);
        }
    }
    cs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cs.dedup();
    let mut out = Vec::with_capacity(cs.len() * 2);
    for w in cs.windows(2) {
        out.push(w[0]);
        out.push(0.5 * (w[0] + w[1]));
    }
    out.push(1.0);
    out
}

#[derive(Default)]
struct SideSummary {
    all_nonempty: bool,
    all_full: bool,
}

fn summarize(poly: &Polygon, on: Segment, other: Segment, samples: &[f64]) -> SideSummary {
    let mut sum = SideSummary {
        all_nonempty: true,
        all_full: true,
    };
    for &c in samples {
        let iv = visible_intervals(poly, on.at(c), other);
        if iv.is_empty() {
            sum.all_nonempty = false;
            sum.all_full = false;
            return sum;
        }
        if !(iv.len() == 1 && iv[0].is_full()) {
            sum.all_full = false;
        }
    }
    sum
}

/// Classifies the pair exactly on the critical-event decomposition of both segments.
pub fn classify_pair(poly: &Polygon, s: Segment, t: Segment) -> Result<PairClass> {
    if !segment_inside(poly, s) || !segment_inside(poly, t) {
        return Err(Error::SegmentOutsidePolygon);
    }
    // A few quick probes reject most partially invisible pairs cheaply.
    let probes = [0.0, 0.25, 0.5, 0.75, 1.0];
    for c in probes {
        if visible_intervals(poly, s.at(c), t).is_empty()
            || visible_intervals(poly, t.at(c), s).is_empty()
        {
            return Ok(PairClass::PartiallyInvisible);
        }
    }
    let from_s = summarize(poly, s, t, &event_samples(poly, s, t));
    if !from_s.all_nonempty {
        return Ok(PairClass::PartiallyInvisible);
    }
    let from_t = summarize(poly, t, s, &event_samples(poly, t, s));
    if !from_t.all_nonempty {
        return Ok(PairClass::PartiallyInvisible);
    }
    if from_s.all_full && from_t.all_full {
        Ok(PairClass::CompletelyVisible)
    } else {
        Ok(PairClass::WeaklyVisible)
    }
}
