//! Line and disk aspect ratios of a polygon.
//!
//! * Long width `LW`: largest distance between two parallel supporting lines
//!   of the polygon, i.e. the diameter of its convex hull.
//! * Short width `SW`: narrowest strip between two parallel lines that touch
//!   a pair of reflex vertices from the inside, each vertex's edges lying
//!   beyond its own line, with the connecting segment passing through the
//!   interior. Candidate strip directions are the extreme rays of each
//!   pair's tangency cone, i.e. the incident edge directions.
//! * `LD` / `SD`: diameters of the smallest enclosing circle and of the
//!   largest inscribed circle.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{Point, Segment, SegmentIntersection, EPS};
use crate::polygon::{PointLocation, Polygon};

/// The reflex pair and strip normal that realise `SW`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwWitness {
    pub first: Point,
    pub second: Point,
    /// Unit normal of the strip, pointing from `first`'s line to `second`'s.
    pub normal: Point,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineAspect {
    pub lw: f64,
    pub sw: f64,
    pub ar: f64,
    pub sw_witness: Option<SwWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskAspect {
    pub ld: f64,
    pub sd: f64,
    pub ar: f64,
    pub enclosing_center: Point,
    pub inscribed_center: Point,
}

pub fn long_width(poly: &Polygon) -> f64 {
    let hull = poly.convex_hull();
    let h = hull.vertices();
    let mut best = 0.0f64;
    for i in 0..h.len() {
        for j in i + 1..h.len() {
            best = best.max(h[i].dist(h[j]));
        }
    }
    best
}

/// Whether the open segment `ab` passes through the polygon interior somewhere.
pub fn segment_meets_interior(poly: &Polygon, a: Point, b: Point) -> bool {
    let s = Segment { a, b };
    let mut cuts = vec![0.0, 1.0];
    for e in poly.edges() {
        match crate::geom::segment_intersection(s, e) {
            SegmentIntersection::None => {}
            SegmentIntersection::Point(p) => cuts.push(s.project(p)),
            SegmentIntersection::Overlap(p, q) => {
                cuts.push(s.project(p));
                cuts.push(s.project(q));
            }
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.windows(2).any(|w| {
        (w[1] - w[0]) * s.length() > EPS
            && poly.locate(s.at(0.5 * (w[0] + w[1]))) == PointLocation::Interior
    })
}

fn unit(p: Point) -> Point {
    p * (1.0 / p.norm())
}

/// Short width and its witness; falls back to `LW` with no witness when no
/// admissible reflex pair exists.
pub fn short_width(poly: &Polygon) -> (f64, Option<SwWitness>) {
    let reflex = poly.reflex_indices();
    let mut best: Option<(f64, SwWitness)> = None;
    for (k, &i) in reflex.iter().enumerate() {
        for &j in &reflex[k + 1..] {
            let (ri, rj) = (poly.vertex(i), poly.vertex(j));
            if !segment_meets_interior(poly, ri, rj) {
                continue;
            }
            for (first, second) in [(i, j), (j, i)] {
                if let Some((width, witness)) = pair_width(poly, first, second) {
                    let better = match &best {
                        None => true,
                        Some((bw, bwit)) => match width.partial_cmp(bw).unwrap() {
                            Ordering::Less => true,
                            Ordering::Greater => false,
                            Ordering::Equal => witness_key(&witness) < witness_key(bwit),
                        },
                    };
                    if better {
                        best = Some((width, witness));
                    }
                }
            }
        }
    }
    match best {
        Some((w, wit)) => (w, Some(wit)),
        None => (long_width(poly), None),
    }
}

fn witness_key(w: &SwWitness) -> (f64, f64, f64, f64) {
    (w.first.x, w.first.y, w.second.x, w.second.y)
}

/// Narrowest admissible strip for the ordered pair, over the candidate normals
/// perpendicular to the four incident edges.
fn pair_width(poly: &Polygon, i: usize, j: usize) -> Option<(f64, SwWitness)> {
    let (r1, r2) = (poly.vertex(i), poly.vertex(j));
    let w = r2 - r1;
    let d1 = [poly.prev(i) - r1, poly.next(i) - r1];
    let d2 = [poly.prev(j) - r2, poly.next(j) - r2];
    let admissible = |n: Point| {
        w.dot(n) > EPS * w.norm()
            && d1.iter().all(|d| d.dot(n) <= 1e-12 * d.norm())
            && d2.iter().all(|d| d.dot(n) >= -1e-12 * d.norm())
    };
    let mut best: Option<(f64, Point)> = None;
    for d in d1.iter().chain(d2.iter()) {
        for n in [unit(d.perp()), unit(d.perp()) * -1.0] {
            if admissible(n) {
                let width = w.dot(n);
                if best.is_none_or(|(b, _)| width < b) {
                    best = Some((width, n));
                }
            }
        }
    }
    best.map(|(width, normal)| {
        (
            width,
            SwWitness {
                first: r1,
                second: r2,
                normal,
            },
        )
    })
}

pub fn line_aspect_ratio(poly: &Polygon) -> LineAspect {
    let lw = long_width(poly);
    let (sw, sw_witness) = short_width(poly);
    LineAspect {
        lw,
        sw,
        ar: lw / sw,
        sw_witness,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    fn contains(&self, p: Point) -> bool {
        p.dist(self.center) <= self.radius * (1.0 + 1e-12) + 1e-12
    }

    fn from_two(a: Point, b: Point) -> Circle {
        let c = a.lerp(b, 0.5);
        Circle {
            center: c,
            radius: c.dist(a).max(c.dist(b)),
        }
    }

    fn from_three(a: Point, b: Point, c: Point) -> Circle {
        let (bx, by) = (b.x - a.x, b.y - a.y);
        let (cx, cy) = (c.x - a.x, c.y - a.y);
        let d = 2.0 * (bx * cy - by * cx);
        if d.abs() < 1e-300 {
            // Collinear: the widest pair decides.
            let mut best = Circle::from_two(a, b);
            for cand in [Circle::from_two(a, c), Circle::from_two(b, c)] {
                if cand.radius > best.radius {
                    best = cand;
                }
            }
            return best;
        }
        let b2 = bx * bx + by * by;
        let c2 = cx * cx + cy * cy;
        let ux = (cy * b2 - by * c2) / d;
        let uy = (bx * c2 - cx * b2) / d;
        let center = Point::new(a.x + ux, a.y + uy);
        let radius = center.dist(a).max(center.dist(b)).max(center.dist(c));
        Circle { center, radius }
    }
}

/// Smallest enclosing circle (randomised incremental, fixed seed).
pub fn min_enclosing_circle(points: &[Point]) -> Circle {
    let mut p = points.to_vec();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed));
    let mut c = Circle {
        center: p[0],
        radius: 0.0,
    };
    for i in 1..p.len() {
        if c.contains(p[i]) {
            continue;
        }
        c = Circle {
            center: p[i],
            radius: 0.0,
        };
        for j in 0..i {
            if c.contains(p[j]) {
                continue;
            }
            c = Circle::from_two(p[i], p[j]);
            for k in 0..j {
                if !c.contains(p[k]) {
                    c = Circle::from_three(p[i], p[j], p[k]);
                }
            }
        }
    }
    c
}

/// Signed distance to the boundary, positive inside.
fn signed_boundary_distance(poly: &Polygon, p: Point) -> f64 {
    let d = poly.boundary_distance(p);
    if poly.contains_parity(p) {
        d
    } else {
        -d
    }
}

struct Cell {
    center: Point,
    half: f64,
    dist: f64,
    potential: f64,
}

impl Cell {
    fn new(poly: &Polygon, center: Point, half: f64) -> Cell {
        let dist = signed_boundary_distance(poly, center);
        Cell {
            center,
            half,
            dist,
            potential: dist + half * std::f64::consts::SQRT_2,
        }
    }
}

impl PartialEq for Cell {
    fn eq(&self, o: &Self) -> bool {
        self.potential == o.potential
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Cell {
    fn cmp(&self, o: &Self) -> Ordering {
        self.potential.total_cmp(&o.potential)
    }
}

/// Largest inscribed circle by best-first quadtree refinement (pole of
/// inaccessibility). Refinement stops once no cell can beat the best radius
/// by more than `precision` times that radius, so the result is scale-free.
pub fn max_inscribed_circle(poly: &Polygon, precision: f64) -> Circle {
    let (lo, hi) = poly.bbox();
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let size = w.min(h);
    let mut heap = BinaryHeap::new();
    let half = size / 2.0;
    let mut y = lo.y;
    while y < hi.y {
        let mut x = lo.x;
        while x < hi.x {
            heap.push(Cell::new(poly, Point::new(x + half, y + half), half));
            x += size;
        }
        y += size;
    }
    let centroid = area_centroid(poly);
    let mut best = Cell::new(poly, centroid, 0.0);
    let bbox_center = Cell::new(poly, lo.lerp(hi, 0.5), 0.0);
    if bbox_center.dist > best.dist {
        best = bbox_center;
    }
    while let Some(cell) = heap.pop() {
        if cell.dist > best.dist {
            best = Cell::new(poly, cell.center, 0.0);
        }
        if cell.potential - best.dist <= precision * best.dist {
            continue;
        }
        let q = cell.half / 2.0;
        for (dx, dy) in [(-q, -q), (q, -q), (-q, q), (q, q)] {
            heap.push(Cell::new(
                poly,
                Point::new(cell.center.x + dx, cell.center.y + dy),
                q,
            ));
        }
    }
    Circle {
        center: best.center,
        radius: best.dist,
    }
}

fn area_centroid(poly: &Polygon) -> Point {
    let v = poly.vertices();
    let n = v.len();
    let (mut cx, mut cy, mut a) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let (p, q) = (v[i], v[(i + 1) % n]);
        let f = p.cross(q);
        cx += (p.x + q.x) * f;
        cy += (p.y + q.y) * f;
        a += f;
    }
    Point::new(cx / (3.0 * a), cy / (3.0 * a))
}

/// Relative radius tolerance for the inscribed circle.
pub const INSCRIBED_PRECISION: f64 = 1e-10;

pub fn disk_aspect_ratio(poly: &Polygon) -> DiskAspect {
    let outer = min_enclosing_circle(poly.vertices());
    let inner = max_inscribed_circle(poly, INSCRIBED_PRECISION);
    let (ld, sd) = (2.0 * outer.radius, 2.0 * inner.radius);
    DiskAspect {
        ld,
        sd,
        ar: ld / sd,
        enclosing_center: outer.center,
        inscribed_center: inner.center,
    }
}
