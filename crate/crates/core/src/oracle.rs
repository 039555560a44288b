//! Brute-force checkers and a seeded scene generator.
//!
//! Nothing here calls into the slicer; the checks are meant to be the
//! independent side of every comparison made against it.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{side, Point, Segment, SegmentIntersection, EPS};
use crate::polygon::{PointLocation, Polygon};
use crate::visibility::{classify_pair, sees, segment_inside, PairClass};

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub polygon: Polygon,
    pub source: Segment,
    pub target: Segment,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub samples: usize,
    /// Target parameter and point of every uncovered sample, by parameter.
    pub uncovered: Vec<(f64, Point)>,
    pub covered_fraction: f64,
}

impl CoverageReport {
    pub fn is_complete(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Tests `n + 1` evenly spaced target points against every guard.
pub fn coverage_report(poly: &Polygon, guards: &[Point], t: Segment, n: usize) -> CoverageReport {
    let n = n.max(2);
    let uncovered: Vec<(f64, Point)> = (0..=n)
        .map(|k| k as f64 / n as f64)
        .map(|c| (c, t.at(c)))
        .filter(|&(_, p)| !guards.iter().any(|&g| sees(poly, g, p)))
        .collect();
    let samples = n + 1;
    CoverageReport {
        samples,
        covered_fraction: 1.0 - uncovered.len() as f64 / samples as f64,
        uncovered,
    }
}

/// Angle of `e` measured from `d`, in (-pi, pi].
fn angle_from(d: Point, e: Point) -> f64 {
    d.cross(e).atan2(d.dot(e))
}

/// Exhaustive left/right blocking vertices of `q` looking at `t`.
///
/// Every reflex vertex is checked directly: its sight line from `q` must
/// reach `t` beyond it, the sight segment must be clear (grazing allowed),
/// and both incident edges must leave on the blocking side. A survivor on
/// each side must have every other qualifying vertex further towards that
/// side (or on the same line but further away).
pub fn brute_blockers(poly: &Polygon, q: Point, t: Segment) -> (Option<Point>, Option<Point>) {
    let (left, right) = brute_blocker_sets(poly, q, t);
    (left.first().copied(), right.first().copied())
}

/// All survivors per side. Each list should hold at most one vertex.
pub fn brute_blocker_sets(poly: &Polygon, q: Point, t: Segment) -> (Vec<Point>, Vec<Point>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in poly.reflex_indices() {
        let r = poly.vertex(i);
        let d = r - q;
        if d.norm() <= EPS {
            continue;
        }
        // Line q + s*d against t.a + u*(t.b - t.a).
        let f = t.b - t.a;
        let den = d.cross(f);
        if den == 0.0 {
            continue;
        }
        let s = (t.a - q).cross(f) / den;
        let u = (t.a - q).cross(d) / den;
        if !(-1e-12..=1.0 + 1e-12).contains(&u) || s <= 1.0 + EPS / d.norm() {
            continue;
        }
        let hit = t.at(u.clamp(0.0, 1.0));
        if !sees(poly, q, hit) {
            continue;
        }
        let a1 = angle_from(d, poly.prev(i) - r);
        let a2 = angle_from(d, poly.next(i) - r);
        let on_left = |a: f64| a >= 0.0;
        let on_right = |a: f64| a <= 0.0 || a == std::f64::consts::PI;
        let flat = |a: f64| a == 0.0 || a.abs() == std::f64::consts::PI;
        if flat(a1) && flat(a2) {
            continue;
        }
        if on_left(a1) && on_left(a2) {
            left.push(r);
        }
        if on_right(a1) && on_right(a2) {
            right.push(r);
        }
    }
    let survivors = |cands: &Vec<Point>, want: i8| -> Vec<Point> {
        cands
            .iter()
            .copied()
            .filter(|&r| {
                cands.iter().all(|&o| {
                    o == r || {
                        let s = side(q, r, o);
                        s == want || (s == 0 && q.dist(o) > q.dist(r))
                    }
                })
            })
            .collect()
    };
    (survivors(&left, 1), survivors(&right, -1))
}

/// Distance along the ray from `q` in direction `(cos a, sin a)` to the boundary.
fn ray_length(poly: &Polygon, q: Point, a: f64) -> f64 {
    let d = Point::new(a.cos(), a.sin());
    let mut best = f64::INFINITY;
    for e in poly.edges() {
        let f = e.b - e.a;
        let den = d.cross(f);
        if den == 0.0 {
            continue;
        }
        let s = (e.a - q).cross(f) / den;
        let u = (e.a - q).cross(d) / den;
        if (0.0..=1.0).contains(&u) && s > EPS && s < best {
            best = s;
        }
    }
    if !best.is_finite() {
        return 0.0;
    }
    // Rays leaving through the boundary at q see nothing.
    if poly.locate(q + d * (best * 0.5)) == PointLocation::Exterior {
        return 0.0;
    }
    best
}

/// Area of the star-shaped region swept by `rays` evenly spaced rays from `q`.
pub fn vp_oracle(poly: &Polygon, q: Point, rays: usize) -> Result<f64> {
    if rays < 360 {
        return Err(Error::InvalidArgument(format!(
            "need at least 360 rays, got {rays}"
        )));
    }
    let step = std::f64::consts::TAU / rays as f64;
    let r: Vec<f64> = (0..rays)
        .map(|k| ray_length(poly, q, k as f64 * step))
        .collect();
    let sin = step.sin();
    Ok((0..rays)
        .map(|k| 0.5 * r[k] * r[(k + 1) % rays] * sin)
        .sum())
}

const COORD_RANGE: f64 = 100.0;
const POLYGON_ATTEMPTS: usize = 40;
const SEGMENT_ATTEMPTS: usize = 300;

fn round_coord(v: f64) -> f64 {
    (v * 1e4).round() / 1e4
}

fn random_point(rng: &mut ChaCha8Rng) -> Point {
    Point::new(
        round_coord(rng.gen_range(0.0..COORD_RANGE)),
        round_coord(rng.gen_range(0.0..COORD_RANGE)),
    )
}

/// Random simple polygon: random points joined in random order, then
/// untangled by 2-opt moves until no two edges cross.
pub fn random_polygon(rng: &mut ChaCha8Rng, n: usize) -> Option<Polygon> {
    let mut pts: Vec<Point> = (0..n).map(|_| random_point(rng)).collect();
    pts.shuffle(rng);
    let mut guard = 0;
    'outer: loop {
        guard += 1;
        if guard > 20 * n * n {
            return None;
        }
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let e1 = Segment {
                    a: pts[i],
                    b: pts[(i + 1) % n],
                };
                let e2 = Segment {
                    a: pts[j],
                    b: pts[(j + 1) % n],
                };
                if crate::geom::segment_intersection(e1, e2) != SegmentIntersection::None {
                    pts[i + 1..=j].reverse();
                    continue 'outer;
                }
            }
        }
        break;
    }
    Polygon::validate(&pts).ok()
}

fn random_interior_segment(rng: &mut ChaCha8Rng, poly: &Polygon) -> Option<Segment> {
    let (lo, hi) = poly.bbox();
    let mut interior = || {
        for _ in 0..200 {
            let p = Point::new(
                round_coord(rng.gen_range(lo.x..hi.x)),
                round_coord(rng.gen_range(lo.y..hi.y)),
            );
            if poly.locate(p) == PointLocation::Interior {
                return Some(p);
            }
        }
        None
    };
    let a = interior()?;
    let b = interior()?;
    let s = Segment::new(a, b).ok()?;
    (s.length() > 1.0 && segment_inside(poly, s)).then_some(s)
}

/// Seeded scene whose segment pair is weakly (not completely) visible.
pub fn random_scene(seed: u64, n_vertices: usize) -> Result<Scene> {
    if n_vertices < 4 {
        return Err(Error::InvalidArgument(format!(
            "need at least 4 vertices, got {n_vertices}"
        )));
    }
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ n_vertices as u64);
    let mut attempts = 0;
    for _ in 0..POLYGON_ATTEMPTS {
        let Some(poly) = random_polygon(&mut rng, n_vertices) else {
            attempts += 1;
            continue;
        };
        if poly.reflex_indices().is_empty() {
            attempts += 1;
            continue;
        }
        for _ in 0..SEGMENT_ATTEMPTS {
            attempts += 1;
            let (Some(s), Some(t)) = (
                random_interior_segment(&mut rng, &poly),
                random_interior_segment(&mut rng, &poly),
            ) else {
                continue;
            };
            if crate::geom::segment_intersection(s, t) != SegmentIntersection::None {
                continue;
            }
            if classify_pair(&poly, s, t) == Ok(PairClass::WeaklyVisible) {
                return Ok(Scene {
                    polygon: poly,
                    source: s,
                    target: t,
                    seed,
                });
            }
        }
    }
    Err(Error::GenerationBudgetExceeded(attempts))
}
