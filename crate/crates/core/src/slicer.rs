//! Blocking vertices and the slicing construction of a finite guard set.
//!
//! Orientation: the target is oriented `v -> u` with `x` (the source start)
//! seeing `v`. The x-side guards cover a prefix of the target growing from
//! `v`, the y-side guards a suffix growing from `u`; slicing stops once the
//! two meet. Each new guard is found by looking back from the current
//! frontier point on the target towards the source: the ends of the source
//! intervals seen from the frontier are exactly the sight lines through the
//! blocking reflex vertices, and the end lying towards the far source
//! endpoint is the back-projected point `x_{i+1}` (resp. `y_{i+1}`).

use std::cmp::Ordering;

use crate::aspect::line_aspect_ratio;
use crate::error::{Error, Result};
use crate::geom::{line_cross_param, side, Point, Segment, EPS};
use crate::polygon::Polygon;
use crate::visibility::{classify_pair, sees, visible_intervals, IntervalOnSegment, PairClass};

/// A left or right blocking vertex of a point looking at a segment.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlockerResult {
    pub vertex: Option<Point>,
    /// Anchor point and the blocking vertex it sights through.
    pub sight_line: Option<(Point, Point)>,
    /// Where the sight line meets the opposite segment.
    pub t_point: Option<Point>,
}

impl BlockerResult {
    pub fn absent() -> Self {
        Self::default()
    }

    pub fn is_present(&self) -> bool {
        self.vertex.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hand {
    Left,
    Right,
}

/// A reflex vertex that passes the blocking-vertex conditions for `hand`,
/// with its sight-line hit on `t`.
pub(crate) fn blocking_candidate(
    poly: &Polygon,
    q: Point,
    i: usize,
    t: Segment,
    hand: Hand,
) -> Option<Point> {
    let r = poly.vertex(i);
    if r.dist(q) <= EPS {
        return None;
    }
    let c = line_cross_param(q, r, t).ok()??;
    let tp = t.at(c);
    let (dr, dt) = (r - q, tp - q);
    if dr.dot(dt) <= 0.0 || dr.norm() >= dt.norm() - EPS {
        return None;
    }
    let want = if hand == Hand::Left { 1 } else { -1 };
    let sp = side(q, r, poly.prev(i));
    let sn = side(q, r, poly.next(i));
    let exterior_on_hand =
        (sp == want || sp == 0) && (sn == want || sn == 0) && (sp != 0 || sn != 0);
    if !exterior_on_hand || !sees(poly, q, tp) {
        return None;
    }
    Some(tp)
}

/// Angular sweep over the reflex vertices inside the cone from `q` to `t`,
/// starting from the side opposite `hand`; the first vertex that blocks on
/// `hand` is the blocking vertex (collinear ties go to the nearer vertex).
fn sweep_blocker(poly: &Polygon, q: Point, t: Segment, hand: Hand) -> BlockerResult {
    let turn = side(q, t.a, t.b);
    if turn == 0 {
        return BlockerResult::absent();
    }
    let (cw, ccw) = if turn > 0 { (t.a, t.b) } else { (t.b, t.a) };
    let mut cone: Vec<usize> = poly
        .reflex_indices()
        .into_iter()
        .filter(|&i| {
            let r = poly.vertex(i);
            side(q, cw, r) >= 0 && side(q, ccw, r) <= 0
        })
        .collect();
    cone.sort_by(|&a, &b| {
        let (ra, rb) = (poly.vertex(a), poly.vertex(b));
        let s = side(q, ra, rb);
        let angular = match (s, hand) {
            (0, _) => Ordering::Equal,
            (1, Hand::Left) | (-1, Hand::Right) => Ordering::Less,
            _ => Ordering::Greater,
        };
        angular.then_with(|| q.dist(ra).partial_cmp(&q.dist(rb)).unwrap())
    });
    for i in cone {
        if let Some(tp) = blocking_candidate(poly, q, i, t, hand) {
            let r = poly.vertex(i);
            return BlockerResult {
                vertex: Some(r),
                sight_line: Some((q, r)),
                t_point: Some(tp),
            };
        }
    }
    BlockerResult::absent()
}

/// Left blocking vertex of `q` looking at `t`: the sight line through it
/// meets `t`, stays inside the polygon, and has the exterior on its left.
pub fn compute_lbv(poly: &Polygon, q: Point, t: Segment) -> Result<BlockerResult> {
    if visible_intervals(poly, q, t).is_empty() {
        return Err(Error::NoTargetView(q));
    }
    Ok(sweep_blocker(poly, q, t, Hand::Left))
}

/// Mirror image of [`compute_lbv`]: exterior on the right of the sight line.
pub fn compute_rbv(poly: &Polygon, q: Point, t: Segment) -> Result<BlockerResult> {
    if visible_intervals(poly, q, t).is_empty() {
        return Err(Error::NoTargetView(q));
    }
    Ok(sweep_blocker(poly, q, t, Hand::Right))
}

/// Reflex vertex touched by the open segment `ab`, nearest to `a`.
fn grazed_vertex(poly: &Polygon, a: Point, b: Point) -> Option<Point> {
    if a.dist(b) <= EPS {
        return None;
    }
    let s = Segment { a, b };
    poly.reflex_vertices()
        .into_iter()
        .filter(|&r| r.dist(a) > EPS && r.dist(b) > EPS && s.distance_to(r) <= 1e-7)
        .min_by(|r1, r2| a.dist(*r1).partial_cmp(&a.dist(*r2)).unwrap())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminationReason {
    /// The x-side prefix and the y-side suffix met.
    CrossOver,
    /// One side alone reached the far end of the target.
    SideExhausted,
    /// Both source endpoints see the whole target.
    CompletelyVisible,
}

impl TerminationReason {
    pub fn label(self) -> &'static str {
        match self {
            TerminationReason::CrossOver => "cross-over",
            TerminationReason::SideExhausted => "side-exhausted",
            TerminationReason::CompletelyVisible => "completely-visible",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub index: usize,
    pub x_point: Point,
    pub y_point: Point,
    pub lbv_x: BlockerResult,
    pub rbv_x: BlockerResult,
    pub lbv_y: BlockerResult,
    pub rbv_y: BlockerResult,
    /// Coverage frontiers after this iteration (`None` once that side is done).
    pub t_x: Option<Point>,
    pub t_y: Option<Point>,
    pub x_frontier: Option<f64>,
    pub y_frontier: Option<f64>,
    pub next_x: Option<Point>,
    pub next_y: Option<Point>,
    /// Back-projection from `t_x` / `t_y` onto the source.
    pub back_x: BlockerResult,
    pub back_y: BlockerResult,
    /// Whether the vertex found looking back from `t_x` is the one bounding
    /// `next_x`'s view at `t_x` (same for y).
    pub identity_x: Option<bool>,
    pub identity_y: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GuardSet {
    /// Deduplicated guards ordered from `x` to `y`.
    pub guards: Vec<Point>,
    pub x_points: Vec<Point>,
    pub y_points: Vec<Point>,
    pub trace: Vec<IterationRecord>,
    pub termination_iteration: usize,
    pub termination_reason: TerminationReason,
    /// Source oriented `x -> y`.
    pub source: Segment,
    /// Target oriented `v -> u`.
    pub target: Segment,
    pub ar: f64,
}

impl GuardSet {
    /// `2 * (ceil(AR) + 1)`.
    pub fn bound(&self) -> usize {
        guard_bound(self.ar)
    }
}

pub fn guard_bound(ar: f64) -> usize {
    2 * (ar.ceil() as usize + 1)
}

pub fn iteration_cap(ar: f64) -> usize {
    4 * ar.ceil() as usize + 16
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    /// Covering from `v` (param 0) towards `u`.
    Forward,
    /// Covering from `u` (param 1) towards `v`.
    Backward,
}

/// Merged coverage on the target, as parameter intervals.
#[derive(Debug, Clone, Default)]
struct Cover {
    parts: Vec<(f64, f64)>,
    tol: f64,
}

impl Cover {
    fn new(tol: f64) -> Self {
        Cover {
            parts: Vec::new(),
            tol,
        }
    }

    fn with(&self, ivs: &[IntervalOnSegment]) -> Cover {
        let mut parts = self.parts.clone();
        parts.extend(ivs.iter().map(|i| (i.lo, i.hi)));
        parts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (lo, hi) in parts {
            match merged.last_mut() {
                Some(last) if lo <= last.1 + self.tol => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        Cover {
            parts: merged,
            tol: self.tol,
        }
    }

    fn frontier(&self, dir: Dir) -> Option<f64> {
        match dir {
            Dir::Forward => self.parts.first().filter(|p| p.0 <= self.tol).map(|p| p.1),
            Dir::Backward => self
                .parts
                .last()
                .filter(|p| p.1 >= 1.0 - self.tol)
                .map(|p| p.0),
        }
    }
}

/// `a` strictly further along `dir` than `b`.
fn advances(dir: Dir, a: Option<f64>, b: Option<f64>, tol: f64) -> bool {
    match (a, b) {
        (None, _) => false,
        (Some(_), None) => true,
        (Some(a), Some(b)) => match dir {
            Dir::Forward => a > b + tol,
            Dir::Backward => a < b - tol,
        },
    }
}

struct Ctx<'a> {
    poly: &'a Polygon,
    source: Segment,
    target: Segment,
    reflex: Vec<Point>,
    tol: f64,
}

struct Step {
    point: Point,
    cover: Cover,
    back: BlockerResult,
    identity: Option<bool>,
}

impl Ctx<'_> {
    /// Candidate source parameters whose sight lines can change the view of
    /// the target: through reflex pairs and through (reflex, target end).
    fn event_params(&self) -> Vec<f64> {
        let mut cs = Vec::new();
        let mut add = |p: Point, q: Point| {
            if p.dist(q) > EPS {
                if let Ok(Some(c)) = line_cross_param(p, q, self.source) {
                    cs.push(c);
                }
            }
        };
        for (k, &r) in self.reflex.iter().enumerate() {
            add(r, self.target.a);
            add(r, self.target.b);
            for &r2 in &self.reflex[k + 1..] {
                add(r, r2);
            }
        }
        cs
    }

    /// Picks the next guard for one side; `None` when no candidate advances.
    fn step(&self, dir: Dir, cover: &Cover, current: Point, events: &[f64]) -> Option<Step> {
        let old = cover.frontier(dir);
        let c = old.unwrap_or(match dir {
            Dir::Forward => 0.0,
            Dir::Backward => 1.0,
        });
        let tc = self.target.at(c);
        let back_ivs = visible_intervals(self.poly, tc, self.source);
        if back_ivs.is_empty() {
            return None;
        }
        // The back-projection: end of the source interval seen from `tc`
        // (the one holding the current guard, else the nearest) towards the
        // far source endpoint.
        let cur = self.source.project(current).clamp(0.0, 1.0);
        let holder = back_ivs
            .iter()
            .min_by(|a, b| {
                let da = if a.contains(cur) {
                    0.0
                } else {
                    (a.lo - cur).abs().min((a.hi - cur).abs())
                };
                let db = if b.contains(cur) {
                    0.0
                } else {
                    (b.lo - cur).abs().min((b.hi - cur).abs())
                };
                da.partial_cmp(&db).unwrap()
            })
            .unwrap();
        let primary = match dir {
            Dir::Forward => holder.hi,
            Dir::Backward => holder.lo,
        };

        let mut cands: Vec<f64> = vec![primary];
        for iv in &back_ivs {
            cands.push(iv.lo);
            cands.push(iv.hi);
        }
        cands.extend(
            events
                .iter()
                .copied()
                .filter(|&e| back_ivs.iter().any(|iv| iv.contains(e))),
        );

        let mut best: Option<(f64, Cover, Option<f64>)> = None;
        for &p in &cands {
            let q = self.source.at(p);
            let ivs = visible_intervals(self.poly, q, self.target);
            let next = cover.with(&ivs);
            let f = next.frontier(dir);
            if !advances(dir, f, old, self.tol) {
                continue;
            }
            let better = match &best {
                None => true,
                Some((_, _, bf)) => advances(dir, f, *bf, 1e-12),
            };
            if better {
                best = Some((p, next, f));
            }
        }
        let (p, next, _) = best?;
        let point = self.source.at(p);
        let back_point = self.source.at(primary);
        let back_vertex = grazed_vertex(self.poly, tc, back_point);
        let back = BlockerResult {
            vertex: back_vertex,
            sight_line: back_vertex.map(|v| (tc, v)),
            t_point: Some(back_point),
        };
        // The vertex bounding the new guard's view where its coverage joins
        // the old frontier.
        let identity = back_vertex.map(|bv| {
            let joint = grazed_vertex(self.poly, point, tc);
            joint.is_some_and(|j| j.approx_eq(bv))
        });
        Some(Step {
            point,
            cover: next,
            back,
            identity,
        })
    }
}

fn blockers(poly: &Polygon, q: Point, t: Segment) -> (BlockerResult, BlockerResult) {
    (
        compute_lbv(poly, q, t).unwrap_or_default(),
        compute_rbv(poly, q, t).unwrap_or_default(),
    )
}

/// Runs the slicing construction for source `s` (`x -> y`) and target `t`.
pub fn slice(poly: &Polygon, s: Segment, t: Segment) -> Result<GuardSet> {
    if classify_pair(poly, s, t)? == PairClass::PartiallyInvisible {
        return Err(Error::NotWeaklyVisible);
    }
    let (x, y) = (s.a, s.b);
    let x_view = visible_intervals(poly, x, t);
    let target = if x_view.iter().any(|iv| iv.contains(0.0)) {
        t
    } else if x_view.iter().any(|iv| iv.contains(1.0)) {
        t.reversed()
    } else {
        let y_view = visible_intervals(poly, y, t);
        if y_view.iter().any(|iv| iv.contains(1.0)) || !y_view.iter().any(|iv| iv.contains(0.0)) {
            t
        } else {
            t.reversed()
        }
    };

    let aspect = line_aspect_ratio(poly);
    let cap = iteration_cap(aspect.ar);
    let tol = EPS / target.length();
    let ctx = Ctx {
        poly,
        source: s,
        target,
        reflex: poly.reflex_vertices(),
        tol,
    };
    let events = ctx.event_params();

    let x_ivs = visible_intervals(poly, x, target);
    let y_ivs = visible_intervals(poly, y, target);
    let both_full =
        x_ivs.len() == 1 && x_ivs[0].is_full() && y_ivs.len() == 1 && y_ivs[0].is_full();
    let mut x_cover = Cover::new(tol).with(&x_ivs);
    let mut y_cover = Cover::new(tol).with(&y_ivs);
    let (mut xi, mut yi) = (x, y);
    let mut x_points = vec![x];
    let mut y_points = vec![y];
    let mut trace = Vec::new();

    let mut i = 0;
    let reason = loop {
        let fx = x_cover.frontier(Dir::Forward);
        let fy = y_cover.frontier(Dir::Backward);
        let x_done = fx.is_some_and(|f| f >= 1.0 - tol);
        let y_done = fy.is_some_and(|f| f <= tol);
        let met = matches!((fx, fy), (Some(a), Some(b)) if a >= b - tol);
        let (lbv_x, rbv_x) = blockers(poly, xi, target);
        let (lbv_y, rbv_y) = blockers(poly, yi, target);
        let mut rec = IterationRecord {
            index: i,
            x_point: xi,
            y_point: yi,
            lbv_x,
            rbv_x,
            lbv_y,
            rbv_y,
            t_x: fx.filter(|_| !x_done).map(|f| target.at(f)),
            t_y: fy.filter(|_| !y_done).map(|f| target.at(f)),
            x_frontier: fx,
            y_frontier: fy,
            next_x: None,
            next_y: None,
            back_x: BlockerResult::absent(),
            back_y: BlockerResult::absent(),
            identity_x: None,
            identity_y: None,
        };
        if i == 0 && both_full {
            trace.push(rec);
            break TerminationReason::CompletelyVisible;
        }
        if x_done || y_done {
            trace.push(rec);
            break TerminationReason::SideExhausted;
        }
        if met {
            trace.push(rec);
            break TerminationReason::CrossOver;
        }
        if i + 1 > cap {
            return Err(Error::IterationCapExceeded(cap));
        }
        let sx = ctx.step(Dir::Forward, &x_cover, xi, &events);
        let sy = ctx.step(Dir::Backward, &y_cover, yi, &events);
        if sx.is_none() && sy.is_none() {
            return Err(Error::StalledWithoutProgress(i));
        }
        if let Some(st) = sx {
            rec.next_x = Some(st.point);
            rec.back_x = st.back;
            rec.identity_x = st.identity;
            x_cover = st.cover;
            xi = st.point;
            x_points.push(xi);
        }
        if let Some(st) = sy {
            rec.next_y = Some(st.point);
            rec.back_y = st.back;
            rec.identity_y = st.identity;
            y_cover = st.cover;
            yi = st.point;
            y_points.push(yi);
        }
        trace.push(rec);
        i += 1;
    };

    let mut guards: Vec<(f64, Point)> = x_points
        .iter()
        .chain(y_points.iter())
        .map(|&p| (s.project(p), p))
        .collect();
    guards.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    guards.dedup_by(|a, b| a.1.dist(b.1) <= EPS);

    Ok(GuardSet {
        guards: guards.into_iter().map(|g| g.1).collect(),
        x_points,
        y_points,
        trace,
        termination_iteration: i,
        termination_reason: reason,
        source: s,
        target,
        ar: aspect.ar,
    })
}
