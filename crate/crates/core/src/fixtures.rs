//! Reference polygons used throughout the tests and the CLI examples.

use crate::geom::{Point, Segment};
use crate::polygon::Polygon;

fn poly(v: &[(f64, f64)]) -> Polygon {
    let pts: Vec<Point> = v.iter().map(|&(x, y)| Point::new(x, y)).collect();
    Polygon::validate(&pts).expect("fixture polygon is simple")
}

/// Unit square.
pub fn square() -> Polygon {
    poly(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)])
}

/// L-shape: an 8x3 band with a 3-wide column rising to y = 8 on the right.
/// Single reflex vertex at (5,3).
pub fn l8() -> Polygon {
    poly(&[(0., 0.), (8., 0.), (8., 8.), (5., 8.), (5., 3.), (0., 3.)])
}

/// 10x10 square with a bottom notch over x in (3,5), y < 4 and a top notch
/// over x in (6,8), y > 6.
pub fn z10() -> Polygon {
    poly(&[
        (0., 0.),
        (3., 0.),
        (3., 4.),
        (5., 4.),
        (5., 0.),
        (10., 0.),
        (10., 10.),
        (8., 10.),
        (8., 6.),
        (6., 6.),
        (6., 10.),
        (0., 10.),
    ])
}

/// Polygon with a source and a target segment.
#[derive(Debug, Clone, PartialEq)]
pub struct FixtureScene {
    pub name: &'static str,
    pub polygon: Polygon,
    pub source: Segment,
    pub target: Segment,
}

fn seg(a: (f64, f64), b: (f64, f64)) -> Segment {
    Segment::new(Point::new(a.0, a.1), Point::new(b.0, b.1)).expect("fixture segment")
}

/// Source along the bottom band, target up the right column.
pub fn l8_scene() -> FixtureScene {
    FixtureScene {
        name: "l8",
        polygon: l8(),
        source: seg((0.5, 1.), (7.5, 1.)),
        target: seg((7.9, 2.5), (7.9, 7.9)),
    }
}

/// Completely visible pair inside the unit square.
pub fn square_scene() -> FixtureScene {
    FixtureScene {
        name: "square",
        polygon: square(),
        source: seg((0.3, 0.2), (0.7, 0.2)),
        target: seg((0.3, 0.8), (0.7, 0.8)),
    }
}

/// Source right of the bottom notch, target along the top left.
pub fn z10_scene() -> FixtureScene {
    FixtureScene {
        name: "z10",
        polygon: z10(),
        source: seg((5.5, 0.5), (9.5, 0.5)),
        target: seg((0.5, 9.5), (5.5, 9.5)),
    }
}

/// Part of the target is hidden from the whole source.
pub fn hidden_scene() -> FixtureScene {
    FixtureScene {
        name: "hidden",
        polygon: l8(),
        source: seg((0.5, 1.), (2., 1.)),
        target: seg((7.9, 6.), (7.9, 7.9)),
    }
}

/// L8 with its bottom band stretched `k` units to the left. The strip
/// between the band walls and the single reflex vertex does not change.
pub fn stretched_l8(k: f64) -> FixtureScene {
    FixtureScene {
        name: "stretched-l8",
        polygon: poly(&[(-k, 0.), (8., 0.), (8., 8.), (5., 8.), (5., 3.), (-k, 3.)]),
        source: seg((0.5, 1.), (7.5, 1.)),
        target: seg((7.9, 2.5), (7.9, 7.9)),
    }
}

/// Weakly or completely visible fixtures.
pub fn scenes() -> Vec<FixtureScene> {
    vec![l8_scene(), square_scene(), z10_scene()]
}
