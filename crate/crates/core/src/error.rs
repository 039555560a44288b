use thiserror::Error;

use crate::geom::Point;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("segment endpoints coincide at ({}, {})", .0.x, .0.y)]
    DegenerateSegment(Point),
    #[error("line contains the segment")]
    CollinearOverlap,

    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("duplicate vertex at index {0}")]
    DuplicateVertex(usize),
    #[error("edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),

    #[error("query point ({}, {}) is outside the polygon", .0.x, .0.y)]
    QueryOutsidePolygon(Point),
    #[error("segment is not contained in the polygon")]
    SegmentOutsidePolygon,

    #[error("point ({}, {}) sees no part of the target", .0.x, .0.y)]
    NoTargetView(Point),
    #[error("target is not weakly visible from the source")]
    NotWeaklyVisible,
    #[error("slicing exceeded the iteration cap of {0}")]
    IterationCapExceeded(usize),
    #[error("slicing stalled at iteration {0}")]
    StalledWithoutProgress(usize),

    #[error("scene generation gave up after {0} attempts")]
    GenerationBudgetExceeded(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
