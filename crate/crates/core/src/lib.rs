//! Finite guard sets for a target segment that is weakly visible from a
//! source segment inside a simple polygon.
//!
//! The guard count is governed by the polygon's line aspect ratio: the
//! ratio of its long width (hull diameter) to its short width (narrowest
//! strip between parallel lines tangent to reflex vertices from inside).

pub mod aspect;
pub mod error;
pub mod fixtures;
pub mod geom;
pub mod oracle;
pub mod polygon;
pub mod slicer;
pub mod visibility;

pub use error::{Error, Result};
pub use geom::{Orientation, Point, Segment, EPS};
pub use polygon::{PointLocation, Polygon};
pub use visibility::{IntervalOnSegment, PairClass, VisibilityPolygon};
