//! Scalar-generic planar kernel: points, lines, circles, and the metric and
//! projective operations everything else builds on.

mod circle;
mod point;
mod scalar;

pub use circle::{
    circle_through, circles_orthogonal, concyclicity_residual, meet_lines, polar_line,
    pole_of_line, power_of_point, radical_axis, Circle,
};
pub use point::{affine_combination, Line, Point, Segment, Vec2};
pub use scalar::{Rat, Scalar, ToleranceContext};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("the two lines coincide")]
    CoincidentLines,
    #[error("the three points are collinear")]
    CollinearPoints,
    #[error("the circles are concentric")]
    ConcentricCircles,
    #[error("the pole coincides with the circle center")]
    PoleAtCenter,
    #[error("the line passes through the circle center")]
    LineThroughCenter,
    #[error("the first three points are collinear")]
    CollinearBase,
    #[error("operation does not accept a point at infinity")]
    InfinitePointUnsupported,
    #[error("the two points coincide")]
    CoincidentPoints,
    #[error("line coefficients (a, b) are both zero")]
    ZeroLine,
    #[error("negative squared radius")]
    NegativeRadiusSquared,
    #[error("value has no exact square root on the rational backend")]
    ExactSqrtUnavailable,
    #[error("at least four points are required")]
    NotEnoughPoints,
}
