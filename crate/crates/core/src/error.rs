use crate::Rational;

/// Errors raised by the curve, fiber and map constructions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("all projective coordinates are zero")]
    AllZero,

    #[error("a projective point needs at least 2 coordinates, got {0}")]
    TooFewCoordinates(usize),

    #[error("exponents must satisfy r >= 2 and s >= 2 (got r = {r}, s = {s})")]
    InvalidExponents { r: u32, s: u32 },

    #[error("fiber shape needs n >= 2 and s >= 2 (got n = {n}, s = {s})")]
    InvalidFiberShape { n: usize, s: u32 },

    #[error("a fiber needs at least 3 x-coordinates (n >= 2), got {0}")]
    TooFewPoints(usize),

    #[error("point {index} does not lie on the curve")]
    PointNotOnCurve { index: usize },

    #[error("x-coordinates at positions {first} and {second} coincide")]
    DuplicateX { first: usize, second: usize },

    #[error("base point index {index} out of range for {len} points")]
    BaseIndexOutOfRange { index: usize, len: usize },

    #[error("the base point has y = 0")]
    BasePointVanishing,

    #[error("point does not lie on the twisted curve")]
    PointNotOnTwist,

    #[error(
        "x-coordinates are not admissible: positions {first} and {second} have equal r-th powers"
    )]
    NotAdmissible { first: usize, second: usize },

    #[error("expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("equation index {index} outside 2..={n}")]
    EquationIndex { index: usize, n: usize },

    #[error("alpha_1^r equals alpha_0^r; the inverse map is undefined")]
    DegenerateBase,

    #[error("point does not lie on the fiber (equation {index} fails)")]
    NotOnFiber { index: usize },

    #[error("trivial fiber point: recovered a = {a}, b = {b}")]
    TrivialPoint { a: Box<Rational>, b: Box<Rational> },

    #[error("coefficient {0} must be nonzero")]
    ZeroCoefficient(&'static str),

    #[error("parameter gives the zero vector")]
    DegenerateParameter,

    #[error("a coordinate of the cubic point is zero")]
    CoordinateVanishing,

    #[error("point does not lie on the cubic")]
    NotOnCubic,

    #[error("U + V = 0: the image is the point at infinity")]
    PointAtInfinity,

    #[error("construction needs n = {n} and s = {s}, got n = {found_n}, s = {found_s}")]
    WrongShape {
        n: usize,
        s: u32,
        found_n: usize,
        found_s: u32,
    },

    #[error("gonality bound needs degrees >= 2")]
    InvalidDegrees,

    #[error("integer overflow in closed-form evaluation")]
    Overflow,

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
