//! Exact arithmetic for the curve family `y^s = a·x^r + b` and the
//! complete-intersection fiber curves that parameterize its members through
//! prescribed x-coordinates.
//!
//! ```
//! use superfiber::{q, Fiber, ProjectivePoint};
//!
//! let fiber = Fiber::from_parts(vec![q("0"), q("2"), q("-1")], 3, 2).unwrap();
//! let y = ProjectivePoint::from_integers([1, 3, 0]).unwrap();
//! assert!(fiber.contains(&y).unwrap());
//!
//! let cwp = superfiber::phi_inverse(&fiber, &y).unwrap();
//! assert_eq!((cwp.curve().a(), cwp.curve().b()), (&q("1"), &q("1")));
//! ```

pub mod birational;
pub mod commands;
pub mod curve;
pub mod elkies;
pub mod error;
pub mod fiber;
pub mod low_genus;
pub mod manifest;
pub mod projective;
pub mod rational;
pub mod search;

pub use birational::{orbit_representative, phi_forward, phi_inverse};
pub use curve::{
    contains_point, curve_genus, twist_curve, twist_points, untwist_point, AffinePoint, Curve,
    CurveWithPoints, FamilyParams, TwistedCurve,
};
pub use error::{Error, Result};
pub use fiber::{
    fiber_genus, gonality_lower_bound, is_admissible, lazarsfeld_bound, n0_threshold, Fiber,
    FiberEquation, FiberPoint, FiberSpec, GeometryReport, PresentedEquation, XCoordinates,
};
pub use low_genus::{
    conic_param, cubic_to_diagonal, fermat_to_weierstrass, quadrics_to_quartic,
    weierstrass_from_diagonal, ConicSpec, CubicSpec, DiagonalCubicPoint, QuarticModel,
    WeierstrassPoint,
};
pub use projective::{normalize_projective, ProjectivePoint};
pub use rational::{q, sth_root_exact, Rational};
pub use search::{
    count_distinct_x, cross_check, enumerate_curves, search_fiber_points, CensusEntry,
    CrossCheckReport, SearchConfig, SearchMode,
};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    macro_rules! chapters {
        ($($name:ident => $file:literal),* $(,)?) => {
            $(
                #[doc = include_str!(concat!("../../../book/src/", $file))]
                mod $name {}
            )*
        };
    }

    chapters! {
        introduction => "introduction.md",
        exact_arithmetic => "exact-arithmetic.md",
        curves_and_twists => "curves-and-twists.md",
        fiber_curves => "fiber-curves.md",
        maps => "maps.md",
        low_genus => "low-genus.md",
        search => "search.md",
        rank_17 => "rank-17.md",
        cli => "cli.md",
    }
}
