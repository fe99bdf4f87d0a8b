//! The correspondence between curves through prescribed x-coordinates and
//! points of the fiber over those coordinates.
//!
//! Forward: `(y^s = a·x^r + b, (x_i, y_i))` goes to the tuple `(x_0, …, x_n)`
//! and the point `[a·x_0^r + b : y_1·y_0^(s-1) : … : y_n·y_0^(s-1)]`, which is
//! projectively `[y_0 : … : y_n]`.
//!
//! Inverse: from `[Y_0 : … : Y_n]` over `(α_0, …, α_n)`, with `A_i = α_i^r`,
//!
//! ```text
//! a = (Y_1^s - Y_0^s) / (A_1 - A_0)
//! b = (A_1·Y_0^s - A_0·Y_1^s) / (A_1 - A_0)
//! ```
//!
//! so that `a·A_i + b = Y_i^s` for every `i`.

use crate::curve::{AffinePoint, Curve, CurveWithPoints, FamilyParams};
use crate::error::{Error, Result};
use crate::fiber::{Fiber, FiberPoint, XCoordinates};
use crate::projective::{normalize_projective, ProjectivePoint};

/// Sends a curve with points to its fiber and fiber point.
///
/// The base point plays the role of `P_0`; the remaining points follow in
/// their listed order.
pub fn phi_forward(cwp: &CurveWithPoints) -> Result<(Fiber, FiberPoint)> {
    let base = cwp.base();
    if base.y.is_zero() {
        return Err(Error::BasePointVanishing);
    }
    let curve = cwp.curve();
    let (r, s) = (curve.params().r(), curve.params().s());

    let ordered: Vec<&AffinePoint> = std::iter::once(base)
        .chain(
            cwp.points()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != cwp.base_index())
                .map(|(_, p)| p),
        )
        .collect();

    let xs = XCoordinates::new(ordered.iter().map(|p| p.x.clone()).collect(), r)?;
    let fiber = Fiber::new(xs, s)?;

    let y0_pow = base.y.pow(s - 1);
    let mut y = Vec::with_capacity(ordered.len());
    y.push(curve.rhs(&base.x));
    y.extend(ordered[1..].iter().map(|p| &p.y * &y0_pow));

    let point = fiber.point(normalize_projective(&y)?)?;
    Ok((fiber, point))
}

/// Recovers the curve and its points from a fiber point.
///
/// The returned points are `(α_i, Y_i)` in the canonical integer
/// representative of `y`, so `Y_0^s = a·α_0^r + b`. Fiber points giving
/// `a·b = 0` are reported as [`Error::TrivialPoint`].
pub fn phi_inverse(fiber: &Fiber, y: &ProjectivePoint) -> Result<CurveWithPoints> {
    let p = fiber.point(y.clone())?;
    let s = fiber.s();
    let powers = fiber.powers();
    let (a0, a1) = (&powers[0], &powers[1]);
    let denom = a1 - a0;
    if denom.is_zero() {
        return Err(Error::DegenerateBase);
    }

    let yc = p.coords();
    let (y0s, y1s) = (yc[0].pow(s), yc[1].pow(s));
    let a = (&y1s - &y0s) / &denom;
    let b = (a1 * &y0s - a0 * &y1s) / &denom;
    if a.is_zero() || b.is_zero() {
        return Err(Error::TrivialPoint {
            a: Box::new(a),
            b: Box::new(b),
        });
    }

    let params = FamilyParams::new(fiber.r(), s)?;
    let points = fiber
        .alphas()
        .iter()
        .zip(yc)
        .map(|(x, y)| AffinePoint::new(x.clone(), y.clone()))
        .collect();
    CurveWithPoints::new(Curve::new(params, a, b), points).map_err(|e| match e {
        Error::PointNotOnCurve { index } => Error::NotOnFiber { index },
        other => other,
    })
}

/// Representative of `y` modulo sign changes of individual coordinates when
/// `s` is even; `y` itself when `s` is odd.
pub fn orbit_representative(y: &ProjectivePoint, s: u32) -> ProjectivePoint {
    if s.is_multiple_of(2) {
        y.abs_canonical()
    } else {
        y.clone()
    }
}
