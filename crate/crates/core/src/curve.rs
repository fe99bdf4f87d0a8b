//! The family `y^s = a·x^r + b`, its rational points and its twists.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::sth_root_exact;
use crate::Rational;

/// Exponents `(r, s)` of the family, both at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    r: u32,
    s: u32,
}

impl FamilyParams {
    pub fn new(r: u32, s: u32) -> Result<Self> {
        if r < 2 || s < 2 {
            return Err(Error::InvalidExponents { r, s });
        }
        Ok(FamilyParams { r, s })
    }

    /// Exponent of `x`.
    pub fn r(&self) -> u32 {
        self.r
    }

    /// Exponent of `y`.
    pub fn s(&self) -> u32 {
        self.s
    }
}

/// Genus of a smooth member of the family (`a·b ≠ 0`).
///
/// The projection to the x-line has degree `s`, is totally ramified over the
/// `r` roots of `a·x^r + b`, and has `gcd(r, s)` points over infinity, which
/// gives `((r-1)(s-1) + 1 - gcd(r, s)) / 2`.
pub fn curve_genus(params: FamilyParams) -> u64 {
    let (r, s) = (u64::from(params.r), u64::from(params.s));
    ((r - 1) * (s - 1) + 1 - r.gcd(&s)) / 2
}

/// A member `y^s = a·x^r + b` of the family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "CurveRepr", into = "CurveRepr")]
pub struct Curve {
    params: FamilyParams,
    a: Rational,
    b: Rational,
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    r: u32,
    s: u32,
    a: Rational,
    b: Rational,
}

impl TryFrom<CurveRepr> for Curve {
    type Error = Error;
    fn try_from(c: CurveRepr) -> Result<Self> {
        Ok(Curve::new(FamilyParams::new(c.r, c.s)?, c.a, c.b))
    }
}

impl From<Curve> for CurveRepr {
    fn from(c: Curve) -> Self {
        CurveRepr {
            r: c.params.r,
            s: c.params.s,
            a: c.a,
            b: c.b,
        }
    }
}

impl Curve {
    pub fn new(params: FamilyParams, a: Rational, b: Rational) -> Self {
        Curve { params, a, b }
    }

    pub fn params(&self) -> FamilyParams {
        self.params
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `a·b ≠ 0`.
    pub fn is_smooth(&self) -> bool {
        !self.a.is_zero() && !self.b.is_zero()
    }

    /// Right-hand side `a·x^r + b`.
    pub fn rhs(&self, x: &Rational) -> Rational {
        &self.a * x.pow(self.params.r) + &self.b
    }

    pub fn contains(&self, p: &AffinePoint) -> bool {
        p.y.pow(self.params.s) == self.rhs(&p.x)
    }

    pub fn genus(&self) -> u64 {
        curve_genus(self.params)
    }

    /// The curve `(λ^s·a, λ^s·b)`, isomorphic via `y ↦ λ·y`.
    pub fn scaled(&self, lambda: &Rational) -> Curve {
        let f = lambda.pow(self.params.s);
        Curve::new(self.params, &self.a * &f, &self.b * &f)
    }

    /// Whether `other = (λ^s·a, λ^s·b)` for some nonzero rational `λ`.
    pub fn is_equivalent(&self, other: &Curve) -> bool {
        if self.params != other.params {
            return false;
        }
        scaling_ratio(&[(&self.a, &other.a), (&self.b, &other.b)])
            .and_then(|t| sth_root_exact(&t, self.params.s))
            .is_some_and(|l| !l.is_zero())
    }
}

/// Common ratio `new / old` over the pairs, if one exists and is nonzero.
fn scaling_ratio(pairs: &[(&Rational, &Rational)]) -> Option<Rational> {
    let mut ratio: Option<Rational> = None;
    for (old, new) in pairs {
        match (old.is_zero(), new.is_zero()) {
            (true, true) => continue,
            (true, false) | (false, true) => return None,
            (false, false) => {
                let t = *new / *old;
                match &ratio {
                    Some(r) if *r != t => return None,
                    Some(_) => {}
                    None => ratio = Some(t),
                }
            }
        }
    }
    ratio
}

/// Checks `contains_point` without building a [`Curve`] first.
pub fn contains_point(curve: &Curve, p: &AffinePoint) -> bool {
    curve.contains(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffinePoint {
    pub x: Rational,
    pub y: Rational,
}

impl AffinePoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        AffinePoint { x, y }
    }
}

/// A curve together with an ordered list of rational points on it.
///
/// Points lie on the curve and have pairwise distinct x-coordinates. The
/// point at `base_index` is the one used for twisting; operations that need
/// its y-coordinate to be nonzero report [`Error::BasePointVanishing`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CwpRepr", into = "CwpRepr")]
pub struct CurveWithPoints {
    curve: Curve,
    points: Vec<AffinePoint>,
    base_index: usize,
}

#[derive(Serialize, Deserialize)]
struct CwpRepr {
    curve: Curve,
    points: Vec<AffinePoint>,
    #[serde(default)]
    base_index: usize,
}

impl TryFrom<CwpRepr> for CurveWithPoints {
    type Error = Error;
    fn try_from(c: CwpRepr) -> Result<Self> {
        CurveWithPoints::with_base(c.curve, c.points, c.base_index)
    }
}

impl From<CurveWithPoints> for CwpRepr {
    fn from(c: CurveWithPoints) -> Self {
        CwpRepr {
            curve: c.curve,
            points: c.points,
            base_index: c.base_index,
        }
    }
}

impl CurveWithPoints {
    pub fn new(curve: Curve, points: Vec<AffinePoint>) -> Result<Self> {
        Self::with_base(curve, points, 0)
    }

    pub fn with_base(curve: Curve, points: Vec<AffinePoint>, base_index: usize) -> Result<Self> {
        if base_index >= points.len() {
            return Err(Error::BaseIndexOutOfRange {
                index: base_index,
                len: points.len(),
            });
        }
        if let Some(index) = points.iter().position(|p| !curve.contains(p)) {
            return Err(Error::PointNotOnCurve { index });
        }
        for (j, pj) in points.iter().enumerate() {
            if let Some(i) = points[..j].iter().position(|pi| pi.x == pj.x) {
                return Err(Error::DuplicateX {
                    first: i,
                    second: j,
                });
            }
        }
        Ok(CurveWithPoints {
            curve,
            points,
            base_index,
        })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    pub fn base_index(&self) -> usize {
        self.base_index
    }

    pub fn base(&self) -> &AffinePoint {
        &self.points[self.base_index]
    }

    pub fn xs(&self) -> Vec<Rational> {
        self.points.iter().map(|p| p.x.clone()).collect()
    }

    /// Applies `(a, b, y) ↦ (λ^s·a, λ^s·b, λ·y)`.
    pub fn scaled(&self, lambda: &Rational) -> CurveWithPoints {
        CurveWithPoints {
            curve: self.curve.scaled(lambda),
            points: self
                .points
                .iter()
                .map(|p| AffinePoint::new(p.x.clone(), &p.y * lambda))
                .collect(),
            base_index: self.base_index,
        }
    }

    /// Equality modulo `(a, b, y) ~ (λ^s·a, λ^s·b, λ·y)` with the same
    /// x-coordinates in the same order.
    pub fn is_equivalent(&self, other: &CurveWithPoints) -> bool {
        if self.curve.params != other.curve.params || self.points.len() != other.points.len() {
            return false;
        }
        if self
            .points
            .iter()
            .zip(&other.points)
            .any(|(p, q)| p.x != q.x)
        {
            return false;
        }
        let ys: Vec<_> = self
            .points
            .iter()
            .zip(&other.points)
            .map(|(p, q)| (&p.y, &q.y))
            .collect();
        let lambda = match scaling_ratio(&ys) {
            Some(l) => l,
            // every y is zero on both sides: only the curve constrains λ
            None if ys.iter().all(|(a, b)| a.is_zero() && b.is_zero()) => {
                return self.curve.is_equivalent(&other.curve);
            }
            None => return false,
        };
        self.curve.scaled(&lambda) == other.curve
    }
}

/// The twist `c0·y^s = a·x^r + b` with `c0 = a·x_0^r + b = y_0^s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedCurve {
    pub r: u32,
    pub s: u32,
    pub c0: Rational,
    pub a: Rational,
    pub b: Rational,
    pub base: AffinePoint,
}

impl TwistedCurve {
    pub fn params(&self) -> FamilyParams {
        FamilyParams {
            r: self.r,
            s: self.s,
        }
    }

    pub fn contains(&self, p: &AffinePoint) -> bool {
        &self.c0 * p.y.pow(self.s) == &self.a * p.x.pow(self.r) + &self.b
    }
}

/// Twists `cwp` by its base point.
pub fn twist_curve(cwp: &CurveWithPoints) -> Result<TwistedCurve> {
    let base = cwp.base();
    if base.y.is_zero() {
        return Err(Error::BasePointVanishing);
    }
    let curve = cwp.curve();
    Ok(TwistedCurve {
        r: curve.params.r,
        s: curve.params.s,
        c0: curve.rhs(&base.x),
        a: curve.a.clone(),
        b: curve.b.clone(),
        base: base.clone(),
    })
}

/// Images of the listed points on the twist: `(x_i, y_i / y_0)`.
///
/// The base point goes to `(x_0, 1)`; the order of the input is preserved.
pub fn twist_points(cwp: &CurveWithPoints) -> Result<Vec<AffinePoint>> {
    let y0 = &cwp.base().y;
    if y0.is_zero() {
        return Err(Error::BasePointVanishing);
    }
    Ok(cwp
        .points()
        .iter()
        .map(|p| AffinePoint::new(p.x.clone(), &p.y / y0))
        .collect())
}

/// Inverse of [`twist_points`]: `(x, y) ↦ (x, y_0·y)`.
pub fn untwist_point(tc: &TwistedCurve, p: &AffinePoint) -> Result<AffinePoint> {
    if !tc.contains(p) {
        return Err(Error::PointNotOnTwist);
    }
    Ok(AffinePoint::new(p.x.clone(), &p.y * &tc.base.y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn pt(x: &str, y: &str) -> AffinePoint {
        AffinePoint::new(q(x), q(y))
    }

    fn e1() -> Curve {
        Curve::new(FamilyParams::new(3, 2).unwrap(), q("1"), q("1"))
    }

    #[test]
    fn membership() {
        assert!(e1().contains(&pt("2", "3")));
        assert!(e1().contains(&pt("0", "1")));
        assert!(!e1().contains(&pt("1", "1")));
        assert!(contains_point(&e1(), &pt("-1", "0")));
    }

    #[test]
    fn genus_values() {
        let g = |r, s| curve_genus(FamilyParams::new(r, s).unwrap());
        assert_eq!(g(3, 2), 1);
        assert_eq!(g(3, 3), 1);
        assert_eq!(g(5, 2), 2);
        assert_eq!(g(2, 2), 0);
        assert_eq!(g(4, 2), 1);
    }

    #[test]
    fn bad_exponents() {
        assert_eq!(
            FamilyParams::new(1, 2),
            Err(Error::InvalidExponents { r: 1, s: 2 })
        );
        assert!(FamilyParams::new(2, 0).is_err());
    }

    #[test]
    fn cwp_validation() {
        let err = CurveWithPoints::new(e1(), vec![pt("0", "1"), pt("1", "1")]).unwrap_err();
        assert_eq!(err, Error::PointNotOnCurve { index: 1 });
        let err = CurveWithPoints::new(e1(), vec![pt("0", "1"), pt("0", "-1")]).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateX {
                first: 0,
                second: 1
            }
        );
        let err = CurveWithPoints::with_base(e1(), vec![pt("0", "1")], 1).unwrap_err();
        assert_eq!(err, Error::BaseIndexOutOfRange { index: 1, len: 1 });
    }

    #[test]
    fn twist_constant() {
        let cwp = CurveWithPoints::new(e1(), vec![pt("2", "3"), pt("0", "1")]).unwrap();
        assert_eq!(twist_curve(&cwp).unwrap().c0, q("9"));
        let cwp = CurveWithPoints::new(e1(), vec![pt("0", "1"), pt("2", "3")]).unwrap();
        assert_eq!(twist_curve(&cwp).unwrap().c0, q("1"));
        let cwp = CurveWithPoints::new(e1(), vec![pt("-1", "0"), pt("2", "3")]).unwrap();
        assert_eq!(twist_curve(&cwp), Err(Error::BasePointVanishing));
        assert_eq!(twist_points(&cwp), Err(Error::BasePointVanishing));
    }

    #[test]
    fn twisted_points() {
        let cwp = CurveWithPoints::new(e1(), vec![pt("0", "1"), pt("2", "3")]).unwrap();
        assert_eq!(
            twist_points(&cwp).unwrap(),
            vec![pt("0", "1"), pt("2", "3")]
        );

        let cwp = CurveWithPoints::new(e1(), vec![pt("2", "3"), pt("0", "1")]).unwrap();
        let tw = twist_points(&cwp).unwrap();
        assert_eq!(tw, vec![pt("2", "1"), pt("0", "1/3")]);
        let tc = twist_curve(&cwp).unwrap();
        assert!(tw.iter().all(|p| tc.contains(p)));
    }

    #[test]
    fn untwist() {
        let cwp = CurveWithPoints::new(e1(), vec![pt("2", "3"), pt("0", "1")]).unwrap();
        let tc = twist_curve(&cwp).unwrap();
        assert_eq!(untwist_point(&tc, &pt("0", "1/3")).unwrap(), pt("0", "1"));
        assert_eq!(untwist_point(&tc, &pt("2", "1")).unwrap(), pt("2", "3"));
        assert_eq!(
            untwist_point(&tc, &pt("0", "1")),
            Err(Error::PointNotOnTwist)
        );
    }

    #[test]
    fn non_base_index() {
        let cwp =
            CurveWithPoints::with_base(e1(), vec![pt("0", "1"), pt("2", "3"), pt("-1", "0")], 1)
                .unwrap();
        let tw = twist_points(&cwp).unwrap();
        assert_eq!(tw, vec![pt("0", "1/3"), pt("2", "1"), pt("-1", "0")]);
    }

    #[test]
    fn equivalence() {
        let cwp =
            CurveWithPoints::new(e1(), vec![pt("0", "1"), pt("2", "3"), pt("-1", "0")]).unwrap();
        let scaled = cwp.scaled(&q("-5/2"));
        assert!(cwp.is_equivalent(&scaled));
        assert!(scaled.curve().is_equivalent(cwp.curve()));
        let c = Curve::new(FamilyParams::new(3, 2).unwrap(), q("2"), q("2"));
        assert!(!e1().is_equivalent(&c));
        let c = Curve::new(FamilyParams::new(3, 2).unwrap(), q("-1"), q("-1"));
        assert!(!e1().is_equivalent(&c));
        let c = Curve::new(FamilyParams::new(3, 3).unwrap(), q("-1"), q("-1"));
        let base = Curve::new(FamilyParams::new(3, 3).unwrap(), q("1"), q("1"));
        assert!(base.is_equivalent(&c));
    }

    #[test]
    fn json_shapes() {
        let json = serde_json::to_string(&e1()).unwrap();
        assert_eq!(json, r#"{"r":3,"s":2,"a":"1","b":"1"}"#);
        let cwp: CurveWithPoints = serde_json::from_str(
            r#"{"curve":{"r":3,"s":2,"a":"1","b":"1"},"points":[{"x":"2","y":"3"},{"x":"0","y":"1"}]}"#,
        )
        .unwrap();
        assert_eq!(cwp.base_index(), 0);
        assert!(serde_json::from_str::<CurveWithPoints>(
            r#"{"curve":{"r":3,"s":2,"a":"1","b":"1"},"points":[{"x":"1","y":"1"}]}"#
        )
        .is_err());
    }
}
