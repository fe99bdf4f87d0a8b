//! Explicit models for the fibers of genus 0 and 1.
//!
//! * `n = 2, s = 2`: a conic through `[1:1:1]`, parameterized by [`conic_param`].
//! * `n = 2, s = 3`: a diagonal plane cubic, sent to a Weierstrass curve by
//!   [`fermat_to_weierstrass`] (directly) or by [`cubic_to_diagonal`] followed
//!   by [`weierstrass_from_diagonal`].
//! * `n = 3, s = 2`: an intersection of two quadrics, reduced to
//!   `v^2 = q(u)` with `deg q <= 4` by [`quadrics_to_quartic`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fiber::{Fiber, FiberPoint};
use crate::projective::{normalize_projective, ProjectivePoint};
use crate::rational::sth_root_exact;
use crate::Rational;

/// The conic `α·X^2 + β·Y^2 + γ·Z^2 = 0` with `γ = -(α + β)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct ConicSpec {
    alpha: Rational,
    beta: Rational,
}

/// The cubic `α·X^3 + β·Y^3 + γ·Z^3 = 0` with `γ = -(α + β) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct CubicSpec {
    alpha: Rational,
    beta: Rational,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    alpha: Rational,
    beta: Rational,
}

fn nonzero(v: &Rational, name: &'static str) -> Result<()> {
    if v.is_zero() {
        Err(Error::ZeroCoefficient(name))
    } else {
        Ok(())
    }
}

impl ConicSpec {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        nonzero(&alpha, "alpha")?;
        nonzero(&beta, "beta")?;
        Ok(ConicSpec { alpha, beta })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn gamma(&self) -> Rational {
        -(&self.alpha + &self.beta)
    }

    pub fn evaluate(&self, p: &[Rational]) -> Rational {
        &self.alpha * p[0].pow(2) + &self.beta * p[1].pow(2) + self.gamma() * p[2].pow(2)
    }
}

impl CubicSpec {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        nonzero(&alpha, "alpha")?;
        nonzero(&beta, "beta")?;
        nonzero(&(&alpha + &beta), "gamma")?;
        Ok(CubicSpec { alpha, beta })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn gamma(&self) -> Rational {
        -(&self.alpha + &self.beta)
    }

    pub fn evaluate(&self, p: &[Rational]) -> Rational {
        &self.alpha * p[0].pow(3) + &self.beta * p[1].pow(3) + self.gamma() * p[2].pow(3)
    }

    /// `432·α^2·β^2·(α + β)^2`.
    pub fn rhs_constant(&self) -> Rational {
        Rational::from(432) * (&self.alpha * &self.beta * (&self.alpha + &self.beta)).pow(2)
    }
}

impl TryFrom<SpecRepr> for ConicSpec {
    type Error = Error;
    fn try_from(r: SpecRepr) -> Result<Self> {
        ConicSpec::new(r.alpha, r.beta)
    }
}

impl From<ConicSpec> for SpecRepr {
    fn from(c: ConicSpec) -> Self {
        SpecRepr {
            alpha: c.alpha,
            beta: c.beta,
        }
    }
}

impl TryFrom<SpecRepr> for CubicSpec {
    type Error = Error;
    fn try_from(r: SpecRepr) -> Result<Self> {
        CubicSpec::new(r.alpha, r.beta)
    }
}

impl From<CubicSpec> for SpecRepr {
    fn from(c: CubicSpec) -> Self {
        SpecRepr {
            alpha: c.alpha,
            beta: c.beta,
        }
    }
}

/// A point of `U^3 + V^3 = αβγ·W^3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalCubicPoint {
    #[serde(rename = "U")]
    pub u: Rational,
    #[serde(rename = "V")]
    pub v: Rational,
    #[serde(rename = "W")]
    pub w: Rational,
}

/// A point of `S^2 = T^3 - rhs_constant`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassPoint {
    #[serde(rename = "T")]
    pub t: Rational,
    #[serde(rename = "S")]
    pub s: Rational,
    pub rhs_constant: Rational,
}

impl WeierstrassPoint {
    pub fn is_on_curve(&self) -> bool {
        self.s.pow(2) == self.t.pow(3) - &self.rhs_constant
    }
}

/// Line-through-`[1:1:1]` parameterization of the conic:
///
/// ```text
/// X = α·u^2 + 2β·u - β,   Y = -α·u^2 + 2α·u + β,   Z = α·u^2 + β
/// ```
pub fn conic_param(spec: &ConicSpec, u: &Rational) -> Result<ProjectivePoint> {
    let (a, b) = (&spec.alpha, &spec.beta);
    let au2 = a * u.pow(2);
    let two = Rational::from(2);
    let x = &au2 + &two * b * u - b;
    let y = -&au2 + &two * a * u + b;
    let z = &au2 + b;
    normalize_projective(&[x, y, z]).map_err(|_| Error::DegenerateParameter)
}

fn cubic_coords(spec: &CubicSpec, p: &ProjectivePoint) -> Result<[Rational; 3]> {
    if p.len() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: p.len(),
        });
    }
    if p.coords().iter().any(Rational::is_zero) {
        return Err(Error::CoordinateVanishing);
    }
    if !spec.evaluate(p.coords()).is_zero() {
        return Err(Error::NotOnCubic);
    }
    let c = p.coords();
    Ok([c[0].clone(), c[1].clone(), c[2].clone()])
}

/// Maps a point of `α·X^3 + β·Y^3 + γ·Z^3 = 0` with `XYZ ≠ 0` to
/// `U^3 + V^3 = αβγ·W^3` via
///
/// ```text
/// U + V = -9αβγ·X^3·Y^3·Z^3
/// U - V = (αX^3 - βY^3)(βY^3 - γZ^3)(γZ^3 - αX^3)
/// W     = 3(αβ·X^3Y^3 + βγ·Y^3Z^3 + αγ·X^3Z^3)·XYZ
/// ```
pub fn cubic_to_diagonal(spec: &CubicSpec, p: &ProjectivePoint) -> Result<DiagonalCubicPoint> {
    let [x, y, z] = cubic_coords(spec, p)?;
    let (a, b, g) = (&spec.alpha, &spec.beta, spec.gamma());
    let (ax, by, gz) = (a * x.pow(3), b * y.pow(3), &g * z.pow(3));
    let (x3, y3, z3) = (x.pow(3), y.pow(3), z.pow(3));

    let sum = Rational::from(-9) * a * b * &g * &x3 * &y3 * &z3;
    let diff = (&ax - &by) * (&by - &gz) * (&gz - &ax);
    let w = Rational::from(3)
        * (a * b * &x3 * &y3 + b * &g * &y3 * &z3 + a * &g * &x3 * &z3)
        * (&x * &y * &z);
    let half = Rational::new(1, 2);
    Ok(DiagonalCubicPoint {
        u: (&sum + &diff) * &half,
        v: (&sum - &diff) * &half,
        w,
    })
}

/// `T = 12αβγ·W/(U + V)`, `S = 36αβγ·(U - V)/(U + V)`.
pub fn weierstrass_from_diagonal(
    spec: &CubicSpec,
    d: &DiagonalCubicPoint,
) -> Result<WeierstrassPoint> {
    let sum = &d.u + &d.v;
    if sum.is_zero() {
        return Err(Error::PointAtInfinity);
    }
    let abg = &spec.alpha * &spec.beta * spec.gamma();
    Ok(WeierstrassPoint {
        t: Rational::from(12) * &abg * &d.w / &sum,
        s: Rational::from(36) * &abg * (&d.u - &d.v) / &sum,
        rhs_constant: spec.rhs_constant(),
    })
}

/// Closed form of the composite map to `S^2 = T^3 - 432α^2β^2(α + β)^2`:
///
/// ```text
/// T = 4(αβ(X^3Z^3 + Y^3Z^3 - X^3Y^3) + Z^3(α^2X^3 + β^2Y^3)) / (XYZ)^2
/// S = 4(αX^3 - βY^3)(βY^3 + (α + β)Z^3)(αX^3 + (α + β)Z^3) / (XYZ)^3
/// ```
pub fn fermat_to_weierstrass(spec: &CubicSpec, p: &ProjectivePoint) -> Result<WeierstrassPoint> {
    let [x, y, z] = cubic_coords(spec, p)?;
    let (a, b) = (&spec.alpha, &spec.beta);
    let ab = a + b;
    let (x3, y3, z3) = (x.pow(3), y.pow(3), z.pow(3));
    let xyz = &x * &y * &z;
    let four = Rational::from(4);

    let t = &four
        * (a * b * (&x3 * &z3 + &y3 * &z3 - &x3 * &y3) + &z3 * (a.pow(2) * &x3 + b.pow(2) * &y3))
        / xyz.pow(2);
    let s =
        &four * (a * &x3 - b * &y3) * (b * &y3 + &ab * &z3) * (a * &x3 + &ab * &z3) / xyz.pow(3);
    Ok(WeierstrassPoint {
        t,
        s,
        rhs_constant: spec.rhs_constant(),
    })
}

/// `v^2 = q(u)` model of a fiber with `n = 3`, `s = 2`.
///
/// The first form is the conic with `α = A_2 - A_1`, `β = A_0 - A_2`
/// (`A_i = α_i^r`), parameterized by [`conic_param`] as
/// `(Y_0, Y_1, Y_2) = (X(u), Y(u), Z(u))`; the second form then reads
/// `Y_3^2 = q(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticModel {
    pub conic: ConicSpec,
    /// `q_0, …, q_4`, constant term first.
    pub coeffs: Vec<Rational>,
}

impl QuarticModel {
    pub fn evaluate(&self, u: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * u + c)
    }

    /// `[X(u) : Y(u) : Z(u) : v]` without normalization.
    fn lift_raw(&self, u: &Rational, v: &Rational) -> [Rational; 4] {
        let (a, b) = (self.conic.alpha(), self.conic.beta());
        let au2 = a * u.pow(2);
        let two = Rational::from(2);
        [
            &au2 + &two * b * u - b,
            -&au2 + &two * a * u + b,
            &au2 + b,
            v.clone(),
        ]
    }

    /// Lifts `(u, v)` with `v^2 = q(u)` to a point of `fiber`.
    pub fn lift(&self, fiber: &Fiber, u: &Rational, v: &Rational) -> Result<FiberPoint> {
        if v.pow(2) != self.evaluate(u) {
            return Err(Error::NotOnFiber { index: 3 });
        }
        let raw = self.lift_raw(u, v);
        fiber.point(normalize_projective(&raw).map_err(|_| Error::DegenerateParameter)?)
    }

    /// The lift of `u` with `v = +sqrt(q(u))`, if `q(u)` is a rational square.
    pub fn lift_at(&self, fiber: &Fiber, u: &Rational) -> Option<Result<FiberPoint>> {
        let v = sth_root_exact(&self.evaluate(u), 2)?;
        Some(self.lift(fiber, u, &v))
    }
}

fn expect_shape(fiber: &Fiber, n: usize, s: u32) -> Result<()> {
    if fiber.n() != n || fiber.s() != s {
        return Err(Error::WrongShape {
            n,
            s,
            found_n: fiber.n(),
            found_s: fiber.s(),
        });
    }
    Ok(())
}

/// The conic `(A_2 - A_1)·Y_0^2 + (A_0 - A_2)·Y_1^2 + (A_1 - A_0)·Y_2^2 = 0`
/// of a fiber with `n >= 2`.
pub fn first_conic(fiber: &Fiber) -> Result<ConicSpec> {
    let p = fiber.powers();
    ConicSpec::new(&p[2] - &p[1], &p[0] - &p[2])
}

/// The cubic `(A_2 - A_1)·Y_0^3 + (A_0 - A_2)·Y_1^3 + (A_1 - A_0)·Y_2^3 = 0`
/// of a fiber with `n = 2`, `s = 3`.
pub fn fiber_cubic(fiber: &Fiber) -> Result<CubicSpec> {
    expect_shape(fiber, 2, 3)?;
    let p = fiber.powers();
    CubicSpec::new(&p[2] - &p[1], &p[0] - &p[2])
}

/// Point of a fiber with `n = 2`, `s = 2` at parameter `u`.
pub fn conic_fiber_point(fiber: &Fiber, u: &Rational) -> Result<FiberPoint> {
    expect_shape(fiber, 2, 2)?;
    fiber.point(conic_param(&first_conic(fiber)?, u)?)
}

/// Builds the quartic model of a fiber with `n = 3`, `s = 2`:
/// `q(u) = -((A_3 - A_1)·X(u)^2 + (A_0 - A_3)·Y(u)^2) / (A_1 - A_0)`.
pub fn quadrics_to_quartic(fiber: &Fiber) -> Result<QuarticModel> {
    expect_shape(fiber, 3, 2)?;
    let conic = first_conic(fiber)?;
    let p = fiber.powers();
    let (a, b) = (conic.alpha().clone(), conic.beta().clone());
    let two = Rational::from(2);

    // X(u) and Y(u) as coefficient vectors, constant term first.
    let x = [-&b, &two * &b, a.clone()];
    let y = [b.clone(), &two * &a, -&a];
    let square = |c: &[Rational; 3]| -> [Rational; 5] {
        let mut out: [Rational; 5] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                out[i + j] = &out[i + j] + &c[i] * &c[j];
            }
        }
        out
    };
    let (x2, y2) = (square(&x), square(&y));
    let (k0, k1, den) = (&p[3] - &p[1], &p[0] - &p[3], &p[1] - &p[0]);
    let coeffs = (0..5)
        .map(|k| -(&k0 * &x2[k] + &k1 * &y2[k]) / &den)
        .collect();
    Ok(QuarticModel { conic, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn pp(c: [i64; 3]) -> ProjectivePoint {
        ProjectivePoint::from_integers(c).unwrap()
    }

    #[test]
    fn conic_examples() {
        let spec = ConicSpec::new(q("3"), q("-1")).unwrap();
        let p = conic_param(&spec, &q("2")).unwrap();
        assert_eq!(p.to_string(), "[9:-1:11]");
        assert!(spec.evaluate(p.coords()).is_zero());
        assert_eq!(conic_param(&spec, &q("1")).unwrap(), pp([1, 1, 1]));
        assert_eq!(conic_param(&spec, &q("0")).unwrap(), pp([1, -1, -1]));
    }

    #[test]
    fn conic_degenerate_parameter() {
        // α = -β: u = 1 gives X = Y = Z = 0 after α + β vanishes.
        let spec = ConicSpec::new(q("1"), q("-1")).unwrap();
        assert_eq!(conic_param(&spec, &q("1")), Err(Error::DegenerateParameter));
        assert_eq!(
            ConicSpec::new(q("0"), q("1")),
            Err(Error::ZeroCoefficient("alpha"))
        );
    }

    #[test]
    fn diagonal_example() {
        let spec = CubicSpec::new(q("1"), q("1")).unwrap();
        let d = cubic_to_diagonal(&spec, &pp([1, 1, 1])).unwrap();
        assert_eq!(
            (d.u.clone(), d.v.clone(), d.w.clone()),
            (q("9"), q("9"), q("-9"))
        );
        let abg = q("-2");
        assert_eq!(d.u.pow(3) + d.v.pow(3), abg * d.w.pow(3));
    }

    #[test]
    fn weierstrass_examples() {
        let spec = CubicSpec::new(q("1"), q("1")).unwrap();
        let w = fermat_to_weierstrass(&spec, &pp([1, 1, 1])).unwrap();
        assert_eq!((w.t.clone(), w.s.clone()), (q("12"), q("0")));
        assert_eq!(w.rhs_constant, q("1728"));
        assert!(w.is_on_curve());

        let spec = CubicSpec::new(q("1"), q("2")).unwrap();
        let w = fermat_to_weierstrass(&spec, &pp([1, 1, 1])).unwrap();
        assert_eq!((w.t.clone(), w.s.clone()), (q("28"), q("-80")));
        let d = cubic_to_diagonal(&spec, &pp([1, 1, 1])).unwrap();
        assert_eq!(weierstrass_from_diagonal(&spec, &d).unwrap(), w);
    }

    #[test]
    fn weierstrass_json() {
        let spec = CubicSpec::new(q("1"), q("1")).unwrap();
        let w = fermat_to_weierstrass(&spec, &pp([1, 1, 1])).unwrap();
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"T":"12","S":"0","rhs_constant":"1728"}"#
        );
    }

    #[test]
    fn cubic_errors() {
        let spec = CubicSpec::new(q("1"), q("1")).unwrap();
        assert_eq!(
            cubic_to_diagonal(&spec, &pp([1, 0, 1])),
            Err(Error::CoordinateVanishing)
        );
        assert_eq!(
            fermat_to_weierstrass(&spec, &pp([1, 2, 1])),
            Err(Error::NotOnCubic)
        );
        assert_eq!(
            CubicSpec::new(q("1"), q("-1")),
            Err(Error::ZeroCoefficient("gamma"))
        );
    }

    #[test]
    fn quartic_golden() {
        let fiber = Fiber::from_parts(vec![q("0"), q("1"), q("2"), q("3")], 2, 2).unwrap();
        let m = quadrics_to_quartic(&fiber).unwrap();
        let want: Vec<Rational> = [16, 80, -164, 60, 9]
            .into_iter()
            .map(Rational::from)
            .collect();
        assert_eq!(m.coeffs, want);
        assert_eq!(m.evaluate(&q("1")), q("1"));
        // X(1) = Y(1) = Z(1) = α + β = -1, so v = -1 gives [1:1:1:1].
        let trivial = m.lift(&fiber, &q("1"), &q("-1")).unwrap();
        assert_eq!(trivial, fiber.trivial_point());
        let other = m.lift_at(&fiber, &q("1")).unwrap().unwrap();
        assert_eq!(other.to_string(), "[1:1:1:-1]");
    }

    #[test]
    fn quartic_wrong_shape() {
        let fiber = Fiber::from_parts(vec![q("0"), q("1"), q("2")], 2, 2).unwrap();
        assert_eq!(
            quadrics_to_quartic(&fiber),
            Err(Error::WrongShape {
                n: 3,
                s: 2,
                found_n: 2,
                found_s: 2
            })
        );
    }

    #[test]
    fn conic_fiber_points() {
        let fiber = Fiber::from_parts(vec![q("0"), q("1"), q("2")], 2, 2).unwrap();
        for k in 0..20 {
            let u = Rational::new(k, 3);
            if let Ok(p) = conic_fiber_point(&fiber, &u) {
                assert!(fiber.contains(p.point()).unwrap());
            }
        }
    }
}
