//! Complete-intersection fiber curves over a tuple of x-coordinates.
//!
//! For `a_n = (α_0, …, α_n)` with pairwise distinct `α_i^r`, the fiber is the
//! curve in `ℙ^n` cut out by the `n - 1` diagonal forms
//!
//! ```text
//! (α_i^r - α_1^r)·Y_0^s + (α_0^r - α_i^r)·Y_1^s + (α_1^r - α_0^r)·Y_i^s = 0,   i = 2..=n
//! ```
//!
//! Its rational points are in bijection with curves of the family through
//! points with those x-coordinates (see [`crate::birational`]).

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projective::{normalize_projective, ProjectivePoint};
use crate::Rational;

/// True iff the `α_i^r` are pairwise distinct.
pub fn is_admissible(alphas: &[Rational], r: u32) -> bool {
    first_collision(alphas, r).is_none()
}

fn first_collision(alphas: &[Rational], r: u32) -> Option<(usize, usize)> {
    let mut seen: HashMap<Rational, usize> = HashMap::with_capacity(alphas.len());
    for (j, a) in alphas.iter().enumerate() {
        if let Some(&i) = seen.get(&a.pow(r)) {
            return Some((i, j));
        }
        seen.insert(a.pow(r), j);
    }
    None
}

/// An admissible tuple `(α_0, …, α_n)`, `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XCoordinates {
    alphas: Vec<Rational>,
    r: u32,
}

impl XCoordinates {
    pub fn new(alphas: Vec<Rational>, r: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidExponents { r, s: 2 });
        }
        if alphas.len() < 3 {
            return Err(Error::TooFewPoints(alphas.len()));
        }
        if let Some((first, second)) = first_collision(&alphas, r) {
            return Err(Error::NotAdmissible { first, second });
        }
        Ok(XCoordinates { alphas, r })
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `n`, one less than the number of coordinates.
    pub fn n(&self) -> usize {
        self.alphas.len() - 1
    }
}

/// One defining form `c0·Y_0^s + c1·Y_1^s + ci·Y_i^s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiberEquation {
    pub i: usize,
    pub c0: Rational,
    pub c1: Rational,
    pub ci: Rational,
}

impl FiberEquation {
    pub fn evaluate(&self, y: &[Rational], s: u32) -> Rational {
        &self.c0 * y[0].pow(s) + &self.c1 * y[1].pow(s) + &self.ci * y[self.i].pow(s)
    }

    /// Integer coefficients with gcd 1 and `ci > 0`.
    pub fn normalized(&self) -> FiberEquation {
        let p = normalize_projective(&[self.c0.clone(), self.c1.clone(), self.ci.clone()])
            .expect("fiber equations have a nonzero coefficient");
        let mut c = p.into_coords();
        if c[2].is_negative() {
            c.iter_mut().for_each(|v| *v = -&*v);
        }
        let [c0, c1, ci]: [Rational; 3] = c.try_into().expect("three coefficients");
        FiberEquation {
            i: self.i,
            c0,
            c1,
            ci,
        }
    }
}

/// The same form written as `c·Y_i^s = A_i·Y_1^s - B_i·Y_0^s`, with
/// `c = α_1^r - α_0^r`, `A_i = α_i^r - α_0^r`, `B_i = α_i^r - α_1^r`.
///
/// Relative to [`FiberEquation`]: `(c0, c1, ci) = (B_i, -A_i, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedEquation {
    pub i: usize,
    pub c: Rational,
    #[serde(rename = "A")]
    pub a: Rational,
    #[serde(rename = "B")]
    pub b: Rational,
}

impl PresentedEquation {
    pub fn display(&self, s: u32) -> String {
        format!(
            "c*Y_{i}^{s} = {a}*Y_1^{s} - {b}*Y_0^{s}    (c = {c})",
            i = self.i,
            a = self.a,
            b = self.b,
            c = self.c
        )
    }
}

/// A point of the fiber, in canonical projective form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FiberPoint(ProjectivePoint);

impl FiberPoint {
    pub fn point(&self) -> &ProjectivePoint {
        &self.0
    }

    pub fn coords(&self) -> &[Rational] {
        self.0.coords()
    }

    pub fn into_point(self) -> ProjectivePoint {
        self.0
    }
}

impl fmt::Display for FiberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for FiberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Genus, gonality bound and finiteness threshold for a fiber shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub genus: u128,
    pub gonality_lower_bound: u128,
    pub n0: usize,
}

impl GeometryReport {
    pub fn new(n: usize, s: u32) -> Result<Self> {
        Ok(GeometryReport {
            genus: fiber_genus(n, s)?,
            gonality_lower_bound: gonality_lower_bound(n, s)?,
            n0: n0_threshold(s),
        })
    }
}

/// The low-genus shapes, where the fiber has infinitely many points for
/// suitable `a_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowGenusCase {
    /// `s = 2, n = 2`: a conic through `[1:1:1]`.
    Conic,
    /// `s = 2, n = 3`: two quadrics in `ℙ^3`, genus one.
    QuadricIntersection,
    /// `s = 3, n = 2`: a diagonal plane cubic, genus one.
    PlaneCubic,
}

pub fn low_genus_case(n: usize, s: u32) -> Option<LowGenusCase> {
    match (s, n) {
        (2, 2) => Some(LowGenusCase::Conic),
        (2, 3) => Some(LowGenusCase::QuadricIntersection),
        (3, 2) => Some(LowGenusCase::PlaneCubic),
        _ => None,
    }
}

/// Genus `1 + s^(n-1)·((n-1)(s-1) - 2) / 2` of the fiber.
pub fn fiber_genus(n: usize, s: u32) -> Result<u128> {
    if n < 2 || s < 2 {
        return Err(Error::InvalidFiberShape { n, s });
    }
    let s = i128::from(s);
    let n = i128::try_from(n).map_err(|_| Error::Overflow)?;
    let exp = u32::try_from(n - 1).map_err(|_| Error::Overflow)?;
    let lead = s.checked_pow(exp).ok_or(Error::Overflow)?;
    let twice = lead
        .checked_mul((n - 1) * (s - 1) - 2)
        .ok_or(Error::Overflow)?;
    // twice is even: either s is even, or (n-1)(s-1) is
    u128::try_from(1 + twice / 2).map_err(|_| Error::Overflow)
}

/// `(s - 1)·s^(n-2)`.
pub fn gonality_lower_bound(n: usize, s: u32) -> Result<u128> {
    if n < 2 || s < 2 {
        return Err(Error::InvalidFiberShape { n, s });
    }
    lazarsfeld_bound(&vec![s; n - 1])
}

/// Gonality lower bound `(d_1 - 1)·d_2·…·d_{m}` for a smooth complete
/// intersection curve cut out by forms of degrees `d_1 <= … <= d_m`.
pub fn lazarsfeld_bound(degrees: &[u32]) -> Result<u128> {
    if degrees.is_empty() || degrees.iter().any(|&d| d < 2) {
        return Err(Error::InvalidDegrees);
    }
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    sorted[1..]
        .iter()
        .try_fold(u128::from(sorted[0] - 1), |acc, &d| {
            acc.checked_mul(u128::from(d)).ok_or(Error::Overflow)
        })
}

/// Smallest `n` for which fibers have genus at least 2.
pub fn n0_threshold(s: u32) -> usize {
    if s == 2 {
        4
    } else {
        3
    }
}

/// The fiber curve over an admissible `a_n`, for a fixed `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FiberSpec", into = "FiberSpec")]
pub struct Fiber {
    coords: XCoordinates,
    s: u32,
    powers: Vec<Rational>,
}

/// JSON form `{"alphas": [...], "r": .., "s": ..}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiberSpec {
    pub alphas: Vec<Rational>,
    pub r: u32,
    pub s: u32,
}

impl TryFrom<FiberSpec> for Fiber {
    type Error = Error;
    fn try_from(f: FiberSpec) -> Result<Self> {
        Fiber::from_parts(f.alphas, f.r, f.s)
    }
}

impl From<Fiber> for FiberSpec {
    fn from(f: Fiber) -> Self {
        FiberSpec {
            alphas: f.coords.alphas,
            r: f.coords.r,
            s: f.s,
        }
    }
}

impl Fiber {
    pub fn new(coords: XCoordinates, s: u32) -> Result<Self> {
        if s < 2 {
            return Err(Error::InvalidExponents { r: coords.r, s });
        }
        let powers = coords.alphas.iter().map(|a| a.pow(coords.r)).collect();
        Ok(Fiber { coords, s, powers })
    }

    pub fn from_parts(alphas: Vec<Rational>, r: u32, s: u32) -> Result<Self> {
        Fiber::new(XCoordinates::new(alphas, r)?, s)
    }

    pub fn coords(&self) -> &XCoordinates {
        &self.coords
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.coords.alphas
    }

    pub fn r(&self) -> u32 {
        self.coords.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn n(&self) -> usize {
        self.coords.n()
    }

    /// `α_i^r`.
    pub fn powers(&self) -> &[Rational] {
        &self.powers
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < 2 || i > self.n() {
            return Err(Error::EquationIndex {
                index: i,
                n: self.n(),
            });
        }
        Ok(())
    }

    fn check_len(&self, y: &[Rational]) -> Result<()> {
        if y.len() != self.n() + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.n() + 1,
                found: y.len(),
            });
        }
        Ok(())
    }

    /// The `i`-th form with its unscaled coefficients.
    pub fn raw_equation(&self, i: usize) -> Result<FiberEquation> {
        self.check_index(i)?;
        let p = &self.powers;
        Ok(FiberEquation {
            i,
            c0: &p[i] - &p[1],
            c1: &p[0] - &p[i],
            ci: &p[1] - &p[0],
        })
    }

    /// All `n - 1` forms, integer-normalized with `ci > 0`.
    pub fn equations(&self) -> Vec<FiberEquation> {
        (2..=self.n())
            .map(|i| self.raw_equation(i).expect("index in range").normalized())
            .collect()
    }

    /// All forms in the `c·Y_i^s = A_i·Y_1^s - B_i·Y_0^s` layout.
    pub fn presented_equations(&self) -> Vec<PresentedEquation> {
        let p = &self.powers;
        (2..=self.n())
            .map(|i| PresentedEquation {
                i,
                c: &p[1] - &p[0],
                a: &p[i] - &p[0],
                b: &p[i] - &p[1],
            })
            .collect()
    }

    /// `det [[1, 1, 1], [α_0^r, α_1^r, α_i^r], [Y_0^s, Y_1^s, Y_i^s]]`.
    pub fn determinant(&self, i: usize, y: &[Rational]) -> Result<Rational> {
        self.check_index(i)?;
        self.check_len(y)?;
        let one = Rational::one();
        let p = &self.powers;
        let m = [
            [one.clone(), one.clone(), one],
            [p[0].clone(), p[1].clone(), p[i].clone()],
            [y[0].pow(self.s), y[1].pow(self.s), y[i].pow(self.s)],
        ];
        Ok(det3(&m))
    }

    pub fn contains(&self, y: &ProjectivePoint) -> Result<bool> {
        self.check_len(y.coords())?;
        Ok(self.failing_equation(y.coords()).is_none())
    }

    fn failing_equation(&self, y: &[Rational]) -> Option<usize> {
        (2..=self.n()).find(|&i| {
            let e = self.raw_equation(i).expect("index in range");
            !e.evaluate(y, self.s).is_zero()
        })
    }

    /// Validates `y` as a point of this fiber.
    pub fn point(&self, y: ProjectivePoint) -> Result<FiberPoint> {
        self.check_len(y.coords())?;
        match self.failing_equation(y.coords()) {
            Some(index) => Err(Error::NotOnFiber { index }),
            None => Ok(FiberPoint(y)),
        }
    }

    /// `[1 : 1 : … : 1]`, on every fiber since each form's coefficients sum to zero.
    pub fn trivial_point(&self) -> FiberPoint {
        FiberPoint(ProjectivePoint::new(vec![Rational::one(); self.n() + 1]).expect("nonzero"))
    }

    pub fn genus(&self) -> Result<u128> {
        fiber_genus(self.n(), self.s)
    }

    pub fn report(&self) -> Result<GeometryReport> {
        GeometryReport::new(self.n(), self.s)
    }

    pub fn low_genus_case(&self) -> Option<LowGenusCase> {
        low_genus_case(self.n(), self.s)
    }
}

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    let term = |a: usize, b: usize, c: usize| &m[0][a] * &m[1][b] * &m[2][c];
    term(0, 1, 2) + term(1, 2, 0) + term(2, 0, 1) - term(2, 1, 0) - term(0, 2, 1) - term(1, 0, 2)
}
