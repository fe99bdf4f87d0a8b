//! Bounded searches on both sides of the curve/fiber-point correspondence.
//!
//! The curve side enumerates `(a, b)` in a height box and keeps the pairs for
//! which every `a·α_i^r + b` is an `s`-th power. The fiber side enumerates
//! coprime `(Y_0, Y_1)` and solves each form for `Y_i^s`. [`cross_check`]
//! runs both and reconciles them modulo `(a, b) ~ (λ^s·a, λ^s·b)` and, for
//! even `s`, the sign changes of the fiber coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::birational::{orbit_representative, phi_forward, phi_inverse};
use crate::curve::{AffinePoint, Curve, CurveWithPoints, FamilyParams};
use crate::error::{Error, Result};
use crate::fiber::{Fiber, FiberPoint};
use crate::projective::{normalize_projective, ProjectivePoint};
use crate::rational::sth_root_exact;
use crate::Rational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Enumerate `(a, b)` and test membership.
    #[default]
    CurveBox,
    /// Enumerate coprime `(Y_0, Y_1)` and solve for the other coordinates.
    FiberPairs,
}

/// Values allowed for `a` and `b` in curve-box mode.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoxKind {
    /// Nonzero integers with `|v| <= H`.
    #[default]
    Integer,
    /// Nonzero `p/q` in lowest terms with `|p| <= H`, `1 <= q <= H`.
    Rational,
}

macro_rules! kebab_from_str {
    ($ty:ident { $($text:literal => $variant:ident),* $(,)? }) => {
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok($ty::$variant),)*
                    other => Err(Error::InvalidConfig(format!(
                        concat!("unknown ", stringify!($ty), " {:?}"), other
                    ))),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self {
                    $($ty::$variant => $text,)*
                })
            }
        }
    };
}

kebab_from_str!(SearchMode { "curve-box" => CurveBox, "fiber-pairs" => FiberPairs });
kebab_from_str!(BoxKind { "integer" => Integer, "rational" => Rational });

/// Worker `index` of `count` handles every `count`-th value of the outer loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    pub index: usize,
    pub count: usize,
}

impl Partition {
    pub fn new(index: usize, count: usize) -> Result<Self> {
        if count == 0 || index >= count {
            return Err(Error::InvalidConfig(format!(
                "worker index {index} outside 0..{count}"
            )));
        }
        Ok(Partition { index, count })
    }

    fn owns(&self, k: usize) -> bool {
        k % self.count == self.index
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub height_bound: u64,
    #[serde(default)]
    pub mode: SearchMode,
    #[serde(default)]
    pub box_kind: BoxKind,
    #[serde(default)]
    pub partition: Option<Partition>,
    /// Fiber-side bound for [`cross_check`]; when absent it is the larger of
    /// `height_bound` and the pair heights of the curve-side images.
    #[serde(default)]
    pub fiber_height_bound: Option<u64>,
}

impl SearchConfig {
    pub fn new(height_bound: u64) -> Result<Self> {
        let cfg = SearchConfig {
            height_bound,
            mode: SearchMode::default(),
            box_kind: BoxKind::default(),
            partition: None,
            fiber_height_bound: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_box(mut self, box_kind: BoxKind) -> Self {
        self.box_kind = box_kind;
        self
    }

    pub fn with_partition(mut self, partition: Partition) -> Self {
        self.partition = Some(partition);
        self
    }

    pub fn with_fiber_height_bound(mut self, h: u64) -> Self {
        self.fiber_height_bound = Some(h);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.height_bound == 0 {
            return Err(Error::InvalidConfig(
                "height bound must be at least 1".into(),
            ));
        }
        if self.fiber_height_bound == Some(0) {
            return Err(Error::InvalidConfig(
                "fiber height bound must be at least 1".into(),
            ));
        }
        if let Some(p) = self.partition {
            Partition::new(p.index, p.count)?;
        }
        Ok(())
    }

    fn owns(&self, k: usize) -> bool {
        self.partition.is_none_or(|p| p.owns(k))
    }
}

/// One element of a census: a curve, its image on the fiber, and the number
/// of distinct x-coordinates among its listed points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub curve: Curve,
    pub fiber_point: FiberPoint,
    pub distinct_x_count: usize,
}

/// Number of distinct x-coordinates. Each x carries at most `s` points of a
/// curve, so this is at least `ceil(len / s)` for points on one curve.
pub fn count_distinct_x(points: &[AffinePoint]) -> usize {
    points.iter().map(|p| &p.x).collect::<BTreeSet<_>>().len()
}

/// Nonzero values of height at most `h`, in increasing order.
pub fn box_values(h: u64, kind: BoxKind) -> Vec<Rational> {
    let h = h as i64;
    let mut v: Vec<Rational> = match kind {
        BoxKind::Integer => (1..=h)
            .flat_map(|p| [Rational::from(-p), Rational::from(p)])
            .collect(),
        BoxKind::Rational => (1..=h)
            .flat_map(|den| {
                (1..=h)
                    .filter(move |num| num.gcd(&den) == 1)
                    .flat_map(move |num| [Rational::new(-num, den), Rational::new(num, den)])
            })
            .collect(),
    };
    v.sort();
    v
}

fn in_box(v: &Rational, h: u64, kind: BoxKind) -> bool {
    !v.is_zero() && v.height() <= BigUint::from(h) && (kind == BoxKind::Rational || v.is_integer())
}

/// The curve `(a, b)` with its points `(α_i, (a·α_i^r + b)^(1/s))`, if every
/// value is an `s`-th power and the first root is nonzero.
pub fn curve_through(fiber: &Fiber, a: &Rational, b: &Rational) -> Option<CurveWithPoints> {
    let s = fiber.s();
    let mut points = Vec::with_capacity(fiber.n() + 1);
    for (alpha, power) in fiber.alphas().iter().zip(fiber.powers()) {
        let y = sth_root_exact(&(a * power + b), s)?;
        if points.is_empty() && y.is_zero() {
            return None;
        }
        points.push(AffinePoint::new(alpha.clone(), y));
    }
    let params = FamilyParams::new(fiber.r(), s).ok()?;
    CurveWithPoints::new(Curve::new(params, a.clone(), b.clone()), points).ok()
}

fn enumerate_with_points(fiber: &Fiber, cfg: &SearchConfig) -> Result<Vec<CurveWithPoints>> {
    cfg.validate()?;
    let vals = box_values(cfg.height_bound, cfg.box_kind);
    let owned: Vec<&Rational> = vals
        .iter()
        .enumerate()
        .filter(|(k, _)| cfg.owns(*k))
        .map(|(_, v)| v)
        .collect();
    let mut out: Vec<CurveWithPoints> = owned
        .par_iter()
        .flat_map_iter(|a| vals.iter().filter_map(|b| curve_through(fiber, a, b)))
        .collect();
    out.sort_by(|x, y| x.curve().cmp(y.curve()));
    Ok(out)
}

/// Smooth curves with `a`, `b` in the box whose right-hand side is an `s`-th
/// power at every `α_i`, nonzero at `α_0`. Sorted by `(a, b)`.
pub fn enumerate_curves(fiber: &Fiber, cfg: &SearchConfig) -> Result<Vec<Curve>> {
    Ok(enumerate_with_points(fiber, cfg)?
        .into_iter()
        .map(|c| c.curve().clone())
        .collect())
}

/// Height of `[Y_0 : Y_1]` after removing common factors.
pub fn pair_height(y: &ProjectivePoint) -> BigUint {
    let (y0, y1) = (y.coords()[0].numer(), y.coords()[1].numer());
    let g = y0.gcd(y1);
    if g.is_zero() {
        return BigUint::zero();
    }
    let h = |v: &BigInt| (v / &g).magnitude().clone();
    h(y0).max(h(y1))
}

/// Solver for `Y_i^s = -(c0·Y_0^s + c1·Y_1^s) / ci` over the normalized forms.
struct PairSolver {
    s: u32,
    forms: Vec<(BigInt, BigInt, BigInt)>,
}

impl PairSolver {
    fn new(fiber: &Fiber) -> Self {
        let int = |r: &Rational| r.numer().clone();
        let forms = fiber
            .equations()
            .iter()
            .map(|e| (int(&e.c0), int(&e.c1), int(&e.ci)))
            .collect();
        PairSolver {
            s: fiber.s(),
            forms,
        }
    }

    fn solve(&self, y0: i64, y1: i64) -> Option<ProjectivePoint> {
        let (p0, p1) = (BigInt::from(y0).pow(self.s), BigInt::from(y1).pow(self.s));
        let mut coords = Vec::with_capacity(self.forms.len() + 2);
        coords.push(Rational::from(y0));
        coords.push(Rational::from(y1));
        for (c0, c1, ci) in &self.forms {
            let num = -(c0 * &p0 + c1 * &p1);
            coords.push(sth_root_exact(&Rational::new(num, ci.clone()), self.s)?);
        }
        let p = normalize_projective(&coords).ok()?;
        Some(orbit_representative(&p, self.s))
    }
}

/// Fiber points with `[Y_0 : Y_1]` of height at most the bound.
///
/// For even `s` every coordinate is taken non-negative, one representative
/// per sign orbit. Sorted and free of duplicates.
pub fn search_fiber_points(fiber: &Fiber, cfg: &SearchConfig) -> Result<Vec<FiberPoint>> {
    cfg.validate()?;
    fiber_points_up_to(fiber, cfg.height_bound, cfg)
}

fn fiber_points_up_to(fiber: &Fiber, h: u64, cfg: &SearchConfig) -> Result<Vec<FiberPoint>> {
    let h = i64::try_from(h).map_err(|_| Error::Overflow)?;
    let solver = PairSolver::new(fiber);
    let even = fiber.s().is_multiple_of(2);
    let y0s: Vec<i64> = (0..=h).filter(|&k| cfg.owns(k as usize)).collect();

    let mut pts: Vec<ProjectivePoint> = y0s
        .par_iter()
        .flat_map_iter(|&y0| {
            let y1s: Box<dyn Iterator<Item = i64>> = if y0 == 0 {
                Box::new(std::iter::once(1))
            } else if even {
                Box::new(0..=h)
            } else {
                Box::new(-h..=h)
            };
            let solver = &solver;
            y1s.filter(move |y1| y0.gcd(y1) == 1)
                .filter_map(move |y1| solver.solve(y0, y1))
        })
        .collect();
    pts.sort();
    pts.dedup();
    pts.into_iter().map(|p| fiber.point(p)).collect()
}

fn census_entry(cwp: &CurveWithPoints) -> Result<CensusEntry> {
    let (_, fiber_point) = phi_forward(cwp)?;
    Ok(CensusEntry {
        curve: cwp.curve().clone(),
        fiber_point,
        distinct_x_count: count_distinct_x(cwp.points()),
    })
}

/// Census in the configured mode.
///
/// In fiber-pairs mode, trivial points and points with `Y_0 = 0` have no
/// preimage under the forward map and are left out.
pub fn census(fiber: &Fiber, cfg: &SearchConfig) -> Result<Vec<CensusEntry>> {
    match cfg.mode {
        SearchMode::CurveBox => enumerate_with_points(fiber, cfg)?
            .iter()
            .map(census_entry)
            .collect(),
        SearchMode::FiberPairs => {
            let mut out = Vec::new();
            for p in search_fiber_points(fiber, cfg)? {
                match phi_inverse(fiber, p.point()) {
                    Ok(cwp) if !cwp.base().y.is_zero() => out.push(census_entry(&cwp)?),
                    Ok(_) | Err(Error::TrivialPoint { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(out)
        }
    }
}

/// A curve class found in the box together with its fiber point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchedPair {
    /// Every curve of the box in this class, sorted.
    pub curves: Vec<Curve>,
    pub fiber_point: FiberPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "side", rename_all = "kebab-case")]
pub enum Unmatched {
    Curve {
        curve: Curve,
        image: FiberPoint,
        reason: String,
    },
    FiberPoint {
        point: FiberPoint,
        curve: Curve,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub curve_height_bound: u64,
    pub fiber_height_bound: u64,
    pub curves_found: usize,
    pub fiber_points_found: usize,
    pub matched: Vec<MatchedPair>,
    /// Points whose recovered `a` or `b` vanishes.
    pub trivial_points: Vec<FiberPoint>,
    /// Nontrivial points with `Y_0 = 0`, outside the image of the forward map.
    pub excluded_points: Vec<FiberPoint>,
    /// Elements whose partner lies beyond the other side's bound.
    pub cutoff: Vec<Unmatched>,
    pub unmatched: Vec<Unmatched>,
}

impl CrossCheckReport {
    /// No unmatched elements once cutoffs are accounted for.
    pub fn is_bijection(&self) -> bool {
        self.unmatched.is_empty()
    }
}

/// Whether some curve of the box is equivalent to `curve`.
fn class_meets_box(curve: &Curve, cfg: &SearchConfig, vals: &[Rational]) -> Option<Curve> {
    let ratio = curve.a() / curve.b();
    vals.iter().find_map(|b| {
        let a = &ratio * b;
        if !in_box(&a, cfg.height_bound, cfg.box_kind) {
            return None;
        }
        let candidate = Curve::new(curve.params(), a, b.clone());
        candidate.is_equivalent(curve).then_some(candidate)
    })
}

/// Runs both searches and matches curve classes with fiber points.
pub fn cross_check(fiber: &Fiber, cfg: &SearchConfig) -> Result<CrossCheckReport> {
    let cfg = SearchConfig {
        partition: None,
        ..cfg.clone()
    };
    let s = fiber.s();
    let cwps = enumerate_with_points(fiber, &cfg)?;

    let mut unmatched = Vec::new();
    let mut cutoff = Vec::new();

    // fiber point -> curves of the box mapping to it
    let mut images: BTreeMap<ProjectivePoint, (FiberPoint, Vec<Curve>)> = BTreeMap::new();
    for cwp in &cwps {
        let (_, image) = phi_forward(cwp)?;
        let key = orbit_representative(image.point(), s);
        images
            .entry(key)
            .or_insert_with(|| (image, Vec::new()))
            .1
            .push(cwp.curve().clone());
    }
    for (image, curves) in images.values() {
        for c in &curves[1..] {
            if !c.is_equivalent(&curves[0]) {
                unmatched.push(Unmatched::Curve {
                    curve: c.clone(),
                    image: image.clone(),
                    reason: format!("inequivalent to {:?} with the same image", curves[0]),
                });
            }
        }
    }

    let fiber_bound = match cfg.fiber_height_bound {
        Some(h) => h,
        None => images
            .keys()
            .map(pair_height)
            .max()
            .map(|h| h.to_u64().ok_or(Error::Overflow))
            .transpose()?
            .unwrap_or(0)
            .max(cfg.height_bound),
    };

    let points = fiber_points_up_to(fiber, fiber_bound, &cfg)?;
    let vals = box_values(cfg.height_bound, cfg.box_kind);
    let mut matched = Vec::new();
    let mut trivial_points = Vec::new();
    let mut excluded_points = Vec::new();

    for p in &points {
        let cwp = match phi_inverse(fiber, p.point()) {
            Err(Error::TrivialPoint { .. }) => {
                trivial_points.push(p.clone());
                continue;
            }
            other => other?,
        };
        if cwp.base().y.is_zero() {
            excluded_points.push(p.clone());
            continue;
        }
        let key = orbit_representative(p.point(), s);
        match images.remove(&key) {
            Some((_, curves)) => {
                if !cwp.curve().is_equivalent(&curves[0]) {
                    unmatched.push(Unmatched::FiberPoint {
                        point: p.clone(),
                        curve: cwp.curve().clone(),
                        reason: format!("inverse image is not equivalent to {:?}", curves[0]),
                    });
                }
                matched.push(MatchedPair {
                    curves,
                    fiber_point: p.clone(),
                });
            }
            None => {
                let entry = |reason| Unmatched::FiberPoint {
                    point: p.clone(),
                    curve: cwp.curve().clone(),
                    reason,
                };
                match class_meets_box(cwp.curve(), &cfg, &vals) {
                    Some(rep) => unmatched.push(entry(format!(
                        "class has the representative {rep:?} in the box but no curve was found"
                    ))),
                    None => cutoff.push(entry(format!(
                        "no curve of the class has height <= {}",
                        cfg.height_bound
                    ))),
                }
            }
        }
    }

    for (_, (image, curves)) in images {
        let h = pair_height(image.point());
        let item = |reason| Unmatched::Curve {
            curve: curves[0].clone(),
            image: image.clone(),
            reason,
        };
        if h > BigUint::from(fiber_bound) {
            cutoff.push(item(format!("image pair height {h} exceeds {fiber_bound}")));
        } else {
            unmatched.push(item(format!(
                "image of pair height {h} not found by the fiber search"
            )));
        }
    }

    Ok(CrossCheckReport {
        curve_height_bound: cfg.height_bound,
        fiber_height_bound: fiber_bound,
        curves_found: cwps.len(),
        fiber_points_found: points.len(),
        matched,
        trivial_points,
        excluded_points,
        cutoff,
        unmatched,
    })
}
