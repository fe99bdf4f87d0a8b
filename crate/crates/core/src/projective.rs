//! Canonical representatives of projective points over ℚ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// A point `[c_0 : … : c_m]` in canonical form: integer entries with gcd 1
/// and first nonzero entry positive.
///
/// Two inputs describe the same projective point iff their canonical forms
/// are equal, so `Eq`/`Hash`/`Ord` compare projective points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct ProjectivePoint {
    coords: Vec<Rational>,
}

/// Clears denominators, divides out the content and fixes the sign.
pub fn normalize_projective(coords: &[Rational]) -> Result<ProjectivePoint> {
    if coords.len() < 2 {
        return Err(Error::TooFewCoordinates(coords.len()));
    }
    let first = coords
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::AllZero)?;

    let lcm = coords
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coords
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let mut content = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if ints[first].is_negative() {
        content = -content;
    }
    let coords = ints
        .into_iter()
        .map(|v| Rational::from_integer(v / &content))
        .collect();
    Ok(ProjectivePoint { coords })
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        normalize_projective(&coords)
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coords: I) -> Result<Self> {
        let v: Vec<Rational> = coords.into_iter().map(Rational::from).collect();
        normalize_projective(&v)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    /// Never true; a projective point has at least two coordinates.
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    /// Representative with every entry replaced by its absolute value.
    ///
    /// This is the orbit representative under independent sign changes of
    /// the coordinates, which is how points that differ only by `Y_i ↦ -Y_i`
    /// are identified for even exponents.
    pub fn abs_canonical(&self) -> ProjectivePoint {
        ProjectivePoint {
            coords: self.coords.iter().map(Rational::abs).collect(),
        }
    }

    pub fn is_all_ones(&self) -> bool {
        self.coords.iter().all(Rational::is_one)
    }
}

impl TryFrom<Vec<Rational>> for ProjectivePoint {
    type Error = Error;
    fn try_from(v: Vec<Rational>) -> Result<Self> {
        normalize_projective(&v)
    }
}

impl From<ProjectivePoint> for Vec<Rational> {
    fn from(p: ProjectivePoint) -> Self {
        p.coords
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
