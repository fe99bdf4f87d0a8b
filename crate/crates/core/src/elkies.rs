//! Elkies' rank-17 curve `y^2 = x^3 + b_0` and its 17 independent points,
//! as printed, together with the printed data of the fiber they define.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::curve::{AffinePoint, Curve, FamilyParams};
use crate::error::Result;
use crate::fiber::{fiber_genus, Fiber};
use crate::projective::ProjectivePoint;
use crate::Rational;

const B0: &str = "24537619889008718205152851658505801";

const POINTS: [(&str, &str); 17] = [
    ("-249954149276", "94452185380426435"),
    ("-218829008658", "118569576333381183"),
    ("-110315760690", "152299457785937151"),
    ("-12083686365", "156639252691623474"),
    ("179588218407", "174154202398188288"),
    ("194693247690", "178654854781822599"),
    ("481938369495", "369425010854453724"),
    ("527526224524", "413931980240076925"),
    ("532637728899", "419104420151289750"),
    ("660796972800", "559532270810391651"),
    ("891937317975", "856808203106532276"),
    ("1369152212199", "1609695603071293320"),
    ("1556910033324", "1948958451538253955"),
    ("2095375244992", "3037184017947911267"),
    ("3020920353232", "5252935870900542563"),
    ("45908680009155", "311058636438867847974"),
    ("209109621212430", "3023855428577131273599"),
];

const C: &str = "513752910873906596077460673167026";

/// `(A_i, B_i)` of `c·Y_i^2 = A_i·Y_1^2 - B_i·Y_0^2` for `i = 2..=16`.
const EQUATIONS: [(&str, &str); 15] = [
    (
        "14273909518752011104805996875187576",
        "9136380410012945144031390143517312",
    ),
    (
        "15614640160651830564600703341019451",
        "10477111051912764603826096609349187",
    ),
    (
        "21408470889810690063581042253561719",
        "16270941781071624102806435521891455",
    ),
    (
        "22996341813975679987992445860305576",
        "17858812705236614027217839128635312",
    ),
    (
        "127553623321674810616820424010658951",
        "122416094212935744656045817278988687",
    ),
    (
        "162418468942332992713014707470646400",
        "157280939833593926752240100738976136",
    ),
    (
        "166727299667210364694533366008253275",
        "161589770558471298733758759276583011",
    ),
    (
        "304155146755095019623144945563696576",
        "299017617646355953662370338832026312",
    ),
    (
        "725199081587506223753723959382930951",
        "720061552478767157792949352651260687",
    ),
    (
        "2582198719223916255279881435029813175",
        "2577061190115177189319106828298142911",
    ),
    (
        "3789517830499250148872819507626332800",
        "3784380301390511082912044900894662536",
    ),
    (
        "9215565543555079748052029625658736064",
        "9210428014446340682091255018927065800",
    ),
    (
        "27584414048470503122920101305327799744",
        "27579276519361764056959326698596129480",
    ),
    (
        "96757466381992441404259415168107529095451",
        "96757461244463332665193454393500797425187",
    ),
    (
        "9143701644014170929876417817964781347603576",
        "9143701638876641821137351857190174615933312",
    ),
];

const GENUS: u128 = 212993;

fn int(s: &str) -> BigInt {
    s.parse().expect("embedded integers are well formed")
}

/// The printed data. Fields are public so that faults can be injected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElkiesDataset {
    pub b0: BigInt,
    pub points: Vec<(BigInt, BigInt)>,
    pub expected_c: BigInt,
    /// `(A_i, B_i)` for `i = 2..=16`.
    pub expected_equations: Vec<(BigInt, BigInt)>,
    pub expected_genus: u128,
}

impl ElkiesDataset {
    pub fn embedded() -> Self {
        ElkiesDataset {
            b0: int(B0),
            points: POINTS.iter().map(|(x, y)| (int(x), int(y))).collect(),
            expected_c: int(C),
            expected_equations: EQUATIONS.iter().map(|(a, b)| (int(a), int(b))).collect(),
            expected_genus: GENUS,
        }
    }

    pub fn curve(&self) -> Curve {
        let params = FamilyParams::new(3, 2).expect("valid exponents");
        Curve::new(params, Rational::one(), Rational::from(self.b0.clone()))
    }

    pub fn affine_points(&self) -> Vec<AffinePoint> {
        self.points
            .iter()
            .map(|(x, y)| AffinePoint::new(Rational::from(x.clone()), Rational::from(y.clone())))
            .collect()
    }

    pub fn alphas(&self) -> Vec<Rational> {
        self.points
            .iter()
            .map(|(x, _)| Rational::from(x.clone()))
            .collect()
    }

    pub fn fiber(&self) -> Result<Fiber> {
        Fiber::from_parts(self.alphas(), 3, 2)
    }

    /// `Q' = [y(P_0) : … : y(P_16)]`.
    pub fn q_prime(&self) -> Result<ProjectivePoint> {
        ProjectivePoint::new(
            self.points
                .iter()
                .map(|(_, y)| Rational::from(y.clone()))
                .collect(),
        )
    }

    /// Invariants of the data itself: every point on the curve and
    /// pairwise distinct x-coordinates.
    pub fn self_check(&self) -> std::result::Result<(), String> {
        let curve = self.curve();
        for (i, p) in self.affine_points().iter().enumerate() {
            if !curve.contains(p) {
                return Err(format!("P_{i} is not on y^2 = x^3 + b0"));
            }
        }
        for j in 0..self.points.len() {
            for i in 0..j {
                if self.points[i].0 == self.points[j].0 {
                    return Err(format!("P_{i} and P_{j} share an x-coordinate"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub item: String,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub mismatches: Vec<Mismatch>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Check {
    fn new(id: &'static str, description: &'static str, mismatches: Vec<Mismatch>) -> Self {
        Check {
            id,
            description,
            passed: mismatches.is_empty(),
            mismatches,
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReproReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl ReproReport {
    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for ReproReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} ({}) {}", c.id, c.description)?;
            for m in &c.mismatches {
                writeln!(
                    f,
                    "    {}: expected {}, found {}",
                    m.item, m.expected, m.found
                )?;
            }
            for n in &c.notes {
                writeln!(f, "    note: {n}")?;
            }
        }
        Ok(())
    }
}

fn mismatch(item: impl Into<String>, expected: impl ToString, found: impl ToString) -> Mismatch {
    Mismatch {
        item: item.into(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// Recomputes every printed quantity from the points and compares.
pub fn repro_elkies(data: &ElkiesDataset) -> ReproReport {
    let curve = data.curve();
    let on_curve = data
        .affine_points()
        .iter()
        .enumerate()
        .filter(|(_, p)| !curve.contains(p))
        .map(|(i, p)| mismatch(format!("P_{i}"), p.y.pow(2), curve.rhs(&p.x)))
        .collect();
    let mut checks = vec![Check::new(
        "i",
        "all points lie on y^2 = x^3 + b0",
        on_curve,
    )];

    let alphas = data.alphas();
    let cubes: Vec<Rational> = alphas.iter().map(|a| a.pow(3)).collect();
    let c = &cubes[1] - &cubes[0];
    let expected_c = Rational::from(data.expected_c.clone());
    let mut c_check = Check::new(
        "ii",
        "c = x(P_1)^3 - x(P_0)^3 matches the printed constant",
        if c == expected_c {
            vec![]
        } else {
            vec![mismatch("c", &expected_c, &c)]
        },
    );
    let (shown, want) = (c.to_string(), expected_c.to_string());
    if !c_check.passed && shown.len() == want.len() + 1 && shown.starts_with(&want) {
        c_check.notes.push(format!(
            "the printed constant is the computed one without its final digit {:?}",
            &shown[want.len()..]
        ));
    }
    checks.push(c_check);

    let mut eq_mismatches = Vec::new();
    for (k, (a_want, b_want)) in data.expected_equations.iter().enumerate() {
        let i = k + 2;
        let Some(ci) = cubes.get(i) else {
            eq_mismatches.push(mismatch(format!("equation {i}"), "a point P_i", "none"));
            continue;
        };
        let a = ci - &cubes[0];
        let b = ci - &cubes[1];
        let (a_want, b_want) = (
            Rational::from(a_want.clone()),
            Rational::from(b_want.clone()),
        );
        if a != a_want {
            eq_mismatches.push(mismatch(format!("A_{i}"), &a_want, &a));
        }
        if b != b_want {
            eq_mismatches.push(mismatch(format!("B_{i}"), &b_want, &b));
        }
    }
    if data.expected_equations.len() + 2 != cubes.len() {
        eq_mismatches.push(mismatch(
            "equation count",
            cubes.len().saturating_sub(2),
            data.expected_equations.len(),
        ));
    }
    checks.push(Check::new(
        "iii",
        "coefficient pairs (A_i, B_i) match the printed equations",
        eq_mismatches,
    ));

    let on_fiber = match data.fiber().and_then(|f| f.point(data.q_prime()?)) {
        Ok(_) => vec![],
        Err(e) => vec![mismatch("Q'", "on the fiber", e)],
    };
    checks.push(Check::new(
        "iv",
        "Q' = [y(P_0) : ... : y(P_16)] lies on the fiber",
        on_fiber,
    ));

    let n = data.points.len().saturating_sub(1);
    let genus = match fiber_genus(n, 2) {
        Ok(g) if g == data.expected_genus => vec![],
        Ok(g) => vec![mismatch("genus", data.expected_genus, g)],
        Err(e) => vec![mismatch("genus", data.expected_genus, e)],
    };
    checks.push(Check::new("v", "fiber genus matches", genus));

    ReproReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::birational::phi_inverse;
    use crate::q;

    #[test]
    fn dataset_invariants_hold() {
        assert_eq!(ElkiesDataset::embedded().self_check(), Ok(()));
    }

    #[test]
    fn checks_other_than_c_pass() {
        let r = repro_elkies(&ElkiesDataset::embedded());
        for id in ["i", "iii", "iv", "v"] {
            assert!(r.check(id).unwrap().passed, "check {id}: {r}");
        }
    }

    #[test]
    fn printed_c_drops_final_digit() {
        let r = repro_elkies(&ElkiesDataset::embedded());
        let c = r.check("ii").unwrap();
        assert!(!c.passed);
        assert_eq!(c.mismatches[0].found, "5137529108739065960774606731670264");
        assert!(c.notes[0].contains("\"4\""));
    }

    #[test]
    fn perturbed_point_fails_membership() {
        let mut d = ElkiesDataset::embedded();
        d.points[3].1 += 1;
        let r = repro_elkies(&d);
        let c = r.check("i").unwrap();
        assert!(!c.passed);
        assert_eq!(c.mismatches.len(), 1);
        assert_eq!(c.mismatches[0].item, "P_3");
        assert!(d.self_check().is_err());
    }

    #[test]
    fn perturbed_coefficient_fails_at_index() {
        let mut d = ElkiesDataset::embedded();
        d.expected_equations[0].0 += 1;
        let r = repro_elkies(&d);
        let c = r.check("iii").unwrap();
        assert_eq!(c.mismatches.len(), 1);
        assert_eq!(c.mismatches[0].item, "A_2");
    }

    #[test]
    fn inverse_recovers_curve() {
        let d = ElkiesDataset::embedded();
        let fiber = d.fiber().unwrap();
        let cwp = phi_inverse(&fiber, &d.q_prime().unwrap()).unwrap();
        assert!(cwp.curve().is_equivalent(&d.curve()));
        assert_eq!(cwp.curve().a(), &q("1"));
        assert_eq!(cwp.points(), d.affine_points().as_slice());
    }

    #[test]
    fn normalized_first_equation() {
        let fiber = ElkiesDataset::embedded().fiber().unwrap();
        let e = &fiber.equations()[0];
        let eight = q("8");
        assert_eq!(&e.ci * &eight, q("5137529108739065960774606731670264"));
        assert_eq!(&e.c1 * &eight, q("-14273909518752011104805996875187576"));
    }
}
