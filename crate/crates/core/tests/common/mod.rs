//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use superfiber::elkies::ElkiesDataset;
use superfiber::{q, sth_root_exact, AffinePoint, Curve, CurveWithPoints, FamilyParams, Rational};

/// Curves `y^s = a·x^r + b` with several known rational points, one per
/// `(r, s)` with `2 <= r, s <= 5`: `(r, s, a, b, xs)`.
pub const SEEDS: [(u32, u32, &str, &str, &[&str]); 16] = [
    (2, 2, "7/4", "9/4", &["-1", "0", "-5/3", "-4", "-9"]),
    (3, 2, "-15/64", "1", &["4/3", "-8", "-4", "-8/3", "0"]),
    (
        2,
        3,
        "32/3",
        "-200/3",
        &["-7/2", "-1/2", "-5/3", "-5/2", "-10"],
    ),
    (
        3,
        3,
        "-27/8",
        "-91",
        &["-3", "-4", "-8/3", "-2", "1/3", "10/3"],
    ),
    (4, 2, "7/4", "9/4", &["-1", "0", "-2", "-3"]),
    (5, 2, "-27/3125", "9", &["-5", "0", "10/3"]),
    (2, 4, "5/3", "-77/3", &["-13", "-4", "-5", "-8"]),
    (2, 5, "1449459/160", "-6603091/40", &["-6", "-2/3", "-13/3"]),
    (3, 4, "-135/61516", "27/112", &["-13/4", "-13", "13/3"]),
    (3, 5, "5314683/57344", "805255/896", &["-4", "-2", "12"]),
    (4, 3, "-7/270", "128/5", &["-4", "-6", "-12"]),
    // 59^4 + 158^4 = 133^4 + 134^4
    (
        4,
        4,
        "-12086232530596575/20151121",
        "623201296",
        &["0", "1", "67/79"],
    ),
    (4, 5, "81/41", "-4100625/41", &["-12", "-5/3", "-15"]),
    (5, 3, "-14000/1948617", "625/264", &["9/4", "-9/2", "9"]),
    (5, 4, "-3980340/781", "-3884/781", &["-1/4", "-5/3", "-1/3"]),
    (5, 5, "3125/8021673", "100000/33011", &["9/4", "-6", "16"]),
];

pub fn params(r: u32, s: u32) -> FamilyParams {
    FamilyParams::new(r, s).unwrap()
}

/// `p/q` with `|p| <= h`, `1 <= q <= h`.
pub fn rat(rng: &mut impl Rng, h: i64) -> Rational {
    Rational::new(rng.random_range(-h..=h), rng.random_range(1..=h))
}

pub fn nonzero_rat(rng: &mut impl Rng, h: i64) -> Rational {
    loop {
        let v = rat(rng, h);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Seed curve and its points, recomputed from the x-coordinates.
pub fn seed_points(r: u32, s: u32) -> (Rational, Rational, Vec<AffinePoint>) {
    let (_, _, a, b, xs) = SEEDS
        .iter()
        .find(|e| e.0 == r && e.1 == s)
        .expect("seed exists");
    let (a, b) = (q(a), q(b));
    let pts = xs
        .iter()
        .map(|x| {
            let x = q(x);
            let y = sth_root_exact(&(&a * x.pow(r) + &b), s).expect("seed point");
            AffinePoint::new(x, y)
        })
        .collect();
    (a, b, pts)
}

/// Points on `y^2 = a·x^2 + b` through a random point, by slopes through it.
fn conic_points(rng: &mut impl Rng, count: usize) -> (Rational, Rational, Vec<AffinePoint>) {
    loop {
        let a = nonzero_rat(rng, 9);
        let x0 = rat(rng, 9);
        let y0 = nonzero_rat(rng, 9);
        let b = y0.pow(2) - &a * x0.pow(2);
        if b.is_zero() {
            continue;
        }
        let mut pts = vec![AffinePoint::new(x0.clone(), y0.clone())];
        let mut tries = 0;
        while pts.len() < count && tries < 200 {
            tries += 1;
            let t = rat(rng, 12);
            let den = t.pow(2) - &a;
            if den.is_zero() {
                continue;
            }
            let x = (&x0 * (t.pow(2) + &a) - Rational::from(2) * &t * &y0) / den;
            let y = &y0 + &t * (&x - &x0);
            if pts.iter().all(|p| p.x.pow(2) != x.pow(2)) {
                pts.push(AffinePoint::new(x, y));
            }
        }
        if pts.len() == count {
            return (a, b, pts);
        }
    }
}

/// A random curve with `n + 1` points for the given exponents, `n` as large
/// as the available points allow up to `max_n`. The first point is the base
/// and has `y ≠ 0`; the x-coordinates have distinct `r`-th powers.
pub fn random_cwp(rng: &mut impl Rng, r: u32, s: u32, max_n: usize) -> CurveWithPoints {
    let (a, b, mut pts) = match (r, s) {
        (2, 2) => conic_points(rng, max_n + 1),
        (3, 2) if rng.random_bool(0.5) => {
            let d = ElkiesDataset::embedded();
            (
                Rational::one(),
                Rational::from(d.b0.clone()),
                d.affine_points(),
            )
        }
        _ => seed_points(r, s),
    };
    for p in pts.iter_mut() {
        if r.is_multiple_of(2) && rng.random_bool(0.5) {
            p.x = -&p.x;
        }
        if s.is_multiple_of(2) && rng.random_bool(0.5) {
            p.y = -&p.y;
        }
    }
    pts.shuffle(rng);
    let base = pts
        .iter()
        .position(|p| !p.y.is_zero())
        .expect("a point with y != 0");
    pts.swap(0, base);
    let hi = pts.len().min(max_n + 1);
    let k = rng.random_range(3..=hi);
    pts.truncate(k);

    let lambda = nonzero_rat(rng, 7);
    let mu = nonzero_rat(rng, 7);
    let ls = lambda.pow(s);
    let curve = Curve::new(params(r, s), &a / mu.pow(r) * &ls, &b * &ls);
    let pts = pts
        .into_iter()
        .map(|p| AffinePoint::new(&p.x * &mu, &p.y * &lambda))
        .collect();
    CurveWithPoints::new(curve, pts).expect("generated points lie on the curve")
}

/// `det` by the Leibniz permutation sum.
pub fn leibniz_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Rational::zero();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let term: Rational = (0..n).map(|i| m[i][p[i]].clone()).product();
        total = if inversions % 2 == 0 {
            &total + term
        } else {
            &total - term
        };
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Genus of a smooth complete intersection of `n - 1` hypersurfaces of
/// degree `s` in `P^n`: `2g - 2 = deg·(Σ d_i - n - 1)`, `deg = s^(n-1)`.
pub fn complete_intersection_genus(n: u32, s: u32) -> i128 {
    let deg = (s as i128).pow(n - 1);
    let sum_d = (n as i128 - 1) * s as i128;
    let two_g_minus_two = deg * (sum_d - n as i128 - 1);
    assert_eq!(two_g_minus_two.rem_euclid(2), 0);
    two_g_minus_two / 2 + 1
}

/// Genus of `y^s = a·x^r + b` from Riemann–Hurwitz over the x-line: the
/// degree-`s` cover is totally ramified over the `r` roots of `a·x^r + b`
/// and has `gcd(r, s)` points over infinity.
pub fn riemann_hurwitz_genus(r: u32, s: u32) -> i64 {
    let (r, s) = (r as i64, s as i64);
    let g = gcd(r, s);
    let ramification = r * (s - 1) + (s - g);
    let two_g_minus_two = -2 * s + ramification;
    assert_eq!(two_g_minus_two.rem_euclid(2), 0);
    two_g_minus_two / 2 + 1
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
