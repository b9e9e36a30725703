//! Point counts, traces, supersingularity and group structure by exhaustive
//! enumeration, plus the closed-form order predictions for the `j = 0` and
//! `j = 1728` families.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::curve::{Curve, Point};
use crate::field::{Fe, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("{0} is not congruent to 1 mod 3, so it has no decomposition a^2 + 3b^2")]
    NoDecomposition(u64),
    #[error("no closed form: {0}")]
    Unsupported(String),
    #[error("malformed group shape: {0}")]
    MalformedShape(String),
}

/// `Z/n1 x Z/n2`; well-formed shapes have `n1 | n2`, and `(1, N)` is cyclic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupShape {
    pub n1: u64,
    pub n2: u64,
}

impl GroupShape {
    pub fn new(n1: u64, n2: u64) -> Result<Self, CensusError> {
        let shape = GroupShape { n1, n2 };
        if shape.is_well_formed() {
            Ok(shape)
        } else {
            Err(CensusError::MalformedShape(format!("{n1}x{n2}")))
        }
    }

    pub fn cyclic(n: u64) -> Self {
        GroupShape { n1: 1, n2: n }
    }

    pub fn is_well_formed(&self) -> bool {
        self.n1 >= 1 && self.n2 >= 1 && self.n2 % self.n1 == 0
    }

    pub fn order(&self) -> u64 {
        self.n1.saturating_mul(self.n2)
    }

    pub fn is_cyclic(&self) -> bool {
        self.n1 == 1
    }

    /// Compact `n1xn2` form used in CSV and JSON output.
    pub fn compact(&self) -> String {
        format!("{}x{}", self.n1, self.n2)
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n1 == 1 {
            write!(f, "Z/{}", self.n2)
        } else {
            write!(f, "Z/{}×Z/{}", self.n1, self.n2)
        }
    }
}

impl FromStr for GroupShape {
    type Err = CensusError;

    /// Parses the compact `n1xn2` form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CensusError::MalformedShape(s.to_string());
        let (a, b) = s.trim().split_once('x').ok_or_else(bad)?;
        let n1 = a.trim().parse::<u64>().map_err(|_| bad())?;
        let n2 = b.trim().parse::<u64>().map_err(|_| bad())?;
        GroupShape::new(n1, n2)
    }
}

/// Everything the census reports about one curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveCensus {
    pub order: u64,
    pub trace: i64,
    pub supersingular: bool,
    pub shape: GroupShape,
}

/// Whether `|q + 1 - n| <= 2 sqrt(q)`.
pub fn within_hasse(q: u64, n: u64) -> bool {
    let t = q as i128 + 1 - n as i128;
    t * t <= 4 * q as i128
}

/// `#E(F_q) = 1 + sum_x (1 + chi(x^3 + Ax + B))`.
pub fn count_points(curve: &Curve) -> u64 {
    let f = curve.field();
    let affine: i64 = f
        .enumerate()
        .map(|x| 1 + f.chi(curve.rhs(x)) as i64)
        .sum();
    1 + affine as u64
}

/// Trace of Frobenius `q + 1 - #E(F_q)`.
pub fn trace(curve: &Curve) -> i64 {
    curve.field().q() as i64 + 1 - count_points(curve) as i64
}

pub fn is_supersingular(curve: &Curve) -> bool {
    count_points(curve) % curve.field().p() == 1
}

/// Number of rational points killed by `d`.
pub fn torsion_count(curve: &Curve, d: u64) -> u64 {
    torsion_count_in(curve, &curve.points(), d)
}

fn torsion_count_in(curve: &Curve, points: &[Point], d: u64) -> u64 {
    if d == 1 {
        return 1;
    }
    if d == 2 {
        return points
            .iter()
            .filter(|pt| match pt {
                Point::Infinity => true,
                Point::Affine { y, .. } => *y == curve.field().zero(),
            })
            .count() as u64;
    }
    points
        .iter()
        .filter(|pt| curve.scalar_mul(d as i64, pt).is_infinity())
        .count() as u64
}

/// Which candidates for `n1` the structure search tries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StructureSearch {
    /// Divisors of `gcd(N, q - 1)`; full rational n-torsion forces `n | q - 1`.
    #[default]
    Restricted,
    /// Every `d` with `d^2 | N`.
    Unrestricted,
}

pub fn group_structure(curve: &Curve) -> GroupShape {
    group_structure_with(curve, StructureSearch::Restricted)
}

/// `n1` is the largest `d` with `d^2 | N` whose full `d`-torsion is
/// rational; `n2 = N / n1`.
///
/// The restricted search assembles `n1` one prime at a time from the
/// divisors of `gcd(N, q - 1)`. The unrestricted search walks every `d` with
/// `d^2 | N` from the top, which is slower but shares no logic with the
/// prime-by-prime route.
pub fn group_structure_with(curve: &Curve, search: StructureSearch) -> GroupShape {
    let points = curve.points();
    structure_from_points(curve, &points, search)
}

fn structure_from_points(curve: &Curve, points: &[Point], search: StructureSearch) -> GroupShape {
    let n = points.len() as u64;
    let n1 = match search {
        StructureSearch::Restricted => {
            let g = arith::gcd(n, curve.field().q() - 1);
            arith::factorize(g)
                .into_iter()
                .map(|(l, _)| l.pow(torsion_exponent(curve, points, l)))
                .product()
        }
        StructureSearch::Unrestricted => arith::divisors(n)
            .into_iter()
            .rev()
            .filter(|&d| n % (d * d) == 0)
            .find(|&d| torsion_count_in(curve, points, d) == d * d)
            .unwrap_or(1),
    };
    GroupShape { n1, n2: n / n1 }
}

/// Largest `e` such that all `l^(2e)` points of `E[l^e]` are rational, i.e.
/// the `l`-adic valuation of `n1`. `points` must be the full point list.
pub(crate) fn torsion_exponent(curve: &Curve, points: &[Point], l: u64) -> u32 {
    let n = points.len() as u64;
    let q1 = curve.field().q() - 1;
    let mut e = 0;
    let mut d = l;
    while n % (d * d) == 0 && q1 % d == 0 && torsion_count_in(curve, points, d) == d * d {
        e += 1;
        d *= l;
    }
    e
}

pub fn census(curve: &Curve) -> CurveCensus {
    let points = curve.points();
    let order = points.len() as u64;
    let f = curve.field();
    CurveCensus {
        order,
        trace: f.q() as i64 + 1 - order as i64,
        supersingular: order % f.p() == 1,
        shape: structure_from_points(curve, &points, StructureSearch::Restricted),
    }
}

/// The unique `(a, b)` with `a^2 + 3b^2 = p`, `b > 0`, `a = 2 mod 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussPair {
    pub a: i64,
    pub b: i64,
}

pub fn gauss_ab(p: u64) -> Result<GaussPair, CensusError> {
    if p % 3 != 1 {
        return Err(CensusError::NoDecomposition(p));
    }
    let mut b = 1u64;
    while 3 * b * b < p {
        if let Some(a) = arith::exact_sqrt(p - 3 * b * b) {
            let a = a as i64;
            let a = if a.rem_euclid(3) == 2 { a } else { -a };
            if a.rem_euclid(3) == 2 {
                return Ok(GaussPair { a, b: b as i64 });
            }
        }
        b += 1;
    }
    Err(CensusError::NoDecomposition(p))
}

fn shifted(q: u64, deltas: &[i64]) -> BTreeSet<u64> {
    deltas.iter().map(|d| (q as i64 + 1 + d) as u64).collect()
}

/// Candidate orders for `y^2 = x^3 + B`.
///
/// For `p = 2 mod 3` the order is `q + 1` in odd degree and one of
/// `q + 1 +- 2 sqrt(q)`, `q + 1 +- sqrt(q)` in even degree. For
/// `p = 1 mod 3` over the prime field the candidate set follows the sextic,
/// cubic and quadratic residue class of `B`; sign ambiguities are returned
/// as two-element sets.
pub fn closed_form_orders_j0(field: &Field, b: Fe) -> Result<BTreeSet<u64>, CensusError> {
    let (p, r, q) = (field.p(), field.r(), field.q());
    if b == field.zero() {
        return Err(CensusError::Unsupported("B = 0 is singular".into()));
    }
    if p % 3 == 2 {
        if r % 2 == 1 {
            return Ok(shifted(q, &[0]));
        }
        let s = arith::exact_sqrt(q).expect("even degree") as i64;
        return Ok(shifted(q, &[2 * s, -2 * s, s, -s]));
    }
    if r > 1 {
        return Err(CensusError::Unsupported(format!(
            "j = 0 over F_{p}^{r} with p = 1 mod 3"
        )));
    }
    let GaussPair { a, b: gb } = gauss_ab(p)?;
    let sextic = field.residue_class(b, 6).expect("6 | p - 1");
    let cubic = field.residue_class(b, 3).expect("3 | p - 1");
    let quadratic = field.residue_class(b, 2).expect("2 | p - 1");
    let deltas: Vec<i64> = if sextic {
        vec![2 * a]
    } else if cubic {
        vec![-2 * a]
    } else if quadratic {
        vec![-a + 3 * gb, -a - 3 * gb]
    } else {
        vec![a + 3 * gb, a - 3 * gb]
    };
    Ok(shifted(q, &deltas))
}

/// Candidate orders for `y^2 = x^3 + Ax` when `p = 3 mod 4`.
pub fn closed_form_orders_1728(field: &Field) -> Result<BTreeSet<u64>, CensusError> {
    let (p, r, q) = (field.p(), field.r(), field.q());
    if p % 4 != 3 {
        return Err(CensusError::Unsupported(format!(
            "j = 1728 with p = {p} = 1 mod 4"
        )));
    }
    if r % 2 == 1 {
        return Ok(shifted(q, &[0]));
    }
    let s = arith::exact_sqrt(q).expect("even degree") as i64;
    Ok(shifted(q, &[0, 2 * s, -2 * s]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JClass {
    Zero,
    TwelveCubed,
}

/// `j = 0` curves are supersingular iff `p = 2 mod 3`; `j = 1728` curves iff
/// `p = 3 mod 4`.
pub fn supersingular_criterion(class: JClass, p: u64) -> bool {
    match class {
        JClass::Zero => p % 3 == 2,
        JClass::TwelveCubed => p % 4 == 3,
    }
}
