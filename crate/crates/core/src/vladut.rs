//! Which abelian groups occur as `E(F_q)` for a given trace.
//!
//! Pure integer logic: a group `Z/n1 x Z/n2` of order `N = q + 1 - m` is
//! realized by some curve over `F_q` exactly when one of the cases below
//! accepts it. The characteristic 2 and 3 cases are kept even though the rest
//! of the crate never builds such fields.

use std::fmt;

use thiserror::Error;

use crate::arith;
use crate::census::GroupShape;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VladutError {
    #[error("invalid class instance: {0}")]
    InvalidInstance(String),
    #[error("shape {shape:?} does not factor the class order {order} with n1 | n2")]
    MalformedShape { shape: GroupShape, order: u64 },
}

/// An isogeny class over `F_q`, identified by its trace `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassInstance {
    q: u64,
    p: u64,
    r: u32,
    m: i64,
}

impl ClassInstance {
    pub fn new(q: u64, p: u64, r: u32, m: i64) -> Result<Self, VladutError> {
        if !arith::is_prime(p) || r == 0 {
            return Err(VladutError::InvalidInstance(format!(
                "p = {p} must be prime and r = {r} positive"
            )));
        }
        if arith::checked_pow(p, r) != Some(q) {
            return Err(VladutError::InvalidInstance(format!("q = {q} is not {p}^{r}")));
        }
        if (m as i128) * (m as i128) > 4 * q as i128 {
            return Err(VladutError::InvalidInstance(format!(
                "m = {m} violates m^2 <= 4q"
            )));
        }
        Ok(ClassInstance { q, p, r, m })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn trace(&self) -> i64 {
        self.m
    }

    /// `q + 1 - m`.
    pub fn order(&self) -> u64 {
        (self.q as i64 + 1 - self.m) as u64
    }
}

/// The case that accepts a shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VladutCase {
    /// `p` does not divide `m` and `n1 | m - 2`.
    Ordinary,
    /// Odd degree, `m = 0`, `p = 1, 2 mod 4`, cyclic.
    OddZeroTrace,
    /// Odd degree, `m = 0`, `p = 3 mod 4`, cyclic or `Z/2 x Z/((q+1)/2)`.
    OddZeroTraceSplit,
    /// Odd degree, `p` in {2, 3}, `m^2 = pq`, cyclic.
    OddSmallChar,
    /// Even degree, `m = +-2 sqrt(q)`, shape `(sqrt(q) -+ 1)^2`.
    EvenDoubleRoot,
    /// Even degree, `m = +-sqrt(q)`, `p = 3` or `p = 2 mod 3`, cyclic.
    EvenSingleRoot,
    /// Even degree, `m = 0`, `p = 2, 3 mod 4`, cyclic.
    EvenZeroTrace,
}

impl fmt::Display for VladutCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            VladutCase::Ordinary => "1",
            VladutCase::OddZeroTrace => "2a",
            VladutCase::OddZeroTraceSplit => "2b",
            VladutCase::OddSmallChar => "2c",
            VladutCase::EvenDoubleRoot => "3a",
            VladutCase::EvenSingleRoot => "3b",
            VladutCase::EvenZeroTrace => "3c",
        };
        f.write_str(label)
    }
}

fn check_shape(inst: &ClassInstance, shape: &GroupShape) -> Result<(), VladutError> {
    if !shape.is_well_formed() || shape.n1.checked_mul(shape.n2) != Some(inst.order()) {
        return Err(VladutError::MalformedShape {
            shape: *shape,
            order: inst.order(),
        });
    }
    Ok(())
}

/// First case (in listing order) that accepts the shape.
pub fn accepting_case(
    inst: &ClassInstance,
    shape: &GroupShape,
) -> Result<Option<VladutCase>, VladutError> {
    check_shape(inst, shape)?;
    let ClassInstance { q, p, r, m } = *inst;
    let cyclic = shape.is_cyclic();

    if m.rem_euclid(p as i64) != 0 && (m - 2).rem_euclid(shape.n1 as i64) == 0 {
        return Ok(Some(VladutCase::Ordinary));
    }

    if r % 2 == 1 {
        if m == 0 && matches!(p % 4, 1 | 2) && cyclic {
            return Ok(Some(VladutCase::OddZeroTrace));
        }
        if m == 0 && p % 4 == 3 {
            let half = q.div_ceil(2);
            if cyclic || (half % 2 == 0 && shape.n1 == 2 && shape.n2 == half) {
                return Ok(Some(VladutCase::OddZeroTraceSplit));
            }
        }
        let mm = (m as i128) * (m as i128);
        if (p == 2 || p == 3) && mm == (p as i128) * (q as i128) && cyclic {
            return Ok(Some(VladutCase::OddSmallChar));
        }
        return Ok(None);
    }

    let Some(s) = arith::exact_sqrt(q) else {
        return Ok(None);
    };
    let s = s as i64;
    if m == 2 * s || m == -2 * s {
        let side = if m > 0 { s - 1 } else { s + 1 } as u64;
        if shape.n1 == side && shape.n2 == side {
            return Ok(Some(VladutCase::EvenDoubleRoot));
        }
    }
    if (m == s || m == -s) && (p == 3 || p % 3 == 2) && cyclic {
        return Ok(Some(VladutCase::EvenSingleRoot));
    }
    if m == 0 && matches!(p % 4, 2 | 3) && cyclic {
        return Ok(Some(VladutCase::EvenZeroTrace));
    }
    Ok(None)
}

pub fn admissible(inst: &ClassInstance, shape: &GroupShape) -> Result<bool, VladutError> {
    accepting_case(inst, shape).map(|c| c.is_some())
}

/// Every admissible `(n1, n2)` with `n1 | n2` and `n1 n2 = N`, by ascending `n1`.
pub fn admissible_shapes(inst: &ClassInstance) -> Vec<GroupShape> {
    let n = inst.order();
    if n == 0 {
        return Vec::new();
    }
    arith::divisors(n)
        .into_iter()
        .filter(|&d| n % (d * d) == 0)
        .map(|d| GroupShape { n1: d, n2: n / d })
        .filter(|s| admissible(inst, s).unwrap_or(false))
        .collect()
}

/// Whether the class admits exactly one group structure.
pub fn structure_unique(inst: &ClassInstance) -> bool {
    admissible_shapes(inst).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(q: u64, p: u64, r: u32, m: i64) -> ClassInstance {
        ClassInstance::new(q, p, r, m).unwrap()
    }

    fn shape(n1: u64, n2: u64) -> GroupShape {
        GroupShape { n1, n2 }
    }

    #[test]
    fn q7_trace_zero_admits_both_shapes() {
        let i = inst(7, 7, 1, 0);
        assert!(admissible(&i, &shape(1, 8)).unwrap());
        assert!(admissible(&i, &shape(2, 4)).unwrap());
        assert_eq!(admissible_shapes(&i), vec![shape(1, 8), shape(2, 4)]);
        assert!(!structure_unique(&i));
    }

    #[test]
    fn q5_trace_zero_is_cyclic() {
        let i = inst(5, 5, 1, 0);
        assert!(matches!(
            admissible(&i, &shape(2, 3)),
            Err(VladutError::MalformedShape { .. })
        ));
        assert!(matches!(
            admissible(&i, &shape(1, 8)),
            Err(VladutError::MalformedShape { .. })
        ));
        assert!(admissible(&i, &shape(1, 6)).unwrap());
        assert_eq!(admissible_shapes(&i), vec![shape(1, 6)]);
        assert!(structure_unique(&i));
    }

    #[test]
    fn q49_double_root() {
        let i = inst(49, 7, 2, 14);
        assert_eq!(accepting_case(&i, &shape(6, 6)).unwrap(), Some(VladutCase::EvenDoubleRoot));
        assert_eq!(admissible_shapes(&i), vec![shape(6, 6)]);
        assert!(structure_unique(&inst(49, 7, 2, -14)));
        assert_eq!(admissible_shapes(&inst(49, 7, 2, -14)), vec![shape(8, 8)]);
        assert_eq!(admissible_shapes(&inst(49, 7, 2, 0)), vec![shape(1, 50)]);
    }

    #[test]
    fn ordinary_class_over_f13() {
        assert_eq!(
            admissible_shapes(&inst(13, 13, 1, -2)),
            vec![shape(1, 16), shape(2, 8), shape(4, 4)]
        );
        assert!(!structure_unique(&inst(11, 11, 1, 0)));
    }

    #[test]
    fn q25_contains_observed() {
        let shapes = admissible_shapes(&inst(25, 5, 2, -6));
        assert!(shapes.contains(&shape(4, 8)));
        assert_eq!(shapes, vec![shape(1, 32), shape(2, 16), shape(4, 8)]);
    }

    #[test]
    fn small_characteristic_cases() {
        // q = 3: m^2 = 9 = pq, N = 1 or 7.
        let i = inst(3, 3, 1, 3);
        assert_eq!(accepting_case(&i, &shape(1, 1)).unwrap(), Some(VladutCase::OddSmallChar));
        let i = inst(8, 2, 3, -4);
        assert_eq!(accepting_case(&i, &shape(1, 13)).unwrap(), Some(VladutCase::OddSmallChar));
        // q = 2, m = 0: p = 2 falls in the "1, 2 mod 4" branch.
        let i = inst(2, 2, 1, 0);
        assert_eq!(accepting_case(&i, &shape(1, 3)).unwrap(), Some(VladutCase::OddZeroTrace));
        // q = 9, m = +-3 with p = 3.
        let i = inst(9, 3, 2, 3);
        assert_eq!(accepting_case(&i, &shape(1, 7)).unwrap(), Some(VladutCase::EvenSingleRoot));
    }

    #[test]
    fn split_shape_needs_even_half() {
        let i = inst(11, 11, 1, 0);
        assert_eq!(
            accepting_case(&i, &shape(2, 6)).unwrap(),
            Some(VladutCase::OddZeroTraceSplit)
        );
        // q = 7^3: (q + 1)/2 = 172, split shape (2, 172).
        let i = inst(343, 7, 3, 0);
        assert_eq!(admissible_shapes(&i), vec![shape(1, 344), shape(2, 172)]);
        let i = inst(19, 19, 1, 0);
        assert_eq!(admissible_shapes(&i), vec![shape(1, 20), shape(2, 10)]);
    }

    #[test]
    fn invalid_instances() {
        assert!(ClassInstance::new(12, 2, 2, 0).is_err());
        assert!(ClassInstance::new(7, 7, 1, 6).is_err());
        assert!(ClassInstance::new(9, 9, 1, 0).is_err());
    }
}
