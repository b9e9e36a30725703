//! Exact arithmetic in F_p and F_{p^r}.
//!
//! An element is stored as the index of its coefficient vector in odometer
//! order: `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`, constant coefficient
//! fastest. Multiplication, inversion and the quadratic character go through
//! discrete log/antilog tables that are built once when the field is
//! constructed; the tables are derived from plain polynomial arithmetic
//! modulo the defining polynomial.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith;

/// Largest field size accepted unless a caller asks for a different bound.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is below 5")]
    CharTooSmall(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("field size {p}^{r} exceeds the bound {bound}")]
    BoundExceeded { p: u64, r: u32, bound: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field")]
    MixedFields,
    #[error("zero has no power-residue class")]
    ZeroInput,
    #[error("{k} does not divide q - 1 = {order}")]
    IncompatibleOrder { k: u64, order: u64 },
    #[error("cannot parse field element: {0}")]
    Parse(String),
}

/// An element of some [`Field`]. Only meaningful together with its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(pub(crate) u32);

impl Fe {
    /// Position of the element in [`Field::enumerate`] order.
    pub fn index(self) -> u32 {
        self.0
    }
}

struct FieldData {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[i] = g^i` for `0 <= i < q - 1`.
    exp: Vec<u32>,
    /// Inverse of `exp`; `log[0]` is unused.
    log: Vec<u32>,
    /// One square root of each square, `NO_ROOT` for non-squares.
    sqrt: Vec<u32>,
}

const NO_ROOT: u32 = u32::MAX;

/// The finite field F_{p^r} with a fixed defining polynomial.
///
/// Cloning is cheap; all clones share the same tables.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.0.p)
            .field("r", &self.0.r)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.r == other.0.r && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl Field {
    /// F_{p^r} with the default size bound.
    pub fn new(p: u64, r: u32) -> Result<Self, FieldError> {
        Self::with_bound(p, r, DEFAULT_FIELD_BOUND)
    }

    pub fn with_bound(p: u64, r: u32, bound: u64) -> Result<Self, FieldError> {
        if !arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p < 5 {
            return Err(FieldError::CharTooSmall(p));
        }
        if r == 0 {
            return Err(FieldError::InvalidDegree);
        }
        let q = match arith::checked_pow(p, r) {
            Some(q) if q <= bound && q <= u32::MAX as u64 / 2 => q,
            _ => return Err(FieldError::BoundExceeded { p, r, bound }),
        };
        let p = p as u32;
        let q = q as u32;
        let modulus = if r == 1 {
            vec![0, 1]
        } else {
            poly::smallest_irreducible(p, r as usize)
        };
        let ring = poly::QuotientRing::new(p, r as usize, &modulus);
        let generator = (1..q)
            .find(|&g| ring.is_primitive(g, q))
            .expect("the multiplicative group of a finite field is cyclic");

        let order = (q - 1) as usize;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..order {
            exp.push(cur);
            log[cur as usize] = i as u32;
            cur = ring.mul(cur, generator);
        }
        debug_assert_eq!(cur, 1);

        let mut sqrt = vec![NO_ROOT; q as usize];
        sqrt[0] = 0;
        for i in 0..order / 2 {
            sqrt[exp[(2 * i) % order] as usize] = exp[i];
        }

        Ok(Field(Arc::new(FieldData {
            p,
            r,
            q,
            modulus,
            generator,
            exp,
            log,
            sqrt,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    pub fn r(&self) -> u32 {
        self.0.r
    }

    pub fn q(&self) -> u64 {
        self.0.q as u64
    }

    /// Defining polynomial, `r + 1` coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The primitive element used for the log tables.
    pub fn generator(&self) -> Fe {
        Fe(self.0.generator)
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element with the given coefficients (constant first). Missing
    /// trailing coefficients are zero.
    pub fn element(&self, coeffs: &[u32]) -> Result<Fe, FieldError> {
        if coeffs.len() > self.0.r as usize {
            return Err(FieldError::MixedFields);
        }
        let mut idx = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= self.0.p {
                return Err(FieldError::MixedFields);
            }
            idx = idx * self.0.p + c;
        }
        Ok(Fe(idx))
    }

    /// Element at a given enumeration index.
    pub fn element_at(&self, index: u32) -> Result<Fe, FieldError> {
        self.check(Fe(index))
    }

    /// Verifies that an element belongs to this field.
    pub fn check(&self, x: Fe) -> Result<Fe, FieldError> {
        if x.0 < self.0.q {
            Ok(x)
        } else {
            Err(FieldError::MixedFields)
        }
    }

    /// Coefficient vector of length `r`, constant first.
    pub fn coeffs(&self, x: Fe) -> Vec<u32> {
        let mut v = x.0;
        (0..self.0.r)
            .map(|_| {
                let c = v % self.0.p;
                v /= self.0.p;
                c
            })
            .collect()
    }

    pub fn in_prime_subfield(&self, x: Fe) -> bool {
        x.0 < self.0.p
    }

    /// All `q` elements in odometer order (constant coefficient fastest).
    pub fn enumerate(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.0.q).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if self.0.r == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.0.r {
            let mut d = x % p + y % p;
            if d >= p {
                d -= p;
            }
            out += d * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.0.p;
        if self.0.r == 1 {
            return Fe(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let mut x = a.0;
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.0.r {
            let d = x % p;
            out += if d == 0 { 0 } else { (p - d) * place };
            x /= p;
            place = place.wrapping_mul(p);
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let d = &self.0;
        let order = d.q - 1;
        let mut e = d.log[a.0 as usize] + d.log[b.0 as usize];
        if e >= order {
            e -= order;
        }
        Fe(d.exp[e as usize])
    }

    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let d = &self.0;
        let l = d.log[a.0 as usize];
        Ok(Fe(d.exp[if l == 0 { 0 } else { (d.q - 1 - l) as usize }]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by square-and-multiply on the integer exponent; `0^0 = 1`.
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Quadratic character: 0 on zero, +1 on nonzero squares, -1 otherwise.
    pub fn chi(&self, a: Fe) -> i8 {
        if a.0 == 0 {
            0
        } else if self.0.log[a.0 as usize] % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Whether a nonzero `a` is a k-th power residue, i.e. `a^((q-1)/k) = 1`.
    pub fn residue_class(&self, a: Fe, k: u64) -> Result<bool, FieldError> {
        let order = self.q() - 1;
        if k == 0 || order % k != 0 {
            return Err(FieldError::IncompatibleOrder { k, order });
        }
        if a.0 == 0 {
            return Err(FieldError::ZeroInput);
        }
        Ok(self.pow(a, order / k) == self.one())
    }

    /// One square root of `a`, if it exists.
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        match self.0.sqrt[a.0 as usize] {
            NO_ROOT => None,
            s => Some(Fe(s)),
        }
    }

    /// Discrete logarithm to the base [`Field::generator`].
    pub fn log(&self, a: Fe) -> Option<u32> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize])
    }

    /// Parses an element from `c0,c1,...` (constant first); a single
    /// integer is reduced into the prime subfield and may be negative.
    pub fn parse_element(&self, s: &str) -> Result<Fe, FieldError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() == 1 {
            let n: i64 = parts[0]
                .parse()
                .map_err(|_| FieldError::Parse(s.to_string()))?;
            return Ok(self.from_int(n));
        }
        if parts.len() > self.0.r as usize {
            return Err(FieldError::Parse(format!(
                "{s}: expected at most {} coefficients",
                self.0.r
            )));
        }
        let coeffs = parts
            .iter()
            .map(|t| {
                t.parse::<i64>()
                    .map(|n| n.rem_euclid(self.0.p as i64) as u32)
                    .map_err(|_| FieldError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.element(&coeffs)
    }

    /// Formats an element the way [`Field::parse_element`] reads it.
    pub fn display(&self, a: Fe) -> FeDisplay<'_> {
        FeDisplay { field: self, value: a }
    }
}

pub struct FeDisplay<'a> {
    field: &'a Field,
    value: Fe,
}

impl fmt::Display for FeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.field.coeffs(self.value);
        for (i, c) in coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Dense polynomials over F_p, used only to build the field tables.
pub(crate) mod poly {
    use crate::arith;

    /// Remainder of `a` modulo the monic `m`; both constant term first.
    fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a: Vec<u64> = a.iter().map(|&c| c as u64).collect();
        let dm = m.len() - 1;
        let p = p as u64;
        while a.len() > dm {
            let lead = a.pop().unwrap() % p;
            if lead == 0 {
                continue;
            }
            let off = a.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                a[off + i] = (a[off + i] + (p - lead) * c as u64) % p;
            }
        }
        a.into_iter().map(|c| (c % p) as u32).collect()
    }

    fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn has_root(f: &[u32], p: u32) -> bool {
        let p64 = p as u64;
        (0..p64).any(|x| {
            let v = f
                .iter()
                .rev()
                .fold(0u64, |acc, &c| (acc * x + c as u64) % p64);
            v == 0
        })
    }

    /// Monic `f` of degree `>= 1` is irreducible: no roots, and no monic
    /// divisor of degree 2..=deg/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        if deg == 1 {
            return true;
        }
        if has_root(f, p) {
            return false;
        }
        for d in 2..=deg / 2 {
            let count = arith::checked_pow(p as u64, d as u32).unwrap();
            for idx in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut v = idx;
                for _ in 0..d {
                    g.push((v % p as u64) as u32);
                    v /= p as u64;
                }
                g.push(1);
                if is_zero(&rem(f, &g, p)) {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest monic irreducible polynomial of degree `r`, ordering the
    /// non-leading coefficients by odometer index (constant fastest).
    pub fn smallest_irreducible(p: u32, r: usize) -> Vec<u32> {
        let count = arith::checked_pow(p as u64, r as u32).unwrap();
        for idx in 0..count {
            let mut f = Vec::with_capacity(r + 1);
            let mut v = idx;
            for _ in 0..r {
                f.push((v % p as u64) as u32);
                v /= p as u64;
            }
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// F_p[x] / (modulus) on packed odometer indices.
    pub struct QuotientRing<'a> {
        p: u32,
        r: usize,
        modulus: &'a [u32],
    }

    impl<'a> QuotientRing<'a> {
        pub fn new(p: u32, r: usize, modulus: &'a [u32]) -> Self {
            Self { p, r, modulus }
        }

        fn unpack(&self, mut v: u32) -> Vec<u32> {
            (0..self.r)
                .map(|_| {
                    let c = v % self.p;
                    v /= self.p;
                    c
                })
                .collect()
        }

        fn pack(&self, c: &[u32]) -> u32 {
            c.iter().rev().fold(0, |acc, &d| acc * self.p + d)
        }

        pub fn mul(&self, a: u32, b: u32) -> u32 {
            if self.r == 1 {
                return ((a as u64 * b as u64) % self.p as u64) as u32;
            }
            let (x, y) = (self.unpack(a), self.unpack(b));
            let p = self.p as u64;
            let mut prod = vec![0u64; 2 * self.r - 1];
            for (i, &xi) in x.iter().enumerate() {
                for (j, &yj) in y.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
                }
            }
            let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
            let mut red = rem(&prod, self.modulus, self.p);
            red.resize(self.r, 0);
            self.pack(&red)
        }

        pub fn pow(&self, a: u32, mut e: u64) -> u32 {
            let (mut base, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.mul(acc, base);
                }
                base = self.mul(base, base);
                e >>= 1;
            }
            acc
        }

        pub fn is_primitive(&self, g: u32, q: u32) -> bool {
            let order = (q - 1) as u64;
            arith::factorize(order)
                .iter()
                .all(|&(l, _)| self.pow(g, order / l) != 1)
        }
    }
}
