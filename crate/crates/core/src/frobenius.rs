//! The imaginary quadratic order generated by Frobenius.
//!
//! For an ordinary curve with trace `t` over `F_q`, Frobenius `tau` is a root
//! of `x^2 - t x + q` and lives in `Q(sqrt(m))` with `m < 0` squarefree. With
//! `delta = sqrt(m)` when `m = 2, 3 mod 4` and `delta = (1 + sqrt(m)) / 2`
//! when `m = 1 mod 4`, every power is `tau^k = a_k + b_k delta`, and an
//! endomorphism ring of conductor `g` is `Z + g Z delta`.
//!
//! Two curves in the same isogeny class have isomorphic groups of rational
//! points iff `v_l(a_k - 1) <= v_l(b_k) - s_l` for every prime `l` at which
//! their conductors have different valuations, `s_l` being the larger of the
//! two. The conductor of a given curve is not something the census sees
//! directly, so [`ConductorEstimator`] recovers it from observed group
//! structures over `F_{q^k}` using `n1(E(F_{q^k})) = gcd(a_k - 1, b_k / g)`.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::arith;
use crate::census;
use crate::curve::{Curve, CurveError};
use crate::field::{Field, FieldError, DEFAULT_FIELD_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobeniusError {
    #[error("trace {t} is divisible by p = {p}; the curve is not ordinary")]
    NotOrdinary { t: i64, p: u64 },
    #[error("t^2 - 4q = {0} is not negative")]
    NotImaginary(i128),
    #[error("conductor {g} does not divide g_pi = {g_pi}")]
    ConductorNotDividing { g: u64, g_pi: u64 },
    #[error("power index must be at least 1")]
    InvalidPower,
    #[error("integer overflow computing tau^{0}")]
    Overflow(u32),
    #[error("field F_{p}^{degree} exceeds the enumeration bound")]
    FieldBoundExceeded { p: u64, degree: u32 },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `l`-adic valuation with an explicit infinity for zero. Infinity compares
/// above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

pub fn padic_valuation(n: i128, l: u64) -> Valuation {
    assert!(l >= 2, "valuation base must be at least 2");
    if n == 0 {
        return Valuation::Infinite;
    }
    let l = l as u128;
    let mut n = n.unsigned_abs();
    let mut e = 0;
    while n % l == 0 {
        n /= l;
        e += 1;
    }
    Valuation::Finite(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaKind {
    /// `delta = sqrt(m)`, `m = 2, 3 mod 4`.
    SqrtM,
    /// `delta = (1 + sqrt(m)) / 2`, `m = 1 mod 4`.
    HalfOnePlusSqrtM,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticOrderContext {
    pub t: i64,
    pub q: u64,
    /// `t^2 - 4q`.
    pub disc: i64,
    /// Squarefree part `m < 0` of the discriminant.
    pub m_sf: i64,
    /// Fundamental discriminant.
    pub d_k: i64,
    /// Conductor of `Z[tau]`: `disc = g_pi^2 d_k`.
    pub g_pi: u64,
    pub delta_kind: DeltaKind,
}

/// `tau^k = a + b delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusCoords {
    pub k: u32,
    pub a: i128,
    pub b: i128,
}

pub fn order_context(t: i64, q: u64, p: u64) -> Result<QuadraticOrderContext, FrobeniusError> {
    if t.rem_euclid(p as i64) == 0 {
        return Err(FrobeniusError::NotOrdinary { t, p });
    }
    let disc = (t as i128) * (t as i128) - 4 * q as i128;
    if disc >= 0 {
        return Err(FrobeniusError::NotImaginary(disc));
    }
    let disc = disc as i64;
    let mut square_root = 1u64;
    let mut free = 1u64;
    for (l, e) in arith::factorize(disc.unsigned_abs()) {
        square_root *= l.pow(e / 2);
        if e % 2 == 1 {
            free *= l;
        }
    }
    let m_sf = -(free as i64);
    let (d_k, g_pi, delta_kind) = if m_sf.rem_euclid(4) == 1 {
        (m_sf, square_root, DeltaKind::HalfOnePlusSqrtM)
    } else {
        (4 * m_sf, square_root / 2, DeltaKind::SqrtM)
    };
    debug_assert_eq!(disc, (g_pi * g_pi) as i64 * d_k);
    Ok(QuadraticOrderContext {
        t,
        q,
        disc,
        m_sf,
        d_k,
        g_pi,
        delta_kind,
    })
}

impl QuadraticOrderContext {
    /// `(c, e)` with `delta^2 = c delta + e`.
    fn delta_square(&self) -> (i128, i128) {
        match self.delta_kind {
            DeltaKind::SqrtM => (0, self.m_sf as i128),
            DeltaKind::HalfOnePlusSqrtM => (1, (self.m_sf as i128 - 1) / 4),
        }
    }

    /// `N(a + b delta)`.
    pub fn norm(&self, a: i128, b: i128) -> Option<i128> {
        let (c, e) = self.delta_square();
        // (a + b delta)(a + b delta') = a^2 + c ab - e b^2
        a.checked_mul(a)?
            .checked_add(c.checked_mul(a)?.checked_mul(b)?)?
            .checked_sub(e.checked_mul(b)?.checked_mul(b)?)
    }

    /// Product of two elements of `Z[delta]` in coordinates.
    pub fn mul(&self, x: (i128, i128), y: (i128, i128)) -> Option<(i128, i128)> {
        let (c, e) = self.delta_square();
        let bb = x.1.checked_mul(y.1)?;
        let a = x.0.checked_mul(y.0)?.checked_add(e.checked_mul(bb)?)?;
        let b = x
            .0
            .checked_mul(y.1)?
            .checked_add(x.1.checked_mul(y.0)?)?
            .checked_add(c.checked_mul(bb)?)?;
        Some((a, b))
    }

    /// Coordinates of `tau` itself.
    pub fn tau(&self) -> (i128, i128) {
        let (t, g) = (self.t as i128, self.g_pi as i128);
        match self.delta_kind {
            DeltaKind::SqrtM => (t / 2, g),
            DeltaKind::HalfOnePlusSqrtM => ((t - g) / 2, g),
        }
    }

    /// `tau^k` via `tau^(k+1) = t tau^k - q tau^(k-1)`.
    pub fn tau_coords(&self, k: u32) -> Result<FrobeniusCoords, FrobeniusError> {
        let (t, q) = (self.t as i128, self.q as i128);
        let mut prev = (1i128, 0i128);
        if k == 0 {
            return Ok(FrobeniusCoords { k, a: 1, b: 0 });
        }
        let mut cur = self.tau();
        for _ in 1..k {
            let step = |x: i128, y: i128| t.checked_mul(x)?.checked_sub(q.checked_mul(y)?);
            let next = (
                step(cur.0, prev.0).ok_or(FrobeniusError::Overflow(k))?,
                step(cur.1, prev.1).ok_or(FrobeniusError::Overflow(k))?,
            );
            prev = cur;
            cur = next;
        }
        Ok(FrobeniusCoords {
            k,
            a: cur.0,
            b: cur.1,
        })
    }

    fn check_conductor(&self, g: u64) -> Result<(), FrobeniusError> {
        if g == 0 || self.g_pi % g != 0 {
            return Err(FrobeniusError::ConductorNotDividing { g, g_pi: self.g_pi });
        }
        Ok(())
    }
}

/// Conductors of two endomorphism rings and where they differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConductorPair {
    pub g1: u64,
    pub g2: u64,
    /// Primes at which the valuations differ, mapped to the larger valuation.
    pub differing: BTreeMap<u64, u32>,
}

impl ConductorPair {
    pub fn new(g1: u64, g2: u64) -> Self {
        let mut differing = BTreeMap::new();
        let mut primes: Vec<u64> = arith::factorize(g1)
            .into_iter()
            .chain(arith::factorize(g2))
            .map(|(l, _)| l)
            .collect();
        primes.sort_unstable();
        primes.dedup();
        for l in primes {
            let v1 = padic_valuation(g1 as i128, l).finite().unwrap_or(0);
            let v2 = padic_valuation(g2 as i128, l).finite().unwrap_or(0);
            if v1 != v2 {
                differing.insert(l, v1.max(v2));
            }
        }
        ConductorPair { g1, g2, differing }
    }
}

/// Whether curves with endomorphism-ring conductors `g1`, `g2` in the class
/// described by `ctx` have isomorphic groups of rational points, judged
/// through `tau^k`.
pub fn hm_isomorphic(
    ctx: &QuadraticOrderContext,
    pair: &ConductorPair,
    k: u32,
) -> Result<bool, FrobeniusError> {
    ctx.check_conductor(pair.g1)?;
    ctx.check_conductor(pair.g2)?;
    if k == 0 {
        return Err(FrobeniusError::InvalidPower);
    }
    let FrobeniusCoords { a, b, .. } = ctx.tau_coords(k)?;
    Ok(pair.differing.iter().all(|(&l, &s)| {
        let lhs = padic_valuation(a - 1, l);
        match padic_valuation(b, l) {
            Valuation::Infinite => true,
            Valuation::Finite(vb) => match lhs {
                Valuation::Infinite => false,
                Valuation::Finite(va) => va as i64 <= vb as i64 - s as i64,
            },
        }
    }))
}

/// Predicted `n1` of `E(F_{q^k})` for a curve whose endomorphism ring has
/// conductor `g`.
pub fn n1_from_conductor(
    ctx: &QuadraticOrderContext,
    g: u64,
    k: u32,
) -> Result<u64, FrobeniusError> {
    ctx.check_conductor(g)?;
    let FrobeniusCoords { a, b, .. } = ctx.tau_coords(k)?;
    Ok(arith::gcd_i128(a - 1, b / g as i128) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmbiguityReason {
    /// Coefficients outside the prime subfield; extensions cannot be probed.
    ExtensionUnavailable,
    /// These primes were still undetermined after every allowed extension.
    Unresolved { primes: Vec<u64> },
    /// The next extension needed would exceed the field bound.
    BoundReached { degree: u32, primes: Vec<u64> },
    /// Observations contradict the gcd identity at this prime.
    Inconsistent { prime: u64, k: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConductorEstimate {
    Resolved(u64),
    Ambiguous(AmbiguityReason),
}

/// Recovers endomorphism-ring conductors from group structures over
/// `F_{q^k}`, `k = 1..=kmax`. Extension fields are cached between calls.
pub struct ConductorEstimator {
    kmax: u32,
    bound: u64,
    fields: HashMap<(u64, u32), Field>,
}

impl Default for ConductorEstimator {
    fn default() -> Self {
        Self::new(6, DEFAULT_FIELD_BOUND)
    }
}

impl ConductorEstimator {
    pub fn new(kmax: u32, bound: u64) -> Self {
        ConductorEstimator {
            kmax: kmax.max(1),
            bound,
            fields: HashMap::new(),
        }
    }

    fn field(&mut self, p: u64, degree: u32) -> Result<Field, FrobeniusError> {
        if let Some(f) = self.fields.get(&(p, degree)) {
            return Ok(f.clone());
        }
        let f = Field::with_bound(p, degree, self.bound).map_err(|e| match e {
            FieldError::BoundExceeded { .. } => FrobeniusError::FieldBoundExceeded { p, degree },
            other => other.into(),
        })?;
        self.fields.insert((p, degree), f.clone());
        Ok(f)
    }

    /// Valuation of `n1(E(F_{q^k}))` at `l`.
    fn observed_exponent(&mut self, curve: &Curve, k: u32, l: u64) -> Result<u32, FrobeniusError> {
        let ext = if k == 1 {
            curve.clone()
        } else {
            let f = curve.field();
            let field = self.field(f.p(), f.r() * k)?;
            curve.base_change(&field)?
        };
        let points = ext.points();
        Ok(census::torsion_exponent(&ext, &points, l))
    }

    pub fn estimate(&mut self, curve: &Curve) -> Result<ConductorEstimate, FrobeniusError> {
        let f = curve.field();
        let (p, q) = (f.p(), f.q());
        let t = census::trace(curve);
        let ctx = order_context(t, q, p)?;

        // Per prime of g_pi: the interval of still-possible valuations of g.
        let mut window: BTreeMap<u64, (u32, u32)> = arith::factorize(ctx.g_pi)
            .into_iter()
            .map(|(l, e)| (l, (0, e)))
            .collect();
        let liftable = f.in_prime_subfield(curve.a()) && f.in_prime_subfield(curve.b());

        for k in 1..=self.kmax {
            let open: Vec<u64> = window
                .iter()
                .filter(|(_, (lo, hi))| lo != hi)
                .map(|(&l, _)| l)
                .collect();
            if open.is_empty() {
                break;
            }
            if k > 1 {
                if !liftable {
                    return Ok(ConductorEstimate::Ambiguous(
                        AmbiguityReason::ExtensionUnavailable,
                    ));
                }
                let degree = f.r() * k;
                let fits = arith::checked_pow(p, degree).is_some_and(|size| size <= self.bound);
                if !fits {
                    return Ok(ConductorEstimate::Ambiguous(AmbiguityReason::BoundReached {
                        degree,
                        primes: open,
                    }));
                }
            }
            let coords = ctx.tau_coords(k)?;
            for l in open {
                let e = self.observed_exponent(curve, k, l)?;
                let va = padic_valuation(coords.a - 1, l);
                let vb = padic_valuation(coords.b, l)
                    .finite()
                    .expect("b_k is nonzero for ordinary Frobenius");
                let (lo, hi) = window[&l];
                let inconsistent = ConductorEstimate::Ambiguous(AmbiguityReason::Inconsistent {
                    prime: l,
                    k,
                });
                if Valuation::Finite(e) < va {
                    // e = vb - v(g) exactly.
                    let Some(v) = vb.checked_sub(e).filter(|v| (lo..=hi).contains(v)) else {
                        return Ok(inconsistent);
                    };
                    window.insert(l, (v, v));
                } else {
                    // Saturated: only e <= vb - v(g) is known.
                    let Some(cap) = vb.checked_sub(e).filter(|&c| c >= lo) else {
                        return Ok(inconsistent);
                    };
                    window.insert(l, (lo, hi.min(cap)));
                }
            }
        }

        let open: Vec<u64> = window
            .iter()
            .filter(|(_, (lo, hi))| lo != hi)
            .map(|(&l, _)| l)
            .collect();
        if !open.is_empty() {
            return Ok(ConductorEstimate::Ambiguous(AmbiguityReason::Unresolved {
                primes: open,
            }));
        }
        Ok(ConductorEstimate::Resolved(
            window.iter().map(|(&l, &(v, _))| l.pow(v)).product(),
        ))
    }
}

/// [`ConductorEstimator::estimate`] with the default `kmax = 6`.
pub fn estimate_conductor(curve: &Curve) -> Result<ConductorEstimate, FrobeniusError> {
    ConductorEstimator::default().estimate(curve)
}
