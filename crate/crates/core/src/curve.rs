//! Short Weierstrass curves `y^2 = x^3 + Ax + B` and their group law.

use thiserror::Error;

use crate::field::{Fe, Field, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("singular curve: 4A^3 + 27B^2 = 0")]
    SingularCurve,
    #[error("point is not on this curve")]
    MixedCurves,
    #[error("curves are defined over different fields")]
    MixedFields,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine { x: Fe, y: Fe },
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    field: Field,
    a: Fe,
    b: Fe,
}

impl Curve {
    pub fn new(field: &Field, a: Fe, b: Fe) -> Result<Self, CurveError> {
        field.check(a)?;
        field.check(b)?;
        let curve = Curve {
            field: field.clone(),
            a,
            b,
        };
        if curve.disc_core() == field.zero() {
            return Err(CurveError::SingularCurve);
        }
        Ok(curve)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn a(&self) -> Fe {
        self.a
    }

    pub fn b(&self) -> Fe {
        self.b
    }

    /// `4A^3 + 27B^2`.
    fn disc_core(&self) -> Fe {
        let f = &self.field;
        let a3 = f.mul(f.square(self.a), self.a);
        let b2 = f.square(self.b);
        f.add(f.mul(f.from_int(4), a3), f.mul(f.from_int(27), b2))
    }

    /// `-16(4A^3 + 27B^2)`.
    pub fn discriminant(&self) -> Fe {
        self.field.mul(self.field.from_int(-16), self.disc_core())
    }

    /// `1728 * 4A^3 / (4A^3 + 27B^2)`.
    pub fn j_invariant(&self) -> Fe {
        let f = &self.field;
        let num = f.mul(f.from_int(1728 * 4), f.mul(f.square(self.a), self.a));
        f.div(num, self.disc_core())
            .expect("nonsingular curves have a nonzero discriminant")
    }

    /// `x^3 + Ax + B`.
    pub fn rhs(&self, x: Fe) -> Fe {
        let f = &self.field;
        f.add(f.mul(f.add(f.square(x), self.a), x), self.b)
    }

    pub fn contains(&self, pt: &Point) -> bool {
        match *pt {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                self.field.check(x).is_ok()
                    && self.field.check(y).is_ok()
                    && self.field.square(y) == self.rhs(x)
            }
        }
    }

    /// Affine point, validated against the curve equation.
    pub fn point(&self, x: Fe, y: Fe) -> Result<Point, CurveError> {
        let pt = Point::Affine { x, y };
        if self.contains(&pt) {
            Ok(pt)
        } else {
            Err(CurveError::MixedCurves)
        }
    }

    pub fn neg(&self, pt: &Point) -> Point {
        match *pt {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine {
                x,
                y: self.field.neg(y),
            },
        }
    }

    /// Chord-and-tangent addition. Inputs are assumed to lie on the curve;
    /// see [`Curve::try_add`] for the checked variant.
    pub fn add(&self, p1: &Point, p2: &Point) -> Point {
        let f = &self.field;
        let (x1, y1, x2, y2) = match (*p1, *p2) {
            (Point::Infinity, _) => return *p2,
            (_, Point::Infinity) => return *p1,
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            if y1 != y2 || y1 == f.zero() {
                return Point::Infinity;
            }
            let num = f.add(f.mul(f.from_int(3), f.square(x1)), self.a);
            let den = f.add(y1, y1);
            f.mul(num, f.inv(den).expect("y != 0"))
        } else {
            let den = f.sub(x2, x1);
            f.mul(f.sub(y2, y1), f.inv(den).expect("x1 != x2"))
        };
        let x3 = f.sub(f.sub(f.square(slope), x1), x2);
        let y3 = f.sub(f.mul(slope, f.sub(x1, x3)), y1);
        Point::Affine { x: x3, y: y3 }
    }

    pub fn try_add(&self, p1: &Point, p2: &Point) -> Result<Point, CurveError> {
        if !self.contains(p1) || !self.contains(p2) {
            return Err(CurveError::MixedCurves);
        }
        Ok(self.add(p1, p2))
    }

    pub fn double(&self, pt: &Point) -> Point {
        self.add(pt, pt)
    }

    /// `[n]P` by double-and-add; negative `n` multiplies `-P`.
    pub fn scalar_mul(&self, n: i64, pt: &Point) -> Point {
        let base = if n < 0 { self.neg(pt) } else { *pt };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut cur = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &cur);
            }
            k >>= 1;
            if k > 0 {
                cur = self.double(&cur);
            }
        }
        acc
    }

    /// The same equation over an extension field. Only coefficients in the
    /// prime subfield can be carried over, since the two fields need not share
    /// a compatible embedding otherwise.
    pub fn base_change(&self, ext: &Field) -> Result<Curve, CurveError> {
        let f = &self.field;
        if ext.p() != f.p() || !f.in_prime_subfield(self.a) || !f.in_prime_subfield(self.b) {
            return Err(CurveError::MixedFields);
        }
        let a = ext.from_int(self.a.index() as i64);
        let b = ext.from_int(self.b.index() as i64);
        Curve::new(ext, a, b)
    }

    /// Every rational point: infinity first, then by x in field order with
    /// the tabulated root before its negative.
    pub fn points(&self) -> Vec<Point> {
        let f = &self.field;
        let mut out = vec![Point::Infinity];
        for x in f.enumerate() {
            if let Some(y) = f.sqrt(self.rhs(x)) {
                out.push(Point::Affine { x, y });
                let ny = f.neg(y);
                if ny != y {
                    out.push(Point::Affine { x, y: ny });
                }
            }
        }
        out
    }
}

/// Nonzero scale factor of an isomorphism `(x, y) -> (mu^2 x, mu^3 y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mu(Fe);

impl Mu {
    pub fn new(field: &Field, value: Fe) -> Option<Self> {
        (field.check(value).is_ok() && value != field.zero()).then_some(Mu(value))
    }

    pub fn value(self) -> Fe {
        self.0
    }

    /// Image of a point of the source curve under the isomorphism.
    pub fn map_point(self, field: &Field, pt: &Point) -> Point {
        match *pt {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                let mu2 = field.square(self.0);
                let mu3 = field.mul(mu2, self.0);
                Point::Affine {
                    x: field.mul(mu2, x),
                    y: field.mul(mu3, y),
                }
            }
        }
    }
}

/// Smallest `mu` (in enumeration order) with `A2 = mu^4 A1` and
/// `B2 = mu^6 B1`, if one exists in the base field.
pub fn twist_iso_search(e1: &Curve, e2: &Curve) -> Result<Option<Mu>, CurveError> {
    if e1.field != e2.field {
        return Err(CurveError::MixedFields);
    }
    let f = &e1.field;
    Ok(f.enumerate().skip(1).find_map(|mu| {
        let mu2 = f.square(mu);
        let mu4 = f.square(mu2);
        let mu6 = f.mul(mu4, mu2);
        (f.mul(mu4, e1.a) == e2.a && f.mul(mu6, e1.b) == e2.b).then_some(Mu(mu))
    }))
}
