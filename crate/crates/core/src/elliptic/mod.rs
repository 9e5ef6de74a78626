//! Short Weierstrass curves y² = x³ + a4·x + a6 with integral a4, a6.

mod fp;
mod order;
mod translate;

pub use order::{
    elliptic_order_spectrum, group_order, is_torsion, point_order_mod_p, ECMaximalityWitness,
    ECOrderCertificate, EcSpectrumReport,
};
pub use translate::{translated_subvariety_check, TranslateOutcome, TranslateReport, TranslateWitness};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{int_string, is_prime_u64, mod_u64, BigRat};
use crate::error::{Error, Result};
use fp::{FpCurve, FpPoint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticCurveQ {
    #[serde(with = "int_string")]
    pub a4: BigInt,
    #[serde(with = "int_string")]
    pub a6: BigInt,
}

impl EllipticCurveQ {
    pub fn new(a4: BigInt, a6: BigInt) -> Result<Self> {
        let e = EllipticCurveQ { a4, a6 };
        if e.discriminant().is_zero() {
            return Err(Error::InvalidInput("singular curve: discriminant is zero".into()));
        }
        Ok(e)
    }

    pub fn from_i64(a4: i64, a6: i64) -> Result<Self> {
        Self::new(a4.into(), a6.into())
    }

    /// −16(4·a4³ + 27·a6²).
    pub fn discriminant(&self) -> BigInt {
        let a4 = &self.a4;
        let a6 = &self.a6;
        BigInt::from(-16) * (BigInt::from(4) * a4 * a4 * a4 + BigInt::from(27) * a6 * a6)
    }

    fn rhs(&self, x: &BigRat) -> BigRat {
        let a4 = BigRat::from_int(self.a4.clone());
        let a6 = BigRat::from_int(self.a6.clone());
        &(&x.pow(3) + &(&a4 * x)) + &a6
    }

    pub fn contains(&self, pt: &ECPoint) -> bool {
        match pt {
            ECPoint::Infinity => true,
            ECPoint::Affine { x, y } => y.pow(2) == self.rhs(x),
        }
    }

    /// The affine point (x, y), checked against the curve.
    pub fn point(&self, x: BigRat, y: BigRat) -> Result<ECPoint> {
        let pt = ECPoint::Affine { x, y };
        if !self.contains(&pt) {
            return Err(Error::NotOnCurve);
        }
        Ok(pt)
    }

    pub(crate) fn over_fp(&self, p: u64) -> Result<FpCurve> {
        let e = FpCurve::new(mod_u64(&self.a4, p), mod_u64(&self.a6, p), p);
        if e.is_singular() {
            return Err(Error::SingularReduction { p });
        }
        Ok(e)
    }
}

impl fmt::Display for EllipticCurveQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", self.a4, self.a6)
    }
}

/// A point on a curve over Q or F_p. Over F_p the coordinates are the
/// integer representatives in [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ECPoint {
    Infinity,
    Affine { x: BigRat, y: BigRat },
}

impl ECPoint {
    pub fn affine_i64(x: i64, y: i64) -> Self {
        ECPoint::Affine {
            x: BigRat::from_int(x),
            y: BigRat::from_int(y),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }

    pub fn neg(&self) -> ECPoint {
        match self {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine { x, y } => ECPoint::Affine { x: x.clone(), y: -y },
        }
    }

    fn from_fp(pt: FpPoint) -> ECPoint {
        match pt {
            None => ECPoint::Infinity,
            Some((x, y)) => ECPoint::affine_i64(x as i64, y as i64),
        }
    }

    /// Coordinates as residues mod p, or `None` if p divides a denominator.
    fn to_fp(&self, p: u64) -> Option<FpPoint> {
        match self {
            ECPoint::Infinity => Some(None),
            ECPoint::Affine { x, y } => Some(Some((x.residue_mod(p)?, y.residue_mod(p)?))),
        }
    }
}

impl fmt::Display for ECPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ECPoint::Infinity => write!(f, "O"),
            ECPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl Serialize for ECPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ECPoint::Infinity => s.serialize_str("inf"),
            ECPoint::Affine { x, y } => [x, y].serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for ECPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Tag(String),
            Pair([BigRat; 2]),
        }
        match Repr::deserialize(d)? {
            Repr::Tag(s) if s == "inf" => Ok(ECPoint::Infinity),
            Repr::Tag(s) => Err(serde::de::Error::custom(format!("expected \"inf\", got {s:?}"))),
            Repr::Pair([x, y]) => Ok(ECPoint::Affine { x, y }),
        }
    }
}

/// Input record `{"a4": "...", "a6": "...", "P": ["x", "y"] | "inf"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePointInput {
    #[serde(with = "int_string")]
    pub a4: BigInt,
    #[serde(with = "int_string")]
    pub a6: BigInt,
    #[serde(rename = "P")]
    pub point: ECPoint,
}

impl CurvePointInput {
    /// The curve and the point, both validated.
    pub fn into_parts(self) -> Result<(EllipticCurveQ, ECPoint)> {
        let e = EllipticCurveQ::new(self.a4, self.a6)?;
        if !e.contains(&self.point) {
            return Err(Error::NotOnCurve);
        }
        Ok((e, self.point))
    }
}

/// The field a group-law computation takes place in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Rational,
    Prime(u64),
}

fn add_q(e: &EllipticCurveQ, a: &ECPoint, b: &ECPoint) -> ECPoint {
    let ((x1, y1), (x2, y2)) = match (a, b) {
        (ECPoint::Infinity, _) => return b.clone(),
        (_, ECPoint::Infinity) => return a.clone(),
        (ECPoint::Affine { x: x1, y: y1 }, ECPoint::Affine { x: x2, y: y2 }) => ((x1, y1), (x2, y2)),
    };
    let slope = if x1 == x2 {
        if (y1 + y2).is_zero() {
            return ECPoint::Infinity;
        }
        let three_x2 = &BigRat::from_int(3) * &x1.pow(2);
        &(&three_x2 + &BigRat::from_int(e.a4.clone())) / &(y1 + y1)
    } else {
        &(y2 - y1) / &(x2 - x1)
    };
    let x3 = &(&slope.pow(2) - x1) - x2;
    let y3 = &(&slope * &(x1 - &x3)) - y1;
    ECPoint::Affine { x: x3, y: y3 }
}

fn fp_inputs(e: &EllipticCurveQ, pts: &[&ECPoint], p: u64) -> Result<(FpCurve, Vec<FpPoint>)> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let c = e.over_fp(p)?;
    let v = pts
        .iter()
        .map(|pt| match pt.to_fp(p) {
            Some(q) if c.contains(q) => Ok(q),
            _ => Err(Error::NotOnCurve),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((c, v))
}

/// P1 + P2 on E over the given field.
pub fn ec_add(e: &EllipticCurveQ, p1: &ECPoint, p2: &ECPoint, field: Field) -> Result<ECPoint> {
    match field {
        Field::Rational => {
            if !e.contains(p1) || !e.contains(p2) {
                return Err(Error::NotOnCurve);
            }
            Ok(add_q(e, p1, p2))
        }
        Field::Prime(p) => {
            let (c, v) = fp_inputs(e, &[p1, p2], p)?;
            Ok(ECPoint::from_fp(c.add(v[0], v[1])))
        }
    }
}

/// [m]P by double-and-add; negative m negates.
pub fn ec_scalar_mul(e: &EllipticCurveQ, m: &BigInt, pt: &ECPoint, field: Field) -> Result<ECPoint> {
    let k = m.magnitude();
    let result = match field {
        Field::Rational => {
            if !e.contains(pt) {
                return Err(Error::NotOnCurve);
            }
            let mut acc = ECPoint::Infinity;
            for i in (0..k.bits()).rev() {
                acc = add_q(e, &acc, &acc);
                if k.bit(i) {
                    acc = add_q(e, &acc, pt);
                }
            }
            acc
        }
        Field::Prime(p) => {
            let (c, v) = fp_inputs(e, &[pt], p)?;
            let r = c.mul_big(v[0], k);
            ECPoint::from_fp(if m.is_negative() { c.neg(r) } else { r })
        }
    };
    Ok(match (field, m.is_negative()) {
        (Field::Rational, true) => result.neg(),
        _ => result,
    })
}

/// p ∤ 6Δ.
pub fn good_reduction(e: &EllipticCurveQ, p: u64) -> bool {
    p > 3 && is_prime_u64(p) && mod_u64(&e.discriminant(), p) != 0
}

pub(crate) fn reduce_fp(e: &EllipticCurveQ, pt: &ECPoint, p: u64) -> Result<(FpCurve, FpPoint)> {
    if !good_reduction(e, p) {
        return Err(Error::BadReductionPrime { p });
    }
    let c = e.over_fp(p)?;
    // A denominator divisible by p puts the point in the kernel of reduction.
    Ok((c, pt.to_fp(p).unwrap_or(None)))
}

/// P mod p; points whose denominators p divides reduce to O.
pub fn reduce_point(e: &EllipticCurveQ, pt: &ECPoint, p: u64) -> Result<ECPoint> {
    Ok(ECPoint::from_fp(reduce_fp(e, pt, p)?.1))
}
