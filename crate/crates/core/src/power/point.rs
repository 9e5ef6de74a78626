use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::BigRat;
use crate::error::{Error, Result};

/// A point of P²(Q) in canonical form: integer coordinates, gcd 1, first
/// nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint2 {
    coords: [BigInt; 3],
}

impl ProjPoint2 {
    pub fn new(x: BigInt, y: BigInt, z: BigInt) -> Result<Self> {
        let mut coords = [x, y, z];
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("[0, 0, 0] is not a projective point".into()));
        }
        let g = coords
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c));
        let flip = coords.iter().find(|c| !c.is_zero()).map_or(false, |c| c.is_negative());
        for c in coords.iter_mut() {
            *c = &*c / &g;
            if flip {
                *c = -&*c;
            }
        }
        Ok(ProjPoint2 { coords })
    }

    pub fn from_i64(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new(x.into(), y.into(), z.into())
    }

    /// Clears denominators of rational homogeneous coordinates.
    pub fn from_rationals(coords: [&BigRat; 3]) -> Result<Self> {
        let l = coords
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.den()));
        let scale = |c: &BigRat| c.num() * (&l / c.den());
        Self::new(scale(coords[0]), scale(coords[1]), scale(coords[2]))
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.coords
    }

    pub fn x(&self) -> &BigInt {
        &self.coords[0]
    }

    pub fn y(&self) -> &BigInt {
        &self.coords[1]
    }

    pub fn z(&self) -> &BigInt {
        &self.coords[2]
    }

    /// Bit size of the largest coordinate.
    pub fn max_bits(&self) -> u64 {
        self.coords.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Coordinatewise power. Powers of coprime integers stay coprime and
    /// the leading sign stays positive, so the result is canonical.
    pub fn pow(&self, e: u32) -> ProjPoint2 {
        ProjPoint2 {
            coords: self.coords.clone().map(|c| c.pow(e)),
        }
    }
}

impl fmt::Display for ProjPoint2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "[{x},{y},{z}]")
    }
}

impl Serialize for ProjPoint2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjPoint2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z] = <[String; 3]>::deserialize(d)?;
        let parse = |s: &str| s.trim().parse::<BigInt>().map_err(serde::de::Error::custom);
        ProjPoint2::new(parse(&x)?, parse(&y)?, parse(&z)?).map_err(serde::de::Error::custom)
    }
}

/// φ^n(P) stored as a base point and the exponent d^n, so that orbit
/// points far beyond any materializable size can still be reasoned about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPoint {
    pub base: ProjPoint2,
    pub exponent: BigUint,
}

impl OrbitPoint {
    pub fn new(base: &ProjPoint2, d: u64, n: u32) -> Self {
        OrbitPoint {
            base: base.clone(),
            exponent: BigUint::from(d).pow(n),
        }
    }

    /// Bit size of the largest materialized coordinate, up to one bit.
    pub fn bits_estimate(&self) -> BigUint {
        let per = self
            .base
            .coords()
            .iter()
            .map(|c| if c.magnitude().is_one() || c.is_zero() { 0 } else { c.bits() })
            .max()
            .unwrap_or(0);
        &self.exponent * per
    }

    pub fn materialize(&self, bit_cap: u64) -> Result<ProjPoint2> {
        let est = self.bits_estimate();
        if est > BigUint::from(bit_cap) {
            return Err(Error::CoordinateOverflow {
                bits: est.to_u64().unwrap_or(u64::MAX),
                cap: bit_cap,
            });
        }
        if est.is_zero() {
            // coordinates in {0, ±1}: only the parity of the exponent matters
            return Ok(self.base.pow(if self.exponent.bit(0) { 1 } else { 2 }));
        }
        let e = self.exponent.to_u32().ok_or(Error::CoordinateOverflow {
            bits: u64::MAX,
            cap: bit_cap,
        })?;
        Ok(self.base.pow(e))
    }
}
