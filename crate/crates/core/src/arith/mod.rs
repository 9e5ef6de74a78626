//! Exact arithmetic substrate: rationals, primality, factorization,
//! p-adic valuations and heights.

pub mod cyclotomic;
pub mod factor;
pub mod modular;
pub mod prime;
pub mod sieve;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use factor::{factor_u64, FactorOracle, Factorer, Factorization};
pub use prime::{is_prime, is_prime_u64, primality, Primality};

use crate::error::{Error, Result};

/// A rational number in lowest terms with positive denominator.
///
/// Serialized as the string `"num/den"` (or `"num"` when `den = 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BigRat(BigRational);

impl BigRat {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(BigRat(BigRational::new(num, den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        BigRat(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(num.into(), den.into()).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        BigRat(BigRational::zero())
    }

    pub fn one() -> Self {
        BigRat(BigRational::one())
    }

    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        BigRat(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(BigRat(self.0.recip()))
    }

    /// Integer power; negative exponents invert (panics on 0^negative).
    pub fn pow(&self, k: i64) -> Self {
        let e = u32::try_from(k.unsigned_abs()).expect("exponent fits in u32");
        let num = self.num().pow(e);
        let den = self.den().pow(e);
        if k >= 0 {
            BigRat(BigRational::new_raw(num, den))
        } else {
            BigRat(BigRational::new(den, num))
        }
    }

    /// Power by an arbitrary nonnegative exponent.
    pub fn pow_big(&self, e: &BigUint) -> Self {
        let e32 = e.to_u32().expect("exponent fits in u32");
        BigRat(BigRational::new_raw(self.num().pow(e32), self.den().pow(e32)))
    }

    pub fn as_inner(&self) -> &BigRational {
        &self.0
    }

    /// Residue of this rational modulo `p`, or `None` if `p` divides the
    /// denominator.
    pub fn residue_mod(&self, p: u64) -> Option<u64> {
        let den = mod_u64(self.den(), p);
        let inv = modular::inv_mod(den, p)?;
        Some(modular::mul_mod(mod_u64(self.num(), p), inv, p))
    }
}

/// `n mod p` in `[0, p)`.
pub fn mod_u64(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue below modulus")
}

impl From<BigRational> for BigRat {
    fn from(r: BigRational) -> Self {
        BigRat(r)
    }
}

impl From<i64> for BigRat {
    fn from(n: i64) -> Self {
        BigRat::from_int(n)
    }
}

impl From<BigInt> for BigRat {
    fn from(n: BigInt) -> Self {
        BigRat::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl std::ops::$tr<&BigRat> for &BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &BigRat) -> BigRat {
                BigRat((&self.0).$method(&rhs.0))
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl std::ops::Neg for &BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-&self.0)
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den().is_one() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "{}/{}", self.num(), self.den())
        }
    }
}

impl FromStr for BigRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                BigRat::new(n, d)
            }
            None => Ok(BigRat::from_int(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for BigRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BigRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde helpers that write arbitrary-precision integers as decimal strings.
pub mod int_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(n)
    }

    /// Accepts a decimal string or a JSON integer.
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Str(String),
            Int(i64),
        }
        match Repr::deserialize(d)? {
            Repr::Str(s) => s.trim().parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(n.into()),
        }
    }
}

/// Finite part of S_λ: the primes at which λ is not a unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceSet {
    pub primes: BTreeSet<BigUint>,
}

impl PlaceSet {
    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&BigUint::from(p))
    }

    pub fn union(&self, other: &PlaceSet) -> PlaceSet {
        PlaceSet {
            primes: self.primes.union(&other.primes).cloned().collect(),
        }
    }
}

fn int_valuation(n: &BigInt, p: &BigUint) -> i64 {
    let mut m = n.magnitude().clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// v_p(x) = v_p(num) − v_p(den).
pub fn v_adic_valuation(x: &BigRat, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let p = BigUint::from(p);
    Ok(int_valuation(x.num(), &p) - int_valuation(x.den(), &p))
}

/// Primes dividing the numerator or denominator of `x`.
pub fn support(x: &BigRat) -> Result<PlaceSet> {
    support_with(x, &Factorer::default())
}

pub fn support_with(x: &BigRat, oracle: &dyn FactorOracle) -> Result<PlaceSet> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut primes = BTreeSet::new();
    for part in [x.num().magnitude(), x.den().magnitude()] {
        primes.extend(oracle.factor(part)?.factors.into_iter().map(|(p, _)| p));
    }
    Ok(PlaceSet { primes })
}

/// Multiplicative height H(x) = max(|num|, den); H(0) = 1.
pub fn height_base(x: &BigRat) -> BigUint {
    if x.is_zero() {
        return BigUint::one();
    }
    x.num().magnitude().max(x.den().magnitude()).clone()
}

/// Natural logarithm of a positive integer, accurate for any size.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("finite");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Weil height h(x) = log max(|num|, den), natural log; h(0) = 0.
pub fn weil_height(x: &BigRat) -> f64 {
    ln_biguint(&height_base(x))
}

/// Over Q the only roots of unity are ±1.
pub fn is_root_of_unity(x: &BigRat) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(x.den().is_one() && x.num().magnitude().is_one())
}

/// Sign of a nonzero rational as ±1.
pub fn sign(x: &BigRat) -> i8 {
    match x.num().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
