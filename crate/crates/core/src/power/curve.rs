use serde::{Deserialize, Serialize};

use super::point::ProjPoint2;
use super::trichotomy::{membership_form, MembershipForm};
use crate::arith::{is_root_of_unity, BigRat};
use crate::error::{Error, Result};

/// The curve V : A·X^k = B·Y^l, read in the affine chart Z = 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCurve {
    pub a: BigRat,
    pub b: BigRat,
    pub k: u32,
    pub l: u32,
}

impl TorusCurve {
    pub fn new(a: BigRat, b: BigRat, k: u32, l: u32) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidInput("curve coefficients are both zero".into()));
        }
        if k == 0 || l == 0 {
            return Err(Error::InvalidInput("curve exponents must be positive".into()));
        }
        Ok(TorusCurve { a, b, k, l })
    }

    /// φ^i(V) = V_[A^(d^i), B^(d^i)], with the parameter scaled so that the
    /// first nonzero coefficient is 1.
    pub fn iterate(&self, d: u64, i: u32) -> TorusCurve {
        let e = d.checked_pow(i).expect("iterate exponent overflow") as i64;
        let (a, b) = if self.a.is_zero() {
            (BigRat::zero(), BigRat::one())
        } else if self.b.is_zero() {
            (BigRat::one(), BigRat::zero())
        } else {
            let ratio = &self.b / &self.a;
            (BigRat::one(), ratio.pow(e))
        };
        TorusCurve { a, b, k: self.k, l: self.l }
    }

    /// B/A when both coefficients are nonzero.
    pub fn ratio(&self) -> Option<BigRat> {
        (!self.a.is_zero() && !self.b.is_zero()).then(|| &self.b / &self.a)
    }
}

/// The line V : A·X + B·Y + C·Z = 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineCurve {
    pub a: BigRat,
    pub b: BigRat,
    pub c: BigRat,
}

impl LineCurve {
    pub fn new(a: BigRat, b: BigRat, c: BigRat) -> Result<Self> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::InvalidInput("line coefficients are all zero".into()));
        }
        Ok(LineCurve { a, b, c })
    }

    pub fn coeffs(&self) -> [&BigRat; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn contains(&self, p: &ProjPoint2) -> bool {
        let [x, y, z] = p.coords().clone().map(BigRat::from);
        (&(&(&self.a * &x) + &(&self.b * &y)) + &(&self.c * &z)).is_zero()
    }
}

/// Chart-wise membership of P in V:
///
/// * z ≠ 0: A·(x/z)^k = B·(y/z)^l;
/// * z = 0, y ≠ 0: A·(x/y)^k = B;
/// * P = [1, 0, 0]: A = 0.
pub fn on_torus_curve(p: &ProjPoint2, v: &TorusCurve) -> bool {
    match membership_form(p, v) {
        MembershipForm::Constant(b) => b,
        MembershipForm::PowerEquation { rho, target } => rho == target,
    }
}

/// Preperiod and period of V under φ, if V is preperiodic.
///
/// V_[A,B] maps to V_[A^d, B^d]; it is preperiodic iff B/A is a root of
/// unity, and a coordinate line (A·B = 0) is fixed.
pub fn curve_preperiodic(v: &TorusCurve, d: u64) -> Option<(u32, u32)> {
    let Some(ratio) = v.ratio() else {
        return Some((0, 1));
    };
    if !is_root_of_unity(&ratio).expect("nonzero ratio") {
        return None;
    }
    // Parameter orbit ratio^(d^n): the values ratio, ratio^d, ratio^(d^2), ...
    // over Q only ±1 occur, so the orbit is settled after one step.
    let mut seen: Vec<BigRat> = Vec::new();
    let mut cur = ratio;
    for n in 0u32.. {
        if let Some(i) = seen.iter().position(|x| *x == cur) {
            return Some((i as u32, n - i as u32));
        }
        seen.push(cur.clone());
        cur = cur.pow(d as i64);
    }
    unreachable!()
}
