//! Curves y² = x³ + a4·x + a6 over F_p with word-sized p.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::arith::factor_u64;
use crate::arith::modular::{add_mod, gcd, inv_mod, legendre, mul_mod, sqrt_mod, sub_mod};

/// An affine point (x, y), or `None` for the point at infinity.
pub(crate) type FpPoint = Option<(u64, u64)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct FpCurve {
    pub a4: u64,
    pub a6: u64,
    pub p: u64,
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// The Hasse interval [p + 1 − ⌊2√p⌋, p + 1 + ⌊2√p⌋].
pub(crate) fn hasse_interval(p: u64) -> (u64, u64) {
    let w = isqrt(4 * p);
    (p + 1 - w, p + 1 + w)
}

impl FpCurve {
    pub fn new(a4: u64, a6: u64, p: u64) -> Self {
        FpCurve { a4: a4 % p, a6: a6 % p, p }
    }

    pub fn is_singular(&self) -> bool {
        let p = self.p;
        let a3 = mul_mod(mul_mod(self.a4, self.a4, p), self.a4, p);
        let b2 = mul_mod(self.a6, self.a6, p);
        add_mod(mul_mod(4, a3, p), mul_mod(27 % p, b2, p), p) == 0
    }

    pub fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        let x2 = mul_mod(x, x, p);
        add_mod(mul_mod(add_mod(x2, self.a4, p), x, p), self.a6, p)
    }

    pub fn contains(&self, pt: FpPoint) -> bool {
        match pt {
            None => true,
            Some((x, y)) => x < self.p && y < self.p && mul_mod(y, y, self.p) == self.rhs(x),
        }
    }

    pub fn neg(&self, pt: FpPoint) -> FpPoint {
        pt.map(|(x, y)| (x, (self.p - y) % self.p))
    }

    pub fn add(&self, a: FpPoint, b: FpPoint) -> FpPoint {
        let p = self.p;
        let ((x1, y1), (x2, y2)) = match (a, b) {
            (None, _) => return b,
            (_, None) => return a,
            (Some(a), Some(b)) => (a, b),
        };
        let slope = if x1 == x2 {
            if add_mod(y1, y2, p) == 0 {
                return None;
            }
            let num = add_mod(mul_mod(3, mul_mod(x1, x1, p), p), self.a4, p);
            mul_mod(num, inv_mod(add_mod(y1, y1, p), p)?, p)
        } else {
            mul_mod(sub_mod(y2, y1, p), inv_mod(sub_mod(x2, x1, p), p)?, p)
        };
        let x3 = sub_mod(sub_mod(mul_mod(slope, slope, p), x1, p), x2, p);
        let y3 = sub_mod(mul_mod(slope, sub_mod(x1, x3, p), p), y1, p);
        Some((x3, y3))
    }

    pub fn mul(&self, pt: FpPoint, mut k: u64) -> FpPoint {
        let mut acc = None;
        let mut base = pt;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn mul_big(&self, pt: FpPoint, k: &BigUint) -> FpPoint {
        let mut acc = None;
        for i in (0..k.bits()).rev() {
            acc = self.add(acc, acc);
            if k.bit(i) {
                acc = self.add(acc, pt);
            }
        }
        acc
    }

    /// #E(F_p) by counting square roots of x³ + a4·x + a6 for every x.
    pub fn count_exhaustive(&self) -> u64 {
        let p = self.p;
        let mut roots = vec![0u8; p as usize];
        for y in 0..p {
            roots[mul_mod(y, y, p) as usize] += 1;
        }
        1 + (0..p).map(|x| roots[self.rhs(x) as usize] as u64).sum::<u64>()
    }

    /// First affine point with x ≥ `start`, wrapping around mod p.
    fn point_from(&self, start: u64) -> FpPoint {
        (0..self.p).map(|i| (start + i) % self.p).find_map(|x| {
            let r = self.rhs(x);
            if r == 0 {
                Some((x, 0))
            } else if legendre(r, self.p) == 1 {
                sqrt_mod(r, self.p).map(|y| (x, y))
            } else {
                None
            }
        })
    }

    /// Exact order of `pt`, given any positive multiple `m` that kills it.
    pub fn order_from_multiple(&self, pt: FpPoint, m: u64) -> u64 {
        let mut order = m;
        for (q, e) in factor_u64(m.max(1)) {
            for _ in 0..e {
                if self.mul(pt, order / q).is_none() {
                    order /= q;
                } else {
                    break;
                }
            }
        }
        order
    }

    /// Some M in [lo, hi] with [M]·pt = O, by baby-step giant-step.
    fn killing_multiple(&self, pt: FpPoint, lo: u64, hi: u64) -> Option<u64> {
        let m = isqrt(hi - lo) + 1;
        let mut baby: HashMap<(u64, u64), u64> = HashMap::with_capacity(m as usize + 1);
        let mut cur = None;
        for j in 1..=m {
            cur = self.add(cur, pt);
            if let Some(xy) = cur {
                baby.entry(xy).or_insert(j);
            }
        }
        let step = self.mul(pt, m);
        let mut giant = self.mul(pt, lo);
        for k in 0..=m {
            let base = lo + k * m;
            match self.neg(giant) {
                None => return Some(base),
                Some(xy) => {
                    if let Some(&j) = baby.get(&xy) {
                        return Some(base + j);
                    }
                }
            }
            giant = self.add(giant, step);
        }
        None
    }

    /// A quadratic twist y² = x³ + c²a4·x + c³a6 with c a non-residue.
    fn twist(&self) -> FpCurve {
        let p = self.p;
        let c = (2..p).find(|&c| legendre(c, p) == -1).expect("p is an odd prime");
        let c2 = mul_mod(c, c, p);
        FpCurve::new(mul_mod(c2, self.a4, p), mul_mod(mul_mod(c2, c, p), self.a6, p), p)
    }

    /// #E(F_p): exhaustive below `exhaustive_below`, otherwise by point
    /// orders on E and its twist until one value in the Hasse interval is
    /// consistent, with exhaustive counting as the last resort.
    pub fn group_order(&self, exhaustive_below: u64) -> u64 {
        let p = self.p;
        if p < exhaustive_below || p < 230 {
            return self.count_exhaustive();
        }
        let (lo, hi) = hasse_interval(p);
        let twist = self.twist();
        let (mut l, mut lt) = (1u64, 1u64);
        let candidates = |l: u64, lt: u64| {
            let first = lo.div_ceil(l) * l;
            (first..=hi)
                .step_by(l as usize)
                .filter(|&n| (2 * p + 2 - n) % lt == 0)
                .take(2)
                .collect::<Vec<_>>()
        };
        let mut start = 0;
        for _ in 0..24 {
            for (curve, acc) in [(self, &mut l), (&twist, &mut lt)] {
                let pt = curve.point_from(start);
                if pt.is_none() {
                    continue;
                }
                if let Some(m) = curve.killing_multiple(pt, lo, hi) {
                    let ord = curve.order_from_multiple(pt, m);
                    *acc = *acc / gcd(*acc, ord) * ord;
                }
            }
            let c = candidates(l, lt);
            if c.len() == 1 {
                return c[0];
            }
            start = (start + 1 + p / 25) % p;
        }
        self.count_exhaustive()
    }
}
