use serde::{Deserialize, Serialize};

use crate::arith::factor_u64;
use crate::arith::sieve::primes_up_to;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZhatConflict {
    /// p | d, so d^r → 0 in Z_p as r grows, but v_p(m) is finite.
    PrimeDividesD { p: u64, v_p_m: u32 },
    /// p ∤ d, so |d^r|_p = 1 for every r, but p | m.
    PrimeCoprimeToD { p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZhatReport {
    pub schema_version: u32,
    pub d: u64,
    pub m: i64,
    /// Whether d^(r_i) → m in Ẑ is possible for some r_i → ∞.
    pub possible: bool,
    pub conflict: ZhatConflict,
}

fn v_p(m: i64, p: u64) -> u32 {
    let mut m = m.unsigned_abs();
    let mut v = 0;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    v
}

/// No unbounded sequence of powers of d converges to an integer m in Ẑ.
///
/// For m ≠ 0 a prime p | d sends d^(r_i) to 0 p-adically while |m|_p > 0.
/// For m = 0 any prime p ∤ d keeps |d^(r_i)|_p = 1 ≠ |0|_p; the smallest
/// such prime is reported.
pub fn zhat_power_limit(d: u64, m: i64) -> ZhatReport {
    assert!(d >= 2, "d must be at least 2");
    let conflict = if m != 0 {
        let p = factor_u64(d)[0].0;
        ZhatConflict::PrimeDividesD { p, v_p_m: v_p(m, p) }
    } else {
        let p = primes_up_to(64)
            .into_iter()
            .find(|&p| d % p != 0)
            .expect("d has fewer than 18 distinct prime factors");
        ZhatConflict::PrimeCoprimeToD { p }
    };
    ZhatReport {
        schema_version: crate::SCHEMA_VERSION,
        d,
        m,
        possible: false,
        conflict,
    }
}

impl ZhatReport {
    /// Checks the conflicting prime against d and m.
    pub fn is_valid(&self) -> bool {
        let prime = |p: u64| crate::arith::is_prime_u64(p);
        !self.possible
            && match self.conflict {
                ZhatConflict::PrimeDividesD { p, v_p_m } => {
                    prime(p) && self.d % p == 0 && self.m != 0 && v_p(self.m, p) == v_p_m
                }
                ZhatConflict::PrimeCoprimeToD { p } => {
                    prime(p) && self.d % p != 0 && (self.m == 0 || self.m.unsigned_abs() % p == 0)
                }
            }
    }
}
