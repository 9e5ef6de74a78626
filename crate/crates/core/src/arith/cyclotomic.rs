//! Homogenized cyclotomic values Φ_n(a, b).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::factor::factor_u64;

/// Möbius function.
pub fn moebius(n: u64) -> i8 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor_u64(n) {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Φ_n(a, b) = b^φ(n)·Φ_n(a/b) computed as ∏_{e | n} (a^e − b^e)^μ(n/e).
///
/// Returns `None` when some a^e − b^e vanishes, i.e. when a/b is a root of
/// unity.
pub fn cyclotomic_value(n: u64, a: &BigInt, b: &BigInt) -> Option<BigInt> {
    assert!(n >= 1);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for e in divisors(n) {
        let mu = moebius(n / e);
        if mu == 0 {
            continue;
        }
        let exp = u32::try_from(e).ok()?;
        let term = a.pow(exp) - b.pow(exp);
        if term.is_zero() {
            return None;
        }
        if mu == 1 {
            num *= term;
        } else {
            den *= term;
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    Some(q)
}
