//! Residue-level probes of v-adic limits of power orbits.
//!
//! A v-adic limit claim ξ = lim λ^(d^n) is never checked directly; instead
//! its consequences modulo finitely many primes are produced as replayable
//! congruences, and a single false congruence refutes the claim.

mod limit;
mod zhat;

pub use limit::{
    power_limit_decide, CongruenceWitness, PowerLimitOutcome, PowerLimitTranscript, TranscriptWitness,
    WitnessPhase,
};
pub use zhat::{zhat_power_limit, ZhatConflict, ZhatReport};

use crate::arith::modular::pow_mod;
use crate::arith::{is_prime_u64, BigRat};
use crate::error::{Error, Result};
use crate::order::mult_order;

fn reduce(lambda: &BigRat, p: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    match lambda.residue_mod(p) {
        Some(r) if r != 0 => Ok(r),
        _ => Err(Error::BadReductionPrime { p }),
    }
}

/// λ^(d^n) mod p for each n, reducing the exponent d^n modulo p − 1.
pub fn residue_orbit(lambda: &BigRat, d: u64, p: u64, n_list: &[u32]) -> Result<Vec<u64>> {
    let r = reduce(lambda, p)?;
    Ok(n_list
        .iter()
        .map(|&n| pow_mod(r, pow_mod(d % (p - 1).max(1), n as u64, p - 1), p))
        .map(|v| if p == 2 { 1 } else { v })
        .collect())
}

/// (preperiod, period) of n ↦ λ^(d^n) mod p.
///
/// The sequence depends only on d^n mod f, f = f_p(λ). Splitting f = f1·f2
/// with f1 built from the primes of d, the preperiod is the least n with
/// f1 | d^n and the period is the order of d modulo f2.
pub fn residue_orbit_period(lambda: &BigRat, d: u64, p: u64) -> Result<(u32, u64)> {
    reduce(lambda, p)?;
    let f = mult_order(lambda, p)?.order;
    let mut f2 = f;
    loop {
        let g = crate::arith::modular::gcd(f2, d);
        if g == 1 {
            break;
        }
        f2 /= g;
    }
    let f1 = f / f2;
    let mut pre = 0u32;
    let mut power = 1u128;
    while power % f1 as u128 != 0 {
        power = power * d as u128 % f1 as u128;
        pre += 1;
    }
    let period = if f2 == 1 {
        1
    } else {
        let mut q = 1u64;
        let mut x = d % f2;
        while x != 1 {
            x = (x as u128 * d as u128 % f2 as u128) as u64;
            q += 1;
        }
        q
    };
    Ok((pre, period))
}
