//! Multiplicative orders of rationals modulo primes and the Bang-Zsigmondy
//! spectrum of a rational.

mod search;
mod spectrum;

pub use search::{
    find_orders_coprime_to, primes_with_order, primes_with_order_scan, smallest_prime_with_order,
    zsigmondy, ZsigmondyReport, ZsigmondyStatus,
};
pub use spectrum::{order_spectrum, SpectrumReport};

use serde::{Deserialize, Serialize};

use crate::arith::modular::pow_mod;
use crate::arith::{factor_u64, is_prime_u64, BigRat};
use crate::error::{Error, Result};

/// λ^(order/q) mod p for a prime q dividing the order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalityWitness {
    pub q: u64,
    pub residue: u64,
}

/// Proof that `order` is exactly the multiplicative order of λ mod p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCertificate {
    pub lambda: BigRat,
    pub p: u64,
    /// λ reduced mod p.
    pub residue: u64,
    pub order: u64,
    pub group_order: u64,
    pub maximality_witnesses: Vec<MaximalityWitness>,
}

impl OrderCertificate {
    /// Replays every modular exponentiation in the certificate.
    pub fn verify(&self) -> bool {
        let p = self.p;
        if !is_prime_u64(p) || self.group_order != p - 1 {
            return false;
        }
        if self.lambda.is_zero() || self.lambda.residue_mod(p) != Some(self.residue) || self.residue == 0 {
            return false;
        }
        if self.order == 0 || self.group_order % self.order != 0 {
            return false;
        }
        if pow_mod(self.residue, self.order, p) != 1 % p {
            return false;
        }
        let primes: Vec<u64> = factor_u64(self.order).into_iter().map(|(q, _)| q).collect();
        let listed: Vec<u64> = self.maximality_witnesses.iter().map(|w| w.q).collect();
        if primes != listed {
            return false;
        }
        self.maximality_witnesses.iter().all(|w| {
            let r = pow_mod(self.residue, self.order / w.q, p);
            r == w.residue && r != 1
        })
    }
}

/// Exact order of λ = a/b in F_p^*, with certificate.
///
/// The order is found by factoring p − 1 and removing prime factors while
/// the power stays 1.
pub fn mult_order(lambda: &BigRat, p: u64) -> Result<OrderCertificate> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let residue = match lambda.residue_mod(p) {
        Some(r) if r != 0 => r,
        _ => return Err(Error::BadReductionPrime { p }),
    };
    Ok(order_of_residue(lambda, residue, p))
}

pub(crate) fn order_of_residue(lambda: &BigRat, residue: u64, p: u64) -> OrderCertificate {
    let group_order = p - 1;
    let mut order = group_order;
    for (q, e) in factor_u64(group_order.max(1)) {
        for _ in 0..e {
            if pow_mod(residue, order / q, p) == 1 {
                order /= q;
            } else {
                break;
            }
        }
    }
    let maximality_witnesses = factor_u64(order)
        .into_iter()
        .map(|(q, _)| MaximalityWitness {
            q,
            residue: pow_mod(residue, order / q, p),
        })
        .collect();
    OrderCertificate {
        lambda: lambda.clone(),
        p,
        residue,
        order,
        group_order,
        maximality_witnesses,
    }
}

/// Order check by walking successive powers; test oracle and tiny primes.
pub fn naive_order(residue: u64, p: u64) -> Option<u64> {
    let mut x = residue % p;
    if x == 0 {
        return None;
    }
    let mut k = 1;
    while x != 1 % p {
        x = crate::arith::modular::mul_mod(x, residue, p);
        k += 1;
    }
    Some(k)
}
