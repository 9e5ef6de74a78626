use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fp::{hasse_interval, FpCurve, FpPoint};
use super::{ec_scalar_mul, good_reduction, reduce_fp, ECPoint, EllipticCurveQ, Field};
use crate::arith::sieve::primes_to;
use crate::arith::{factor_u64, is_prime_u64};
use crate::config::SearchConfig;
use crate::error::{Error, Result};

/// #E(F_p) for a prime of good reduction.
pub fn group_order(e: &EllipticCurveQ, p: u64, cfg: &SearchConfig) -> Result<u64> {
    if !good_reduction(e, p) {
        return Err(Error::BadReductionPrime { p });
    }
    Ok(e.over_fp(p)?.group_order(cfg.exhaustive_count_below))
}

/// [f/q]P̄ for a prime q | f.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ECMaximalityWitness {
    pub q: u64,
    pub multiple: ECPoint,
}

/// Proof that P̄ has order exactly `point_order` in E(F_p).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ECOrderCertificate {
    pub p: u64,
    /// Curve coefficients reduced mod p.
    pub a4: u64,
    pub a6: u64,
    /// P reduced mod p.
    pub point: ECPoint,
    pub group_order: u64,
    pub point_order: u64,
    pub order_factorization: Vec<(u64, u32)>,
    pub maximality_witnesses: Vec<ECMaximalityWitness>,
}

fn fp_of(pt: &ECPoint, c: &FpCurve) -> Option<FpPoint> {
    let q = pt.to_fp(c.p)?;
    c.contains(q).then_some(q)
}

impl ECOrderCertificate {
    fn build(c: &FpCurve, pt: FpPoint, group_order: u64) -> Self {
        let point_order = c.order_from_multiple(pt, group_order);
        let order_factorization = factor_u64(point_order);
        let maximality_witnesses = order_factorization
            .iter()
            .map(|&(q, _)| ECMaximalityWitness {
                q,
                multiple: ECPoint::from_fp(c.mul(pt, point_order / q)),
            })
            .collect();
        ECOrderCertificate {
            p: c.p,
            a4: c.a4,
            a6: c.a6,
            point: ECPoint::from_fp(pt),
            group_order,
            point_order,
            order_factorization,
            maximality_witnesses,
        }
    }

    /// Replays the certificate: [f]P̄ = O, [f/q]P̄ ≠ O for every prime q | f,
    /// f | N, [N]P̄ = O and N in the Hasse interval.
    pub fn verify(&self) -> bool {
        let p = self.p;
        if p <= 3 || !is_prime_u64(p) {
            return false;
        }
        let c = FpCurve::new(self.a4, self.a6, p);
        if c.is_singular() || c.a4 != self.a4 || c.a6 != self.a6 {
            return false;
        }
        let Some(pt) = fp_of(&self.point, &c) else { return false };
        let (lo, hi) = hasse_interval(p);
        let f = self.point_order;
        let factored = self
            .order_factorization
            .iter()
            .try_fold(1u64, |acc, &(q, e)| {
                is_prime_u64(q).then(|| acc.checked_mul(q.checked_pow(e)?)).flatten()
            })
            == Some(f);
        let maximal = self.order_factorization.len() == self.maximality_witnesses.len()
            && self
                .order_factorization
                .iter()
                .zip(&self.maximality_witnesses)
                .all(|(&(q, _), w)| {
                    let m = ECPoint::from_fp(c.mul(pt, f / q));
                    w.q == q && w.multiple == m && !m.is_infinity()
                });
        f >= 1
            && (lo..=hi).contains(&self.group_order)
            && self.group_order % f == 0
            && c.mul(pt, self.group_order).is_none()
            && c.mul(pt, f).is_none()
            && factored
            && maximal
    }
}

/// f_p(P): the exact order of P mod p, by factoring #E(F_p) and descending.
pub fn point_order_mod_p(
    e: &EllipticCurveQ,
    pt: &ECPoint,
    p: u64,
    cfg: &SearchConfig,
) -> Result<ECOrderCertificate> {
    if !e.contains(pt) {
        return Err(Error::NotOnCurve);
    }
    let (c, reduced) = reduce_fp(e, pt, p)?;
    let n = c.group_order(cfg.exhaustive_count_below);
    Ok(ECOrderCertificate::build(&c, reduced, n))
}

/// Whether P has finite order.
///
/// Reduction at a good odd prime is injective on torsion, and the kernel
/// of reduction is torsion-free, so a torsion point has the same order at
/// every good prime and never reduces to O unless it is O. The orders at
/// the first two good primes either differ (P has infinite order) or give
/// the only candidate order, which is checked over Q.
pub fn is_torsion(e: &EllipticCurveQ, pt: &ECPoint) -> bool {
    if pt.is_infinity() {
        return true;
    }
    let cfg = SearchConfig::default();
    let mut orders = Vec::with_capacity(2);
    let mut p = 5u64;
    while orders.len() < 2 {
        if good_reduction(e, p) {
            let cert = point_order_mod_p(e, pt, p, &cfg).expect("good prime and point on curve");
            if cert.point.is_infinity() {
                return false;
            }
            orders.push(cert.point_order);
        }
        p += 2;
    }
    orders[0] == orders[1]
        && ec_scalar_mul(e, &orders[0].into(), pt, Field::Rational)
            .expect("point on curve")
            .is_infinity()
}

/// For each n ≤ n_max, the smallest good prime p ≤ p_max with f_p(P) = n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EcSpectrumReport {
    pub schema_version: u32,
    pub curve: EllipticCurveQ,
    pub point: ECPoint,
    pub n_max: u64,
    pub p_max: u64,
    pub realized: BTreeMap<u64, ECOrderCertificate>,
    pub missing: Vec<u64>,
}

impl EcSpectrumReport {
    pub fn verify(&self) -> bool {
        let partition = (1..=self.n_max)
            .all(|n| self.realized.contains_key(&n) != self.missing.contains(&n))
            && self.realized.len() + self.missing.len() == self.n_max as usize;
        let certs = self.realized.iter().all(|(&n, c)| {
            c.point_order == n
                && c.p <= self.p_max
                && good_reduction(&self.curve, c.p)
                && super::reduce_point(&self.curve, &self.point, c.p).ok().as_ref() == Some(&c.point)
                && c.verify()
        });
        partition && certs
    }
}

pub fn elliptic_order_spectrum(
    e: &EllipticCurveQ,
    pt: &ECPoint,
    n_max: u64,
    p_max: u64,
    cfg: &SearchConfig,
) -> Result<EcSpectrumReport> {
    if !e.contains(pt) {
        return Err(Error::NotOnCurve);
    }
    if is_torsion(e, pt) {
        return Err(Error::TorsionPoint);
    }
    let primes = primes_to(p_max);
    let certs: Vec<ECOrderCertificate> = primes
        .par_iter()
        .filter(|&&p| good_reduction(e, p))
        .map(|&p| point_order_mod_p(e, pt, p, cfg))
        .filter(|c| c.as_ref().map_or(true, |c| c.point_order <= n_max))
        .collect::<Result<_>>()?;
    let mut realized = BTreeMap::new();
    for c in certs {
        realized.entry(c.point_order).or_insert(c);
    }
    let missing = (1..=n_max).filter(|n| !realized.contains_key(n)).collect();
    Ok(EcSpectrumReport {
        schema_version: crate::SCHEMA_VERSION,
        curve: e.clone(),
        point: pt.clone(),
        n_max,
        p_max,
        realized,
        missing,
    })
}
