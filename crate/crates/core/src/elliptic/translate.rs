//! The congruence core of the translated-subvariety argument.
//!
//! Suppose [d^n]P̄ converges to T̄ at every good prime. At a prime p with
//! f_p(P̄) = d^n, the terms [d^N]P̄ for N ≥ n are all O mod p, so T̄ ≡ O
//! (mod p). Collecting such primes either keeps T̄ = O consistent or shows
//! a prime where T̄ mod p is not O, refuting the hypothesis.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::order::{is_torsion, point_order_mod_p, ECOrderCertificate};
use super::{ec_scalar_mul, good_reduction, reduce_point, ECPoint, EllipticCurveQ, Field};
use crate::arith::sieve::primes_to;
use crate::config::SearchConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslateWitness {
    /// f_p(P̄) = d^n.
    pub n: u32,
    pub p: u64,
    pub certificate: ECOrderCertificate,
    pub tbar_reduced: ECPoint,
}

impl TranslateWitness {
    pub fn forces_zero(&self) -> bool {
        self.tbar_reduced.is_infinity()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TranslateOutcome {
    /// Every witness prime is consistent with T̄ = O.
    TbarForcedZero { witnesses: Vec<TranslateWitness> },
    /// The last witness has T̄ mod p ≠ O.
    NumericContradiction { witnesses: Vec<TranslateWitness> },
    /// P̄ is torsion: the orbit {[d^n]P̄} is finite, periodic from index
    /// `cycle_start`, and `member` records whether T̄ lies in it.
    TorsionOrbit {
        orbit: Vec<ECPoint>,
        cycle_start: usize,
        member: bool,
    },
}

fn exponent_of(mut f: u64, d: u64) -> Option<u32> {
    let mut n = 0;
    while f > 1 && f % d == 0 {
        f /= d;
        n += 1;
    }
    (f == 1 && n >= 1).then_some(n)
}

pub fn translated_subvariety_check(
    e: &EllipticCurveQ,
    pbar: &ECPoint,
    tbar: &ECPoint,
    d: u64,
    witness_budget: usize,
    cfg: &SearchConfig,
) -> Result<TranslateOutcome> {
    if d < 2 {
        return Err(Error::InvalidInput("d must be at least 2".into()));
    }
    if !e.contains(pbar) || !e.contains(tbar) {
        return Err(Error::NotOnCurve);
    }
    if is_torsion(e, pbar) {
        let mut orbit = vec![pbar.clone()];
        loop {
            let next = ec_scalar_mul(e, &d.into(), orbit.last().unwrap(), Field::Rational)?;
            if let Some(i) = orbit.iter().position(|q| *q == next) {
                let member = orbit.contains(tbar);
                return Ok(TranslateOutcome::TorsionOrbit {
                    orbit,
                    cycle_start: i,
                    member,
                });
            }
            orbit.push(next);
        }
    }

    let primes = primes_to(cfg.prime_budget);
    let good: Vec<u64> = primes.iter().copied().filter(|&p| good_reduction(e, p)).collect();
    let mut witnesses: Vec<TranslateWitness> = Vec::new();
    for chunk in good.chunks(256) {
        let certs: Vec<ECOrderCertificate> = chunk
            .par_iter()
            .map(|&p| point_order_mod_p(e, pbar, p, cfg))
            .collect::<Result<_>>()?;
        for cert in certs {
            let Some(n) = exponent_of(cert.point_order, d) else { continue };
            if witnesses.iter().any(|w| w.n == n) {
                continue;
            }
            let p = cert.p;
            let w = TranslateWitness {
                n,
                p,
                tbar_reduced: reduce_point(e, tbar, p)?,
                certificate: cert,
            };
            let contradiction = !w.forces_zero();
            witnesses.push(w);
            if contradiction {
                return Ok(TranslateOutcome::NumericContradiction { witnesses });
            }
            if witnesses.len() >= witness_budget {
                return Ok(TranslateOutcome::TbarForcedZero { witnesses });
            }
        }
    }
    Err(Error::InsufficientWitnesses {
        found: witnesses.len(),
        wanted: witness_budget,
        limit: cfg.prime_budget,
    })
}

impl TranslateOutcome {
    /// Re-derives each witness from the curve and points.
    pub fn replay(&self, e: &EllipticCurveQ, pbar: &ECPoint, tbar: &ECPoint, d: u64) -> bool {
        let witness_ok = |w: &TranslateWitness| {
            good_reduction(e, w.p)
                && w.certificate.p == w.p
                && w.certificate.verify()
                && reduce_point(e, pbar, w.p).ok() == Some(w.certificate.point.clone())
                && exponent_of(w.certificate.point_order, d) == Some(w.n)
                && reduce_point(e, tbar, w.p).ok() == Some(w.tbar_reduced.clone())
        };
        match self {
            TranslateOutcome::TbarForcedZero { witnesses } => {
                !witnesses.is_empty() && witnesses.iter().all(|w| witness_ok(w) && w.forces_zero())
            }
            TranslateOutcome::NumericContradiction { witnesses } => match witnesses.split_last() {
                Some((last, rest)) => {
                    witness_ok(last)
                        && !last.forces_zero()
                        && rest.iter().all(|w| witness_ok(w) && w.forces_zero())
                }
                None => false,
            },
            TranslateOutcome::TorsionOrbit {
                orbit,
                cycle_start,
                member,
            } => {
                let step = |q: &ECPoint| ec_scalar_mul(e, &d.into(), q, Field::Rational).ok();
                orbit.first() == Some(pbar)
                    && orbit.windows(2).all(|w| step(&w[0]).as_ref() == Some(&w[1]))
                    && orbit.last().and_then(step).as_ref() == orbit.get(*cycle_start)
                    && *member == orbit.contains(tbar)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslateReport {
    pub schema_version: u32,
    pub curve: EllipticCurveQ,
    pub pbar: ECPoint,
    pub tbar: ECPoint,
    pub d: u64,
    pub outcome: TranslateOutcome,
}

impl TranslateReport {
    pub fn new(e: &EllipticCurveQ, pbar: &ECPoint, tbar: &ECPoint, d: u64, outcome: TranslateOutcome) -> Self {
        TranslateReport {
            schema_version: crate::SCHEMA_VERSION,
            curve: e.clone(),
            pbar: pbar.clone(),
            tbar: tbar.clone(),
            d,
            outcome,
        }
    }

    pub fn replay(&self) -> bool {
        self.outcome.replay(&self.curve, &self.pbar, &self.tbar, self.d)
    }
}
