use serde::{Deserialize, Serialize};

use super::reduce;
use crate::arith::modular::gcd;
use crate::arith::{is_prime_u64, is_root_of_unity, BigRat, FactorOracle};
use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::order::{find_orders_coprime_to, mult_order, primes_with_order, OrderCertificate};

/// One congruence implied by the limit hypothesis at a single prime.
///
/// With f_p(λ) = `claimed_order`, the hypothesis forces `check_value` to be
/// congruent to `forced_value`; a witness refutes it when they differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceWitness {
    pub p: u64,
    pub claimed_order: u64,
    pub congruence_class_of_xi: u64,
    pub check_value: u64,
    pub forced_value: u64,
}

impl CongruenceWitness {
    pub fn is_contradiction(&self) -> bool {
        self.check_value != self.forced_value
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessPhase {
    /// f_p(λ) = d^n, so λ^(d^N) ≡ 1 for N ≥ n and ξ ≡ 1 is forced.
    XiForcing,
    /// gcd(f_p(λ), d) = 1 and ξ = 1, so λ ≡ 1 is forced.
    LambdaForcing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PowerLimitOutcome {
    /// λ = ±1: the powers λ^(d^n), n ≥ 1, form `limit_set`, and
    /// `matching_r` is the least r ≥ 0 with λ^(d^r) = ξ.
    RootOfUnityCase {
        limit_set: Vec<BigRat>,
        matching_r: Option<u32>,
    },
    Refuted {
        xi_forcing: Vec<CongruenceWitness>,
        lambda_forcing: Vec<CongruenceWitness>,
    },
}

fn check_inputs(lambda: &BigRat, xi: &BigRat, d: u64) -> Result<()> {
    if lambda.is_zero() || xi.is_zero() {
        return Err(Error::ZeroInput);
    }
    if d < 2 {
        return Err(Error::InvalidInput("d must be at least 2".into()));
    }
    Ok(())
}

fn xi_witness(cert: &OrderCertificate, xi: u64) -> CongruenceWitness {
    CongruenceWitness {
        p: cert.p,
        claimed_order: cert.order,
        congruence_class_of_xi: xi,
        check_value: xi,
        forced_value: 1,
    }
}

/// Decides whether ξ can be the v-adic limit of λ^(d^n) at every prime
/// outside a finite set.
///
/// For λ = ±1 the answer is exact. Otherwise a refutation transcript is
/// built: primes with f_p(λ) = d^n for increasing n (skipping primes where
/// ξ is not a unit) each force ξ ≡ 1 (mod p). If ξ ≠ 1, witnesses are
/// collected until `witness_budget` are in hand and one of them is false.
/// If ξ = 1, `witness_budget` primes whose order m > 1 is prime to d each
/// force λ ≡ 1 (mod p), which is false since f_p(λ) = m.
pub fn power_limit_decide(
    lambda: &BigRat,
    xi: &BigRat,
    d: u64,
    witness_budget: usize,
    cfg: &SearchConfig,
    oracle: &dyn FactorOracle,
) -> Result<PowerLimitOutcome> {
    check_inputs(lambda, xi, d)?;
    if is_root_of_unity(lambda)? {
        let later = lambda.pow(d as i64);
        let matching_r = if lambda == xi {
            Some(0)
        } else if later == *xi {
            Some(1)
        } else {
            None
        };
        return Ok(PowerLimitOutcome::RootOfUnityCase {
            limit_set: vec![later],
            matching_r,
        });
    }

    let p_limit = cfg.prime_budget;
    let mut xi_forcing = Vec::new();
    let mut order = d;
    while order < p_limit
        && (xi_forcing.len() < witness_budget
            || (!xi.is_one() && !xi_forcing.iter().any(CongruenceWitness::is_contradiction)))
    {
        let found = primes_with_order(lambda, order, p_limit, cfg, oracle)?
            .into_iter()
            .find_map(|c| match xi.residue_mod(c.p) {
                Some(x) if x != 0 => Some(xi_witness(&c, x)),
                _ => None,
            });
        xi_forcing.extend(found);
        order = match order.checked_mul(d) {
            Some(o) => o,
            None => break,
        };
    }
    let refuted = xi_forcing.iter().any(CongruenceWitness::is_contradiction);
    if xi_forcing.len() < witness_budget || (!xi.is_one() && !refuted) {
        return Err(Error::InsufficientWitnesses {
            found: xi_forcing.len(),
            wanted: witness_budget,
            limit: p_limit,
        });
    }

    let lambda_forcing = if xi.is_one() {
        find_orders_coprime_to(lambda, d, witness_budget, p_limit, cfg, oracle)?
            .into_iter()
            .map(|c| CongruenceWitness {
                p: c.p,
                claimed_order: c.order,
                congruence_class_of_xi: 1 % c.p,
                check_value: c.residue,
                forced_value: 1,
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(PowerLimitOutcome::Refuted {
        xi_forcing,
        lambda_forcing,
    })
}

impl PowerLimitOutcome {
    /// Re-derives every claim in the outcome from λ, ξ and d alone.
    ///
    /// Each witness must carry a prime, the exact order of λ there and the
    /// residues it states; ξ-forcing orders must be powers of d and
    /// λ-forcing orders must exceed 1 and be prime to d. A refutation must
    /// contain at least one false congruence.
    pub fn replay(&self, lambda: &BigRat, xi: &BigRat, d: u64) -> bool {
        if check_inputs(lambda, xi, d).is_err() {
            return false;
        }
        match self {
            PowerLimitOutcome::RootOfUnityCase { limit_set, matching_r } => {
                if !is_root_of_unity(lambda).unwrap_or(false) {
                    return false;
                }
                let value = |r: u32| if r == 0 { lambda.clone() } else { lambda.pow(d as i64) };
                let minimal = (0..2).find(|&r| value(r) == *xi);
                *limit_set == vec![value(1)] && *matching_r == minimal
            }
            PowerLimitOutcome::Refuted {
                xi_forcing,
                lambda_forcing,
            } => {
                let witness_ok = |w: &CongruenceWitness| {
                    is_prime_u64(w.p)
                        && w.forced_value == 1
                        && mult_order(lambda, w.p).map_or(false, |c| c.order == w.claimed_order)
                        && reduce(xi, w.p).ok() == Some(w.congruence_class_of_xi)
                };
                let xi_ok = xi_forcing.iter().all(|w| {
                    witness_ok(w) && is_power_of(w.claimed_order, d) && w.check_value == w.congruence_class_of_xi
                });
                let mut primes: Vec<u64> = xi_forcing.iter().map(|w| w.p).collect();
                primes.sort_unstable();
                primes.dedup();
                let distinct = primes.len() == xi_forcing.len();
                let lambda_ok = lambda_forcing.iter().all(|w| {
                    witness_ok(w)
                        && w.claimed_order > 1
                        && gcd(w.claimed_order, d) == 1
                        && lambda.residue_mod(w.p) == Some(w.check_value)
                });
                let contradiction = xi_forcing.iter().any(CongruenceWitness::is_contradiction)
                    || (xi.is_one() && lambda_forcing.iter().any(CongruenceWitness::is_contradiction));
                xi_ok && distinct && lambda_ok && contradiction
            }
        }
    }
}

fn is_power_of(mut n: u64, d: u64) -> bool {
    if n < d {
        return false;
    }
    while n % d == 0 {
        n /= d;
    }
    n == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptWitness {
    pub phase: WitnessPhase,
    pub p: u64,
    pub order: u64,
    pub check_value: u64,
}

/// Flat record of a decision, for external verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerLimitTranscript {
    pub schema_version: u32,
    pub lambda: BigRat,
    pub xi: BigRat,
    pub d: u64,
    pub outcome: PowerLimitOutcome,
    pub witnesses: Vec<TranscriptWitness>,
}

impl PowerLimitTranscript {
    pub fn new(lambda: &BigRat, xi: &BigRat, d: u64, outcome: PowerLimitOutcome) -> Self {
        let witnesses = match &outcome {
            PowerLimitOutcome::RootOfUnityCase { .. } => Vec::new(),
            PowerLimitOutcome::Refuted {
                xi_forcing,
                lambda_forcing,
            } => {
                let tag = |phase| {
                    move |w: &CongruenceWitness| TranscriptWitness {
                        phase,
                        p: w.p,
                        order: w.claimed_order,
                        check_value: w.check_value,
                    }
                };
                xi_forcing
                    .iter()
                    .map(tag(WitnessPhase::XiForcing))
                    .chain(lambda_forcing.iter().map(tag(WitnessPhase::LambdaForcing)))
                    .collect()
            }
        };
        PowerLimitTranscript {
            schema_version: crate::SCHEMA_VERSION,
            lambda: lambda.clone(),
            xi: xi.clone(),
            d,
            outcome,
            witnesses,
        }
    }

    pub fn replay(&self) -> bool {
        self.outcome.replay(&self.lambda, &self.xi, self.d)
    }
}
