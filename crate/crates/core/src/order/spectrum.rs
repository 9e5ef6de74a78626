use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::search::{primitive_part_status, smallest_prime_with_order};
use super::OrderCertificate;
use crate::arith::{is_root_of_unity, BigRat, FactorOracle};
use crate::config::SearchConfig;
use crate::error::{Error, Result};

/// Which orders n ≤ n_max are realized by a prime p ≤ p_max.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub schema_version: u32,
    pub lambda: BigRat,
    pub n_max: u64,
    pub p_max: u64,
    /// n ↦ certificate for the smallest prime with order exactly n.
    pub realized: BTreeMap<u64, OrderCertificate>,
    /// Orders with no witness up to `p_max`, ascending.
    pub missing: Vec<u64>,
    /// The subset of `missing` whose Φ_n(a, b) was factored completely
    /// without finding a primitive divisor.
    pub proven_exceptional: Vec<u64>,
}

impl SpectrumReport {
    /// Missing orders that are not proven exceptional.
    pub fn unresolved(&self) -> Vec<u64> {
        self.missing
            .iter()
            .copied()
            .filter(|n| !self.proven_exceptional.contains(n))
            .collect()
    }

    /// Structural invariants plus replay of every certificate.
    pub fn verify(&self) -> bool {
        let partition = (1..=self.n_max)
            .all(|n| self.realized.contains_key(&n) != self.missing.contains(&n))
            && self.realized.len() + self.missing.len() == self.n_max as usize;
        let certs = self.realized.iter().all(|(&n, c)| {
            c.order == n && c.p <= self.p_max && c.lambda == self.lambda && c.verify()
        });
        let proven = self.proven_exceptional.iter().all(|n| self.missing.contains(n));
        partition && certs && proven && self.missing.windows(2).all(|w| w[0] < w[1])
    }
}

/// The Bang-Zsigmondy spectrum of λ: for each n ≤ n_max, the smallest
/// prime p ≤ p_max with f_p(λ) = n.
///
/// Budget failures for an individual n leave it in `missing` without the
/// proven-exceptional upgrade; they never abort the report.
pub fn order_spectrum(
    lambda: &BigRat,
    n_max: u64,
    p_max: u64,
    cfg: &SearchConfig,
    oracle: &dyn FactorOracle,
) -> Result<SpectrumReport> {
    if is_root_of_unity(lambda)? {
        return Err(Error::RootOfUnityInput(lambda.to_string()));
    }
    enum Entry {
        Realized(OrderCertificate),
        Missing { proven: bool },
    }
    let entries: Vec<(u64, Entry)> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let found = match smallest_prime_with_order(lambda, n, p_max, cfg, oracle) {
                Ok(found) => found,
                Err(e) if e.is_budget() => None,
                Err(e) => return Err(e),
            };
            let entry = match found {
                Some(cert) => Entry::Realized(cert),
                None => {
                    let proven = match primitive_part_status(lambda, n, oracle) {
                        Ok(has_primitive) => !has_primitive,
                        Err(e) if e.is_budget() => false,
                        Err(e) => return Err(e),
                    };
                    Entry::Missing { proven }
                }
            };
            Ok((n, entry))
        })
        .collect::<Result<_>>()?;

    let mut report = SpectrumReport {
        schema_version: crate::SCHEMA_VERSION,
        lambda: lambda.clone(),
        n_max,
        p_max,
        realized: BTreeMap::new(),
        missing: Vec::new(),
        proven_exceptional: Vec::new(),
    };
    for (n, entry) in entries {
        match entry {
            Entry::Realized(c) => {
                report.realized.insert(n, c);
            }
            Entry::Missing { proven } => {
                report.missing.push(n);
                if proven {
                    report.proven_exceptional.push(n);
                }
            }
        }
    }
    Ok(report)
}
