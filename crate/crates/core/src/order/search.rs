use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{mult_order, order_of_residue, OrderCertificate};
use crate::arith::cyclotomic::cyclotomic_value;
use crate::arith::modular::pow_mod;
use crate::arith::sieve::primes_to;
use crate::arith::{factor_u64, is_prime_u64, is_root_of_unity, BigRat, FactorOracle};
use crate::config::SearchConfig;
use crate::error::{Error, Result};

fn check_lambda(lambda: &BigRat) -> Result<()> {
    if is_root_of_unity(lambda)? {
        return Err(Error::RootOfUnityInput(lambda.to_string()));
    }
    Ok(())
}

fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// True iff λ ≡ `residue` (mod p) has order exactly n, given n's primes.
fn has_exact_order(residue: u64, p: u64, n: u64, n_primes: &[u64]) -> bool {
    pow_mod(residue, n, p) == 1 && n_primes.iter().all(|&q| pow_mod(residue, n / q, p) != 1)
}

enum Route {
    Factor,
    Progression,
}

fn choose_route(lambda: &BigRat, n: u64, p_limit: u64, cfg: &SearchConfig) -> Route {
    let h = lambda.num().magnitude().max(lambda.den().magnitude()).bits();
    let est_bits = euler_phi(n).saturating_mul(h);
    if est_bits <= 64 || p_limit / n > cfg.progression_scan_limit {
        Route::Factor
    } else {
        Route::Progression
    }
}

fn search(
    lambda: &BigRat,
    n: u64,
    p_limit: u64,
    cfg: &SearchConfig,
    oracle: &dyn FactorOracle,
    first_only: bool,
) -> Result<Vec<OrderCertificate>> {
    check_lambda(lambda)?;
    if n == 0 {
        return Err(Error::InvalidInput("order must be positive".into()));
    }
    let route = choose_route(lambda, n, p_limit, cfg);
    search_by(lambda, n, p_limit, route, oracle, first_only)
}

fn search_by(
    lambda: &BigRat,
    n: u64,
    p_limit: u64,
    route: Route,
    oracle: &dyn FactorOracle,
    first_only: bool,
) -> Result<Vec<OrderCertificate>> {
    let n_primes: Vec<u64> = factor_u64(n).into_iter().map(|(q, _)| q).collect();
    let mut out = Vec::new();
    match route {
        Route::Factor => {
            let phi = cyclotomic_value(n, lambda.num(), lambda.den())
                .ok_or_else(|| Error::RootOfUnityInput(lambda.to_string()))?;
            let f = oracle.factor(phi.magnitude())?;
            for p in f.primes() {
                let Some(p) = p.to_u64() else { continue };
                if p > p_limit {
                    continue;
                }
                if let Ok(cert) = mult_order(lambda, p) {
                    if cert.order == n {
                        out.push(cert);
                        if first_only {
                            break;
                        }
                    }
                }
            }
        }
        Route::Progression => {
            // Every prime of exact order n satisfies p ≡ 1 (mod n).
            let mut p = n.checked_add(1);
            while let Some(cand) = p.filter(|&c| c <= p_limit) {
                if is_prime_u64(cand) {
                    if let Some(r) = lambda.residue_mod(cand).filter(|&r| r != 0) {
                        if has_exact_order(r, cand, n, &n_primes) {
                            out.push(order_of_residue(lambda, r, cand));
                            if first_only {
                                break;
                            }
                        }
                    }
                }
                p = cand.checked_add(n);
            }
        }
    }
    Ok(out)
}

/// All primes p ≤ `p_limit` with f_p(λ) = n, ascending.
///
/// Candidates are the prime divisors of Φ_n(a, b) for λ = a/b. When Φ_n is
/// small the value is factored outright; otherwise the primes p ≡ 1 (mod n)
/// up to `p_limit` are tested, which is what makes orders like 2^10
/// reachable without factoring a^1024 − b^1024.
pub fn primes_with_order(
    lambda: &BigRat,
    n: u64,
    p_limit: u64,
    cfg: &SearchConfig,
    oracle: &dyn FactorOracle,
) -> Result<Vec<OrderCertificate>> {
    search(lambda, n, p_limit, cfg, oracle, false)
}

pub fn smallest_prime_with_order(
    lambda: &BigRat,
    n: u64,
    p_limit: u64,
    cfg: &SearchConfig,
    oracle: &dyn FactorOracle,
) -> Result<Option<OrderCertificate>> {
    Ok(search(lambda, n, p_limit, cfg, oracle, true)?.into_iter().next())
}

/// Same contract as [`primes_with_order`], by scanning every prime up to
/// `p_limit`. Kept for cross-checking the divisor-based search.
pub fn primes_with_order_scan(lambda: &BigRat, n: u64, p_limit: u64) -> Result<Vec<OrderCertificate>> {
    check_lambda(lambda)?;
    Ok(primes_to(p_limit)
        .iter()
        .filter_map(|&p| mult_order(lambda, p).ok())
        .filter(|c| c.order == n)
        .collect())
}

/// Certificates with pairwise distinct orders m > 1, gcd(m, d) = 1, taking
/// the smallest such orders first and the smallest prime for each.
pub fn find_orders_coprime_to(
    lambda: &BigRat,
    d: u64,
    count: usize,
    p_limit: u64,
    cfg: &SearchConfig,
    oracle: &dyn FactorOracle,
) -> Result<Vec<OrderCertificate>> {
    check_lambda(lambda)?;
    if d < 2 {
        return Err(Error::InvalidInput("d must be at least 2".into()));
    }
    let mut out = Vec::with_capacity(count);
    let mut m = 2u64;
    while out.len() < count && m < p_limit {
        if m.gcd(&d) == 1 {
            if let Some(cert) = smallest_prime_with_order(lambda, m, p_limit, cfg, oracle)? {
                out.push(cert);
            }
        }
        m += 1;
    }
    if out.len() < count {
        return Err(Error::InsufficientWitnesses {
            found: out.len(),
            wanted: count,
            limit: p_limit,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZsigmondyStatus {
    /// Some prime below the limit has order exactly n.
    Realized,
    /// Φ_n(a, b) was factored completely and no prime factor has order n.
    ProvenExceptional,
    /// No witness below the limit, and Φ_n(a, b) has a primitive prime
    /// factor above it.
    RealizedAboveLimit,
    /// No witness below the limit and the complete factorization ran out of
    /// budget.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZsigmondyReport {
    pub schema_version: u32,
    pub lambda: BigRat,
    pub n: u64,
    pub p_limit: u64,
    pub witnesses: Vec<OrderCertificate>,
    pub status: ZsigmondyStatus,
}

/// Primitive-divisor report for a single index n.
pub fn zsigmondy(
    lambda: &BigRat,
    n: u64,
    p_limit: u64,
    cfg: &SearchConfig,
    oracle: &dyn FactorOracle,
) -> Result<ZsigmondyReport> {
    let witnesses = match primes_with_order(lambda, n, p_limit, cfg, oracle) {
        Ok(w) => w,
        Err(e) if e.is_budget() => Vec::new(),
        Err(e) => return Err(e),
    };
    let status = if !witnesses.is_empty() {
        ZsigmondyStatus::Realized
    } else {
        match primitive_part_status(lambda, n, oracle) {
            Ok(true) => ZsigmondyStatus::RealizedAboveLimit,
            Ok(false) => ZsigmondyStatus::ProvenExceptional,
            Err(e) if e.is_budget() => ZsigmondyStatus::Unresolved,
            Err(e) => return Err(e),
        }
    };
    Ok(ZsigmondyReport {
        schema_version: crate::SCHEMA_VERSION,
        lambda: lambda.clone(),
        n,
        p_limit,
        witnesses,
        status,
    })
}

/// Whether a^n − b^n has a primitive prime divisor, decided by a complete
/// factorization of Φ_n(a, b). A prime factor not dividing n is always
/// primitive; one dividing n is checked directly.
pub(crate) fn primitive_part_status(lambda: &BigRat, n: u64, oracle: &dyn FactorOracle) -> Result<bool> {
    check_lambda(lambda)?;
    let phi: BigInt = cyclotomic_value(n, lambda.num(), lambda.den())
        .ok_or_else(|| Error::RootOfUnityInput(lambda.to_string()))?;
    if phi.magnitude().is_one() {
        return Ok(false);
    }
    let f = oracle.factor(phi.magnitude())?;
    for p in f.primes() {
        match p.to_u64() {
            Some(p) if n % p == 0 => {
                if mult_order(lambda, p).map(|c| c.order == n).unwrap_or(false) {
                    return Ok(true);
                }
            }
            _ => return Ok(true),
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Factorer;

    fn q(s: &str) -> BigRat {
        s.parse().unwrap()
    }

    fn ps(v: &[OrderCertificate]) -> Vec<u64> {
        v.iter().map(|c| c.p).collect()
    }

    fn run(lam: &str, n: u64, limit: u64) -> Vec<u64> {
        ps(&primes_with_order(&q(lam), n, limit, &SearchConfig::default(), &Factorer::default()).unwrap())
    }

    #[test]
    fn worked_examples() {
        assert_eq!(run("2", 4, 100), vec![5]);
        assert_eq!(run("2", 1, 100), Vec::<u64>::new());
        // 2^6 - 1 = 3^2 * 7 with f_3(2) = 2 and f_7(2) = 3
        assert_eq!(run("2", 6, 1_000_000), Vec::<u64>::new());
    }

    #[test]
    fn routes_agree_with_scan() {
        let cfg = SearchConfig::default();
        let fz = Factorer::default();
        for lam in ["2", "3/2", "-5", "7/3", "10"] {
            let lam = q(lam);
            for n in 1..=40 {
                let scan = ps(&primes_with_order_scan(&lam, n, 20_000).unwrap());
                let divisor = ps(&primes_with_order(&lam, n, 20_000, &cfg, &fz).unwrap());
                assert_eq!(scan, divisor, "λ = {lam}, n = {n}");
                let prog = search_by(&lam, n, 20_000, Route::Progression, &fz, false).unwrap();
                assert_eq!(ps(&prog), scan, "λ = {lam}, n = {n}");
                let fact = search_by(&lam, n, 20_000, Route::Factor, &fz, false).unwrap();
                assert_eq!(ps(&fact), scan, "λ = {lam}, n = {n}");
            }
        }
    }

    #[test]
    fn large_power_of_two_order() {
        // Order 2^10 for λ = 2 without factoring 2^1024 - 1.
        let got = run("2", 1024, 3_000_000);
        assert_eq!(got, vec![2424833]);
        for p in &got {
            assert_eq!(mult_order(&q("2"), *p).unwrap().order, 1024);
        }
        assert_eq!(got, ps(&primes_with_order_scan(&q("2"), 1024, 3_000_000).unwrap()));
    }

    #[test]
    fn primitive_divisor_law() {
        let lam = q("3/2");
        for n in 1..=30u64 {
            for p in run("3/2", n, 1_000_000) {
                let a = BigInt::from(3);
                let b = BigInt::from(2);
                let divides = |m: u32| ((a.pow(m) - b.pow(m)) % BigInt::from(p)) == BigInt::from(0);
                assert!(divides(n as u32));
                assert!((1..n as u32).all(|m| !divides(m)));
            }
        }
        assert!(mult_order(&lam, 5).is_ok());
    }

    #[test]
    fn coprime_orders() {
        let cfg = SearchConfig::default();
        let fz = Factorer::default();
        let got = find_orders_coprime_to(&q("2"), 2, 2, 100, &cfg, &fz).unwrap();
        assert_eq!(got.iter().map(|c| (c.order, c.p)).collect::<Vec<_>>(), vec![(3, 7), (5, 31)]);
        let got = find_orders_coprime_to(&q("2"), 6, 1, 100, &cfg, &fz).unwrap();
        assert_eq!(got.iter().map(|c| (c.order, c.p)).collect::<Vec<_>>(), vec![(5, 31)]);
        assert!(matches!(
            find_orders_coprime_to(&q("2"), 2, 50, 10, &cfg, &fz),
            Err(Error::InsufficientWitnesses { found: 1, wanted: 50, .. })
        ));
    }

    #[test]
    fn zsigmondy_statuses() {
        let cfg = SearchConfig::default();
        let fz = Factorer::default();
        let r = zsigmondy(&q("2"), 6, 1000, &cfg, &fz).unwrap();
        assert_eq!(r.status, ZsigmondyStatus::ProvenExceptional);
        let r = zsigmondy(&q("2"), 1, 1000, &cfg, &fz).unwrap();
        assert_eq!(r.status, ZsigmondyStatus::ProvenExceptional);
        let r = zsigmondy(&q("2"), 31, 1000, &cfg, &fz).unwrap();
        assert_eq!(r.status, ZsigmondyStatus::RealizedAboveLimit);
        let r = zsigmondy(&q("2"), 12, 1000, &cfg, &fz).unwrap();
        assert_eq!(r.status, ZsigmondyStatus::Realized);
        assert_eq!(ps(&r.witnesses), vec![13]);
        assert!(matches!(
            zsigmondy(&q("-1"), 3, 1000, &cfg, &fz),
            Err(Error::RootOfUnityInput(_))
        ));
    }
}
