//! Integer factorization: trial division followed by Brent's variant of
//! Pollard rho, under an explicit iteration budget.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::modular::{add_mod, gcd, mul_mod};
use super::prime::{is_prime, is_prime_u64};
use super::sieve::{primes_to, small_primes};
use crate::error::{Error, Result};

/// A complete prime factorization, factors sorted ascending by prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: BigUint,
    pub factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn recompose(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// Recomposes to `value`, primes strictly ascending, and every prime
    /// passes [`is_prime`].
    pub fn is_valid(&self) -> bool {
        self.recompose() == self.value
            && self.factors.windows(2).all(|w| w[0].0 < w[1].0)
            && self.factors.iter().all(|(p, e)| *e > 0 && is_prime(p))
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }
}

/// Anything that can produce complete factorizations. The CLI wraps
/// [`Factorer`] with a persistent cache through this trait.
pub trait FactorOracle: Sync {
    fn factor(&self, n: &BigUint) -> Result<Factorization>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factorer {
    /// Primes up to this bound are removed by trial division.
    pub trial_bound: u64,
    /// Total rho iterations allowed per factorization.
    pub effort: u64,
}

impl Default for Factorer {
    fn default() -> Self {
        Factorer {
            trial_bound: 1 << 16,
            effort: 20_000_000,
        }
    }
}

impl FactorOracle for Factorer {
    fn factor(&self, n: &BigUint) -> Result<Factorization> {
        if n.is_zero() {
            return Err(Error::ZeroInput);
        }
        let (primes, unfinished) = self.decompose(n);
        if !unfinished.is_empty() {
            return Err(Error::FactorizationTimeout {
                value: n.to_string(),
            });
        }
        Ok(Factorization {
            value: n.clone(),
            factors: primes.into_iter().collect(),
        })
    }
}

impl Factorer {
    /// Prime factors found within the budget; an unfinished composite
    /// cofactor is dropped.
    pub fn partial_factor(&self, n: &BigUint) -> Vec<(BigUint, u32)> {
        self.decompose(n).0.into_iter().collect()
    }

    fn decompose(&self, n: &BigUint) -> (BTreeMap<BigUint, u32>, Vec<BigUint>) {
        let mut primes = BTreeMap::new();
        let mut unfinished = Vec::new();
        let mut rest = n.clone();
        for &p in primes_to(self.trial_bound).iter() {
            if rest.is_one() {
                break;
            }
            let p_big = BigUint::from(p);
            if &p_big * &p_big > rest {
                break;
            }
            let mut e = 0;
            loop {
                let (q, r) = rest.div_rem(&p_big);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                primes.insert(p_big, e);
            }
        }
        let mut budget = self.effort;
        let mut stack = vec![(rest, 1u32)];
        while let Some((m, mult)) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_prime(&m) {
                *primes.entry(m).or_insert(0) += mult;
                continue;
            }
            if let Some((root, k)) = perfect_power(&m) {
                stack.push((root, mult * k));
                continue;
            }
            match find_factor(&m, &mut budget) {
                Some(f) => {
                    let other = &m / &f;
                    stack.push((f, mult));
                    stack.push((other, mult));
                }
                None => unfinished.push(m),
            }
        }
        (primes, unfinished)
    }
}

/// Factorization of a word-sized integer; always completes.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factor_u64(0)");
    let mut out: BTreeMap<u64, u32> = BTreeMap::new();
    let mut rest = n;
    for &p in small_primes().iter().take(1000) {
        if p * p > rest {
            break;
        }
        while rest % p == 0 {
            rest /= p;
            *out.entry(p).or_insert(0) += 1;
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let mut budget = u64::MAX;
        let f = (1..)
            .find_map(|c| brent_u64(m, c, &mut budget))
            .expect("rho terminates on word-sized composites");
        stack.push(f);
        stack.push(m / f);
    }
    out.into_iter().collect()
}

fn perfect_power(m: &BigUint) -> Option<(BigUint, u32)> {
    let bits = m.bits() as u32;
    for k in 2..=bits {
        if !is_prime_u64(k as u64) {
            continue;
        }
        let r = m.nth_root(k);
        if &r.pow(k) == m {
            return Some((r, k));
        }
    }
    None
}

/// A nontrivial factor of the composite `m`, or `None` once the budget is
/// spent.
fn find_factor(m: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if m.is_even() {
        return Some(BigUint::from(2u32));
    }
    if let Some(small) = m.to_u64() {
        for c in 1.. {
            if *budget == 0 {
                return None;
            }
            if let Some(f) = brent_u64(small, c, budget) {
                return Some(BigUint::from(f));
            }
        }
        unreachable!()
    }
    for c in 1u32.. {
        if *budget == 0 {
            return None;
        }
        if let Some(f) = brent_big(m, c, budget) {
            return Some(f);
        }
    }
    unreachable!()
}

const BATCH: u64 = 128;

fn brent_u64(n: u64, c: u64, budget: &mut u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let f = |x: u64| add_mod(mul_mod(x, x, n), c % n, n);
    let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
    let mut g = 1u64;
    let mut q = 1u64;
    let mut r = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = BATCH.min(r - k);
            for _ in 0..steps {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += steps;
            *budget = budget.saturating_sub(steps);
            if *budget == 0 && g == 1 {
                return None;
            }
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn brent_big(n: &BigUint, c: u32, budget: &mut u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut y = BigUint::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut g = BigUint::one();
    let mut q = BigUint::one();
    let mut r = 1u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = BATCH.min(r - k);
            for _ in 0..steps {
                y = f(&y);
                q = (q * diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += steps;
            *budget = budget.saturating_sub(steps);
            if *budget == 0 && g.is_one() {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}
