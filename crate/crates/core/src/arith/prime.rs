//! Primality testing.
//!
//! Below 2^64 the Miller-Rabin test with the first twelve prime bases is
//! deterministic. Up to 3.317e24 the first thirteen prime bases are
//! deterministic (Sorenson and Webster). Above that bound an input must pass
//! a Baillie-PSW test and is then handed to a Pocklington n-1 proof; if the
//! n-1 factorization does not finish within the proof effort, the BPSW
//! verdict is returned as [`Primality::ProbablePrime`].

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::factor::Factorer;
use super::modular::{mul_mod, pow_mod};

const BASES_64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const BASES_WIDE: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Upper end of the range where [`BASES_WIDE`] is a proven witness set.
const WIDE_LIMIT: &str = "3317044064679887385961981";

/// Rho iterations spent trying to factor n-1 for a Pocklington proof.
const PROOF_EFFORT: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    Composite,
    Prime,
    /// Passed BPSW but the Pocklington proof ran out of effort.
    ProbablePrime,
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &BASES_64 {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES_64 {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn is_prime(n: &BigUint) -> bool {
    primality(n) != Primality::Composite
}

pub fn primality(n: &BigUint) -> Primality {
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    if n.is_even() {
        return Primality::Composite;
    }
    for &p in &super::sieve::small_primes()[..200] {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    let wide_limit: BigUint = WIDE_LIMIT.parse().expect("constant");
    if n < &wide_limit {
        return if BASES_WIDE.iter().all(|&a| strong_probable_prime(n, a)) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    if !strong_probable_prime(n, 2) || !strong_lucas_probable_prime(n) {
        return Primality::Composite;
    }
    match pocklington(n) {
        Some(true) => Primality::Prime,
        Some(false) => Primality::Composite,
        None => Primality::ProbablePrime,
    }
}

/// Strong Fermat test to base `a` for odd `n > a`.
fn strong_probable_prime(n: &BigUint, a: u64) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = BigUint::from(a).modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let n_int = BigInt::from_biguint(Sign::Plus, n.clone());
    let mut a = a.mod_floor(&n_int).to_biguint().expect("nonnegative");
    let mut n = n.clone();
    let mut result = 1;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().expect("small");
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigUint::from(3u32) && (&n % 4u32) == BigUint::from(3u32) {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x: BigInt = if x.is_odd() { x + n } else { x };
    let half: BigInt = x >> 1usize;
    half.mod_floor(n)
}

/// Strong Lucas test with Selfridge's parameter choice.
fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    let root = n.sqrt();
    if &(&root * &root) == n {
        return false;
    }
    let mut d_param = BigInt::from(5);
    loop {
        match jacobi(&d_param, n) {
            -1 => break,
            0 => {
                if d_param.magnitude() != n {
                    return false;
                }
            }
            _ => {}
        }
        let step = BigInt::from(2);
        d_param = if d_param.sign() == Sign::Plus {
            -(d_param + step)
        } else {
            -(d_param - step)
        };
    }
    let n_int = BigInt::from_biguint(Sign::Plus, n.clone());
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d_param) / 4;
    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let d = &n_plus_1 >> s;

    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = q.mod_floor(&n_int);
    let bits = d.bits();
    for i in (0..bits - 1).rev() {
        u = (&u * &v).mod_floor(&n_int);
        v = (&v * &v - &qk * BigInt::from(2)).mod_floor(&n_int);
        qk = (&qk * &qk).mod_floor(&n_int);
        if d.bit(i) {
            let new_u = half_mod(&p * &u + &v, &n_int);
            let new_v = half_mod(&d_param * &u + &p * &v, &n_int);
            u = new_u;
            v = new_v;
            qk = (&qk * &q).mod_floor(&n_int);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * BigInt::from(2)).mod_floor(&n_int);
        qk = (&qk * &qk).mod_floor(&n_int);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Pocklington n-1 proof. `Some(true)` is a proof of primality,
/// `Some(false)` a proof of compositeness, `None` an inconclusive run.
fn pocklington(n: &BigUint) -> Option<bool> {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let partial = Factorer {
        trial_bound: 1 << 16,
        effort: PROOF_EFFORT,
    }
    .partial_factor(&n_minus_1);
    let mut f_part = BigUint::one();
    for (q, e) in &partial {
        f_part *= q.pow(*e);
    }
    if &(&f_part * &f_part) <= n {
        return None;
    }
    'primes: for (q, _) in &partial {
        let exp = &n_minus_1 / q;
        for a in 2u32..200 {
            let a = BigUint::from(a);
            if a.modpow(&n_minus_1, n) != one {
                return Some(false);
            }
            let t = a.modpow(&exp, n);
            let g = (t + n - &one).gcd(n) % n;
            if g.is_one() {
                continue 'primes;
            }
            if !g.is_zero() && g != *n {
                return Some(false);
            }
        }
        return None;
    }
    Some(true)
}
