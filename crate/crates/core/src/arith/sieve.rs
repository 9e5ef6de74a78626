use std::sync::OnceLock;

/// Primes up to and including `limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

const SMALL_LIMIT: u64 = 1 << 20;

/// Primes below 2^20, computed once.
pub fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(SMALL_LIMIT))
}

/// Primes up to `limit`, borrowing the shared table when it is large enough.
pub fn primes_to(limit: u64) -> std::borrow::Cow<'static, [u64]> {
    if limit <= SMALL_LIMIT {
        let all = small_primes();
        let end = all.partition_point(|&p| p <= limit);
        std::borrow::Cow::Borrowed(&all[..end])
    } else {
        std::borrow::Cow::Owned(primes_up_to(limit))
    }
}
