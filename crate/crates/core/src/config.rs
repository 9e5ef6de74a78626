use serde::{Deserialize, Serialize};

/// Search budgets shared by the witness-finding procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Largest prime examined when looking for witness primes.
    pub prime_budget: u64,
    /// Largest coordinate size, in bits, that an orbit may materialize.
    pub coordinate_bit_cap: u64,
    /// `group_order` counts points exhaustively below this prime and uses
    /// baby-step giant-step order finding above it.
    pub exhaustive_count_below: u64,
    /// Largest number of candidates p ≡ 1 (mod n) scanned directly by
    /// `primes_with_order` before it falls back to factoring Φ_n(a, b).
    pub progression_scan_limit: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            prime_budget: 1_000_000,
            coordinate_bit_cap: 1 << 20,
            exhaustive_count_below: 10_000,
            progression_scan_limit: 1 << 22,
        }
    }
}
