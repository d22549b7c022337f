//! Inputs shared by the criterion targets.

use eigenlpf::eigenform::delta_series;
use num_bigint::BigInt;

/// (p, tau(p)) for a few primes of increasing size.
pub fn tau_samples() -> Vec<(u64, BigInt)> {
    let primes = [97u64, 9973, 99991];
    let table = delta_series(*primes.last().unwrap()).unwrap();
    primes
        .iter()
        .map(|&p| (p, table.get(p).unwrap().clone()))
        .collect()
}
