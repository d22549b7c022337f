use crate::error::{Error, Result};

/// Primes up to a fixed limit, with a membership bitmap for O(1) lookups.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    limit: u64,
    bits: Vec<u64>,
    primes: Vec<u64>,
}

impl PrimeSieve {
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::domain(format!("sieve limit {limit} is below 2")));
        }
        let n = limit as usize;
        let mut composite = vec![false; n + 1];
        composite[0] = true;
        composite[1] = true;
        let mut i = 2;
        while i * i <= n {
            if !composite[i] {
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
            i += 1;
        }
        let mut bits = vec![0u64; n / 64 + 1];
        let mut primes = Vec::new();
        for (k, &c) in composite.iter().enumerate() {
            if !c {
                bits[k / 64] |= 1 << (k % 64);
                primes.push(k as u64);
            }
        }
        Ok(PrimeSieve {
            limit,
            bits,
            primes,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes in `lo..=hi`, clipped to the sieve limit.
    pub fn primes_in(&self, lo: u64, hi: u64) -> &[u64] {
        let a = self.primes.partition_point(|&p| p < lo);
        let b = self.primes.partition_point(|&p| p <= hi);
        &self.primes[a..b.max(a)]
    }

    /// Membership test; `None` beyond the limit.
    pub fn contains(&self, n: u64) -> Option<bool> {
        if n > self.limit {
            return None;
        }
        let k = n as usize;
        Some(self.bits[k / 64] >> (k % 64) & 1 == 1)
    }

    /// Exact prime-counting function for `x <= limit`.
    pub fn pi(&self, x: u64) -> Result<u64> {
        if x > self.limit {
            return Err(Error::Range {
                what: "pi(x)".into(),
                needed: x,
                limit: self.limit,
            });
        }
        Ok(self.primes.partition_point(|&p| p <= x) as u64)
    }
}

pub fn sieve_primes(limit: u64) -> Result<PrimeSieve> {
    PrimeSieve::new(limit)
}
