use crate::error::{Error, Result};

/// All primes up to `limit`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }
}

/// Sieve of Eratosthenes over the odd numbers.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::EmptyTable(limit));
    }
    let n = limit as usize;
    // composite[i] describes the odd number 2i+1
    let half = n / 2 + 1;
    let mut composite = vec![false; half];
    let mut primes = vec![2u64];
    let mut i = 1;
    while 2 * i + 1 <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m / 2] = true;
                m += 2 * p;
            }
        }
        i += 1;
    }
    Ok(PrimeTable {
        limit,
        primes,
    })
}

/// Smallest prime factor of every integer up to `limit` (entries 0 and 1 are 0/1).
pub fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    if limit >= 1 {
        spf[1] = 1;
    }
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut m = i;
            while m <= limit {
                if spf[m] == 0 {
                    spf[m] = i as u32;
                }
                m += i;
            }
        }
    }
    spf
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}
