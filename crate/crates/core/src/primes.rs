//! Smallest-prime-factor sieve, prime counting, and factorization.
//!
//! The sieve stores the smallest prime factor of every integer up to its
//! limit, so factorizing any `n <= limit` costs one division per prime
//! power of `n`. Prime indices are 1-based throughout: `p_1 = 2`,
//! `p_2 = 3`, `p_3 = 5`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default hard cap on sieve limits. The smallest-prime-factor table
/// costs 4 bytes per integer, so this cap keeps a sieve under ~400 MiB.
pub const DEFAULT_LIMIT_CAP: u64 = 100_000_000;

/// Immutable prime table over `[2, limit]`.
///
/// Safe to share across threads once built; construction is
/// single-threaded.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    limit: u64,
    /// `spf[n]` is the smallest prime factor of `n` for `2 <= n <= limit`;
    /// entries 0 and 1 are unused.
    spf: Vec<u32>,
    primes: Vec<u64>,
}

/// One prime power of a factorization: `prime^multiplicity`, with the
/// prime's 1-based index in the sequence of all primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeFactor {
    pub index: usize,
    pub prime: u64,
    pub multiplicity: u32,
}

/// Prime factorization of an integer, factors ascending by prime index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<PrimeFactor>,
}

impl Factorization {
    /// Multiplies the factorization back together.
    pub fn value(&self) -> u128 {
        let mut v: u128 = 1;
        for f in &self.factors {
            for _ in 0..f.multiplicity {
                v *= f.prime as u128;
            }
        }
        v
    }
}

impl PrimeSieve {
    /// Builds a sieve for `[2, limit]` under [`DEFAULT_LIMIT_CAP`].
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_cap(limit, DEFAULT_LIMIT_CAP)
    }

    /// Builds a sieve with an explicit resource cap.
    pub fn build_with_cap(limit: u64, cap: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Domain(format!(
                "sieve limit must be >= 2, got {limit}"
            )));
        }
        if limit > cap {
            return Err(Error::Resource(format!(
                "sieve limit {limit} exceeds the configured cap {cap}"
            )));
        }
        if limit > u32::MAX as u64 {
            return Err(Error::Resource(format!(
                "sieve limit {limit} exceeds the 32-bit factor table range"
            )));
        }

        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes = Vec::new();
        // Linear sieve: every composite is struck exactly once, by its
        // smallest prime factor.
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let spf_i = spf[i] as usize;
            for &p in &primes {
                let p = p as usize;
                if p > spf_i {
                    break;
                }
                let ip = i * p;
                if ip > n {
                    break;
                }
                spf[ip] = p as u32;
            }
        }

        Ok(PrimeSieve { limit, spf, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// All primes `<= limit`, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The prime counting function: the number of primes `<= x`.
    ///
    /// Exact for any real `x <= limit`; queries above the limit are
    /// refused rather than truncated.
    pub fn prime_count(&self, x: f64) -> Result<u64> {
        if x.is_nan() {
            return Err(Error::Domain("prime_count of NaN".into()));
        }
        if x > self.limit as f64 {
            return Err(Error::OutOfRange(format!(
                "prime_count({x}) exceeds sieve limit {}",
                self.limit
            )));
        }
        if x < 2.0 {
            return Ok(0);
        }
        Ok(self.primes.partition_point(|&p| p as f64 <= x) as u64)
    }

    /// 1-based index of a prime (`prime_index(2) == Some(1)`), or `None`
    /// if `p` is not a prime found by this sieve.
    pub fn prime_index(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok().map(|i| i + 1)
    }

    /// The `i`-th prime, 1-based.
    pub fn prime_at(&self, index: usize) -> Option<u64> {
        if index == 0 {
            return None;
        }
        self.primes.get(index - 1).copied()
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        self.check_in_table(n, "is_prime")?;
        Ok(self.spf[n as usize] as u64 == n)
    }

    pub fn smallest_prime_factor(&self, n: u64) -> Result<u64> {
        self.check_in_table(n, "smallest_prime_factor")?;
        Ok(self.spf[n as usize] as u64)
    }

    /// Factorizes `n` into prime-index/multiplicity pairs by repeated
    /// division by the smallest prime factor.
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        self.check_in_table(n, "factorize")?;
        let mut factors = Vec::new();
        let mut m = n as usize;
        while m > 1 {
            let p = self.spf[m] as u64;
            let mut multiplicity = 0u32;
            while m as u64 % p == 0 {
                m /= p as usize;
                multiplicity += 1;
            }
            // Present in the sieve by construction.
            let index = self
                .prime_index(p)
                .expect("smallest prime factor is a sieved prime");
            factors.push(PrimeFactor {
                index,
                prime: p,
                multiplicity,
            });
        }
        Ok(Factorization { factors })
    }

    fn check_in_table(&self, n: u64, op: &str) -> Result<()> {
        if n < 2 {
            return Err(Error::Domain(format!("{op}({n}): argument must be >= 2")));
        }
        if n > self.limit {
            return Err(Error::OutOfRange(format!(
                "{op}({n}) exceeds sieve limit {}",
                self.limit
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sieve_primes() {
        let sieve = PrimeSieve::build(10).unwrap();
        assert_eq!(sieve.primes(), &[2, 3, 5, 7]);
        assert_eq!(sieve.prime_index(2), Some(1));
        assert_eq!(sieve.prime_index(7), Some(4));
        assert_eq!(sieve.prime_index(9), None);
        assert_eq!(sieve.prime_at(3), Some(5));
    }

    #[test]
    fn spf_invariants() {
        let sieve = PrimeSieve::build(1000).unwrap();
        for n in 2..=1000u64 {
            let p = sieve.smallest_prime_factor(n).unwrap();
            assert!(sieve.is_prime(p).unwrap());
            assert_eq!(n % p, 0);
            for q in 2..p {
                assert_ne!(n % q, 0, "smaller divisor {q} of {n} below spf {p}");
            }
        }
    }

    #[test]
    fn prime_count_cases() {
        let sieve = PrimeSieve::build(10_000).unwrap();
        assert_eq!(sieve.prime_count(1.5).unwrap(), 0);
        assert_eq!(sieve.prime_count(2.0).unwrap(), 1);
        assert_eq!(sieve.prime_count(10_000.0).unwrap(), 1229);
        assert!(sieve.prime_count(10_001.0).is_err());
    }

    #[test]
    fn prime_count_jumps_by_one_at_primes() {
        let sieve = PrimeSieve::build(500).unwrap();
        let mut prev = 0;
        for n in 2..=500u64 {
            let c = sieve.prime_count(n as f64).unwrap();
            let jump = c - prev;
            if sieve.is_prime(n).unwrap() {
                assert_eq!(jump, 1);
            } else {
                assert_eq!(jump, 0);
            }
            prev = c;
        }
    }

    #[test]
    fn factorize_examples() {
        let sieve = PrimeSieve::build(1000).unwrap();
        let f = sieve.factorize(50).unwrap();
        assert_eq!(
            f.factors,
            vec![
                PrimeFactor {
                    index: 1,
                    prime: 2,
                    multiplicity: 1
                },
                PrimeFactor {
                    index: 3,
                    prime: 5,
                    multiplicity: 2
                },
            ]
        );
        let f = sieve.factorize(7).unwrap();
        assert_eq!(
            f.factors,
            vec![PrimeFactor {
                index: 4,
                prime: 7,
                multiplicity: 1
            }]
        );
        let f = sieve.factorize(360).unwrap();
        let idx_mult: Vec<(usize, u32)> = f
            .factors
            .iter()
            .map(|pf| (pf.index, pf.multiplicity))
            .collect();
        assert_eq!(idx_mult, vec![(1, 3), (2, 2), (3, 1)]);
    }

    #[test]
    fn factorize_reconstructs() {
        let sieve = PrimeSieve::build(10_000).unwrap();
        for n in 2..=10_000u64 {
            let f = sieve.factorize(n).unwrap();
            assert_eq!(f.value(), n as u128);
            let mut prev_index = 0;
            for pf in &f.factors {
                assert!(pf.index > prev_index, "indices not ascending for {n}");
                prev_index = pf.index;
            }
        }
    }

    #[test]
    fn rejects_bad_limits() {
        assert!(matches!(PrimeSieve::build(1), Err(Error::Domain(_))));
        assert!(matches!(
            PrimeSieve::build_with_cap(100, 50),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn out_of_range_queries_are_errors() {
        let sieve = PrimeSieve::build(100).unwrap();
        assert!(matches!(sieve.factorize(101), Err(Error::OutOfRange(_))));
        assert!(matches!(sieve.factorize(1), Err(Error::Domain(_))));
    }
}
