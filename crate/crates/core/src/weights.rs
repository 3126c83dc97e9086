//! Weights of the prime-sum representation of `B_alpha(n)`.
//!
//! For a prime `p <= n`, the weight is the floor sum
//! `w(p, n) = sum_j floor(n / p^j)` over all prime powers `p^j <= n`,
//! so that `B_alpha(n) = sum_k w(p_k, n) * p_k` exactly. These weights
//! are the shared coefficients of the fractal polygon and curve.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::primes::PrimeSieve;

/// One coefficient of the weighted prime sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightEntry {
    /// 1-based prime index.
    pub index: usize,
    pub prime: u64,
    pub weight: u64,
}

/// All weights `w_k(n)` for primes `p_k <= n`, ascending in `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub n: u64,
    pub entries: Vec<WeightEntry>,
}

impl WeightVector {
    /// `sum_k w_k * p_k`, which equals `B_alpha(n)` exactly.
    pub fn weighted_prime_sum(&self) -> u128 {
        self.entries
            .iter()
            .map(|e| e.weight as u128 * e.prime as u128)
            .sum()
    }

    /// `sum_k w_k`, the value of both fractal constructions at argument 0.
    pub fn total_weight(&self) -> u128 {
        self.entries.iter().map(|e| e.weight as u128).sum()
    }

    /// Largest basis frequency used by the fractal constructions:
    /// `p_max - 1`.
    pub fn max_frequency(&self) -> u64 {
        self.entries.last().map(|e| e.prime - 1).unwrap_or(0)
    }
}

/// The weight of prime `p` in `B_alpha(n)`.
///
/// Computed purely in integer arithmetic: the prime-power loop
/// multiplies `p` until it would exceed `n`, so exact powers `p^j = n`
/// are never misrounded the way a floating-point `log` could.
pub fn weight(p: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain(format!("weight(_, {n}): n must be >= 2")));
    }
    if p > n {
        return Err(Error::Domain(format!("weight({p}, {n}): prime exceeds n")));
    }
    if !is_prime_trial(p) {
        return Err(Error::Domain(format!("weight({p}, _): not a prime")));
    }
    Ok(weight_unchecked(p, n))
}

/// Floor sum for a known prime `p <= n`.
pub(crate) fn weight_unchecked(p: u64, n: u64) -> u64 {
    debug_assert!(p >= 2 && p <= n);
    let mut total = 0u64;
    let mut q = p;
    loop {
        total += n / q;
        // q * p would overflow the sum's domain check, so compare
        // against n / p instead.
        if q > n / p {
            break;
        }
        q *= p;
    }
    total
}

fn is_prime_trial(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Collects the weights of all primes `<= n`.
pub fn weight_vector(sieve: &PrimeSieve, n: u64) -> Result<WeightVector> {
    if n < 2 {
        return Err(Error::Domain(format!("weight_vector({n}): n must be >= 2")));
    }
    if n > sieve.limit() {
        return Err(Error::OutOfRange(format!(
            "weight_vector({n}) exceeds sieve limit {}",
            sieve.limit()
        )));
    }
    let mut entries = Vec::new();
    for (i, &p) in sieve.primes().iter().enumerate() {
        if p > n {
            break;
        }
        entries.push(WeightEntry {
            index: i + 1,
            prime: p,
            weight: weight_unchecked(p, n),
        });
    }
    Ok(WeightVector { n, entries })
}

/// `sum_k w_k(n) * p_k` streamed over the primes without materializing
/// the weight vector; the weight-path form of `B_alpha(n)`.
pub fn weighted_prime_sum(sieve: &PrimeSieve, n: u64) -> Result<u128> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "weighted_prime_sum({n}): n must be >= 2"
        )));
    }
    if n > sieve.limit() {
        return Err(Error::OutOfRange(format!(
            "weighted_prime_sum({n}) exceeds sieve limit {}",
            sieve.limit()
        )));
    }
    let mut sum: u128 = 0;
    for &p in sieve.primes() {
        if p > n {
            break;
        }
        sum += weight_unchecked(p, n) as u128 * p as u128;
    }
    Ok(sum)
}
