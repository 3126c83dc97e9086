//! Approximations of the prime counting function.
//!
//! `beta_alpha(n)` sums the prime factors of `n` weighted by their
//! multiplicities; it is additive: `beta_alpha(m*n) = beta_alpha(m) +
//! beta_alpha(n)`. Its partial sum `B_alpha(x)` grows like
//! `(pi^2/12) x^2 / ln x`, so the rescaled `beta_alpha_delta(x) =
//! 12/(pi^2 x) * B_alpha(x)` tracks `pi(x)`. The classical comparators
//! `x / ln x` and the offset logarithmic integral `Li(x) = int_2^x dt/ln t`
//! are provided alongside.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath;
use crate::primes::PrimeSieve;

/// `beta_alpha(n)`: 0 for `n = 1`, otherwise the sum of
/// `multiplicity * prime` over the factorization of `n`.
pub fn beta_alpha(sieve: &PrimeSieve, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("beta_alpha(0): argument must be >= 1".into()));
    }
    if n == 1 {
        return Ok(0);
    }
    if n > sieve.limit() {
        return Err(Error::OutOfRange(format!(
            "beta_alpha({n}) exceeds sieve limit {}",
            sieve.limit()
        )));
    }
    Ok(beta_alpha_raw(sieve, n))
}

/// Allocation-free `beta_alpha` for sieved `n >= 2`.
fn beta_alpha_raw(sieve: &PrimeSieve, n: u64) -> u64 {
    let mut m = n;
    let mut sum = 0u64;
    while m > 1 {
        let p = sieve
            .smallest_prime_factor(m)
            .expect("m stays within the sieve while dividing");
        let mut mult = 0u64;
        while m % p == 0 {
            m /= p;
            mult += 1;
        }
        sum += mult * p;
    }
    sum
}

/// `B_alpha(x)`: the exact integer sum of `beta_alpha(n)` over `n <= x`.
///
/// `x < 1` yields the empty sum 0; `x` above the sieve limit is refused.
pub fn big_b_alpha(sieve: &PrimeSieve, x: f64) -> Result<u128> {
    if x.is_nan() {
        return Err(Error::Domain("big_b_alpha of NaN".into()));
    }
    if x > sieve.limit() as f64 {
        return Err(Error::OutOfRange(format!(
            "big_b_alpha({x}) exceeds sieve limit {}",
            sieve.limit()
        )));
    }
    if x < 1.0 {
        return Ok(0);
    }
    let top = fmath::floor(x) as u64;
    let mut sum: u128 = 0;
    for n in 2..=top {
        sum += beta_alpha_raw(sieve, n) as u128;
    }
    Ok(sum)
}

/// `beta_alpha_delta(x) = 12 / (pi^2 x) * B_alpha(x)`, the rescaled
/// partial sum approximating `pi(x)`.
pub fn beta_alpha_delta(sieve: &PrimeSieve, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "beta_alpha_delta({x}): argument must be > 0"
        )));
    }
    let b = big_b_alpha(sieve, x)?;
    Ok(scale_beta(b, x))
}

fn scale_beta(b: u128, x: f64) -> f64 {
    let pi = core::f64::consts::PI;
    12.0 / (pi * pi * x) * (b as f64)
}

/// The prime number theorem comparator `x / ln x`.
pub fn pnt_approx(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!(
            "pnt_approx({x}): argument must be > 1"
        )));
    }
    Ok(x / fmath::ln(x))
}

/// The offset logarithmic integral `Li(x) = int_2^x dt / ln t`, with
/// absolute error below 1e-8. `Li(2) = 0`.
pub fn li(x: f64) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::Domain(format!("li({x}): argument must be >= 2")));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    // Margin below the documented 1e-8 bound.
    Ok(adaptive_simpson(|t| 1.0 / fmath::ln(t), 2.0, x, 1e-9))
}

/// Adaptive Simpson quadrature with Richardson correction. The integrand
/// is assumed smooth on `[a, b]`.
fn adaptive_simpson(f: impl Fn(f64) -> f64 + Copy, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: impl Fn(f64) -> f64 + Copy,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || fmath::abs(delta) <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)
            + recurse(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)
    }

    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 60)
}

/// Prefix sums of `beta_alpha` over `[1, up_to]`, built once for sweeps.
#[derive(Debug, Clone)]
pub struct BetaPrefix {
    prefix: Vec<u128>,
}

impl BetaPrefix {
    pub fn build(sieve: &PrimeSieve, up_to: u64) -> Result<Self> {
        if up_to < 1 {
            return Err(Error::Domain("BetaPrefix up_to must be >= 1".into()));
        }
        if up_to > sieve.limit() {
            return Err(Error::OutOfRange(format!(
                "BetaPrefix up_to {up_to} exceeds sieve limit {}",
                sieve.limit()
            )));
        }
        let mut prefix = Vec::with_capacity(up_to as usize + 1);
        prefix.push(0); // index 0, unused
        prefix.push(0); // beta_alpha(1) = 0
        let mut acc: u128 = 0;
        for n in 2..=up_to {
            acc += beta_alpha_raw(sieve, n) as u128;
            prefix.push(acc);
        }
        Ok(BetaPrefix { prefix })
    }

    pub fn up_to(&self) -> u64 {
        (self.prefix.len() - 1) as u64
    }

    /// `B_alpha(x)` looked up from the table; `x < 1` is the empty sum.
    pub fn big_b_alpha(&self, x: f64) -> Result<u128> {
        if x.is_nan() {
            return Err(Error::Domain("big_b_alpha of NaN".into()));
        }
        if x > self.up_to() as f64 {
            return Err(Error::OutOfRange(format!(
                "big_b_alpha({x}) exceeds table range {}",
                self.up_to()
            )));
        }
        if x < 1.0 {
            return Ok(0);
        }
        Ok(self.prefix[fmath::floor(x) as usize])
    }

    pub fn beta_alpha_delta(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!(
                "beta_alpha_delta({x}): argument must be > 0"
            )));
        }
        Ok(scale_beta(self.big_b_alpha(x)?, x))
    }
}

/// One sampled row of the comparison table. Comparators that are
/// undefined at small `x` are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxRow {
    pub x: f64,
    pub prime_count: u64,
    /// `x / ln x`, defined for `x > 1`.
    pub x_over_ln: Option<f64>,
    /// `Li(x)`, defined for `x >= 2`.
    pub li: Option<f64>,
    /// `beta_alpha_delta(x)`, defined for `x > 0`.
    pub beta_alpha_delta: Option<f64>,
}

/// The prime counting function next to its three approximations,
/// sampled at caller-chosen points.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxTable {
    pub rows: Vec<ApproxRow>,
}

/// Samples all approximations at the given ascending points.
pub fn approx_table(sieve: &PrimeSieve, xs: &[f64]) -> Result<ApproxTable> {
    if xs.is_empty() {
        return Err(Error::Domain(
            "approx_table needs at least one sample point".into(),
        ));
    }
    if xs.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain(
            "approx_table sample points must be ascending".into(),
        ));
    }
    let max = *xs.last().expect("nonempty");
    if max > sieve.limit() as f64 {
        return Err(Error::OutOfRange(format!(
            "approx_table maximum {max} exceeds sieve limit {}",
            sieve.limit()
        )));
    }
    let prefix = BetaPrefix::build(sieve, (fmath::floor(max) as u64).max(1))?;
    let mut rows = Vec::with_capacity(xs.len());
    for &x in xs {
        if x.is_nan() {
            return Err(Error::Domain("approx_table sample point is NaN".into()));
        }
        rows.push(ApproxRow {
            x,
            prime_count: sieve.prime_count(x)?,
            x_over_ln: if x > 1.0 {
                Some(x / fmath::ln(x))
            } else {
                None
            },
            li: if x >= 2.0 { Some(li(x)?) } else { None },
            beta_alpha_delta: if x > 0.0 {
                Some(prefix.beta_alpha_delta(x)?)
            } else {
                None
            },
        });
    }
    Ok(ApproxTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sieve() -> PrimeSieve {
        PrimeSieve::build(10_000).unwrap()
    }

    #[test]
    fn beta_alpha_examples() {
        let s = sieve();
        assert_eq!(beta_alpha(&s, 1).unwrap(), 0);
        assert_eq!(beta_alpha(&s, 50).unwrap(), 12); // 1*2 + 2*5
        assert_eq!(beta_alpha(&s, 7).unwrap(), 7);
        assert_eq!(beta_alpha(&s, 6).unwrap(), 5);
        assert!(beta_alpha(&s, 0).is_err());
        assert!(beta_alpha(&s, 10_001).is_err());
    }

    #[test]
    fn beta_alpha_fixes_primes() {
        let s = sieve();
        for &p in s.primes() {
            assert_eq!(beta_alpha(&s, p).unwrap(), p);
        }
    }

    #[test]
    fn big_b_alpha_examples() {
        let s = sieve();
        assert_eq!(big_b_alpha(&s, 1.0).unwrap(), 0);
        assert_eq!(big_b_alpha(&s, 0.5).unwrap(), 0);
        assert_eq!(big_b_alpha(&s, 10.0).unwrap(), 45);
        // Step function between integers.
        assert_eq!(big_b_alpha(&s, 10.9).unwrap(), 45);
        assert!(big_b_alpha(&s, 10_001.0).is_err());
    }

    #[test]
    fn beta_alpha_delta_examples() {
        let s = sieve();
        let v = beta_alpha_delta(&s, 10.0).unwrap();
        assert_relative_eq!(v, 12.0 * 45.0 / (core::f64::consts::PI.powi(2) * 10.0));
        assert_relative_eq!(v, 5.471343916686240, max_relative = 1e-12);
        assert_eq!(beta_alpha_delta(&s, 1.0).unwrap(), 0.0);
        assert!(beta_alpha_delta(&s, 0.0).is_err());
        assert!(beta_alpha_delta(&s, -3.0).is_err());
    }

    #[test]
    fn pnt_examples() {
        let e = core::f64::consts::E;
        assert_relative_eq!(pnt_approx(e).unwrap(), e, max_relative = 1e-15);
        assert_relative_eq!(
            pnt_approx(100.0).unwrap(),
            21.714724095162590,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            pnt_approx(1e6).unwrap(),
            72382.41365054197,
            max_relative = 1e-14
        );
        assert!(pnt_approx(1.0).is_err());
        assert!(pnt_approx(0.5).is_err());
    }

    #[test]
    fn li_basics() {
        assert_eq!(li(2.0).unwrap(), 0.0);
        assert!(li(1.5).is_err());
        // Reference values from high-precision evaluation of the
        // offset logarithmic integral.
        assert_relative_eq!(li(10.0).unwrap(), 5.120435724669805, epsilon = 1e-8);
        assert_relative_eq!(li(100.0).unwrap(), 29.080977803962137, epsilon = 1e-8);
        assert_relative_eq!(li(1000.0).unwrap(), 176.56449421003473, epsilon = 1e-8);
    }

    #[test]
    fn li_monotone() {
        let mut prev = li(2.0).unwrap();
        let mut x = 2.5;
        while x < 50.0 {
            let v = li(x).unwrap();
            assert!(v > prev);
            prev = v;
            x += 0.5;
        }
    }

    #[test]
    fn prefix_matches_direct() {
        let s = sieve();
        let prefix = BetaPrefix::build(&s, 500).unwrap();
        for n in 1..=500u64 {
            assert_eq!(
                prefix.big_b_alpha(n as f64).unwrap(),
                big_b_alpha(&s, n as f64).unwrap(),
                "prefix mismatch at {n}"
            );
        }
    }

    #[test]
    fn approx_table_domains() {
        let s = sieve();
        let t = approx_table(&s, &[0.0, 0.5, 1.0, 2.0, 10.0]).unwrap();
        assert_eq!(t.rows[0].x_over_ln, None);
        assert_eq!(t.rows[0].li, None);
        assert_eq!(t.rows[0].beta_alpha_delta, None);
        assert_eq!(t.rows[1].beta_alpha_delta, Some(0.0)); // empty sum below 1
        assert_eq!(t.rows[2].x_over_ln, None); // ln 1 = 0
        assert_eq!(t.rows[3].li, Some(0.0));
        assert_eq!(t.rows[4].prime_count, 4);
        // pi_x nondecreasing
        assert!(t
            .rows
            .windows(2)
            .all(|w| w[0].prime_count <= w[1].prime_count));
        assert!(approx_table(&s, &[3.0, 2.0]).is_err());
    }
}
