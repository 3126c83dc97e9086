//! Discrete Fourier transforms of arbitrary length.
//!
//! Mixed-radix Cooley-Tukey recursion over the smallest prime factor,
//! with small prime sizes evaluated directly and large prime sizes
//! handled by Bluestein's chirp-z reduction to a power-of-two length.
//! Both directions are unscaled:
//!
//! * `Forward`:  `X_j = sum_k x_k exp(-2 pi i j k / n)`
//! * `Inverse`:  `X_j = sum_k x_k exp(+2 pi i j k / n)`

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest size evaluated as a direct strided sum inside the recursion.
const SMALL_DIRECT: usize = 8;

/// Prime sizes above this go through Bluestein instead of the quadratic
/// direct sum.
const BLUESTEIN_MIN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => -1.0,
            Direction::Inverse => 1.0,
        }
    }
}

/// Transforms `input` in the given direction. Any length is accepted;
/// composite lengths recurse over their prime factors.
pub fn dft(input: &[Complex64], dir: Direction) -> Vec<Complex64> {
    let n = input.len();
    if n <= 1 {
        return input.to_vec();
    }
    let table = root_table(n, dir);
    let mut out = vec![ZERO; n];
    let mut scratch = vec![ZERO; n];
    recurse(input, 0, 1, n, 1, &table, dir, &mut out, &mut scratch);
    out
}

/// Scaled inverse: `dft(.., Inverse) / n`, so that
/// `idft_scaled(dft(x, Forward)) == x`.
pub fn idft_scaled(input: &[Complex64]) -> Vec<Complex64> {
    let n = input.len().max(1) as f64;
    let mut out = dft(input, Direction::Inverse);
    for v in &mut out {
        *v /= n;
    }
    out
}

/// `table[t] = exp(sign * 2 pi i t / n)` for `t` in `0..n`.
fn root_table(n: usize, dir: Direction) -> Vec<Complex64> {
    let sign = dir.sign();
    let step = core::f64::consts::TAU / n as f64;
    (0..n)
        .map(|t| Complex64::from_polar(1.0, sign * step * t as f64))
        .collect()
}

fn smallest_prime_factor(n: usize) -> usize {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// Transform of the strided subsequence `src[offset + k*stride]`,
/// `k in 0..n`, written into `out`. `root_stride * n` equals the
/// top-level length, so `table[t * root_stride]` is the order-`n` root
/// to the `t`-th power.
#[allow(clippy::too_many_arguments)]
fn recurse(
    src: &[Complex64],
    offset: usize,
    stride: usize,
    n: usize,
    root_stride: usize,
    table: &[Complex64],
    dir: Direction,
    out: &mut [Complex64],
    scratch: &mut [Complex64],
) {
    debug_assert_eq!(out.len(), n);
    debug_assert_eq!(scratch.len(), n);
    if n == 1 {
        out[0] = src[offset];
        return;
    }
    let r = smallest_prime_factor(n);
    if r == n {
        // Prime length: either a direct quadratic sum or Bluestein.
        if n <= BLUESTEIN_MIN {
            direct_strided(src, offset, stride, n, root_stride, table, out);
        } else {
            let gathered: Vec<Complex64> = (0..n).map(|k| src[offset + k * stride]).collect();
            let transformed = bluestein(&gathered, dir);
            out.copy_from_slice(&transformed);
        }
        return;
    }
    if n <= SMALL_DIRECT {
        direct_strided(src, offset, stride, n, root_stride, table, out);
        return;
    }

    let q = n / r;
    // Children write into chunks of `scratch`, each borrowing the
    // matching chunk of `out` as its own scratch space.
    for (a, (child_out, child_scratch)) in scratch
        .chunks_exact_mut(q)
        .zip(out.chunks_exact_mut(q))
        .enumerate()
    {
        recurse(
            src,
            offset + a * stride,
            stride * r,
            q,
            root_stride * r,
            table,
            dir,
            child_out,
            child_scratch,
        );
    }

    // Combine: out[c + q*d] = sum_a w_n^{ac} * sub_a[c] * w_r^{ad}.
    let wr_stride = root_stride * q; // table index stride for order-r roots
    let mut twiddled = vec![ZERO; r];
    for c in 0..q {
        for (a, tw) in twiddled.iter_mut().enumerate() {
            *tw = table[a * c * root_stride] * scratch[a * q + c];
        }
        if r == 2 {
            out[c] = twiddled[0] + twiddled[1];
            out[c + q] = twiddled[0] - twiddled[1];
        } else {
            for d in 0..r {
                let mut acc = twiddled[0];
                for (a, &tw) in twiddled.iter().enumerate().skip(1) {
                    acc += tw * table[(a * d % r) * wr_stride];
                }
                out[c + q * d] = acc;
            }
        }
    }
}

/// Quadratic transform of a short strided subsequence.
fn direct_strided(
    src: &[Complex64],
    offset: usize,
    stride: usize,
    n: usize,
    root_stride: usize,
    table: &[Complex64],
    out: &mut [Complex64],
) {
    let mut gathered = [ZERO; BLUESTEIN_MIN];
    for (k, g) in gathered[..n].iter_mut().enumerate() {
        *g = src[offset + k * stride];
    }
    for (d, slot) in out.iter_mut().enumerate() {
        let mut acc = gathered[0];
        for (k, &g) in gathered[..n].iter().enumerate().skip(1) {
            acc += g * table[(k * d % n) * root_stride];
        }
        *slot = acc;
    }
}

/// Bluestein's algorithm: an arbitrary-length DFT as a cyclic
/// convolution of chirped sequences, evaluated at a power-of-two length.
fn bluestein(x: &[Complex64], dir: Direction) -> Vec<Complex64> {
    let n = x.len();
    let m = (2 * n - 1).next_power_of_two();
    let sign = dir.sign();

    // chirp[k] = exp(sign * pi i k^2 / n); k^2 is reduced mod 2n so the
    // angle never grows with k.
    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let k2 = (k as u128 * k as u128 % (2 * n as u128)) as f64;
            Complex64::from_polar(1.0, sign * core::f64::consts::PI * k2 / n as f64)
        })
        .collect();

    let mut a = vec![ZERO; m];
    for k in 0..n {
        a[k] = x[k] * chirp[k];
    }
    let mut b = vec![ZERO; m];
    b[0] = chirp[0].conj();
    for k in 1..n {
        let c = chirp[k].conj();
        b[k] = c;
        b[m - k] = c;
    }

    let table = root_table(m, Direction::Forward);
    let mut fa = vec![ZERO; m];
    let mut scratch = vec![ZERO; m];
    recurse(
        &a,
        0,
        1,
        m,
        1,
        &table,
        Direction::Forward,
        &mut fa,
        &mut scratch,
    );
    let mut fb = vec![ZERO; m];
    recurse(
        &b,
        0,
        1,
        m,
        1,
        &table,
        Direction::Forward,
        &mut fb,
        &mut scratch,
    );
    for (va, &vb) in fa.iter_mut().zip(fb.iter()) {
        *va *= vb;
    }
    let itable = root_table(m, Direction::Inverse);
    let mut conv = vec![ZERO; m];
    recurse(
        &fa,
        0,
        1,
        m,
        1,
        &itable,
        Direction::Inverse,
        &mut conv,
        &mut scratch,
    );

    let scale = 1.0 / m as f64;
    (0..n).map(|j| conv[j] * scale * chirp[j]).collect()
}

/// Convenience check used by callers that must refuse non-representable
/// frequencies: the largest index a length-`n` transform can carry.
pub fn max_representable_frequency(n: usize) -> usize {
    n.saturating_sub(1)
}
