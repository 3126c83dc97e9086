//! Fourier polygons and the prime fractal constructions built on them.
//!
//! The `k`-th Fourier polygon of order `n` has vertices `r^(j*k)` with
//! `r = exp(2 pi i / n)`. Replacing each prime `p_k` in the weighted
//! prime-sum form of `B_alpha(n)` by the Fourier polygon of index
//! `p_k - 1` yields the prime fractal polygon; replacing it by the
//! continuous basis function `exp(i (p_k - 1) t)` yields the prime
//! fractal curve on `t in (-pi, pi]`.
//!
//! Both constructions have a fast path (one sparse inverse-style DFT)
//! and a direct compensated-summation path that serves as its oracle.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dft::{dft, Direction};
use crate::error::{Error, Result};
use crate::weights::WeightVector;

/// An ordered sequence of complex vertices, always closed cyclically
/// (the last vertex connects back to the first).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolygon {
    vertices: Vec<Complex64>,
}

impl ComplexPolygon {
    /// Wraps vertices after checking they are nonempty and finite.
    pub fn new(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Domain("polygon needs at least one vertex".into()));
        }
        if vertices
            .iter()
            .any(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::Domain("polygon vertices must be finite".into()));
        }
        Ok(ComplexPolygon { vertices })
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_closed(&self) -> bool {
        true
    }
}

/// Equispaced parameters with the curve values at them.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSamples {
    n: u64,
    params: Vec<f64>,
    values: Vec<Complex64>,
}

impl CurveSamples {
    /// Assembles samples from separately computed parts.
    pub fn from_parts(n: u64, params: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if params.len() != values.len() {
            return Err(Error::Domain(format!(
                "parameter count {} does not match value count {}",
                params.len(),
                values.len()
            )));
        }
        Ok(CurveSamples { n, params, values })
    }

    /// Order of the generating weight vector.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    /// Parameters `t_j = -pi + 2 pi (j+1)/m`: equispaced on `(-pi, pi]`,
    /// the last one exactly `pi`.
    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// The sample grid shared by both curve evaluation paths.
pub fn curve_params(m: usize) -> Vec<f64> {
    let mf = m as f64;
    (0..m)
        .map(|j| -core::f64::consts::PI + core::f64::consts::TAU * (j as f64 + 1.0) / mf)
        .collect()
}

/// The `k`-th Fourier polygon of order `n`: vertices `r^(j*k)`, all on
/// the unit circle.
pub fn fourier_polygon(n: usize, k: usize) -> Result<ComplexPolygon> {
    if n < 1 {
        return Err(Error::Domain("fourier_polygon order must be >= 1".into()));
    }
    if k >= n {
        return Err(Error::Domain(format!(
            "fourier_polygon index {k} out of range for order {n}"
        )));
    }
    let step = core::f64::consts::TAU / n as f64;
    let vertices = (0..n)
        .map(|j| {
            // Reduce j*k mod n before taking the angle so large orders
            // lose no precision.
            let e = (j as u64 * k as u64) % n as u64;
            Complex64::from_polar(1.0, step * e as f64)
        })
        .collect();
    Ok(ComplexPolygon { vertices })
}

/// Compensated (Kahan) accumulator for complex sums.
#[derive(Default, Clone, Copy)]
struct KahanSum {
    sum_re: f64,
    sum_im: f64,
    c_re: f64,
    c_im: f64,
}

impl KahanSum {
    fn add(&mut self, v: Complex64) {
        let y = v.re - self.c_re;
        let t = self.sum_re + y;
        self.c_re = (t - self.sum_re) - y;
        self.sum_re = t;

        let y = v.im - self.c_im;
        let t = self.sum_im + y;
        self.c_im = (t - self.sum_im) - y;
        self.sum_im = t;
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.sum_re, self.sum_im)
    }
}

/// The prime fractal polygon: `sum_k w_k(n) * f_{p_k - 1}` as an
/// `n`-vertex polygon, evaluated by one sparse length-`n` transform.
pub fn prime_fractal_polygon(weights: &WeightVector) -> Result<ComplexPolygon> {
    let n = check_polygon_order(weights)?;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    for e in &weights.entries {
        coeffs[(e.prime - 1) as usize] += Complex64::new(e.weight as f64, 0.0);
    }
    ComplexPolygon::new(dft(&coeffs, Direction::Inverse))
}

/// Direct vertex-by-vertex summation of the prime fractal polygon; the
/// reference path for [`prime_fractal_polygon`].
pub fn prime_fractal_polygon_direct(weights: &WeightVector) -> Result<ComplexPolygon> {
    let n = check_polygon_order(weights)?;
    let step = core::f64::consts::TAU / n as f64;
    let vertices = (0..n)
        .map(|j| {
            let mut acc = KahanSum::default();
            for e in &weights.entries {
                let exponent = (j as u64 * (e.prime - 1)) % n as u64;
                acc.add(Complex64::from_polar(
                    e.weight as f64,
                    step * exponent as f64,
                ));
            }
            acc.value()
        })
        .collect();
    ComplexPolygon::new(vertices)
}

fn check_polygon_order(weights: &WeightVector) -> Result<usize> {
    if weights.n < 2 {
        return Err(Error::Domain("fractal polygon order must be >= 2".into()));
    }
    Ok(weights.n as usize)
}

/// The prime fractal curve sampled at `m` equispaced parameters via one
/// sparse length-`m` transform.
///
/// The fast path needs every frequency `p_k - 1` to be representable,
/// i.e. `m > p_max - 1`; smaller `m` is an aliasing error (use the
/// direct path to evaluate anyway).
pub fn prime_fractal_curve(weights: &WeightVector, m: usize) -> Result<CurveSamples> {
    if m < 1 {
        return Err(Error::Domain("curve sample count must be >= 1".into()));
    }
    let max_freq = weights.max_frequency();
    if (m as u64) <= max_freq {
        return Err(Error::Aliasing(format!(
            "fast path needs more than {max_freq} samples for order {}, got {m}",
            weights.n
        )));
    }
    // values[j] = sum_f c_f exp(i f t_j) with t_j = -pi + 2 pi (j+1)/m
    // becomes an inverse DFT once the grid offset is folded into each
    // coefficient: exp(i f t_j) = (-1)^f exp(2 pi i f/m) exp(2 pi i f j/m).
    let mf = m as f64;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
    for e in &weights.entries {
        let f = e.prime - 1;
        let parity = if f % 2 == 0 { 1.0 } else { -1.0 };
        let phase = Complex64::from_polar(
            e.weight as f64 * parity,
            core::f64::consts::TAU * f as f64 / mf,
        );
        coeffs[f as usize] += phase;
    }
    let values = dft(&coeffs, Direction::Inverse);
    Ok(CurveSamples {
        n: weights.n,
        params: curve_params(m),
        values,
    })
}

/// The prime fractal curve evaluated sample-by-sample with compensated
/// summation; the reference path for [`prime_fractal_curve`].
pub fn prime_fractal_curve_direct(weights: &WeightVector, m: usize) -> Result<CurveSamples> {
    if m < 1 {
        return Err(Error::Domain("curve sample count must be >= 1".into()));
    }
    let params = curve_params(m);
    let values = params
        .iter()
        .map(|&t| direct_curve_eval(weights, t))
        .collect();
    Ok(CurveSamples {
        n: weights.n,
        params,
        values,
    })
}

/// Naive evaluation of `sum_k w_k exp(i (p_k - 1) t)` with compensated
/// accumulation.
pub fn direct_curve_eval(weights: &WeightVector, t: f64) -> Complex64 {
    let mut acc = KahanSum::default();
    for e in &weights.entries {
        let angle = (e.prime - 1) as f64 * t;
        acc.add(Complex64::from_polar(e.weight as f64, angle));
    }
    acc.value()
}
