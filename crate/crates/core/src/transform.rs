//! The two-substep similar-triangle polygon transformation and its
//! circulant spectral structure.
//!
//! One transformation step maps a closed polygon `z` to `z''` through
//! two substeps parameterized by a side subdivision ratio `lambda` and a
//! base angle `theta`, with `w = lambda + i (1 - lambda) tan(theta)`:
//!
//! ```text
//! z'_{k+1} = w z_k + (1 - w) z_{k+1}
//! z''_k    = (1 - conj(w)) z'_k + conj(w) z'_{k+1}
//! ```
//!
//! The combined step is multiplication by a circulant Hermitian matrix
//! `M`, diagonalized by the unitary discrete Fourier matrix; the columns
//! of that matrix (the Fourier polygons) are its eigenvectors. Iterating
//! the step drives any polygon toward the Fourier polygon whose mode
//! carries the dominant eigenvalue.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dft::{dft, Direction};
use crate::error::{Error, Result};
use crate::fmath;
use crate::fourier::ComplexPolygon;

/// Dense-matrix operations are refused above this order; the substep
/// form of the transformation handles any order in O(n).
pub const DENSE_MATRIX_CAP: usize = 4096;

/// Subdivision ratio and base angle of the similar triangles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformParams {
    lambda: f64,
    theta: f64,
    w: Complex64,
}

impl TransformParams {
    /// Requires `lambda in (0, 1)` and `theta in (0, pi/2)`.
    pub fn new(lambda: f64, theta: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::Domain(format!(
                "lambda must lie in (0, 1), got {lambda}"
            )));
        }
        if !(theta > 0.0 && theta < core::f64::consts::FRAC_PI_2) {
            return Err(Error::Domain(format!(
                "theta must lie in (0, pi/2), got {theta}"
            )));
        }
        let w = Complex64::new(lambda, (1.0 - lambda) * fmath::tan(theta));
        Ok(TransformParams { lambda, theta, w })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn w(&self) -> Complex64 {
        self.w
    }
}

/// A circulant matrix held as its first row; entry `(j, k)` is
/// `first_row[(k - j) mod n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantMatrix {
    n: usize,
    first_row: Vec<Complex64>,
}

impl CirculantMatrix {
    /// Builds a circulant matrix from its first row, rejecting rows
    /// whose cyclic mirror is not the conjugate (the matrix would not
    /// be Hermitian).
    pub fn from_first_row(first_row: Vec<Complex64>) -> Result<Self> {
        if first_row.len() < 3 {
            return Err(Error::Domain(format!(
                "circulant matrix needs order >= 3, got {}",
                first_row.len()
            )));
        }
        let mat = CirculantMatrix {
            n: first_row.len(),
            first_row,
        };
        if !mat.is_hermitian() {
            return Err(Error::Domain(
                "first row violates the Hermitian mirror condition".into(),
            ));
        }
        Ok(mat)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn first_row(&self) -> &[Complex64] {
        &self.first_row
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        let n = self.n;
        self.first_row[(k % n + n - j % n) % n]
    }

    /// Dense matrix-vector product, O(n^2).
    pub fn mul_vec(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        if z.len() != self.n {
            return Err(Error::Domain(format!(
                "vector length {} does not match matrix order {}",
                z.len(),
                self.n
            )));
        }
        Ok((0..self.n)
            .map(|j| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &v) in z.iter().enumerate() {
                    acc += self.entry(j, k) * v;
                }
                acc
            })
            .collect())
    }

    /// Hermitian iff `first_row[(n - u) mod n] == conj(first_row[u])`.
    pub fn is_hermitian(&self) -> bool {
        let scale: f64 = self.first_row.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let tol = 1e-12 * scale.max(1.0);
        (0..self.n).all(|u| {
            let mirrored = self.first_row[(self.n - u) % self.n];
            (mirrored - self.first_row[u].conj()).norm() <= tol
        })
    }
}

/// One transformation step applied through the two substeps; never
/// materializes the matrix. Indices are cyclic.
pub fn apply_transform(z: &ComplexPolygon, params: &TransformParams) -> Result<ComplexPolygon> {
    let n = z.order();
    if n < 3 {
        return Err(Error::Domain(format!(
            "transformation needs order >= 3, got {n}"
        )));
    }
    let w = params.w();
    let v = z.vertices();
    // First substep: z'_j = w z_{j-1} + (1 - w) z_j.
    let one_minus_w = Complex64::new(1.0, 0.0) - w;
    let zp: Vec<Complex64> = (0..n)
        .map(|j| w * v[(j + n - 1) % n] + one_minus_w * v[j])
        .collect();
    // Second substep: z''_k = (1 - conj w) z'_k + conj w z'_{k+1}.
    let wc = w.conj();
    let one_minus_wc = Complex64::new(1.0, 0.0) - wc;
    let zpp: Vec<Complex64> = (0..n)
        .map(|k| one_minus_wc * zp[k] + wc * zp[(k + 1) % n])
        .collect();
    ComplexPolygon::new(zpp)
}

/// The circulant Hermitian matrix of one transformation step:
/// diagonal `|1-w|^2 + |w|^2`, cyclic sub-diagonal `w (1 - conj w)`,
/// cyclic super-diagonal `conj(w) (1 - w)`, zero elsewhere.
pub fn transform_matrix(n: usize, params: &TransformParams) -> Result<CirculantMatrix> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "transform matrix needs order >= 3, got {n}"
        )));
    }
    if n > DENSE_MATRIX_CAP {
        return Err(Error::Resource(format!(
            "transform matrix order {n} exceeds the dense cap {DENSE_MATRIX_CAP}"
        )));
    }
    Ok(CirculantMatrix {
        n,
        first_row: step_first_row(n, params),
    })
}

fn step_first_row(n: usize, params: &TransformParams) -> Vec<Complex64> {
    let w = params.w();
    let one_minus_w = Complex64::new(1.0, 0.0) - w;
    let mut row = vec![Complex64::new(0.0, 0.0); n];
    row[0] = Complex64::new(one_minus_w.norm_sqr() + w.norm_sqr(), 0.0);
    row[1] = w.conj() * one_minus_w; // entry (0, 1): k = j + 1
    row[n - 1] = w * one_minus_w.conj(); // entry (0, n-1): j = k + 1 cyclically
    row
}

/// Eigenvalues of a circulant Hermitian matrix through its first-row
/// DFT: `lambda_m = sum_u row[u] r^(u m)`. The Hermitian structure makes
/// the spectrum real; a non-Hermitian input is refused.
pub fn eigenvalues_via_dft(mat: &CirculantMatrix) -> Result<Vec<f64>> {
    if !mat.is_hermitian() {
        return Err(Error::Domain(
            "eigenvalues_via_dft requires a Hermitian matrix".into(),
        ));
    }
    let spectrum = dft(mat.first_row(), Direction::Inverse);
    let scale: f64 = spectrum.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let residue: f64 = spectrum
        .iter()
        .map(|v| fmath::abs(v.im))
        .fold(0.0, f64::max);
    if residue > 1e-12 * scale {
        return Err(Error::Domain(format!(
            "spectrum has imaginary residue {residue} beyond tolerance"
        )));
    }
    Ok(spectrum.iter().map(|v| v.re).collect())
}

/// Eigenvalues of one transformation step for any order, without the
/// dense-cap restriction.
fn step_eigenvalues(n: usize, params: &TransformParams) -> Vec<f64> {
    dft(&step_first_row(n, params), Direction::Inverse)
        .iter()
        .map(|v| v.re)
        .collect()
}

/// Result of iterating the transformation.
#[derive(Debug, Clone)]
pub struct IterationOutcome {
    /// The iterated polygon, centroid-free and rescaled to unit maximum
    /// modulus after every step.
    pub polygon: ComplexPolygon,
    /// Index of the eigenvalue of largest modulus among the modes
    /// present in the input's spectrum (mode 0 excluded).
    pub dominant_mode: usize,
    /// Two present modes tie for the dominant eigenvalue modulus; the
    /// smallest index was reported.
    pub tie: bool,
}

/// Applies the transformation `steps` times, removing the centroid and
/// rescaling to unit maximum modulus after each step so eigenvalues
/// above 1 cannot overflow.
pub fn iterate(
    z: &ComplexPolygon,
    params: &TransformParams,
    steps: usize,
) -> Result<IterationOutcome> {
    let n = z.order();
    if n < 3 {
        return Err(Error::Domain(format!(
            "iteration needs order >= 3, got {n}"
        )));
    }

    // Modes present in the input spectrum decide which eigenvalues can
    // ever dominate; iteration only rescales them.
    let coeffs = dft(z.vertices(), Direction::Forward);
    let coeff_scale: f64 = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let present: Vec<usize> = (1..n)
        .filter(|&k| coeffs[k].norm() > 1e-12 * coeff_scale)
        .collect();
    if present.is_empty() {
        return Err(Error::Degenerate(
            "polygon carries only the centroid mode; iteration cannot shape it".into(),
        ));
    }

    let eigenvalues = step_eigenvalues(n, params);
    let mut dominant_mode = present[0];
    let mut best = fmath::abs(eigenvalues[dominant_mode]);
    let mut tie = false;
    for &k in &present[1..] {
        let mag = fmath::abs(eigenvalues[k]);
        if mag > best * (1.0 + 1e-12) {
            best = mag;
            dominant_mode = k;
            tie = false;
        } else if fmath::abs(mag - best) <= 1e-12 * best.max(1.0) {
            tie = true;
        }
    }

    let mut current = z.clone();
    for _ in 0..steps {
        current = renormalized_step(&current, params)?;
    }
    Ok(IterationOutcome {
        polygon: current,
        dominant_mode,
        tie,
    })
}

/// One transformation step followed by the renormalization [`iterate`]
/// applies: centroid removed, maximum modulus scaled to 1. Exposed so
/// callers can record intermediate states.
pub fn renormalized_step(z: &ComplexPolygon, params: &TransformParams) -> Result<ComplexPolygon> {
    renormalize(apply_transform(z, params)?)
}

fn renormalize(polygon: ComplexPolygon) -> Result<ComplexPolygon> {
    let n = polygon.order() as f64;
    let mut mean = Complex64::new(0.0, 0.0);
    for v in polygon.vertices() {
        mean += v;
    }
    mean /= n;
    let mut vertices: Vec<Complex64> = polygon.vertices().iter().map(|v| v - mean).collect();
    let max_mod: f64 = vertices.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if max_mod == 0.0 {
        return Err(Error::Degenerate(
            "iterated polygon collapsed to its centroid".into(),
        ));
    }
    for v in &mut vertices {
        *v /= max_mod;
    }
    ComplexPolygon::new(vertices)
}
