//! Spectral oracles for the polygon transformation: explicit
//! Fourier-matrix diagonalization, an independent Jacobi eigensolver,
//! and power-iteration dominance.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use primefract_core::dft::{dft, Direction};
use primefract_core::fourier::ComplexPolygon;
use primefract_core::transform::{
    apply_transform, eigenvalues_via_dft, iterate, transform_matrix, TransformParams,
};

/// Unitary discrete Fourier matrix, `F[j][k] = r^{jk} / sqrt(n)`.
fn fourier_matrix(n: usize) -> Vec<Vec<Complex64>> {
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let angle = TAU * ((j * k) % n) as f64 / n as f64;
                    Complex64::from_polar(scale, angle)
                })
                .collect()
        })
        .collect()
}

/// Dense conjugate transpose times M times F.
fn conjugated(
    f: &[Vec<Complex64>],
    entry: impl Fn(usize, usize) -> Complex64,
) -> Vec<Vec<Complex64>> {
    let n = f.len();
    // tmp = M * F
    let mut tmp = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        for k in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..n {
                acc += entry(j, l) * f[l][k];
            }
            tmp[j][k] = acc;
        }
    }
    // out = F^H * tmp
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        for k in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..n {
                acc += f[l][j].conj() * tmp[l][k];
            }
            out[j][k] = acc;
        }
    }
    out
}

fn random_params(rng: &mut ChaCha8Rng) -> TransformParams {
    // Stay clear of the open endpoints: tan(theta) explodes toward
    // pi/2 and would swamp absolute residual tolerances.
    let lambda = rng.gen_range(0.05..0.95);
    let theta = rng.gen_range(0.05..1.40);
    TransformParams::new(lambda, theta).unwrap()
}

#[test]
fn dft_diagonalizes_the_step_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for draw in 0..50 {
        let n = rng.gen_range(3..=64usize);
        let params = random_params(&mut rng);
        let m = transform_matrix(n, &params).unwrap();
        assert!(m.is_hermitian(), "draw {draw}: not Hermitian");

        let f = fourier_matrix(n);
        let g = conjugated(&f, |j, k| m.entry(j, k));
        let eig = eigenvalues_via_dft(&m).unwrap();
        let mut max_off = 0.0f64;
        for (j, row) in g.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                if j == k {
                    assert!(
                        (v - Complex64::new(eig[j], 0.0)).norm() < 1e-10,
                        "draw {draw}: diagonal {j} is {v}, eigenvalue {}",
                        eig[j]
                    );
                } else {
                    max_off = max_off.max(v.norm());
                }
            }
        }
        assert!(
            max_off <= 1e-10,
            "draw {draw}: off-diagonal residual {max_off}"
        );
    }
}

#[test]
fn matrix_reconstructs_from_spectrum() {
    // M = F diag(lambda) F^H within 1e-10 in the max norm.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let n = rng.gen_range(3..=64usize);
        let params = random_params(&mut rng);
        let m = transform_matrix(n, &params).unwrap();
        let eig = eigenvalues_via_dft(&m).unwrap();
        let f = fourier_matrix(n);
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for l in 0..n {
                    acc += f[j][l] * eig[l] * f[k][l].conj();
                }
                worst = worst.max((acc - m.entry(j, k)).norm());
            }
        }
        assert!(worst <= 1e-10, "reconstruction residual {worst} at n={n}");
    }
}

#[test]
fn substeps_match_matrix_on_random_polygons() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for draw in 0..100 {
        let n = rng.gen_range(3..=32usize);
        let params = random_params(&mut rng);
        let vertices: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let z = ComplexPolygon::new(vertices).unwrap();
        let fast = apply_transform(&z, &params).unwrap();
        let m = transform_matrix(n, &params).unwrap();
        let dense = m.mul_vec(z.vertices()).unwrap();
        let scale: f64 = dense.iter().map(|v| v.norm()).fold(1e-300, f64::max);
        for (a, b) in fast.vertices().iter().zip(dense.iter()) {
            assert!(
                (a - b).norm() <= 1e-12 * scale,
                "draw {draw}: substeps deviate from matrix"
            );
        }

        // Centroid preservation (mode-0 eigenvalue is exactly 1).
        let mean_in: Complex64 = z.vertices().iter().sum::<Complex64>() / n as f64;
        let mean_out: Complex64 = fast.vertices().iter().sum::<Complex64>() / n as f64;
        assert!((mean_in - mean_out).norm() <= 1e-12 * mean_in.norm().max(1.0));
    }
}

/// Cyclic Jacobi eigensolver for real symmetric matrices; the complex
/// Hermitian input is embedded as `[[A, -B], [B, A]]`, which carries
/// each eigenvalue twice.
fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..200 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off.sqrt() < 1e-13 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

#[test]
fn spectrum_matches_jacobi_oracle() {
    let params = TransformParams::new(1.0 / 3.0, std::f64::consts::PI / 5.0).unwrap();
    let n = 8;
    let m = transform_matrix(n, &params).unwrap();

    // Real-symmetric embedding of the Hermitian matrix.
    let mut embedded = vec![vec![0.0f64; 2 * n]; 2 * n];
    for j in 0..n {
        for k in 0..n {
            let v = m.entry(j, k);
            embedded[j][k] = v.re;
            embedded[j][k + n] = -v.im;
            embedded[j + n][k] = v.im;
            embedded[j + n][k + n] = v.re;
        }
    }
    let mut doubled = jacobi_eigenvalues(embedded);
    doubled.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut via_dft = eigenvalues_via_dft(&m).unwrap();
    via_dft.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Each eigenvalue appears twice in the embedding.
    for (i, want) in via_dft.iter().enumerate() {
        assert!(
            (doubled[2 * i] - want).abs() < 1e-9 && (doubled[2 * i + 1] - want).abs() < 1e-9,
            "eigenvalue {i}: dft {want} vs jacobi pair ({}, {})",
            doubled[2 * i],
            doubled[2 * i + 1]
        );
    }
}

#[test]
fn iteration_concentrates_on_the_dominant_mode() {
    // The worked example: n = 5, lambda = 1/3, theta = pi/5.
    let params = TransformParams::new(1.0 / 3.0, std::f64::consts::PI / 5.0).unwrap();
    let n = 5usize;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let vertices: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let z = ComplexPolygon::new(vertices).unwrap();

    let outcome = iterate(&z, &params, 10_000).unwrap();
    assert!(!outcome.tie);

    // The dominant mode must be the argmax of |eigenvalue| over modes 1..n.
    let m = transform_matrix(n, &params).unwrap();
    let eig = eigenvalues_via_dft(&m).unwrap();
    let argmax = (1..n)
        .max_by(|&a, &b| eig[a].abs().partial_cmp(&eig[b].abs()).unwrap())
        .unwrap();
    assert_eq!(outcome.dominant_mode, argmax);

    // Fourier mass concentrates: secondary / dominant coefficient ratio
    // below 1e-6 after convergence.
    let coeffs = dft(outcome.polygon.vertices(), Direction::Forward);
    let dominant = coeffs[outcome.dominant_mode].norm();
    let secondary = (1..n)
        .filter(|&k| k != outcome.dominant_mode)
        .map(|k| coeffs[k].norm())
        .fold(0.0, f64::max);
    assert!(
        secondary <= 1e-6 * dominant,
        "mode ratio {} too large",
        secondary / dominant
    );

    // Prime order: the limit polygon visits n distinct vertices.
    let verts = outcome.polygon.vertices();
    let mut min_dist = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            min_dist = min_dist.min((verts[i] - verts[j]).norm());
        }
    }
    assert!(min_dist > 0.1, "limit polygon has near-coincident vertices");
}

#[test]
fn projection_onto_dominant_fourier_polygon() {
    // After convergence the polygon is, up to phase and scale, the
    // dominant Fourier polygon: the normalized projection magnitude
    // approaches 1.
    let params = TransformParams::new(1.0 / 3.0, std::f64::consts::PI / 5.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let vertices: Vec<Complex64> = (0..7)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let z = ComplexPolygon::new(vertices).unwrap();
    let outcome = iterate(&z, &params, 5000).unwrap();

    let coeffs = dft(outcome.polygon.vertices(), Direction::Forward);
    let total: f64 = (1..7).map(|k| coeffs[k].norm_sqr()).sum();
    let dominant = coeffs[outcome.dominant_mode].norm_sqr();
    assert!((dominant / total).sqrt() >= 1.0 - 1e-6);
}
