//! Rayon drivers over the core's pure per-level and per-sample
//! functions. Partitioning never changes results: level counts are
//! exact integers and per-sample evaluations are independent.

use anyhow::Result;
use rayon::prelude::*;

use primefract_core::boxdim::{
    bounding_square, count_occupied, dimension_estimates, segment_level_counts, CountingMode,
    DimensionEstimates,
};
use primefract_core::fourier::{curve_params, direct_curve_eval, CurveSamples};
use primefract_core::weights::WeightVector;
use primefract_core::Complex64;

/// Dimension estimates with point-mode levels counted in parallel.
/// Segment mode stays on the core's single-pass traversal.
pub fn dimension_estimates_parallel(
    points: &[Complex64],
    max_level: u32,
    mode: CountingMode,
) -> Result<DimensionEstimates> {
    if max_level > primefract_core::boxdim::MAX_LEVEL {
        anyhow::bail!(
            "subdivision level {max_level} exceeds the maximum {}",
            primefract_core::boxdim::MAX_LEVEL
        );
    }
    match mode {
        CountingMode::Points => {
            let square = bounding_square(points)?;
            let counts: Vec<u64> = (0..=max_level)
                .into_par_iter()
                .map(|level| count_occupied(points, &square, level))
                .collect::<primefract_core::Result<_>>()?;
            Ok(DimensionEstimates::from_level_counts(
                square,
                points.len(),
                mode,
                &counts,
            ))
        }
        CountingMode::Segments => {
            let square = bounding_square(points)?;
            let counts = segment_level_counts(points, &square, max_level, true)?;
            Ok(DimensionEstimates::from_level_counts(
                square,
                points.len(),
                mode,
                &counts,
            ))
        }
    }
}

/// Sequential fallback retained for parity checks.
pub fn dimension_estimates_sequential(
    points: &[Complex64],
    max_level: u32,
    mode: CountingMode,
) -> Result<DimensionEstimates> {
    Ok(dimension_estimates(points, max_level, mode)?)
}

/// Direct-path curve sampling with the per-sample sums spread across
/// the thread pool.
pub fn curve_direct_parallel(weights: &WeightVector, m: usize) -> Result<CurveSamples> {
    let params = curve_params(m);
    let values: Vec<Complex64> = params
        .par_iter()
        .map(|&t| direct_curve_eval(weights, t))
        .collect();
    Ok(CurveSamples::from_parts(weights.n, params, values)?)
}
