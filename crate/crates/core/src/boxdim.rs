//! Box-counting dimension estimation over a recursively subdivided
//! bounding square.
//!
//! Level `m` partitions a tight initial square into `2^m x 2^m` cells;
//! `N_m` is the number of cells meeting the input and
//! `d_m = log(N_m) / log(2^m)` the per-level dimension estimate.
//!
//! Two occupancy notions are supported: a cell counts if it contains a
//! sample point ([`CountingMode::Points`]), or if the cyclic polyline
//! through consecutive samples passes through it
//! ([`CountingMode::Segments`]). Point counts are capped by the number
//! of samples, so at fine levels they saturate; the per-level
//! `saturated` flag marks where that bias sets in.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fmath;

/// Subdivision is limited so packed cell indices stay well inside 64
/// bits.
pub const MAX_LEVEL: u32 = 25;

/// Axis-aligned square covering all samples: the tight bounding box,
/// anchored at its lower-left corner and widened along the shorter axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingSquare {
    origin: Complex64,
    side: f64,
}

impl BoundingSquare {
    pub fn origin(&self) -> Complex64 {
        self.origin
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn contains(&self, q: Complex64) -> bool {
        let dx = q.re - self.origin.re;
        let dy = q.im - self.origin.im;
        dx >= 0.0 && dx <= self.side && dy >= 0.0 && dy <= self.side
    }
}

/// How cell occupancy is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountingMode {
    /// A cell is occupied if it contains at least one sample point.
    Points,
    /// A cell is occupied if the cyclic polyline through the samples
    /// passes through it.
    Segments,
}

/// Tight bounding square of the samples.
pub fn bounding_square(points: &[Complex64]) -> Result<BoundingSquare> {
    if points.is_empty() {
        return Err(Error::Domain(
            "bounding square of an empty sample set".into(),
        ));
    }
    let mut min_re = f64::INFINITY;
    let mut max_re = f64::NEG_INFINITY;
    let mut min_im = f64::INFINITY;
    let mut max_im = f64::NEG_INFINITY;
    for q in points {
        if !q.re.is_finite() || !q.im.is_finite() {
            return Err(Error::Domain(
                "bounding square requires finite samples".into(),
            ));
        }
        min_re = min_re.min(q.re);
        max_re = max_re.max(q.re);
        min_im = min_im.min(q.im);
        max_im = max_im.max(q.im);
    }
    let side = (max_re - min_re).max(max_im - min_im);
    if side == 0.0 {
        return Err(Error::Degenerate(
            "all samples coincide; bounding square has side 0".into(),
        ));
    }
    Ok(BoundingSquare {
        origin: Complex64::new(min_re, min_im),
        side,
    })
}

/// Normalized grid coordinate of one axis offset: `(q - origin)/side`
/// scaled by `2^level`. The power-of-two scaling is exact, so cell
/// indices refine consistently across levels.
fn grid_coord(offset: f64, side: f64, cells: u64) -> Result<f64> {
    // Positive-form comparison so NaN offsets are rejected too.
    if !(offset >= 0.0 && offset <= side) {
        return Err(Error::Domain("sample outside the bounding square".into()));
    }
    Ok(offset / side * cells as f64)
}

fn cell_index(g: f64, cells: u64) -> u64 {
    // Points exactly on the upper edge fall into the last cell.
    (fmath::floor(g) as u64).min(cells - 1)
}

fn check_level(level: u32) -> Result<u64> {
    if level > MAX_LEVEL {
        return Err(Error::Domain(format!(
            "subdivision level {level} exceeds the maximum {MAX_LEVEL}"
        )));
    }
    Ok(1u64 << level)
}

/// `N_m` with point-based occupancy: the number of distinct cells of the
/// `2^level` grid containing at least one sample.
pub fn count_occupied(points: &[Complex64], square: &BoundingSquare, level: u32) -> Result<u64> {
    let cells = check_level(level)?;
    if points.is_empty() {
        return Err(Error::Domain(
            "count_occupied of an empty sample set".into(),
        ));
    }
    let mut keys = Vec::with_capacity(points.len());
    for q in points {
        let gx = grid_coord(q.re - square.origin.re, square.side, cells)?;
        let gy = grid_coord(q.im - square.origin.im, square.side, cells)?;
        keys.push(cell_index(gx, cells) << 32 | cell_index(gy, cells));
    }
    keys.sort_unstable();
    keys.dedup();
    Ok(keys.len() as u64)
}

/// `N_m` with segment-based occupancy at a single level.
pub fn count_occupied_segments(
    points: &[Complex64],
    square: &BoundingSquare,
    level: u32,
    closed: bool,
) -> Result<u64> {
    let counts = segment_level_counts_from(points, square, level, closed)?;
    Ok(counts[level as usize])
}

/// `N_m` with segment-based occupancy for every level `0..=max_level` in
/// one traversal: cells are visited at the finest level and coarser
/// counts read off as distinct key prefixes.
pub fn segment_level_counts(
    points: &[Complex64],
    square: &BoundingSquare,
    max_level: u32,
    closed: bool,
) -> Result<Vec<u64>> {
    segment_level_counts_from(points, square, max_level, closed)
}

fn segment_level_counts_from(
    points: &[Complex64],
    square: &BoundingSquare,
    max_level: u32,
    closed: bool,
) -> Result<Vec<u64>> {
    let cells = check_level(max_level)?;
    if points.is_empty() {
        return Err(Error::Domain(
            "segment counting of an empty sample set".into(),
        ));
    }

    // Everything below works in grid coordinates at the finest level,
    // where cells are unit squares.
    let mut grid: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for q in points {
        let gx = grid_coord(q.re - square.origin.re, square.side, cells)?;
        let gy = grid_coord(q.im - square.origin.im, square.side, cells)?;
        grid.push((gx, gy));
    }

    let mut distinct = DistinctKeys::new();
    let segments = if closed || points.len() == 1 {
        points.len()
    } else {
        points.len() - 1
    };
    for i in 0..segments {
        let a = grid[i];
        let b = grid[(i + 1) % grid.len()];
        traverse_segment(a, b, cells, |ix, iy| distinct.push(morton(ix, iy)));
    }

    let levels = max_level as usize + 1;
    let mut bumps = vec![0u64; levels];
    let mut prev: Option<u64> = None;
    distinct.for_each_distinct_sorted(|key| {
        match prev {
            None => bumps[0] += 1,
            Some(p) => {
                let xor = key ^ p;
                debug_assert_ne!(xor, 0);
                // The coarsest level whose prefix changed.
                let high = 63 - xor.leading_zeros();
                let first_changed = max_level - high / 2;
                bumps[first_changed as usize] += 1;
            }
        }
        prev = Some(key);
    });
    let mut counts = Vec::with_capacity(levels);
    let mut acc = 0u64;
    for b in bumps {
        acc += b;
        counts.push(acc);
    }
    Ok(counts)
}

/// Grid traversal of one segment in grid coordinates (unit cells),
/// visiting every cell the segment passes through, endpoints included.
fn traverse_segment(a: (f64, f64), b: (f64, f64), cells: u64, mut visit: impl FnMut(u64, u64)) {
    let last = (cells - 1) as i64;
    let clamp = |v: i64| v.clamp(0, last) as u64;
    let cell_of = |g: f64| (fmath::floor(g) as i64).clamp(0, last);

    let (mut ix, mut iy) = (cell_of(a.0), cell_of(a.1));
    let (ex, ey) = (cell_of(b.0), cell_of(b.1));
    visit(clamp(ix), clamp(iy));
    if (ix, iy) == (ex, ey) {
        return;
    }

    let dx = b.0 - a.0;
    let dy = b.1 - a.1;
    let step_x: i64 = if dx > 0.0 {
        1
    } else if dx < 0.0 {
        -1
    } else {
        0
    };
    let step_y: i64 = if dy > 0.0 {
        1
    } else if dy < 0.0 {
        -1
    } else {
        0
    };
    // Parameter along the segment of the next axis crossing, and its
    // per-cell increment.
    let mut t_max_x = if step_x == 0 {
        f64::INFINITY
    } else {
        let boundary = if step_x > 0 {
            ix as f64 + 1.0
        } else {
            ix as f64
        };
        (boundary - a.0) / dx
    };
    let mut t_max_y = if step_y == 0 {
        f64::INFINITY
    } else {
        let boundary = if step_y > 0 {
            iy as f64 + 1.0
        } else {
            iy as f64
        };
        (boundary - a.1) / dy
    };
    let t_delta_x = if step_x == 0 {
        f64::INFINITY
    } else {
        1.0 / fmath::abs(dx)
    };
    let t_delta_y = if step_y == 0 {
        f64::INFINITY
    } else {
        1.0 / fmath::abs(dy)
    };

    let max_steps = (ex - ix).abs() + (ey - iy).abs();
    for _ in 0..max_steps {
        if (ix, iy) == (ex, ey) {
            return;
        }
        // Ties step x first; the corner cells involved differ only on a
        // measure-zero set of segments.
        if t_max_x <= t_max_y {
            ix += step_x;
            t_max_x += t_delta_x;
        } else {
            iy += step_y;
            t_max_y += t_delta_y;
        }
        visit(clamp(ix), clamp(iy));
    }
    // Rounding may end the walk a cell short; the endpoint cell is
    // always occupied.
    visit(clamp(ex), clamp(ey));
}

fn spread_bits(mut x: u64) -> u64 {
    x &= 0xffff_ffff;
    x = (x | (x << 16)) & 0x0000_ffff_0000_ffff;
    x = (x | (x << 8)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// Interleaved (Morton) cell key: shifting right by 2 yields the parent
/// cell one level up.
fn morton(ix: u64, iy: u64) -> u64 {
    spread_bits(ix) << 1 | spread_bits(iy)
}

/// Streaming distinct-key counter: keys accumulate in bounded chunks,
/// each sorted and locally deduplicated when full, and a final k-way
/// merge enumerates the distinct keys in ascending order.
struct DistinctKeys {
    sealed: Vec<Vec<u64>>,
    buf: Vec<u64>,
}

const CHUNK_CAP: usize = 1 << 23;

impl DistinctKeys {
    fn new() -> Self {
        DistinctKeys {
            sealed: Vec::new(),
            buf: Vec::new(),
        }
    }

    #[inline]
    fn push(&mut self, key: u64) {
        // Consecutive repeats dominate polyline traversals; drop them
        // before they cost a slot.
        if self.buf.last() == Some(&key) {
            return;
        }
        self.buf.push(key);
        if self.buf.len() >= CHUNK_CAP {
            self.seal();
        }
    }

    fn seal(&mut self) {
        if self.buf.is_empty() {
            return;
        }
        self.buf.sort_unstable();
        self.buf.dedup();
        let sealed = core::mem::take(&mut self.buf);
        self.sealed.push(sealed);
    }

    fn for_each_distinct_sorted(mut self, mut f: impl FnMut(u64)) {
        self.seal();
        if self.sealed.len() == 1 {
            for &k in &self.sealed[0] {
                f(k);
            }
            return;
        }
        // Min-heap of (next key, chunk) cursors.
        let mut cursors: Vec<usize> = vec![0; self.sealed.len()];
        let mut heap: BinaryHeap<core::cmp::Reverse<(u64, usize)>> = self
            .sealed
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_empty())
            .map(|(i, c)| core::cmp::Reverse((c[0], i)))
            .collect();
        let mut prev: Option<u64> = None;
        while let Some(core::cmp::Reverse((key, chunk))) = heap.pop() {
            if prev != Some(key) {
                f(key);
                prev = Some(key);
            }
            cursors[chunk] += 1;
            if let Some(&next) = self.sealed[chunk].get(cursors[chunk]) {
                heap.push(core::cmp::Reverse((next, chunk)));
            }
        }
    }
}

/// One subdivision level of a dimension estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelEstimate {
    pub level: u32,
    pub cells_per_axis: u64,
    pub occupied: u64,
    /// `log(N_m) / log(2^m)`; absent at level 0.
    pub estimate: Option<f64>,
    /// Grid resolution outruns the sample budget here (`2^{2m} >
    /// samples/10`), biasing the estimate low. Diagnostic only.
    pub saturated: bool,
}

/// Per-level occupancy counts and dimension estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionEstimates {
    pub square: BoundingSquare,
    pub sample_count: usize,
    pub mode: CountingMode,
    pub levels: Vec<LevelEstimate>,
}

impl DimensionEstimates {
    /// Assembles estimates from already-computed level counts
    /// (`counts[m]` is `N_m`).
    pub fn from_level_counts(
        square: BoundingSquare,
        sample_count: usize,
        mode: CountingMode,
        counts: &[u64],
    ) -> Self {
        let levels = counts
            .iter()
            .enumerate()
            .map(|(m, &occupied)| {
                let level = m as u32;
                LevelEstimate {
                    level,
                    cells_per_axis: 1u64 << level,
                    occupied,
                    estimate: if level == 0 {
                        None
                    } else {
                        Some(fmath::ln(occupied as f64) / (level as f64 * core::f64::consts::LN_2))
                    },
                    saturated: is_saturated(level, sample_count),
                }
            })
            .collect();
        DimensionEstimates {
            square,
            sample_count,
            mode,
            levels,
        }
    }

    pub fn estimate_at(&self, level: u32) -> Option<f64> {
        self.levels.get(level as usize).and_then(|l| l.estimate)
    }

    pub fn occupied_at(&self, level: u32) -> Option<u64> {
        self.levels.get(level as usize).map(|l| l.occupied)
    }
}

fn is_saturated(level: u32, sample_count: usize) -> bool {
    (1u128 << (2 * level)) * 10 > sample_count as u128
}

/// Counts occupancy for every level `0..=max_level` and derives the
/// per-level estimates.
pub fn dimension_estimates(
    points: &[Complex64],
    max_level: u32,
    mode: CountingMode,
) -> Result<DimensionEstimates> {
    check_level(max_level)?;
    let square = bounding_square(points)?;
    let counts = match mode {
        CountingMode::Points => {
            let mut counts = Vec::with_capacity(max_level as usize + 1);
            for m in 0..=max_level {
                counts.push(count_occupied(points, &square, m)?);
            }
            counts
        }
        CountingMode::Segments => segment_level_counts(points, &square, max_level, true)?,
    };
    Ok(DimensionEstimates::from_level_counts(
        square,
        points.len(),
        mode,
        &counts,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bounding_square_fixtures() {
        let s = bounding_square(&[c(0.0, 0.0), c(1.0, 1.0)]).unwrap();
        assert_eq!(s.origin(), c(0.0, 0.0));
        assert_eq!(s.side(), 1.0);

        let s = bounding_square(&[c(0.0, 0.0), c(2.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert_eq!(s.origin(), c(0.0, 0.0));
        assert_eq!(s.side(), 2.0);

        assert!(bounding_square(&[]).is_err());
        assert!(matches!(
            bounding_square(&[c(3.0, 4.0), c(3.0, 4.0)]),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn level_zero_is_one_cell() {
        let pts = [c(0.0, 0.0), c(0.7, 0.2), c(1.0, 1.0)];
        let sq = bounding_square(&pts).unwrap();
        assert_eq!(count_occupied(&pts, &sq, 0).unwrap(), 1);
    }

    #[test]
    fn diagonal_points_occupy_one_cell_per_step() {
        // 10 equispaced points on the square's diagonal at level 3: one
        // cell per diagonal step.
        let pts: Vec<Complex64> = (0..10).map(|k| c(k as f64 / 9.0, k as f64 / 9.0)).collect();
        let sq = bounding_square(&pts).unwrap();
        assert_eq!(count_occupied(&pts, &sq, 3).unwrap(), 8);
    }

    #[test]
    fn dense_grid_fills_all_cells() {
        let mut pts = Vec::new();
        for i in 0..100 {
            for j in 0..100 {
                pts.push(c(i as f64 / 99.0, j as f64 / 99.0));
            }
        }
        let sq = bounding_square(&pts).unwrap();
        assert_eq!(count_occupied(&pts, &sq, 5).unwrap(), 1024);
    }

    #[test]
    fn upper_edge_clamps_into_last_cell() {
        let pts = [c(0.0, 0.0), c(1.0, 1.0)];
        let sq = bounding_square(&pts).unwrap();
        // Both corners at level 4: two distinct cells, the upper corner
        // clamped inward.
        assert_eq!(count_occupied(&pts, &sq, 4).unwrap(), 2);
    }

    #[test]
    fn outside_sample_is_domain_error() {
        let pts = [c(0.0, 0.0), c(1.0, 1.0)];
        let sq = bounding_square(&pts).unwrap();
        assert!(count_occupied(&[c(1.5, 0.5)], &sq, 2).is_err());
        assert!(count_occupied(&[c(f64::NAN, 0.5)], &sq, 2).is_err());
    }

    #[test]
    fn order_independence() {
        let mut pts: Vec<Complex64> = (0..500)
            .map(|k| {
                let t = k as f64 * 0.137;
                c(t.sin() * 0.5 + 0.5, (1.7 * t).cos() * 0.5 + 0.5)
            })
            .collect();
        let sq = bounding_square(&pts).unwrap();
        let forward = count_occupied(&pts, &sq, 6).unwrap();
        pts.reverse();
        assert_eq!(count_occupied(&pts, &sq, 6).unwrap(), forward);
    }

    #[test]
    fn counts_monotone_and_bounded() {
        let pts: Vec<Complex64> = (0..2000)
            .map(|k| {
                let t = k as f64 * 0.01;
                c(t.sin(), (2.3 * t + 0.4).sin())
            })
            .collect();
        let est = dimension_estimates(&pts, 8, CountingMode::Points).unwrap();
        assert_eq!(est.levels[0].occupied, 1);
        assert_eq!(est.levels[0].estimate, None);
        for pair in est.levels.windows(2) {
            assert!(pair[1].occupied >= pair[0].occupied);
            assert!(pair[1].occupied <= 4 * pair[0].occupied);
        }
    }

    #[test]
    fn segment_counts_cover_point_counts() {
        let pts: Vec<Complex64> = (0..300)
            .map(|k| {
                let t = k as f64 * 0.021;
                c(t.cos(), (3.1 * t).sin())
            })
            .collect();
        let sq = bounding_square(&pts).unwrap();
        let seg = segment_level_counts(&pts, &sq, 7, true).unwrap();
        for m in 0..=7u32 {
            let pt = count_occupied(&pts, &sq, m).unwrap();
            assert!(
                seg[m as usize] >= pt,
                "polyline cells must include point cells at level {m}"
            );
            assert!(seg[m as usize] <= (1u64 << m) * (1u64 << m));
        }
    }

    #[test]
    fn segment_traversal_straight_line() {
        // A segment from corner to corner of a 4x4 grid crosses the
        // diagonal cells plus corner-adjacent ones; an axis-aligned
        // segment crosses exactly one row.
        let pts = [c(0.0, 0.125), c(1.0, 0.125)];
        let sq = bounding_square(&[c(0.0, 0.0), c(1.0, 1.0)]).unwrap();
        let n = count_occupied_segments(&pts, &sq, 2, false).unwrap();
        assert_eq!(n, 4);
    }

    #[test]
    fn segment_counts_match_dense_sampling() {
        // Independent oracle: drown the polyline in point samples and
        // compare occupancy. Offsets avoid exact gridline incidences so
        // both notions agree.
        let verts = [c(0.03, 0.11), c(0.91, 0.37), c(0.22, 0.93), c(0.67, 0.05)];
        let sq = bounding_square(&[c(0.0, 0.0), c(1.0, 1.0)]).unwrap();
        for level in [2u32, 3, 4, 5] {
            let mut dense = Vec::new();
            for i in 0..verts.len() {
                let a = verts[i];
                let b = verts[(i + 1) % verts.len()];
                for s in 0..=20_000 {
                    let t = s as f64 / 20_000.0;
                    dense.push(a + (b - a) * t);
                }
            }
            let from_points = count_occupied(&dense, &sq, level).unwrap();
            let from_segments = count_occupied_segments(&verts, &sq, level, true).unwrap();
            assert_eq!(from_segments, from_points, "level {level}");
        }
    }

    #[test]
    fn saturation_flags() {
        let pts: Vec<Complex64> = (0..100)
            .map(|k| c(k as f64 / 99.0, (k * k % 97) as f64 / 96.0))
            .collect();
        let est = dimension_estimates(&pts, 5, CountingMode::Points).unwrap();
        // 2^{2m} > 100/10 = 10 from m = 2 on.
        assert!(!est.levels[0].saturated);
        assert!(!est.levels[1].saturated);
        assert!(est.levels[2].saturated);
        assert!(est.levels[5].saturated);
    }

    #[test]
    fn level_cap_enforced() {
        let pts = [c(0.0, 0.0), c(1.0, 1.0)];
        assert!(dimension_estimates(&pts, MAX_LEVEL + 1, CountingMode::Points).is_err());
    }
}
