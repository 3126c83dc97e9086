//! CSV and JSON artifact formatting plus atomic file writes.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use primefract_core::approx::ApproxTable;
use primefract_core::boxdim::{CountingMode, DimensionEstimates};
use primefract_core::fourier::{ComplexPolygon, CurveSamples};
use primefract_core::weights::WeightVector;

/// Floating values in CSV artifacts: 17 significant digits, enough to
/// round-trip any f64 exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes through a temp file in the target directory and renames into
/// place, so interrupted runs never leave truncated artifacts.
pub fn atomic_write(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temp file near {}", path.display()))?;
    tmp.write_all(contents)
        .with_context(|| format!("writing {}", path.display()))?;
    tmp.persist(path)
        .with_context(|| format!("renaming into {}", path.display()))?;
    // Temp files are created 0600; artifacts should be ordinary files.
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        let _ = std::fs::set_permissions(path, std::fs::Permissions::from_mode(0o644));
    }
    Ok(())
}

pub fn approx_csv(table: &ApproxTable, header: &str) -> String {
    let mut out = String::from(header);
    out.push_str("x,pi,x_over_ln,li,beta_alpha_delta\n");
    for row in &table.rows {
        let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_f64(row.x),
            row.prime_count,
            opt(row.x_over_ln),
            opt(row.li),
            opt(row.beta_alpha_delta)
        );
    }
    out
}

pub fn weights_csv(weights: &WeightVector, header: &str) -> String {
    let mut out = String::from(header);
    out.push_str("k,p,w\n");
    for e in &weights.entries {
        let _ = writeln!(out, "{},{},{}", e.index, e.prime, e.weight);
    }
    out
}

pub fn polygon_csv(polygon: &ComplexPolygon, header: &str) -> String {
    let mut out = String::from(header);
    out.push_str("j,re,im\n");
    for (j, v) in polygon.vertices().iter().enumerate() {
        let _ = writeln!(out, "{},{},{}", j, fmt_f64(v.re), fmt_f64(v.im));
    }
    out
}

pub fn curve_csv(samples: &CurveSamples, header: &str) -> String {
    let mut out = String::from(header);
    out.push_str("t,re,im\n");
    for (t, v) in samples.params().iter().zip(samples.values()) {
        let _ = writeln!(out, "{},{},{}", fmt_f64(*t), fmt_f64(v.re), fmt_f64(v.im));
    }
    out
}

pub fn counting_mode_name(mode: CountingMode) -> &'static str {
    match mode {
        CountingMode::Points => "points",
        CountingMode::Segments => "segments",
    }
}

pub fn dimension_csv(est: &DimensionEstimates, header: &str) -> String {
    let mut out = String::from(header);
    out.push_str("m,cells,N_m,d_m,saturated\n");
    for l in &est.levels {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            l.level,
            l.cells_per_axis,
            l.occupied,
            l.estimate.map(fmt_f64).unwrap_or_default(),
            l.saturated
        );
    }
    out
}

#[derive(Serialize)]
struct SquareJson {
    origin_re: f64,
    origin_im: f64,
    side: f64,
}

#[derive(Serialize)]
struct LevelJson {
    m: u32,
    cells: u64,
    occupied: u64,
    estimate: Option<f64>,
    saturated: bool,
}

#[derive(Serialize)]
struct DimensionJson<'a> {
    version: &'a str,
    command: &'a str,
    config: serde_json::Value,
    counting: &'a str,
    sample_count: usize,
    bounding_square: SquareJson,
    levels: Vec<LevelJson>,
}

/// JSON summary of a dimension run, including the bounding square and
/// a config echo.
pub fn dimension_json(
    est: &DimensionEstimates,
    command: &str,
    config: serde_json::Value,
) -> String {
    let doc = DimensionJson {
        version: crate::VERSION,
        command,
        config,
        counting: counting_mode_name(est.mode),
        sample_count: est.sample_count,
        bounding_square: SquareJson {
            origin_re: est.square.origin().re,
            origin_im: est.square.origin().im,
            side: est.square.side(),
        },
        levels: est
            .levels
            .iter()
            .map(|l| LevelJson {
                m: l.level,
                cells: l.cells_per_axis,
                occupied: l.occupied,
                estimate: l.estimate,
                saturated: l.saturated,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}
