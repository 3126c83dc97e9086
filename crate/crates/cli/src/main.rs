//! primefract: prime counting approximations, prime-indexed Fourier
//! fractals, polygon transforms, and box-counting dimension estimates,
//! emitted as CSV/JSON/SVG artifacts.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use primefract::emit::{
    approx_csv, atomic_write, counting_mode_name, curve_csv, dimension_csv, dimension_json,
    polygon_csv, weights_csv,
};
use primefract::parallel::{curve_direct_parallel, dimension_estimates_parallel};
use primefract::svg::{render_svg, CropWindow};
use primefract::{meta_header, SplitMix64};

use primefract_core::approx::approx_table;
use primefract_core::boxdim::CountingMode;
use primefract_core::fourier::{
    prime_fractal_curve, prime_fractal_polygon, prime_fractal_polygon_direct, ComplexPolygon,
    CurveSamples,
};
use primefract_core::primes::PrimeSieve;
use primefract_core::transform::{iterate, renormalized_step, TransformParams};
use primefract_core::weights::{weight_vector, WeightVector};
use primefract_core::Complex64;

/// Direct evaluation above these sizes is refused without --force-direct;
/// the fast transform path handles them in seconds.
const DIRECT_N_LIMIT: u64 = 100_000;
const DIRECT_M_LIMIT: usize = 1_000_000;

#[derive(Parser)]
#[command(
    name = "primefract",
    version,
    about = "Prime counting approximations, prime fractal polygons/curves, and box-counting dimension"
)]
struct Cli {
    /// Worker threads for parallel counting and sampling
    /// (default: machine parallelism).
    #[arg(long, global = true, env = "PRIMEFRACT_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalMode {
    /// Sparse-coefficient transform evaluation.
    Fast,
    /// Term-by-term compensated summation (the reference path).
    Direct,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Counting {
    /// A cell counts if it contains a sample point.
    Points,
    /// A cell counts if the cyclic polyline through the samples
    /// passes through it.
    Segments,
}

impl From<Counting> for CountingMode {
    fn from(c: Counting) -> CountingMode {
        match c {
            Counting::Points => CountingMode::Points,
            Counting::Segments => CountingMode::Segments,
        }
    }
}

#[derive(Args)]
struct SvgOpts {
    /// Write an SVG polyline rendering here.
    #[arg(long)]
    svg: Option<PathBuf>,

    /// Crop window in raw coordinates: re_min,re_max,im_min,im_max.
    #[arg(long, value_name = "RE_MIN,RE_MAX,IM_MIN,IM_MAX")]
    crop: Option<String>,

    /// Stroke width in normalized document units.
    #[arg(long, default_value_t = 0.002)]
    stroke_width: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate pi(x) against x/ln x, Li(x), and the scaled
    /// prime-factor sum.
    Approx {
        /// Largest sample point.
        #[arg(long)]
        max: f64,
        /// Sample spacing, starting from 0.
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit the weights w_k(n) of the prime-sum form of B_alpha(n).
    Weights {
        #[arg(long)]
        n: u64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the prime fractal polygon of order n.
    Polygon {
        #[arg(long)]
        n: u64,
        /// Write vertices as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EvalMode::Fast)]
        mode: EvalMode,
        /// Allow the direct path at sizes where it is very slow.
        #[arg(long)]
        force_direct: bool,
        #[command(flatten)]
        svg: SvgOpts,
    },
    /// Sample the prime fractal curve at m equispaced parameters.
    Curve {
        #[arg(long)]
        n: u64,
        /// Number of equispaced parameters on (-pi, pi].
        #[arg(long)]
        samples: usize,
        /// Write samples as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EvalMode::Fast)]
        mode: EvalMode,
        #[arg(long)]
        force_direct: bool,
        /// Also estimate the box-counting dimension of the samples.
        #[arg(long)]
        dimension: bool,
        /// Finest subdivision level for --dimension.
        #[arg(long, default_value_t = 20)]
        max_level: u32,
        #[arg(long, value_enum, default_value_t = Counting::Points)]
        counting: Counting,
        /// Write the dimension estimates as JSON here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the per-level estimates as CSV here.
        #[arg(long)]
        dim_csv: Option<PathBuf>,
        #[command(flatten)]
        svg: SvgOpts,
    },
    /// Estimate the box-counting dimension of the prime fractal curve.
    Dimension {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        max_level: u32,
        #[arg(long, value_enum, default_value_t = Counting::Points)]
        counting: Counting,
        #[arg(long, value_enum, default_value_t = EvalMode::Fast)]
        mode: EvalMode,
        #[arg(long)]
        force_direct: bool,
        /// Write the per-level estimates as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the JSON summary here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Iterate the similar-triangle polygon transformation on a seeded
    /// random polygon, emitting per-step frames.
    Transform {
        /// Polygon order (number of vertices).
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        theta: f64,
        /// Number of transformation steps.
        #[arg(long)]
        steps: usize,
        /// Seed of the random initial polygon.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit every e-th frame (step 0 is always included).
        #[arg(long, default_value_t = 1)]
        every: usize,
        /// Output CSV path for the frames.
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: thread pool: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn parse_crop(spec: &Option<String>) -> Result<Option<CropWindow>> {
    let Some(spec) = spec else { return Ok(None) };
    let parts: Vec<f64> = spec
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("parsing crop window '{spec}'"))?;
    if parts.len() != 4 {
        bail!(
            "crop window needs four comma-separated values, got {}",
            parts.len()
        );
    }
    Ok(Some(CropWindow::new(
        parts[0], parts[1], parts[2], parts[3],
    )?))
}

fn build_weights(n: u64) -> Result<WeightVector> {
    let sieve = PrimeSieve::build(n.max(2))?;
    Ok(weight_vector(&sieve, n)?)
}

fn guard_direct(n: u64, m: usize, force: bool) -> Result<()> {
    if !force && (n >= DIRECT_N_LIMIT || m >= DIRECT_M_LIMIT) {
        bail!(
            "direct evaluation at n={n}, samples={m} would be very slow; \
             use the fast mode or pass --force-direct"
        );
    }
    Ok(())
}

fn run(command: Command) -> Result<()> {
    let started = Instant::now();
    match command {
        Command::Approx { max, step, out } => {
            if !(step > 0.0) {
                bail!("--step must be positive");
            }
            if !(max >= 2.0) {
                bail!("--max must be at least 2");
            }
            let sieve = PrimeSieve::build(max.ceil() as u64)?;
            let mut xs = Vec::new();
            let mut k = 0u64;
            loop {
                let x = k as f64 * step;
                if x > max {
                    break;
                }
                xs.push(x);
                k += 1;
            }
            let table = approx_table(&sieve, &xs)?;
            let header = meta_header("approx", &[("max", fmt_num(max)), ("step", fmt_num(step))]);
            atomic_write(&out, approx_csv(&table, &header).as_bytes())?;
            println!(
                "approx: {} rows over [0, {max}] -> {} ({:.3}s)",
                table.rows.len(),
                out.display(),
                started.elapsed().as_secs_f64()
            );
        }

        Command::Weights { n, out } => {
            let wv = build_weights(n)?;
            let header = meta_header("weights", &[("n", n.to_string())]);
            atomic_write(&out, weights_csv(&wv, &header).as_bytes())?;
            println!(
                "weights: n={n}, {} terms -> {} ({:.3}s)",
                wv.entries.len(),
                out.display(),
                started.elapsed().as_secs_f64()
            );
        }

        Command::Polygon {
            n,
            csv,
            mode,
            force_direct,
            svg,
        } => {
            let wv = build_weights(n)?;
            let polygon = match mode {
                EvalMode::Fast => prime_fractal_polygon(&wv)?,
                EvalMode::Direct => {
                    guard_direct(n, 0, force_direct)?;
                    prime_fractal_polygon_direct(&wv)?
                }
            };
            let meta = [
                ("n", n.to_string()),
                ("terms", wv.entries.len().to_string()),
                ("mode", mode_name(mode).to_string()),
            ];
            if let Some(path) = &csv {
                let header = meta_header("polygon", &meta);
                atomic_write(path, polygon_csv(&polygon, &header).as_bytes())?;
            }
            write_svg_artifact(&svg, polygon.vertices(), true, &meta)?;
            println!(
                "polygon: n={n}, {} terms, {} vertices, mode={} ({:.3}s)",
                wv.entries.len(),
                polygon.order(),
                mode_name(mode),
                started.elapsed().as_secs_f64()
            );
        }

        Command::Curve {
            n,
            samples,
            csv,
            mode,
            force_direct,
            dimension,
            max_level,
            counting,
            json,
            dim_csv,
            svg,
        } => {
            let wv = build_weights(n)?;
            let curve = eval_curve(&wv, samples, mode, force_direct)?;
            let meta = [
                ("n", n.to_string()),
                ("samples", samples.to_string()),
                ("terms", wv.entries.len().to_string()),
                ("mode", mode_name(mode).to_string()),
            ];
            if let Some(path) = &csv {
                let header = meta_header("curve", &meta);
                atomic_write(path, curve_csv(&curve, &header).as_bytes())?;
            }
            write_svg_artifact(&svg, curve.values(), false, &meta)?;

            let mut dim_note = String::new();
            if dimension || json.is_some() || dim_csv.is_some() {
                let est = dimension_estimates_parallel(curve.values(), max_level, counting.into())?;
                let config = serde_json::json!({
                    "n": n,
                    "samples": samples,
                    "max_level": max_level,
                    "counting": counting_mode_name(est.mode),
                    "mode": mode_name(mode),
                });
                if let Some(path) = &json {
                    atomic_write(path, dimension_json(&est, "curve", config).as_bytes())?;
                }
                if let Some(path) = &dim_csv {
                    let header = meta_header(
                        "curve --dimension",
                        &[
                            ("n", n.to_string()),
                            ("samples", samples.to_string()),
                            ("max_level", max_level.to_string()),
                            ("counting", counting_mode_name(est.mode).to_string()),
                        ],
                    );
                    atomic_write(path, dimension_csv(&est, &header).as_bytes())?;
                }
                if let Some(d) = est.estimate_at(max_level) {
                    dim_note = format!(", d_{max_level}={d:.4}");
                }
            }
            println!(
                "curve: n={n}, {} terms at {} samples, mode={}{dim_note} ({:.3}s)",
                wv.entries.len(),
                samples,
                mode_name(mode),
                started.elapsed().as_secs_f64()
            );
        }

        Command::Dimension {
            n,
            samples,
            max_level,
            counting,
            mode,
            force_direct,
            csv,
            json,
        } => {
            let wv = build_weights(n)?;
            let curve = eval_curve(&wv, samples, mode, force_direct)?;
            let est = dimension_estimates_parallel(curve.values(), max_level, counting.into())?;
            let config = serde_json::json!({
                "n": n,
                "samples": samples,
                "max_level": max_level,
                "counting": counting_mode_name(est.mode),
                "mode": mode_name(mode),
            });
            if let Some(path) = &csv {
                let header = meta_header(
                    "dimension",
                    &[
                        ("n", n.to_string()),
                        ("samples", samples.to_string()),
                        ("max_level", max_level.to_string()),
                        ("counting", counting_mode_name(est.mode).to_string()),
                    ],
                );
                atomic_write(path, dimension_csv(&est, &header).as_bytes())?;
            }
            if let Some(path) = &json {
                atomic_write(path, dimension_json(&est, "dimension", config).as_bytes())?;
            }
            let d = est
                .estimate_at(max_level)
                .map(|d| format!("{d:.4}"))
                .unwrap_or_else(|| "n/a".to_string());
            println!(
                "dimension: n={n}, {} terms at {samples} samples, counting={}, d_{max_level}={d} ({:.3}s)",
                wv.entries.len(),
                counting_mode_name(est.mode),
                started.elapsed().as_secs_f64()
            );
        }

        Command::Transform {
            n,
            lambda,
            theta,
            steps,
            seed,
            every,
            out,
        } => {
            if every == 0 {
                bail!("--every must be at least 1");
            }
            let params = TransformParams::new(lambda, theta)?;
            let mut rng = SplitMix64::new(seed);
            let vertices: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.next_unit(), rng.next_unit()))
                .collect();
            let polygon = ComplexPolygon::new(vertices)?;

            let outcome = iterate(&polygon, &params, 0)?;
            let mut frames = meta_header(
                "transform",
                &[
                    ("n", n.to_string()),
                    ("lambda", fmt_num(lambda)),
                    ("theta", fmt_num(theta)),
                    ("steps", steps.to_string()),
                    ("seed", seed.to_string()),
                    ("every", every.to_string()),
                    ("dominant_mode", outcome.dominant_mode.to_string()),
                ],
            );
            frames.push_str("step,j,re,im\n");
            let mut current = polygon;
            append_frame(&mut frames, 0, &current);
            for step in 1..=steps {
                current = renormalized_step(&current, &params)?;
                if step % every == 0 || step == steps {
                    append_frame(&mut frames, step, &current);
                }
            }
            atomic_write(&out, frames.as_bytes())?;
            let tie_note = if outcome.tie {
                " (tie, smallest index)"
            } else {
                ""
            };
            println!(
                "transform: n={n}, {steps} steps, dominant mode {}{tie_note} -> {} ({:.3}s)",
                outcome.dominant_mode,
                out.display(),
                started.elapsed().as_secs_f64()
            );
        }
    }
    Ok(())
}

fn eval_curve(
    wv: &WeightVector,
    samples: usize,
    mode: EvalMode,
    force_direct: bool,
) -> Result<CurveSamples> {
    match mode {
        EvalMode::Fast => Ok(prime_fractal_curve(wv, samples)?),
        EvalMode::Direct => {
            guard_direct(wv.n, samples, force_direct)?;
            curve_direct_parallel(wv, samples)
        }
    }
}

fn write_svg_artifact(
    opts: &SvgOpts,
    points: &[Complex64],
    closed: bool,
    meta: &[(&str, String)],
) -> Result<()> {
    let Some(path) = &opts.svg else { return Ok(()) };
    let crop = parse_crop(&opts.crop)?;
    let svg = render_svg(points, closed, crop, opts.stroke_width, meta)?;
    atomic_write(path, svg.as_bytes())
}

fn append_frame(out: &mut String, step: usize, polygon: &ComplexPolygon) {
    use std::fmt::Write as _;
    for (j, v) in polygon.vertices().iter().enumerate() {
        let _ = writeln!(
            out,
            "{step},{j},{},{}",
            primefract::fmt_f64(v.re),
            primefract::fmt_f64(v.im)
        );
    }
}

fn mode_name(mode: EvalMode) -> &'static str {
    match mode {
        EvalMode::Fast => "fast",
        EvalMode::Direct => "direct",
    }
}

fn fmt_num(v: f64) -> String {
    // Shortest round-trip form for metadata echoes.
    format!("{v}")
}
