//! IO companion to `primefract-core`: CSV/JSON/SVG emitters, atomic
//! file writes, and rayon-backed drivers for the parallelizable
//! counting and sampling paths.
//!
//! All emitters are deterministic: identical inputs produce
//! byte-identical output (floating values use 17 significant digits,
//! metadata carries no timestamps).

pub mod emit;
pub mod parallel;
pub mod svg;

pub use emit::{atomic_write, fmt_f64};

/// Version string embedded in every artifact's metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The metadata header lines shared by all CSV artifacts: a version
/// line plus a config echo, each prefixed by `# `.
pub fn meta_header(command: &str, fields: &[(&str, String)]) -> String {
    let mut out = String::new();
    out.push_str(&format!("# primefract {VERSION}\n"));
    out.push_str(&format!("# command: {command}\n"));
    for (k, v) in fields {
        out.push_str(&format!("# {k}: {v}\n"));
    }
    out
}

/// splitmix64: a tiny deterministic generator for seeded initial
/// polygons; stable across platforms and releases.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [-1, 1).
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }
}
