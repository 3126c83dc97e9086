//! SVG polyline rendering of polygons and curve samples.
//!
//! Without a crop window, coordinates are rescaled by the maximum
//! modulus into the box [-1, 1]^2; with one, the window is mapped to
//! the unit box. The normalization is recorded in a metadata comment.
//! The imaginary axis is flipped so the picture keeps mathematical
//! orientation under SVG's downward y.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use primefract_core::Complex64;

/// Crop window in raw (unnormalized) coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CropWindow {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl CropWindow {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        if !(re_min < re_max && im_min < im_max) {
            bail!("crop window must satisfy re_min < re_max and im_min < im_max");
        }
        Ok(CropWindow {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    fn contains(&self, q: Complex64) -> bool {
        q.re >= self.re_min && q.re <= self.re_max && q.im >= self.im_min && q.im <= self.im_max
    }
}

fn coord(v: f64) -> String {
    format!("{v:.6}")
}

/// Renders the points as one polyline path (`Z`-closed for polygons).
/// Cropping keeps only samples inside the window; runs of consecutive
/// outside samples break the polyline.
pub fn render_svg(
    points: &[Complex64],
    closed: bool,
    crop: Option<CropWindow>,
    stroke_width: f64,
    meta: &[(&str, String)],
) -> Result<String> {
    if points.is_empty() {
        bail!("nothing to render: no samples");
    }

    // Map raw coordinates to document coordinates.
    let (view_box, to_doc): (String, Box<dyn Fn(Complex64) -> (f64, f64)>) = match crop {
        None => {
            let max_modulus = points.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
            if max_modulus == 0.0 {
                bail!("degenerate extent: all samples at the origin");
            }
            let s = 1.0 / max_modulus;
            (
                "-1 -1 2 2".to_string(),
                Box::new(move |q: Complex64| (q.re * s, -q.im * s)),
            )
        }
        Some(w) => {
            let sx = w.re_max - w.re_min;
            let sy = w.im_max - w.im_min;
            (
                "0 0 1 1".to_string(),
                Box::new(move |q: Complex64| ((q.re - w.re_min) / sx, (w.im_max - q.im) / sy)),
            )
        }
    };

    let kept: Vec<Option<(f64, f64)>> = points
        .iter()
        .map(|&q| match crop {
            Some(w) if !w.contains(q) => None,
            _ => Some(to_doc(q)),
        })
        .collect();
    let kept_count = kept.iter().filter(|p| p.is_some()).count();
    if kept_count == 0 {
        bail!("crop window contains no samples");
    }
    if kept_count == 1 {
        bail!("degenerate extent: a single visible sample cannot form a polyline");
    }

    let mut path = String::new();
    let mut pen_down = false;
    for p in &kept {
        match p {
            Some((x, y)) => {
                let op = if pen_down { 'L' } else { 'M' };
                let _ = write!(path, "{op}{} {} ", coord(*x), coord(*y));
                pen_down = true;
            }
            None => pen_down = false,
        }
    }
    let path = path.trim_end();

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{view_box}\" preserveAspectRatio=\"xMidYMid meet\">"
    );
    let _ = writeln!(out, "<!-- primefract {} -->", crate::VERSION);
    for (k, v) in meta {
        let _ = writeln!(out, "<!-- {k}: {v} -->");
    }
    match crop {
        None => {
            let max_modulus = points.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
            let _ = writeln!(
                out,
                "<!-- normalization: coordinates divided by max modulus {}; imaginary axis flipped -->",
                crate::emit::fmt_f64(max_modulus)
            );
        }
        Some(w) => {
            let _ = writeln!(
                out,
                "<!-- crop: re in [{}, {}], im in [{}, {}], mapped to the unit box; imaginary axis flipped -->",
                crate::emit::fmt_f64(w.re_min),
                crate::emit::fmt_f64(w.re_max),
                crate::emit::fmt_f64(w.im_min),
                crate::emit::fmt_f64(w.im_max)
            );
        }
    }
    let close = if closed && crop.is_none() { " Z" } else { "" };
    let _ = writeln!(
        out,
        "<path d=\"{path}{close}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>",
        coord(stroke_width)
    );
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pentagon_renders_closed() {
        let pts: Vec<Complex64> = (0..5)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 5.0))
            .collect();
        let svg = render_svg(&pts, true, None, 0.002, &[]).unwrap();
        assert!(svg.contains("viewBox=\"-1 -1 2 2\""));
        assert!(svg.contains(" Z\""));
        assert!(svg.starts_with("<svg"));
        // 6-decimal coordinates only.
        assert!(svg.contains("1.000000 -0.000000") || svg.contains("1.000000 0.000000"));
    }

    #[test]
    fn single_point_is_degenerate() {
        assert!(render_svg(&[c(1.0, 1.0)], false, None, 0.002, &[]).is_err());
        assert!(render_svg(&[c(0.0, 0.0), c(0.0, 0.0)], false, None, 0.002, &[]).is_err());
    }

    #[test]
    fn crop_filters_and_breaks_path() {
        let pts = [c(0.1, 0.1), c(0.2, 0.2), c(5.0, 5.0), c(0.3, 0.1)];
        let w = CropWindow::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let svg = render_svg(&pts, false, Some(w), 0.002, &[]).unwrap();
        // Two pen-down segments: M..L.. then M..
        let d_start = svg.find("d=\"").unwrap() + 3;
        let d_len = svg[d_start..].find('"').unwrap();
        let path = &svg[d_start..d_start + d_len];
        assert_eq!(path.matches('M').count(), 2);
        let w2 = CropWindow::new(10.0, 11.0, 10.0, 11.0).unwrap();
        assert!(render_svg(&pts, false, Some(w2), 0.002, &[]).is_err());
    }

    #[test]
    fn crop_window_validation() {
        assert!(CropWindow::new(1.0, 0.0, 0.0, 1.0).is_err());
        assert!(CropWindow::new(0.0, 1.0, 1.0, 1.0).is_err());
    }
}
