//! Output plumbing: file-or-stdout emission, JSON summaries with an
//! optional timestamp, and the SVG rendering of a triangulation.

use std::fs;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use nnorm::delaunay::Triangulation;
use nnorm::scalar::Scalar;
use serde::Serialize;

use crate::CliError;

pub struct OutputCfg {
    pub timestamp: bool,
    pub json: Option<String>,
    pub precision_bits: u32,
}

/// Writes text to a path, with "-" meaning stdout.
pub fn emit(path: &str, text: &str) -> Result<(), CliError> {
    if path == "-" {
        std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("stdout: {e}")))
    } else {
        fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {path}: {e}")))
    }
}

/// Writes the JSON summary when `--json` was requested.
pub fn json_summary<T: Serialize>(
    cfg: &OutputCfg,
    command: &str,
    payload: &T,
) -> Result<(), CliError> {
    let Some(path) = &cfg.json else { return Ok(()) };
    let mut doc = serde_json::json!({
        "command": command,
        "result": payload,
    });
    if cfg.timestamp {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        doc["generated_at_unix"] = serde_json::json!(now);
    }
    let text = format!("{}\n", serde_json::to_string_pretty(&doc).unwrap());
    emit(path, &text)
}

/// Renders a triangulation as a standalone SVG: triangles filled, boundary
/// emphasized, vertices dotted.
pub fn triangulation_svg<S: Scalar>(t: &Triangulation<S>) -> String {
    let pts: Vec<(f64, f64)> = t.points.points.iter().map(|p| p.to_f64()).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if pts.is_empty() {
        x0 = 0.0;
        y0 = 0.0;
        x1 = 1.0;
        y1 = 1.0;
    }
    let w = (x1 - x0).max(1e-9);
    let h = (y1 - y0).max(1e-9);
    let size = 640.0;
    let margin = 20.0;
    let scale = (size - 2.0 * margin) / w.max(h);
    let sx = |x: f64| margin + (x - x0) * scale;
    // SVG y grows downward.
    let sy = |y: f64| size - margin - (y - y0) * scale;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n"
    ));
    for tri in &t.triangles {
        let coords: Vec<String> = tri
            .iter()
            .map(|&v| format!("{:.3},{:.3}", sx(pts[v].0), sy(pts[v].1)))
            .collect();
        svg.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"#cfe8ff\" stroke=\"#3070b0\" stroke-width=\"1\"/>\n",
            coords.join(" ")
        ));
    }
    if !t.boundary.is_empty() {
        let coords: Vec<String> = t
            .boundary
            .iter()
            .map(|&v| format!("{:.3},{:.3}", sx(pts[v].0), sy(pts[v].1)))
            .collect();
        svg.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"none\" stroke=\"#C04000\" stroke-width=\"2\"/>\n",
            coords.join(" ")
        ));
    }
    for &(x, y) in &pts {
        svg.push_str(&format!(
            "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"3\" fill=\"#202020\"/>\n",
            sx(x),
            sy(y)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
