//! Point-cloud ingestion and barcode export (CSV, JSON, SVG).

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, Metric};
use crate::persistence::Barcode;

/// Reads comma-separated points, one per line. Lines starting with `#` are
/// skipped; every row must have the same number of fields.
pub fn ingest_csv(path: impl AsRef<Path>, metric: Metric) -> Result<FiniteMetricSpace> {
    let file = std::fs::File::open(path)?;
    parse_csv(file, metric)
}

pub fn parse_csv(reader: impl Read, metric: Metric) -> Result<FiniteMetricSpace> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut coords = Vec::new();
    let mut dim = None;
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let width = *dim.get_or_insert(record.len());
        if record.len() != width {
            return Err(Error::Parse {
                line,
                message: format!("expected {width} fields, found {}", record.len()),
            });
        }
        for field in record.iter() {
            let x: f64 = field.parse().map_err(|_| Error::Parse {
                line,
                message: format!("`{field}` is not a number"),
            })?;
            coords.push(x);
        }
    }
    let Some(dim) = dim else {
        return Err(Error::Parse {
            line: 1,
            message: "no data rows".into(),
        });
    };
    FiniteMetricSpace::from_flat(coords, dim, metric)
}

/// Writes points as CSV with full round-trip precision.
pub fn points_to_csv(space: &FiniteMetricSpace) -> String {
    let mut out = String::new();
    for p in space.points() {
        let row: Vec<String> = p.iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Formats `x` with 12 significant digits, `%g` style.
pub fn format_sig12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x > 0.0 { "inf".into() } else if x < 0.0 { "-inf".into() } else { "nan".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Barcode as CSV: header `dim,birth,death`, `inf` for infinite deaths.
pub fn barcode_to_csv(barcode: &Barcode) -> String {
    let mut out = String::from("dim,birth,death\n");
    for iv in &barcode.intervals {
        let _ = writeln!(
            out,
            "{},{},{}",
            iv.dim,
            format_sig12(iv.birth),
            format_sig12(iv.death)
        );
    }
    out
}

/// Run metadata recorded alongside an exported barcode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExportMeta {
    pub delta: f64,
    pub resolution: f64,
    pub metric: String,
    pub division: String,
    pub normalize: String,
    pub normalization: f64,
    pub seed: u64,
    pub cover_size: usize,
    pub nerve_sizes: Vec<usize>,
}

/// Barcode as JSON: `{meta: {...}, intervals: [[dim, birth, death|null], ...]}`.
pub fn barcode_to_json(barcode: &Barcode, meta: &ExportMeta) -> String {
    let intervals: Vec<Value> = barcode
        .intervals
        .iter()
        .map(|iv| {
            let death = if iv.is_infinite() { Value::Null } else { json!(iv.death) };
            json!([iv.dim, iv.birth, death])
        })
        .collect();
    let doc = json!({ "meta": meta, "intervals": intervals });
    let mut s = serde_json::to_string_pretty(&doc).expect("barcode serializes");
    s.push('\n');
    s
}

/// Static SVG: one band per homology dimension, bars sorted by birth, infinite
/// bars running to the right margin and ending in an arrowhead.
///
/// `window` restricts the horizontal axis; bars are clipped to it.
pub fn barcode_to_svg(barcode: &Barcode, window: Option<(f64, f64)>) -> String {
    const WIDTH: f64 = 800.0;
    const LEFT: f64 = 60.0;
    const RIGHT: f64 = 30.0;
    const BAR: f64 = 4.0;
    const GAP: f64 = 2.0;
    const BAND_PAD: f64 = 24.0;
    const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

    let finite_max = barcode
        .intervals
        .iter()
        .flat_map(|iv| [iv.birth, iv.death])
        .filter(|v| v.is_finite())
        .fold(0.0f64, f64::max);
    let (lo, hi) = window.unwrap_or((0.0, if finite_max > 0.0 { finite_max * 1.05 } else { 1.0 }));
    let span = (hi - lo).max(f64::EPSILON);
    let x_of = |v: f64| LEFT + (v.clamp(lo, hi) - lo) / span * (WIDTH - LEFT - RIGHT);

    let mut bands = Vec::new();
    for dim in 0..barcode.homology_dims {
        let mut bars: Vec<_> = barcode
            .in_dim(dim)
            .filter(|iv| iv.death > lo && iv.birth < hi)
            .collect();
        bars.sort_by(|a, b| a.birth.total_cmp(&b.birth).then(b.death.total_cmp(&a.death)));
        bands.push(bars);
    }
    let height: f64 = 40.0
        + bands
            .iter()
            .map(|b| BAND_PAD + (b.len().max(1) as f64) * (BAR + GAP))
            .sum::<f64>();

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height:.0}" viewBox="0 0 {WIDTH} {height:.0}" font-family="sans-serif" font-size="12">"#
    );
    svg.push_str(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="4" markerHeight="4" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>"#,
    );
    svg.push('\n');
    let mut y = 10.0;
    for (dim, bars) in bands.iter().enumerate() {
        let color = COLORS[dim % COLORS.len()];
        let _ = writeln!(svg, r#"<text x="8" y="{:.1}">H{dim}</text>"#, y + 14.0);
        y += BAND_PAD;
        for iv in bars {
            let (x0, x1) = (x_of(iv.birth), x_of(iv.death));
            let marker = if iv.is_infinite() { r#" marker-end="url(#arrow)""# } else { "" };
            let _ = writeln!(
                svg,
                r#"<line x1="{x0:.2}" y1="{y:.1}" x2="{x1:.2}" y2="{y:.1}" stroke="{color}" stroke-width="{BAR}"{marker}/>"#
            );
            y += BAR + GAP;
        }
        if bars.is_empty() {
            y += BAR + GAP;
        }
    }
    let axis_y = y + 6.0;
    let _ = writeln!(
        svg,
        r#"<line x1="{LEFT}" y1="{axis_y:.1}" x2="{:.1}" y2="{axis_y:.1}" stroke="black"/>"#,
        WIDTH - RIGHT
    );
    for (v, anchor) in [(lo, "start"), (hi, "end")] {
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="{anchor}">{}</text>"#,
            x_of(v),
            axis_y + 16.0,
            format_sig12((v * 1e4).round() / 1e4)
        );
    }
    svg.push_str("</svg>\n");
    svg
}
