//! Multi-panel SVG line charts from `summary.csv`.
//!
//! One panel per transmission range, x = node count, y = metric mean, one
//! polyline per scheme. Layout is fixed: 360x280 panels, two columns when
//! there is more than one panel, legend row underneath. Scaling is linear;
//! y runs from 0 to 1.05 x the largest mean in the panel, x spans the
//! panel's node counts, 5 ticks per axis. Output is a pure function of the
//! input rows.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use crate::backbone::Scheme;
use crate::error::{Error, Result};

const PANEL_W: f64 = 360.0;
const PANEL_H: f64 = 280.0;
const MARGIN_L: f64 = 56.0;
const MARGIN_R: f64 = 16.0;
const MARGIN_T: f64 = 32.0;
const MARGIN_B: f64 = 44.0;
const LEGEND_H: f64 = 36.0;
const TICKS: usize = 5;

/// Series colors, indexed like [`Scheme::ALL`].
pub const PALETTE: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub metric: String,
    /// Transmission ranges, one panel each. Empty means every range in the
    /// input, in order of first appearance.
    pub panels: Vec<f64>,
    /// Schemes to draw. Empty means every scheme in the input.
    pub series: Vec<Scheme>,
    pub input: PathBuf,
    pub output: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub range: f64,
    pub series: Vec<(Scheme, Vec<(f64, f64)>)>,
}

/// Reads the summary CSV and collects `(n, mean)` points per panel and
/// scheme. Infeasible rows are skipped.
pub fn load_panels(spec: &PlotSpec) -> Result<Vec<Panel>> {
    let mut reader = csv::Reader::from_path(&spec.input)?;
    let headers = reader.headers()?.clone();
    let mean_col = format!("{}_mean", spec.metric);
    let required = ["n", "r", "scheme", "infeasible", mean_col.as_str()];
    let missing: Vec<String> = required
        .iter()
        .filter(|c| !headers.iter().any(|h| h == **c))
        .map(|c| c.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingColumns {
            path: spec.input.clone(),
            columns: missing,
        });
    }
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let (i_n, i_r, i_s, i_inf, i_m) = (col("n"), col("r"), col("scheme"), col("infeasible"), col(&mean_col));

    let mut ranges: Vec<f64> = Vec::new();
    let mut schemes: Vec<Scheme> = Vec::new();
    let mut points: BTreeMap<(u64, Scheme), Vec<(f64, f64)>> = BTreeMap::new();
    for record in reader.records() {
        let record = record?;
        let parse = |i: usize| -> Result<f64> {
            record[i].parse::<f64>().map_err(|_| {
                Error::InvalidConfig(format!(
                    "{}: bad number `{}` in column {}",
                    spec.input.display(),
                    &record[i],
                    &headers[i]
                ))
            })
        };
        let r = parse(i_r)?;
        let scheme: Scheme = record[i_s].parse()?;
        if !ranges.contains(&r) {
            ranges.push(r);
        }
        if !schemes.contains(&scheme) {
            schemes.push(scheme);
        }
        if &record[i_inf] == "true" {
            continue;
        }
        points.entry((r.to_bits(), scheme)).or_default().push((parse(i_n)?, parse(i_m)?));
    }

    let panels = if spec.panels.is_empty() { ranges } else { spec.panels.clone() };
    let series = if spec.series.is_empty() { schemes } else { spec.series.clone() };
    if panels.is_empty() {
        return Err(Error::EmptyPlot("no panels".into()));
    }
    if series.is_empty() {
        return Err(Error::EmptyPlot("no series".into()));
    }
    let out: Vec<Panel> = panels
        .iter()
        .map(|&range| Panel {
            range,
            series: series
                .iter()
                .map(|&s| {
                    let mut pts = points.get(&(range.to_bits(), s)).cloned().unwrap_or_default();
                    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
                    (s, pts)
                })
                .collect(),
        })
        .collect();
    if out.iter().all(|p| p.series.iter().all(|(_, pts)| pts.is_empty())) {
        return Err(Error::EmptyPlot(format!(
            "no feasible `{}` data for the requested panels and series",
            spec.metric
        )));
    }
    Ok(out)
}

pub fn plot(spec: &PlotSpec) -> Result<()> {
    let panels = load_panels(spec)?;
    std::fs::write(&spec.output, render_svg(&spec.metric, &panels))?;
    Ok(())
}

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

pub fn render_svg(metric: &str, panels: &[Panel]) -> String {
    let cols = if panels.len() > 1 { 2 } else { 1 };
    let rows = panels.len().div_ceil(cols);
    let width = PANEL_W * cols as f64;
    let height = PANEL_H * rows as f64 + LEGEND_H;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}" font-family="sans-serif" font-size="11">"#,
        w = num(width),
        h = num(height)
    );
    let _ = writeln!(
        svg,
        "<!-- metric={metric}; x: node count, linear over panel data; y: mean, linear 0..1.05*max per panel; {TICKS} ticks per axis; averages over unordered distinct node pairs -->"
    );
    let _ = writeln!(svg, r#"<rect width="{}" height="{}" fill="white"/>"#, num(width), num(height));

    for (k, panel) in panels.iter().enumerate() {
        let ox = PANEL_W * (k % cols) as f64;
        let oy = PANEL_H * (k / cols) as f64;
        render_panel(&mut svg, metric, panel, k, ox, oy);
    }

    // legend
    let mut seen: Vec<Scheme> = Vec::new();
    for p in panels {
        for (s, _) in &p.series {
            if !seen.contains(s) {
                seen.push(*s);
            }
        }
    }
    let _ = writeln!(svg, r#"<g class="legend" transform="translate(0 {})">"#, num(PANEL_H * rows as f64));
    for (i, s) in seen.iter().enumerate() {
        let x = 16.0 + 118.0 * (i % 6) as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="18" x2="{}" y2="18" stroke="{}" stroke-width="2"/><text x="{}" y="22">{}</text>"#,
            num(x),
            num(x + 18.0),
            color(*s),
            num(x + 22.0),
            s
        );
    }
    svg.push_str("</g>\n</svg>\n");
    svg
}

fn color(s: Scheme) -> &'static str {
    PALETTE[Scheme::ALL.iter().position(|x| *x == s).unwrap()]
}

fn render_panel(svg: &mut String, metric: &str, panel: &Panel, index: usize, ox: f64, oy: f64) {
    let pts = panel.series.iter().flat_map(|(_, p)| p.iter());
    let (mut xmin, mut xmax, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for &(x, y) in pts {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymax = ymax.max(y);
    }
    if !xmin.is_finite() {
        (xmin, xmax) = (0.0, 1.0);
    }
    if xmin == xmax {
        (xmin, xmax) = (xmin - 1.0, xmax + 1.0);
    }
    let ytop = if ymax > 0.0 { 1.05 * ymax } else { 1.0 };
    let plot_w = PANEL_W - MARGIN_L - MARGIN_R;
    let plot_h = PANEL_H - MARGIN_T - MARGIN_B;
    let sx = |x: f64| MARGIN_L + (x - xmin) / (xmax - xmin) * plot_w;
    let sy = |y: f64| MARGIN_T + plot_h - y / ytop * plot_h;

    let _ = writeln!(svg, r#"<g class="panel" transform="translate({} {})">"#, num(ox), num(oy));
    let letter = (b'a' + (index % 26) as u8) as char;
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="18" text-anchor="middle" font-size="12">({letter}) r = {}</text>"#,
        num(MARGIN_L + plot_w / 2.0),
        num(panel.range)
    );
    let _ = writeln!(
        svg,
        r#"<path d="M{l} {t}V{b}H{r}" fill="none" stroke="black"/>"#,
        l = num(MARGIN_L),
        t = num(MARGIN_T),
        b = num(MARGIN_T + plot_h),
        r = num(MARGIN_L + plot_w)
    );
    for i in 0..TICKS {
        let f = i as f64 / (TICKS - 1) as f64;
        let yv = f * ytop;
        let xv = xmin + f * (xmax - xmin);
        let _ = writeln!(
            svg,
            r#"<line x1="{a}" y1="{y}" x2="{l}" y2="{y}" stroke="black"/><text x="{tx}" y="{ty}" text-anchor="end">{lab}</text>"#,
            a = num(MARGIN_L - 4.0),
            l = num(MARGIN_L),
            y = num(sy(yv)),
            tx = num(MARGIN_L - 6.0),
            ty = num(sy(yv) + 4.0),
            lab = num(yv)
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{x}" y1="{b}" x2="{x}" y2="{b4}" stroke="black"/><text x="{x}" y="{ty}" text-anchor="middle">{lab}</text>"#,
            x = num(sx(xv)),
            b = num(MARGIN_T + plot_h),
            b4 = num(MARGIN_T + plot_h + 4.0),
            ty = num(MARGIN_T + plot_h + 16.0),
            lab = num(xv)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">number of nodes</text>"#,
        num(MARGIN_L + plot_w / 2.0),
        num(PANEL_H - 8.0)
    );
    let _ = writeln!(
        svg,
        r#"<text transform="translate(14 {}) rotate(-90)" text-anchor="middle">{metric}</text>"#,
        num(MARGIN_T + plot_h / 2.0)
    );
    for (scheme, points) in &panel.series {
        let c = color(*scheme);
        if points.len() >= 2 {
            let coords: Vec<String> = points.iter().map(|&(x, y)| format!("{},{}", num(sx(x)), num(sy(y)))).collect();
            let _ = writeln!(
                svg,
                r#"<polyline class="series" data-scheme="{scheme}" points="{}" fill="none" stroke="{c}" stroke-width="1.5"/>"#,
                coords.join(" ")
            );
        }
        for &(x, y) in points {
            let _ = writeln!(
                svg,
                r#"<circle class="marker" data-scheme="{scheme}" cx="{}" cy="{}" r="2.5" fill="{c}"/>"#,
                num(sx(x)),
                num(sy(y))
            );
        }
    }
    svg.push_str("</g>\n");
}
