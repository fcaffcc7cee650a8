//! Output artifacts: labelled SVG scatter plots and the run manifest.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::circumplex::{CentroidReport, CircumplexPoint};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 760.0;
const MARGIN: f64 = 70.0;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

#[derive(Clone, Debug, PartialEq)]
pub struct ScatterPoint {
    pub series: String,
    pub label: String,
    pub x: f64,
    pub y: f64,
}

/// Scatter plot on a square window centred on the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatterPlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<ScatterPoint>,
}

/// Pixel mapping of a plot: `px = x0 + sx * x`, `py = y0 - sy * y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisMap {
    pub extent: f64,
    pub x0: f64,
    pub y0: f64,
    pub sx: f64,
    pub sy: f64,
}

impl AxisMap {
    fn for_points(points: &[ScatterPoint]) -> Self {
        let max = points
            .iter()
            .flat_map(|p| [p.x.abs(), p.y.abs()])
            .filter(|v| v.is_finite())
            .fold(0.0, f64::max);
        let extent = if max > 0.0 { max * 1.15 } else { 1.0 };
        let (w, h) = (WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
        AxisMap {
            extent,
            x0: MARGIN + w / 2.0,
            y0: MARGIN + h / 2.0,
            sx: w / (2.0 * extent),
            sy: h / (2.0 * extent),
        }
    }

    pub fn px(&self, x: f64) -> f64 {
        self.x0 + self.sx * x
    }

    pub fn py(&self, y: f64) -> f64 {
        self.y0 - self.sy * y
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

impl ScatterPlot {
    pub fn axis_map(&self) -> AxisMap {
        AxisMap::for_points(&self.points)
    }

    /// Every marker is a `<circle class="marker">` carrying its data
    /// coordinates in `data-x`/`data-y`, followed by its text label.
    pub fn to_svg(&self) -> String {
        let map = self.axis_map();
        let mut series: Vec<&str> = Vec::new();
        for p in &self.points {
            if !series.contains(&p.series.as_str()) {
                series.push(&p.series);
            }
        }
        let colour = |s: &str| {
            let i = series.iter().position(|x| *x == s).unwrap_or(0);
            PALETTE[i % PALETTE.len()]
        };

        let mut svg = String::new();
        let (left, right) = (MARGIN, WIDTH - MARGIN);
        let (top, bottom) = (MARGIN, HEIGHT - MARGIN);
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" data-extent="{}" font-family="sans-serif">"#,
            map.extent
        );
        let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            svg,
            r#"<text x="{:.3}" y="30" text-anchor="middle" font-size="18">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            svg,
            r##"<rect x="{left}" y="{top}" width="{}" height="{}" fill="none" stroke="#999"/>"##,
            right - left,
            bottom - top
        );
        let _ = writeln!(
            svg,
            r##"<line class="axis" x1="{left}" y1="{:.3}" x2="{right}" y2="{:.3}" stroke="#444"/>"##,
            map.y0, map.y0
        );
        let _ = writeln!(
            svg,
            r##"<line class="axis" x1="{:.3}" y1="{top}" x2="{:.3}" y2="{bottom}" stroke="#444"/>"##,
            map.x0, map.x0
        );
        for (value, anchor_x) in [(-map.extent, left), (map.extent, right)] {
            let _ = writeln!(
                svg,
                r#"<text x="{anchor_x}" y="{:.3}" text-anchor="middle" font-size="11">{value:.3}</text>"#,
                bottom + 16.0
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="middle" font-size="14">{}</text>"#,
            WIDTH / 2.0,
            HEIGHT - 20.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            svg,
            r#"<text x="20" y="{:.3}" text-anchor="middle" font-size="14" transform="rotate(-90 20 {:.3})">{}</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0,
            escape(&self.y_label)
        );

        for p in &self.points {
            let (cx, cy) = (map.px(p.x), map.py(p.y));
            let _ = writeln!(
                svg,
                r#"<circle class="marker" cx="{cx:.3}" cy="{cy:.3}" r="4" fill="{}" data-series="{}" data-label="{}" data-x="{}" data-y="{}"/>"#,
                colour(&p.series),
                escape(&p.series),
                escape(&p.label),
                p.x,
                p.y
            );
            let _ = writeln!(
                svg,
                r#"<text x="{:.3}" y="{:.3}" font-size="10" fill="{}">{}</text>"#,
                cx + 6.0,
                cy - 4.0,
                colour(&p.series),
                escape(&p.label)
            );
        }

        if series.len() > 1 {
            for (i, s) in series.iter().enumerate() {
                let y = top + 14.0 + 16.0 * i as f64;
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{:.3}" cy="{y:.3}" r="4" fill="{}"/><text x="{:.3}" y="{:.3}" font-size="11">{}</text>"#,
                    right - 110.0,
                    colour(s),
                    right - 100.0,
                    y + 4.0,
                    escape(s)
                );
            }
        }
        svg.push_str("</svg>\n");
        svg
    }
}

/// Every (subcorpus, emotion) point, one series per subcorpus.
pub fn circumplex_plot(points: &[CircumplexPoint]) -> ScatterPlot {
    ScatterPlot {
        title: "Emotion circumplex by subcorpus".into(),
        x_label: "valence".into(),
        y_label: "arousal".into(),
        points: points
            .iter()
            .map(|p| ScatterPoint {
                series: p.subcorpus.clone(),
                label: p.emotion.clone(),
                x: p.valence,
                y: p.arousal,
            })
            .collect(),
    }
}

/// One point per subcorpus at its mean positivity and engagement.
pub fn aggregate_plot(aggregates: &[(String, f64, f64)]) -> ScatterPlot {
    ScatterPlot {
        title: "Aggregate positivity and engagement".into(),
        x_label: "positivity".into(),
        y_label: "engagement".into(),
        points: aggregates
            .iter()
            .map(|(name, x, y)| ScatterPoint {
                series: name.clone(),
                label: name.clone(),
                x: *x,
                y: *y,
            })
            .collect(),
    }
}

/// One point per emotion at its centroid.
pub fn centroid_plot(report: &CentroidReport) -> ScatterPlot {
    ScatterPlot {
        title: "Centroid emotion circumplex".into(),
        x_label: "valence".into(),
        y_label: "arousal".into(),
        points: report
            .centroids
            .iter()
            .map(|c| ScatterPoint {
                series: "centroid".into(),
                label: c.emotion.clone(),
                x: c.valence,
                y: c.arousal,
            })
            .collect(),
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDigest {
    pub file: String,
    pub bytes: usize,
    pub sha256: String,
}

impl OutputDigest {
    pub fn of(name: impl Into<String>, contents: &[u8]) -> Self {
        OutputDigest {
            file: name.into(),
            bytes: contents.len(),
            sha256: sha256_hex(contents),
        }
    }
}

/// Run record written next to the outputs. Contains no timestamps or
/// absolute paths, so equal runs produce equal manifests.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub config: serde_json::Value,
    pub input_sha256: String,
    pub outputs: Vec<OutputDigest>,
}

impl Manifest {
    pub fn load(path: &Path) -> crate::Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| crate::Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plot() -> ScatterPlot {
        ScatterPlot {
            title: "t & u".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            points: vec![
                ScatterPoint { series: "A".into(), label: "sad".into(), x: -0.2, y: 0.1 },
                ScatterPoint { series: "B".into(), label: "calm".into(), x: 0.4, y: -0.3 },
                ScatterPoint { series: "A".into(), label: "<odd>".into(), x: 0.0, y: 0.0 },
            ],
        }
    }

    fn attr(tag: &str, name: &str) -> String {
        let key = format!(" {name}=\"");
        let start = tag.find(&key).unwrap() + key.len();
        let end = start + tag[start..].find('"').unwrap();
        tag[start..end].to_string()
    }

    #[test]
    fn markers_are_affine_in_data() {
        let p = plot();
        let svg = p.to_svg();
        let markers: Vec<&str> = svg.lines().filter(|l| l.contains("class=\"marker\"")).collect();
        assert_eq!(markers.len(), 3);
        let map = p.axis_map();
        assert!((map.extent - 0.46).abs() < 1e-12);
        for m in markers {
            let x: f64 = attr(m, "data-x").parse().unwrap();
            let y: f64 = attr(m, "data-y").parse().unwrap();
            let cx: f64 = attr(m, "cx").parse().unwrap();
            let cy: f64 = attr(m, "cy").parse().unwrap();
            assert!((cx - map.px(x)).abs() < 1e-3);
            assert!((cy - map.py(y)).abs() < 1e-3);
        }
        assert!(svg.contains("&lt;odd&gt;"));
        assert!(svg.contains("t &amp; u"));
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn origin_sits_at_the_centre() {
        let map = plot().axis_map();
        assert_eq!((map.px(0.0), map.py(0.0)), (WIDTH / 2.0, HEIGHT / 2.0));
        assert!(map.py(0.1) < map.py(0.0));
    }

    #[test]
    fn empty_plot_still_renders() {
        let p = ScatterPlot { points: vec![], ..plot() };
        assert_eq!(p.axis_map().extent, 1.0);
        assert!(!p.to_svg().contains("marker"));
    }

    #[test]
    fn digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
