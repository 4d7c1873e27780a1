//! Scene documents (the JSON interchange schema) and the SVG emitter.
//!
//! A scene is a named map of points, lines and circles. Serialization is
//! canonical: keys are sorted (BTreeMap), numbers use the shortest
//! round-trip decimal, and the rational backend adds parallel `*_exact`
//! maps holding `p/q` strings. Rendering is deterministic byte for byte.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::kernel::{Circle, Line, Point, Scalar};

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct CircleDoc {
    pub center: [f64; 2],
    pub r2: f64,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct StyleHint {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stroke: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SceneDocument {
    pub version: String,
    pub points: BTreeMap<String, [f64; 2]>,
    pub lines: BTreeMap<String, [f64; 3]>,
    pub circles: BTreeMap<String, CircleDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub styles: Option<BTreeMap<String, StyleHint>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points_exact: Option<BTreeMap<String, [String; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lines_exact: Option<BTreeMap<String, [String; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circles_exact: Option<BTreeMap<String, [String; 3]>>,
}

impl Default for SceneDocument {
    fn default() -> Self {
        SceneDocument {
            version: "1".to_string(),
            points: BTreeMap::new(),
            lines: BTreeMap::new(),
            circles: BTreeMap::new(),
            styles: None,
            points_exact: None,
            lines_exact: None,
            circles_exact: None,
        }
    }
}

impl SceneDocument {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_point<S: Scalar>(&mut self, name: &str, p: &Point<S>) {
        if !p.is_finite() {
            return;
        }
        let (x, y) = p.to_f64_pair();
        self.points.insert(name.to_string(), [x, y]);
        if S::EXACT {
            self.points_exact
                .get_or_insert_with(BTreeMap::new)
                .insert(name.to_string(), [exact_str(&p.x()), exact_str(&p.y())]);
        }
    }

    pub fn add_line<S: Scalar>(&mut self, name: &str, l: &Line<S>) {
        let (a, b, c) = l.coeffs();
        self.lines
            .insert(name.to_string(), [a.to_f64(), b.to_f64(), c.to_f64()]);
        if S::EXACT {
            self.lines_exact
                .get_or_insert_with(BTreeMap::new)
                .insert(name.to_string(), [exact_str(&a), exact_str(&b), exact_str(&c)]);
        }
    }

    pub fn add_circle<S: Scalar>(&mut self, name: &str, c: &Circle<S>) {
        let (x, y) = c.center().to_f64_pair();
        let r2 = c.radius_squared();
        self.circles.insert(
            name.to_string(),
            CircleDoc {
                center: [x, y],
                r2: r2.to_f64(),
            },
        );
        if S::EXACT {
            self.circles_exact.get_or_insert_with(BTreeMap::new).insert(
                name.to_string(),
                [
                    exact_str(&c.center().x()),
                    exact_str(&c.center().y()),
                    exact_str(&r2),
                ],
            );
        }
    }

    pub fn set_style(&mut self, name: &str, style: StyleHint) {
        self.styles
            .get_or_insert_with(BTreeMap::new)
            .insert(name.to_string(), style);
    }

    /// Canonical JSON: sorted keys, shortest round-trip numbers.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scene serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.lines.is_empty() && self.circles.is_empty()
    }

    /// Bounding box over points and circles (lines are unbounded and do not
    /// contribute); `None` for scenes with no bounded geometry.
    fn bbox(&self) -> Option<(f64, f64, f64, f64)> {
        let mut b: Option<(f64, f64, f64, f64)> = None;
        let mut grow = |x: f64, y: f64| {
            b = Some(match b {
                None => (x, y, x, y),
                Some((x0, y0, x1, y1)) => (x0.min(x), y0.min(y), x1.max(x), y1.max(y)),
            });
        };
        for [x, y] in self.points.values() {
            grow(*x, *y);
        }
        for c in self.circles.values() {
            let r = c.r2.max(0.0).sqrt();
            grow(c.center[0] - r, c.center[1] - r);
            grow(c.center[0] + r, c.center[1] + r);
        }
        b
    }
}

fn exact_str<S: Scalar>(v: &S) -> String {
    v.exact_repr().unwrap_or_else(|| format!("{v}"))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderOptions {
    /// Canvas size (square), in pixels.
    pub size: u32,
    /// Fraction of the canvas left as margin on each side.
    pub margin: f64,
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            size: 512,
            margin: 0.08,
            labels: true,
        }
    }
}

/// Shortest round-trip decimal; `format!("{}", f)` is ryu-backed in Rust.
fn fmt(x: f64) -> String {
    if x == 0.0 {
        // Avoid the "-0" byte difference.
        "0".to_string()
    } else {
        format!("{x}")
    }
}

/// Render a scene to a self-contained SVG string. Geometry is y-up; the flip
/// to SVG's y-down happens only here. Identical inputs produce identical
/// bytes.
pub fn render_scene(doc: &SceneDocument, opts: &RenderOptions) -> String {
    assert!(opts.size > 0);
    let mut out = String::new();
    let size = opts.size as f64;

    let bbox = doc.bbox();
    let (x0, y0, x1, y1) = match bbox {
        Some(b) => b,
        None => {
            out.push_str(&format!(
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"{0}\" height=\"{0}\"/>\n",
                opts.size
            ));
            return out;
        }
    };
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let margin = span * opts.margin.max(0.0) + 1e-12;
    let world = span + 2.0 * margin;
    let scale = size / world;
    // Center the bbox in the square canvas.
    let cx = (x0 + x1) / 2.0;
    let cy = (y0 + y1) / 2.0;
    let to_px = |x: f64, y: f64| -> (f64, f64) {
        let px = (x - cx) * scale + size / 2.0;
        // y-up world to y-down pixels.
        let py = size / 2.0 - (y - cy) * scale;
        (px, py)
    };

    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {0} {0}\" width=\"{0}\" height=\"{0}\">\n",
        opts.size
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    let stroke_of = |name: &str, fallback: &str| -> String {
        doc.styles
            .as_ref()
            .and_then(|s| s.get(name))
            .and_then(|s| s.stroke.clone())
            .unwrap_or_else(|| fallback.to_string())
    };
    let label_of = |name: &str| -> String {
        doc.styles
            .as_ref()
            .and_then(|s| s.get(name))
            .and_then(|s| s.label.clone())
            .unwrap_or_else(|| name.to_string())
    };

    // Clip window in world coordinates, slightly beyond the canvas.
    let half = world / 2.0 * 1.5;
    for (name, [a, b, c]) in &doc.lines {
        // Segment of the line spanning the clip box: intersect with the box
        // via the two dominant axes.
        let (dx, dy) = (-b, *a);
        let n2 = a * a + b * b;
        if n2 == 0.0 {
            continue;
        }
        // Closest point of the line to the view center.
        let e = a * cx + b * cy + c;
        let (fx, fy) = (cx - a * e / n2, cy - b * e / n2);
        let norm = (dx * dx + dy * dy).sqrt();
        let (ux, uy) = (dx / norm, dy / norm);
        let p = to_px(fx - ux * half * 2.0, fy - uy * half * 2.0);
        let q = to_px(fx + ux * half * 2.0, fy + uy * half * 2.0);
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"1\"/>\n",
            fmt(p.0),
            fmt(p.1),
            fmt(q.0),
            fmt(q.1),
            stroke_of(name, "#888888")
        ));
    }

    for (name, c) in &doc.circles {
        let r = c.r2.max(0.0).sqrt();
        let (px, py) = to_px(c.center[0], c.center[1]);
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1\"/>\n",
            fmt(px),
            fmt(py),
            fmt(r * scale),
            stroke_of(name, "#1f6fb2")
        ));
    }

    for (name, [x, y]) in &doc.points {
        let (px, py) = to_px(*x, *y);
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"{}\"/>\n",
            fmt(px),
            fmt(py),
            stroke_of(name, "#d0342c")
        ));
        if opts.labels {
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"10\" font-family=\"monospace\">{}</text>\n",
                fmt(px + 4.0),
                fmt(py - 4.0),
                xml_escape(&label_of(name))
            ));
        }
    }

    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
