//! Standalone SVG rendering of a point set and any number of edge layers.

use std::fmt::Write;

use crate::geometry::PointSet;

pub const CANVAS: f64 = 800.0;
pub const MARGIN_FRACTION: f64 = 0.05;

struct Stroke {
    color: &'static str,
    width: f64,
    dash: Option<&'static str>,
}

const STROKES: [Stroke; 4] = [
    Stroke {
        color: "#9aa5b1",
        width: 5.0,
        dash: None,
    },
    Stroke {
        color: "#c0392b",
        width: 1.8,
        dash: None,
    },
    Stroke {
        color: "#2471a3",
        width: 1.5,
        dash: Some("6 4"),
    },
    Stroke {
        color: "#1e8449",
        width: 1.5,
        dash: Some("2 3"),
    },
];

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeLayer {
    pub name: String,
    pub edges: Vec<(usize, usize)>,
    pub directed: bool,
}

impl EdgeLayer {
    pub fn new(name: impl Into<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        EdgeLayer {
            name: name.into(),
            edges: edges.into_iter().collect(),
            directed: false,
        }
    }

    pub fn directed(mut self, directed: bool) -> Self {
        self.directed = directed;
        self
    }
}

/// Maps plane coordinates onto the square canvas, preserving aspect ratio
/// and keeping a 5% margin on every side. The y axis points up.
struct Viewport {
    min_x: f64,
    min_y: f64,
    scale: f64,
    off_x: f64,
    off_y: f64,
}

impl Viewport {
    fn fit(s: &PointSet) -> Self {
        let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
        let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in s.iter() {
            min_x = min_x.min(p.x);
            min_y = min_y.min(p.y);
            max_x = max_x.max(p.x);
            max_y = max_y.max(p.y);
        }
        if s.is_empty() {
            (min_x, min_y, max_x, max_y) = (0.0, 0.0, 1.0, 1.0);
        }
        let inner = CANVAS * (1.0 - 2.0 * MARGIN_FRACTION);
        let span = (max_x - min_x).max(max_y - min_y);
        let scale = if span > 0.0 { inner / span } else { 1.0 };
        let margin = CANVAS * MARGIN_FRACTION;
        Viewport {
            min_x,
            min_y,
            scale,
            off_x: margin + 0.5 * (inner - (max_x - min_x) * scale),
            off_y: margin + 0.5 * (inner - (max_y - min_y) * scale),
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.off_x + (x - self.min_x) * self.scale,
            CANVAS - (self.off_y + (y - self.min_y) * self.scale),
        )
    }
}

/// Renders points as circles and each layer with its own stroke style, in
/// order (the last layer is drawn on top). Output is byte-for-byte
/// deterministic for identical input.
pub fn render_svg(s: &PointSet, layers: &[EdgeLayer], labels: bool) -> String {
    let vp = Viewport::fit(s);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    if layers.iter().any(|l| l.directed) {
        let _ = writeln!(
            out,
            r#"  <defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="context-stroke"/></marker></defs>"#
        );
    }

    for (i, layer) in layers.iter().enumerate() {
        let st = &STROKES[i % STROKES.len()];
        let dash = st
            .dash
            .map(|d| format!(r#" stroke-dasharray="{d}""#))
            .unwrap_or_default();
        let marker = if layer.directed {
            r#" marker-end="url(#arrow)""#
        } else {
            ""
        };
        let _ = writeln!(
            out,
            r#"  <g class="edges" data-layer="{}" stroke="{}" stroke-width="{}" stroke-linecap="round" fill="none"{dash}{marker}>"#,
            escape(&layer.name),
            st.color,
            st.width
        );
        for &(a, b) in &layer.edges {
            let (Some(pa), Some(pb)) = (s.points().get(a), s.points().get(b)) else {
                continue;
            };
            let (x1, y1) = vp.map(pa.x, pa.y);
            let (x2, y2) = vp.map(pb.x, pb.y);
            let _ = writeln!(
                out,
                r#"    <line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
            );
        }
        let _ = writeln!(out, "  </g>");
    }

    let _ = writeln!(out, r#"  <g class="points" fill="black">"#);
    for p in s.iter() {
        let (cx, cy) = vp.map(p.x, p.y);
        let _ = writeln!(out, r#"    <circle cx="{cx:.3}" cy="{cy:.3}" r="4"/>"#);
    }
    let _ = writeln!(out, "  </g>");

    if labels {
        let _ = writeln!(
            out,
            r##"  <g class="labels" font-family="sans-serif" font-size="14" fill="#333">"##
        );
        for (i, p) in s.iter().enumerate() {
            let text = s
                .label(i)
                .map(str::to_string)
                .unwrap_or_else(|| i.to_string());
            let (cx, cy) = vp.map(p.x, p.y);
            let _ = writeln!(
                out,
                r#"    <text x="{:.3}" y="{:.3}">{}</text>"#,
                cx + 6.0,
                cy - 6.0,
                escape(&text)
            );
        }
        let _ = writeln!(out, "  </g>");
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn sample() -> PointSet {
        PointSet::from_labeled([
            (Point::new(0.0, 0.0), Some("p".into())),
            (Point::new(0.0, 1.0), Some("q".into())),
            (Point::new(-2.0, 0.1), None),
        ])
        .unwrap()
    }

    #[test]
    fn points_only() {
        let svg = render_svg(&sample(), &[], false);
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(!svg.contains("<line"));
        assert!(!svg.contains("<text"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn layers_get_distinct_styles_in_order() {
        let layers = [
            EdgeLayer::new("G^d", [(0, 1), (0, 2)]),
            EdgeLayer::new("Y_k", [(0, 2)]),
        ];
        let svg = render_svg(&sample(), &layers, true);
        let first = svg.find(r#"data-layer="G^d""#).unwrap();
        let second = svg.find(r#"data-layer="Y_k""#).unwrap();
        assert!(first < second);
        assert!(svg.contains(STROKES[0].color) && svg.contains(STROKES[1].color));
        assert_eq!(svg.matches("<line").count(), 3);
        assert!(svg.contains(">p</text>") && svg.contains(">2</text>"));
    }

    #[test]
    fn coordinates_respect_the_margin() {
        let svg = render_svg(&sample(), &[], false);
        let lo = CANVAS * MARGIN_FRACTION - 1e-9;
        let hi = CANVAS * (1.0 - MARGIN_FRACTION) + 1e-9;
        for attr in ["cx=\"", "cy=\""] {
            for chunk in svg.split(attr).skip(1) {
                let v: f64 = chunk.split('"').next().unwrap().parse().unwrap();
                assert!(v >= lo && v <= hi, "{v}");
            }
        }
    }

    #[test]
    fn deterministic_and_tolerates_single_point() {
        let s = sample();
        let layers = [EdgeLayer::new("a", [(0, 1)]).directed(true)];
        assert_eq!(render_svg(&s, &layers, true), render_svg(&s, &layers, true));
        assert!(render_svg(&s, &layers, false).contains("marker-end"));
        let one = PointSet::from_points([Point::new(3.0, 3.0)]).unwrap();
        assert!(render_svg(&one, &[], false).contains("<circle"));
    }
}
