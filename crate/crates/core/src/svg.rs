//! SVG rendering of cased drawings.
//!
//! Edges are painted first, then every crossing repaints a short piece of
//! its top edge: a background stroke as wide as the casing, then the edge
//! stroke. Each crossing is handled on its own, so weaving casings render
//! without a global order. Vertices go last.

use std::fmt::Write;

use crate::arrangement::Arrangement;
use crate::crossing_graph::{Casing, CasingError};
use crate::exact::{to_f64, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    pub edge_color: String,
    pub background: String,
    pub vertex_color: String,
    /// Edge stroke width in drawing units; `None` is half the casing width.
    pub edge_width: Option<f64>,
    /// Background margin on each side of the edge stroke; `None` makes the
    /// cased edge exactly as wide as the casing width.
    pub casing_margin: Option<f64>,
    /// Vertex disk radius in drawing units; `None` is the edge width.
    pub vertex_radius: Option<f64>,
    /// Pixels per drawing unit.
    pub scale: f64,
    /// Page padding in drawing units.
    pub padding: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            edge_color: "#1f1f1f".into(),
            background: "#ffffff".into(),
            vertex_color: "#1f1f1f".into(),
            edge_width: None,
            casing_margin: None,
            vertex_radius: None,
            scale: 40.0,
            padding: 1.0,
        }
    }
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

pub fn render_svg(arr: &Arrangement, casing: &Casing, style: &SvgStyle) -> Result<String, CasingError> {
    casing.check(arr)?;
    let d = arr.drawing();
    let w = to_f64(d.casing_width());
    let edge_width = style.edge_width.unwrap_or(w / 2.0);
    let margin = style.casing_margin.unwrap_or(((w - edge_width) / 2.0).max(0.0));
    let radius = style.vertex_radius.unwrap_or(edge_width);
    let pt = |p: &crate::exact::Point| {
        let (x, y) = p.to_f64();
        (x, -y)
    };

    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for v in d.vertices() {
        let (x, y) = pt(&v.pos);
        (x0, y0, x1, y1) = (x0.min(x), y0.min(y), x1.max(x), y1.max(y));
    }
    if d.vertices().is_empty() {
        (x0, y0, x1, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    let (x0, y0) = (x0 - style.padding, y0 - style.padding);
    let (vw, vh) = (x1 - x0 + style.padding, y1 - y0 + style.padding);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        fmt(vw * style.scale),
        fmt(vh * style.scale),
        fmt(x0),
        fmt(y0),
        fmt(vw),
        fmt(vh)
    );
    let _ = writeln!(out, r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#, fmt(x0), fmt(y0), fmt(vw), fmt(vh), style.background);
    let line = |out: &mut String, class: &str, a: (f64, f64), b: (f64, f64), color: &str, width: f64| {
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="{}" stroke-linecap="butt"/>"#,
            fmt(a.0),
            fmt(a.1),
            fmt(b.0),
            fmt(b.1),
            fmt(width)
        );
    };

    let _ = writeln!(out, r#"<g id="edges">"#);
    for e in 0..d.num_edges() {
        let (a, b) = d.endpoints(e);
        line(&mut out, "edge", pt(a), pt(b), &style.edge_color, edge_width);
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="casings">"#);
    for c in arr.crossings() {
        let top = casing.top(c.id);
        let (a, b) = d.endpoints(top);
        let len = to_f64(&a.dist_sq(b)).sqrt();
        // Window of length 2 * tunnel length around the crossing, in
        // parameter units along the top edge and kept inside the edge.
        let t: &Rational = if top == c.edge_a { &c.param_a } else { &c.param_b };
        let half = c.tunnel.to_f64() / len;
        let (t0, t1) = ((to_f64(t) - half).max(0.0), (to_f64(t) + half).min(1.0));
        let (pa, pb) = (pt(a), pt(b));
        let at = |s: f64| (pa.0 + s * (pb.0 - pa.0), pa.1 + s * (pb.1 - pa.1));
        let _ = writeln!(out, r#"<g class="crossing" data-top="{}">"#, d.edges()[top].id);
        line(&mut out, "casing", at(t0), at(t1), &style.background, edge_width + 2.0 * margin);
        line(&mut out, "edge-over", at(t0), at(t1), &style.edge_color, edge_width);
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="vertices" fill="{}">"#, style.vertex_color);
    for v in d.vertices() {
        let (x, y) = pt(&v.pos);
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{}"/>"#, fmt(x), fmt(y), fmt(radius));
    }
    let _ = writeln!(out, "</g>\n</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossing_graph::zero_switch_casing;
    use crate::exact::{int, rat};
    use crate::fixtures::grid;

    #[test]
    fn one_pair_per_crossing() {
        let arr = Arrangement::build(&grid(3, 3, &int(1), &rat(1, 10))).unwrap();
        let c = zero_switch_casing(&arr).unwrap();
        let svg = render_svg(&arr, &c, &SvgStyle::default()).unwrap();
        assert_eq!(svg.matches(r#"class="casing""#).count(), 9);
        assert_eq!(svg.matches(r#"class="edge-over""#).count(), 9);
        assert_eq!(svg.matches("<circle").count(), 12);
        // Horizontals (ids 0..3) are on top at every crossing.
        assert_eq!(svg.matches(r#"data-top="3""#).count() + svg.matches(r#"data-top="4""#).count(), 0);
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn rejects_foreign_casing() {
        let arr = Arrangement::build(&grid(3, 3, &int(1), &rat(1, 10))).unwrap();
        let small = Arrangement::build(&grid(1, 1, &int(1), &rat(1, 10))).unwrap();
        let c = zero_switch_casing(&small).unwrap();
        assert!(render_svg(&arr, &c, &SvgStyle::default()).is_err());
    }
}
