//! Two-colour SVG rendering of a finite coloring, with an optional segment overlay.

use std::fmt::Write as _;

use crate::coloring::FiniteColoring;
use crate::lattice::Vec2;
use crate::transect::Segment;

const DARK: &str = "#222222";
const LIGHT: &str = "#f2f2f2";
const ZERO: &str = "#ffffff";

#[derive(Clone, Debug)]
pub struct RenderOptions {
    /// Width of the image in pixels; the height follows the aspect ratio.
    pub width: f64,
    pub segment: Option<Segment>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self { width: 640.0, segment: None }
    }
}

/// Tiles with positive real weight are dark, negative light, zero white.
pub fn render_svg(col: &FiniteColoring, opts: &RenderOptions) -> String {
    let q = &col.tiling().domain;
    let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = -lo;
    for g in col.support() {
        for v in q.vertices() {
            let p = v + g.embedding;
            lo = lo.inf(&p);
            hi = hi.sup(&p);
        }
    }
    if col.is_empty() {
        lo = Vec2::zeros();
        hi = Vec2::new(1.0, 1.0);
    }
    let pad = 0.02 * (hi - lo).max();
    lo -= Vec2::new(pad, pad);
    hi += Vec2::new(pad, pad);
    let scale = opts.width / (hi.x - lo.x);
    let height = (hi.y - lo.y) * scale;
    // y grows downwards in SVG
    let px = |p: &Vec2| ((p.x - lo.x) * scale, (hi.y - p.y) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.1}" height="{:.1}" viewBox="0 0 {:.3} {:.3}">"#,
        opts.width, height, opts.width, height
    );
    for (g, z) in col.support().iter().zip(col.weights()) {
        let fill = if z.re > 0.0 {
            DARK
        } else if z.re < 0.0 {
            LIGHT
        } else {
            ZERO
        };
        let pts: Vec<String> = q
            .vertices()
            .iter()
            .map(|v| {
                let (x, y) = px(&(v + g.embedding));
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            r##"<polygon points="{}" fill="{fill}" stroke="#888888" stroke-width="0.5"/>"##,
            pts.join(" ")
        );
    }
    if let Some(seg) = &opts.segment {
        let (x0, y0) = px(&seg.line.point(seg.s0));
        let (x1, y1) = px(&seg.line.point(seg.s1));
        let _ = writeln!(
            out,
            r##"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}" stroke="#d62728" stroke-width="2.5"/>"##
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::ColoringRule;
    use crate::polygon::Tiling;
    use crate::transect::LineSpec;

    #[test]
    fn parity_board() {
        let col = FiniteColoring::block(Tiling::unit_square(), &ColoringRule::Parity, 3);
        let seg = Segment::new(LineSpec::new(0.0, 0.5), 0.0, 3.0).unwrap();
        let svg = render_svg(&col, &RenderOptions { width: 300.0, segment: Some(seg) });
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polygon").count(), 9);
        assert_eq!(svg.matches(DARK).count(), 5);
        assert_eq!(svg.matches(LIGHT).count(), 4);
        assert_eq!(svg.matches("<line").count(), 1);
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
