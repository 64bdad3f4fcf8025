//! Static SVG views of Betti curves (as bars) and persistence diagrams.
//!
//! Geometry is computed in `f64` purely for drawing; numbers are printed
//! with fixed precision so output is byte-stable across runs.

use std::fmt::Write as _;

use crate::homology::{BettiCurve, PersistenceDiagram};
use crate::rational::{to_f64, Rational};

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 40.0;
const ROW: f64 = 18.0;
const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn color(dim: usize) -> &'static str {
    PALETTE[dim % PALETTE.len()]
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// One horizontal bar per step per dimension; bar opacity grows with rank,
/// and rank-zero steps are drawn as thin outlines.
pub fn barcode(curves: &[BettiCurve]) -> String {
    let (lo, hi) = curves
        .iter()
        .flat_map(|c| c.steps.iter())
        .fold(None::<(Rational, Rational)>, |acc, s| match acc {
            None => Some((s.start.clone(), s.end.clone())),
            Some((l, h)) => Some((l.min(s.start.clone()), h.max(s.end.clone()))),
        })
        .map_or((0.0, 1.0), |(l, h)| (to_f64(&l), to_f64(&h)));
    let span = if hi > lo { hi - lo } else { 1.0 };
    let x = |t: &Rational| MARGIN + (to_f64(t) - lo) / span * (WIDTH - 2.0 * MARGIN);
    let max_rank = curves
        .iter()
        .flat_map(|c| c.steps.iter().map(|s| s.rank))
        .max()
        .unwrap_or(0)
        .max(1);
    let height = 2.0 * MARGIN + ROW * curves.len().max(1) as f64;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}">"#
    )
    .unwrap();
    writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();
    for (row, curve) in curves.iter().enumerate() {
        let y = MARGIN + row as f64 * ROW;
        writeln!(
            out,
            r#"<text x="4" y="{:.2}" font-size="11" font-family="monospace">H{}</text>"#,
            y + ROW * 0.7,
            curve.dimension
        )
        .unwrap();
        for step in &curve.steps {
            let (x0, x1) = (x(&step.start), x(&step.end));
            let w = (x1 - x0).max(1.5);
            let opacity = 0.25 + 0.75 * step.rank as f64 / max_rank as f64;
            let title = esc(&format!(
                "H{} rank {} on {}..{}{}",
                curve.dimension,
                step.rank,
                step.start,
                step.end,
                if step.end_included { "]" } else { ")" }
            ));
            if step.rank == 0 {
                writeln!(
                    out,
                    r#"<rect x="{x0:.2}" y="{:.2}" width="{w:.2}" height="2.00" fill="{}" fill-opacity="0.30"><title>{title}</title></rect>"#,
                    y + ROW * 0.45,
                    color(curve.dimension)
                )
                .unwrap();
            } else {
                writeln!(
                    out,
                    r#"<rect x="{x0:.2}" y="{:.2}" width="{w:.2}" height="{:.2}" fill="{}" fill-opacity="{opacity:.3}"><title>{title}</title></rect>"#,
                    y + 2.0,
                    ROW - 4.0,
                    color(curve.dimension)
                )
                .unwrap();
            }
        }
    }
    let axis_y = height - MARGIN + 8.0;
    writeln!(
        out,
        r##"<line x1="{MARGIN:.2}" y1="{axis_y:.2}" x2="{:.2}" y2="{axis_y:.2}" stroke="#444444"/>"##,
        WIDTH - MARGIN
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{MARGIN:.2}" y="{:.2}" font-size="10" font-family="monospace">{lo}</text>"#,
        axis_y + 12.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="10" font-family="monospace" text-anchor="end">{hi}</text>"#,
        WIDTH - MARGIN,
        axis_y + 12.0
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

/// The bounded square with its diagonal and one marker per diagram point,
/// radius growing with multiplicity. Birth runs along x, death along y.
pub fn diagram(d: &PersistenceDiagram) -> String {
    let side = WIDTH - 2.0 * MARGIN;
    let e1 = to_f64(d.bounds().eps1());
    let e2 = to_f64(d.bounds().eps2());
    let px = |v: &Rational| MARGIN + to_f64(v) / e1 * side;
    let py = |v: &Rational| MARGIN + side - to_f64(v) / e2 * side;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{WIDTH:.0}" viewBox="0 0 {WIDTH:.0} {WIDTH:.0}">"#
    )
    .unwrap();
    writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();
    writeln!(
        out,
        r##"<rect x="{MARGIN:.2}" y="{MARGIN:.2}" width="{side:.2}" height="{side:.2}" fill="none" stroke="#444444"/>"##
    )
    .unwrap();
    // the diagonal birth = death, clipped to the square
    let diag_end = e1.min(e2);
    writeln!(
        out,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999999" stroke-dasharray="4 3"/>"##,
        MARGIN,
        MARGIN + side,
        MARGIN + diag_end / e1 * side,
        MARGIN + side - diag_end / e2 * side
    )
    .unwrap();
    for (p, mult) in d.points() {
        let r = 3.0 + 2.0 * (mult as f64).sqrt();
        writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="{r:.2}" fill="#1f77b4" fill-opacity="0.7"><title>{} x{mult}</title></circle>"##,
            px(p.x1()),
            py(p.x2()),
            esc(&p.to_string())
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{VariableComplex, WORKED_EXAMPLE};
    use crate::exec::Strategy;
    use crate::homology::{betti_curve, diagram as build_diagram, FieldTag, PersistencePair};
    use crate::lifetime::Bounds;
    use crate::rational::int;

    #[test]
    fn barcode_has_one_bar_per_step() {
        let c = VariableComplex::parse(WORKED_EXAMPLE).unwrap();
        let curves: Vec<_> = (0..3)
            .map(|n| betti_curve(&c, n, FieldTag::F2, Strategy::Sequential).unwrap())
            .collect();
        let svg = barcode(&curves);
        let steps: usize = curves.iter().map(|c| c.steps.len()).sum();
        assert_eq!(svg.matches("<title>").count(), steps);
        assert_eq!(svg, barcode(&curves));
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn diagram_marker_per_point() {
        let b = Bounds::square(6);
        let pairs = [
            PersistencePair::finite(0, int(0), int(1)),
            PersistencePair::finite(0, int(0), int(1)),
            PersistencePair::essential(0, int(0)),
        ];
        let d = build_diagram(&pairs, &b).unwrap();
        let svg = diagram(&d);
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.contains("(0,1) x2"));
        assert!(svg.contains("stroke-dasharray"));
    }
}
