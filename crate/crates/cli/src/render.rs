//! Deterministic SVG output. The y axis is flipped so the picture matches
//! the usual mathematical orientation.

use std::fmt::Write;

use segguard_core::slicer::GuardSet;
use segguard_core::{Point, Segment};

use crate::scene::Scene;

const MARGIN: f64 = 0.05;

fn num(v: f64) -> String {
    let s = format!("{:.6}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn xy(p: Point) -> String {
    format!("{},{}", num(p.x), num(-p.y))
}

fn line(out: &mut String, class: &str, s: Segment, stroke: f64) {
    let _ = writeln!(
        out,
        r#"  <line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke-width="{}"/>"#,
        num(s.a.x),
        num(-s.a.y),
        num(s.b.x),
        num(-s.b.y),
        num(stroke)
    );
}

fn marker(out: &mut String, class: &str, p: Point, r: f64) {
    let _ = writeln!(
        out,
        r#"  <circle class="{class}" cx="{}" cy="{}" r="{}"/>"#,
        num(p.x),
        num(-p.y),
        num(r)
    );
}

pub fn render_svg(scene: &Scene, guards: Option<&GuardSet>, with_trace: bool) -> String {
    let (lo, hi) = scene.polygon.bbox();
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let (mx, my) = (w * MARGIN, h * MARGIN);
    let size = w.max(h);
    let stroke = size * 0.004;
    let r = size * 0.012;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        num(lo.x - mx),
        num(-(hi.y + my)),
        num(w + 2.0 * mx),
        num(h + 2.0 * my)
    );
    let _ = writeln!(
        out,
        "  <style>.polygon{{fill:#f4f4f4;stroke:#222}}.source{{stroke:#1565c0}}.target{{stroke:#c62828}}\
         .sight{{fill:none;stroke:#888;stroke-dasharray:{} {}}}.reflex{{fill:#ef6c00}}.guard{{fill:#2e7d32}}</style>",
        num(stroke * 6.0),
        num(stroke * 3.0)
    );
    let pts: Vec<String> = scene.polygon.vertices().iter().map(|&p| xy(p)).collect();
    let _ = writeln!(
        out,
        r#"  <polygon class="polygon" points="{}" stroke-width="{}"/>"#,
        pts.join(" "),
        num(stroke)
    );
    line(&mut out, "source", scene.source, stroke * 2.0);
    line(&mut out, "target", scene.target, stroke * 2.0);

    if let (Some(g), true) = (guards, with_trace) {
        for rec in &g.trace {
            for (q, b) in [(rec.x_point, rec.lbv_x), (rec.y_point, rec.rbv_y)] {
                if let (Some(v), Some(tp)) = (b.vertex, b.t_point) {
                    let _ = writeln!(
                        out,
                        r#"  <polyline class="sight" points="{} {} {}" stroke-width="{}"/>"#,
                        xy(q),
                        xy(v),
                        xy(tp),
                        num(stroke)
                    );
                }
            }
        }
    }
    for v in scene.polygon.reflex_vertices() {
        marker(&mut out, "reflex", v, r);
    }
    if let Some(g) = guards {
        for &p in &g.guards {
            marker(&mut out, "guard", p, r * 1.3);
        }
    }
    out.push_str("</svg>\n");
    out
}
