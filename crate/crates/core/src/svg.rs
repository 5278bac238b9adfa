//! SVG rendering of a solved polygon.

use std::fmt::Write;

use crate::certificate::Certificate;
use crate::geometry::{RasterGraph, Rect};
use crate::solver::GuardSet;

pub const GUARD_RADIUS: f64 = 0.15;
const PX_PER_UNIT: f64 = 40.0;
const MARGIN: f64 = 0.5;

/// Draws pixels, the polygon outline, witness pixels and guard points.
/// Coordinates are polygon units with the y axis pointing up.
pub fn render_svg(raster: &RasterGraph, guards: &GuardSet, certificate: Option<&Certificate>) -> String {
    let pts = raster.polygon.vertices();
    let x0 = pts.iter().map(|p| p.x).min().unwrap_or(0) as f64 - MARGIN;
    let x1 = pts.iter().map(|p| p.x).max().unwrap_or(0) as f64 + MARGIN;
    let y0 = pts.iter().map(|p| p.y).min().unwrap_or(0) as f64 - MARGIN;
    let y1 = pts.iter().map(|p| p.y).max().unwrap_or(0) as f64 + MARGIN;
    let (w, h) = (x1 - x0, y1 - y0);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        w * PX_PER_UNIT,
        h * PX_PER_UNIT,
        x0,
        -y1,
        w,
        h
    );
    let _ = writeln!(s, r#"<g transform="scale(1,-1)">"#);

    let rect = |s: &mut String, r: &Rect, class: &str, style: &str| {
        let _ = writeln!(
            s,
            r#"<rect class="{class}" x="{}" y="{}" width="{}" height="{}" style="{style}"/>"#,
            r.x_min,
            r.y_min,
            r.x_max - r.x_min,
            r.y_max - r.y_min
        );
    };
    for p in raster.pixels() {
        rect(&mut s, &p.rect, "pixel", "fill:#eef2f7;stroke:#c5cedb;stroke-width:0.02");
    }
    if let Some(rects) = certificate.and_then(|c| c.witness_pixels.as_ref()) {
        for r in rects {
            rect(&mut s, r, "witness", "fill:#f4b860;fill-opacity:0.7;stroke:none");
        }
    }

    let path: Vec<String> = pts.iter().map(|p| format!("{},{}", p.x, p.y)).collect();
    let _ = writeln!(
        s,
        r#"<polygon class="outline" points="{}" style="fill:none;stroke:#222;stroke-width:0.05"/>"#,
        path.join(" ")
    );
    for [x, y] in guards.points() {
        let _ = writeln!(
            s,
            r##"<circle class="guard" cx="{x}" cy="{y}" r="{GUARD_RADIUS}" style="fill:#c0392b"/>"##
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
