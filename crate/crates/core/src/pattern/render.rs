//! Deterministic SVG output: one element per circle or line, a dot per
//! ideal vertex.

use std::fmt::Write as _;
use std::path::Path;

use super::types::CirclePattern;
use crate::error::Result;
use crate::geom::{ComplexPoint, GenCircle, C64};

/// Renders circles and dots into a square view fitted to `dots` (or to the
/// finite circles when there are no dots). The y axis points up.
pub fn svg_from_circles(circles: &[GenCircle], dots: &[C64]) -> String {
    let (mut lo, mut hi) = (C64::new(f64::INFINITY, f64::INFINITY), C64::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    let mut grow = |z: C64| {
        lo = C64::new(lo.re.min(z.re), lo.im.min(z.im));
        hi = C64::new(hi.re.max(z.re), hi.im.max(z.im));
    };
    for &z in dots {
        grow(z);
    }
    if dots.is_empty() {
        for c in circles {
            if let GenCircle::Circle { center, radius } = *c {
                grow(center - C64::new(radius, radius));
                grow(center + C64::new(radius, radius));
            }
        }
    }
    if !lo.re.is_finite() {
        lo = C64::new(-1.0, -1.0);
        hi = C64::new(1.0, 1.0);
    }
    let mid = (lo + hi) * 0.5;
    let half = 0.75 * (hi.re - lo.re).max(hi.im - lo.im).max(1e-6);
    let (x0, y0, w) = (mid.re - half, mid.im - half, 2.0 * half);
    let stroke = w / 500.0;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        x0, -(y0 + w), w, w
    );
    let _ = writeln!(s, r#"<g fill="none" stroke="black" stroke-width="{stroke:.6}">"#);
    for c in circles {
        match *c {
            GenCircle::Circle { center, radius } => {
                let _ = writeln!(s, r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}"/>"#, center.re, -center.im, radius);
            }
            GenCircle::Line { normal, offset } => {
                // points with Re(conj(normal)·z) = offset, spanning the view
                let n = normal / normal.norm();
                let base = n * (offset / normal.norm());
                let dir = C64::new(-n.im, n.re);
                let reach = 2.0 * (w + (base - mid).norm());
                let (p, q) = (base - dir * reach, base + dir * reach);
                let _ = writeln!(s, r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}"/>"#, p.re, -p.im, q.re, -q.im);
            }
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g fill="red" stroke="none">"#);
    for z in dots {
        let _ = writeln!(s, r#"<circle class="vertex" cx="{:.6}" cy="{:.6}" r="{:.6}"/>"#, z.re, -z.im, 3.0 * stroke);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

pub fn svg_string(pat: &CirclePattern) -> String {
    let dots: Vec<C64> = pat
        .ideal
        .iter()
        .filter_map(|p| match p {
            Some(ComplexPoint::Finite(z)) => Some(*z),
            _ => None,
        })
        .collect();
    svg_from_circles(&pat.circles(), &dots)
}

pub fn render_svg(pat: &CirclePattern, path: &Path) -> Result<()> {
    std::fs::write(path, svg_string(pat))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::drum;
    use crate::pattern::{realize, AngleAssignment, RealizeOptions};

    #[test]
    fn octahedron_svg() {
        let pat = realize(&drum(3).unwrap(), &AngleAssignment::right(), &RealizeOptions::default()).unwrap();
        let a = svg_string(&pat);
        let shapes = a.matches("<circle cx").count() + a.matches("<line").count();
        assert_eq!(shapes, 8);
        assert_eq!(a.matches("class=\"vertex\"").count(), 6);
        assert_eq!(a, svg_string(&pat));
    }
}
