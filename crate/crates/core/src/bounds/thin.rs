//! Thin-polygon check: a long perpendicular across an ideal polygon forces
//! two edges on opposite sides of it to be close.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{geodesic_distance, ComplexPoint, Geodesic, Mobius, C64};
use crate::pattern::CirclePattern;

pub const THIN_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThinPolygonReport {
    pub n: usize,
    pub e1: usize,
    pub e2: usize,
    /// Length of the common perpendicular of e1, e2.
    pub l: f64,
    pub e3: usize,
    pub e4: usize,
    /// Distance between e3 and e4, minimal over pairs separated by g.
    pub d: f64,
    pub lhs: f64,
    pub pass: bool,
    /// ε with l·sinh(ε) = (n − 2)π.
    pub epsilon: f64,
    /// Lengths of the parts of g whose ε-arc meets ∂F in 0, 1, 2 points.
    pub decomposition: [f64; 3],
}

/// Ideal vertices of face `f` in cyclic order.
pub fn face_points(pat: &CirclePattern, f: usize) -> Result<Vec<ComplexPoint>> {
    pat.poly.faces[f]
        .iter()
        .map(|&v| pat.ideal[v].ok_or_else(|| Error::InvalidInput(format!("vertex {v} is not ideal"))))
        .collect()
}

/// sinh(d/2)·sinh((π−2)l/(2π(n−3))).
pub fn thin_lhs(d: f64, l: f64, n: usize) -> f64 {
    (d / 2.0).sinh() * ((PI - 2.0) * l / (2.0 * PI * (n as f64 - 3.0))).sinh()
}

/// Real coordinates of the vertices in a half-plane model where g is the
/// imaginary axis, e1 the unit semicircle and e2 the semicircle of radius
/// e^l > 1.
fn normalize(points: &[ComplexPoint], e1: usize, e2: usize) -> Result<Vec<f64>> {
    let n = points.len();
    let t = Mobius::from_triple(
        [points[0], points[1], points[2]],
        [ComplexPoint::new(0.0, 0.0), ComplexPoint::new(1.0, 0.0), ComplexPoint::Infinity],
    )?;
    // send the midpoint of the arc between vertices 0 and 1 to ∞
    let shift = Mobius::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(-0.5, 0.0))?;
    let m = shift.compose(&t);
    let mut x = Vec::with_capacity(n);
    for &p in points {
        match m.apply(p) {
            ComplexPoint::Finite(z) if z.im.abs() < 1e-8 * (1.0 + z.re.abs()) => x.push(z.re),
            _ => return Err(Error::InvalidInput("face vertices are not concircular".into())),
        }
    }
    let circ = |k: usize| {
        let (a, b) = (x[k], x[(k + 1) % n]);
        ((a + b) / 2.0, (b - a).abs() / 2.0)
    };
    let (m1, r1) = circ(e1);
    let (m2, r2) = circ(e2);
    let y: Vec<f64> = if (m1 - m2).abs() < 1e-14 * (m1.abs() + r1 + r2) {
        x.iter().map(|v| (v - m1) / r1).collect()
    } else {
        let sigma = ((m2 * m2 - r2 * r2) - (m1 * m1 - r1 * r1)) / (m2 - m1);
        let prod = r1 * r1 + m1 * sigma - m1 * m1;
        let disc = sigma * sigma / 4.0 - prod;
        if disc <= 0.0 {
            return Err(Error::InvalidInput("edges are not disjoint".into()));
        }
        let (xi, eta) = (sigma / 2.0 - disc.sqrt(), sigma / 2.0 + disc.sqrt());
        let f = |v: f64| (v - xi) / (v - eta);
        let k = 1.0 / f(x[e1]).abs();
        x.iter().map(|&v| k * f(v)).collect()
    };
    let r_e2 = (y[e2] - y[(e2 + 1) % n]).abs() / 2.0;
    if r_e2 < 1.0 {
        Ok(y.iter().map(|v| -1.0 / v).collect())
    } else {
        Ok(y)
    }
}

/// Lengths of g where the arc of radius ε perpendicular to g meets the
/// boundary in 0, 1 and 2 points.
fn decomposition(y: &[f64], e1: usize, e2: usize, l: f64, eps: f64) -> [f64; 3] {
    let n = y.len();
    let tau = eps.tanh();
    let edges: Vec<(f64, f64)> = (0..n)
        .filter(|&k| k != e1 && k != e2)
        .map(|k| {
            let (a, b) = (y[k], y[(k + 1) % n]);
            ((a + b) / 2.0, (b - a).abs() / 2.0)
        })
        .collect();
    let mut cuts = vec![0.0, l];
    for &(c, r) in &edges {
        for sign in [-1.0, 1.0] {
            // ρ² − 2·sign·c·τ·ρ + c² − r² = 0
            let b = sign * c * tau;
            let disc = b * b - (c * c - r * r);
            if disc >= 0.0 {
                for rho in [b - disc.sqrt(), b + disc.sqrt()] {
                    if rho > 0.0 {
                        let s = rho.ln();
                        if s > 0.0 && s < l {
                            cuts.push(s);
                        }
                    }
                }
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    let mut out = [0.0; 3];
    for w in cuts.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let rho = (0.5 * (w[0] + w[1])).exp();
        let count = edges
            .iter()
            .filter(|&&(c, r)| {
                if c.abs() < 1e-300 {
                    return false;
                }
                let re = (rho * rho + c * c - r * r) / (2.0 * c);
                re.abs() < rho && re.abs() <= rho * tau
            })
            .count();
        out[count.min(2)] += w[1] - w[0];
    }
    out
}

/// Checks sinh(d/2)·sinh((π−2)l/(2π(n−3))) ≤ 1 for the perpendicular of
/// edges `e1`, `e2` (positions in the cyclic vertex list).
pub fn thin_polygon_check(points: &[ComplexPoint], e1: usize, e2: usize) -> Result<ThinPolygonReport> {
    let n = points.len();
    if n < 4 {
        return Err(Error::LemmaInapplicable(format!("polygon has {n} sides")));
    }
    if e1 >= n || e2 >= n {
        return Err(Error::InvalidInput("edge position out of range".into()));
    }
    if e1 == e2 || (e1 + 1) % n == e2 || (e2 + 1) % n == e1 {
        return Err(Error::AdjacentEdges(format!("edges {e1} and {e2}")));
    }
    let (e1, e2) = (e1.min(e2), e1.max(e2));
    let geo = |k: usize| Geodesic::new(points[k], points[(k + 1) % n]);
    let l = geodesic_distance(&geo(e1)?, &geo(e2)?).distance;
    let side_a: Vec<usize> = (e1 + 1..e2).collect();
    let side_b: Vec<usize> = (e2 + 1..e1 + n).map(|k| k % n).collect();
    let mut best = (f64::INFINITY, 0, 0);
    for &a in &side_a {
        for &b in &side_b {
            let d = geodesic_distance(&geo(a)?, &geo(b)?).distance;
            if d < best.0 {
                best = (d, a, b);
            }
        }
    }
    let (d, e3, e4) = best;
    let lhs = thin_lhs(d, l, n);
    let epsilon = ((n as f64 - 2.0) * PI / l).asinh();
    let y = normalize(points, e1, e2)?;
    let decomposition = decomposition(&y, e1, e2, l, epsilon);
    Ok(ThinPolygonReport { n, e1, e2, l, e3, e4, d, lhs, pass: lhs <= 1.0 + THIN_TOL, epsilon, decomposition })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regular(n: usize) -> Vec<ComplexPoint> {
        (0..n)
            .map(|k| ComplexPoint::Finite(C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)))
            .collect()
    }

    #[test]
    fn regular_square() {
        let r = thin_polygon_check(&regular(4), 0, 2).unwrap();
        let want = 2.0 * (1.0 + 2f64.sqrt()).ln();
        assert!((r.l - want).abs() < 1e-12 && (r.d - want).abs() < 1e-12);
        let lhs = (want / 2.0).sinh() * ((PI - 2.0) / (2.0 * PI) * want).sinh();
        assert!((r.lhs - lhs).abs() < 1e-12 && r.pass);
        assert!((r.lhs - 0.326).abs() < 5e-3, "{}", r.lhs);
        assert!((r.l * r.epsilon.sinh() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn decomposition_sums_to_l() {
        for n in 4..9 {
            let pts = regular(n);
            for e2 in 2..n - 1 {
                let r = thin_polygon_check(&pts, 0, e2).unwrap();
                let total: f64 = r.decomposition.iter().sum();
                assert!((total - r.l).abs() < 1e-12);
                assert!(r.decomposition[2] >= (PI - 2.0) / PI * r.l - 1e-12, "{r:?}");
            }
        }
    }

    #[test]
    fn triangle_rejected() {
        assert!(matches!(thin_polygon_check(&regular(3), 0, 1), Err(Error::LemmaInapplicable(_))));
        assert!(matches!(thin_polygon_check(&regular(5), 0, 1), Err(Error::AdjacentEdges(_))));
    }
}
