//! Distances between geodesics, ideal quadrilateral perpendiculars and the
//! visual angle.

use super::complex::{cross_ratio, ComplexPoint, C64};
use crate::error::{Error, Result};

/// Geodesic of H^3 given by its two ideal endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geodesic {
    pub a: ComplexPoint,
    pub b: ComplexPoint,
}

impl Geodesic {
    pub fn new(a: ComplexPoint, b: ComplexPoint) -> Result<Self> {
        if a.chordal(&b) == 0.0 {
            return Err(Error::InvalidInput("geodesic endpoints coincide".into()));
        }
        Ok(Geodesic { a, b })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Disjoint,
    Crossing,
    Asymptotic,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodesicDistance {
    pub distance: f64,
    pub relation: Relation,
}

const SHARED_TOL: f64 = 1e-14;

/// Length of the common perpendicular, from the real part of the complex
/// distance `2 atanh(sqrt(lambda))`.
pub fn geodesic_distance(g1: &Geodesic, g2: &Geodesic) -> GeodesicDistance {
    for p in [g1.a, g1.b] {
        for q in [g2.a, g2.b] {
            if p.chordal(&q) <= SHARED_TOL {
                return GeodesicDistance { distance: 0.0, relation: Relation::Asymptotic };
            }
        }
    }
    let lam = cross_ratio(g1.a, g1.b, g2.a, g2.b).expect("distinct endpoints");
    let one = C64::new(1.0, 0.0);
    let w = lam.sqrt();
    let d = (2.0 * (one + w).norm().ln() - (one - lam).norm().ln()).abs();
    let crossing = d <= 1e-12 || (lam.re < 0.0 && lam.im.abs() <= 1e-12 * lam.norm());
    if crossing {
        GeodesicDistance { distance: 0.0, relation: Relation::Crossing }
    } else {
        GeodesicDistance { distance: d, relation: Relation::Disjoint }
    }
}

/// Perpendicular lengths between opposite sides of the ideal quadrilateral
/// `q0 q1 q2 q3`: `(d(q0q1, q2q3), d(q1q2, q3q0))`.
pub fn quad_perpendiculars(q: [ComplexPoint; 4]) -> Result<(f64, f64)> {
    for i in 0..4 {
        for j in (i + 1)..4 {
            if q[i].chordal(&q[j]) == 0.0 {
                return Err(Error::InvalidInput("repeated quadrilateral vertex".into()));
            }
        }
    }
    let g = |i: usize, j: usize| Geodesic { a: q[i], b: q[j] };
    let d1 = geodesic_distance(&g(0, 1), &g(2, 3)).distance;
    let d2 = geodesic_distance(&g(1, 2), &g(3, 0)).distance;
    Ok((d1, d2))
}

/// Angle subtended at a point by a geodesic at distance `d`.
pub fn visual_angle(d: f64) -> f64 {
    2.0 * (1.0 / d.sinh()).atan()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_PI_2};

    fn p(x: f64, y: f64) -> ComplexPoint {
        ComplexPoint::new(x, y)
    }

    #[test]
    fn concentric_semicircles() {
        let g1 = Geodesic::new(p(-1.0, 0.0), p(1.0, 0.0)).unwrap();
        let g2 = Geodesic::new(p(-E, 0.0), p(E, 0.0)).unwrap();
        let r = geodesic_distance(&g1, &g2);
        assert_eq!(r.relation, Relation::Disjoint);
        assert!((r.distance - 1.0).abs() < 1e-12);
    }

    #[test]
    fn twisted_pair_uses_real_part() {
        let g1 = Geodesic::new(p(-1.0, 0.0), p(1.0, 0.0)).unwrap();
        let rho = C64::from_polar(3.0, 0.7);
        let g2 = Geodesic::new(ComplexPoint::Finite(-rho), ComplexPoint::Finite(rho)).unwrap();
        assert!((geodesic_distance(&g1, &g2).distance - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn shared_and_crossing() {
        let g1 = Geodesic::new(p(0.0, 0.0), ComplexPoint::Infinity).unwrap();
        let g2 = Geodesic::new(p(0.0, 0.0), p(1.0, 0.0)).unwrap();
        assert_eq!(geodesic_distance(&g1, &g2).relation, Relation::Asymptotic);
        let g3 = Geodesic::new(p(-1.0, 0.0), p(1.0, 0.0)).unwrap();
        let g4 = Geodesic::new(p(0.0, -1.0), p(0.0, 1.0)).unwrap();
        let r = geodesic_distance(&g3, &g4);
        assert_eq!(r.relation, Relation::Crossing);
        assert_eq!(r.distance, 0.0);
    }

    #[test]
    fn regular_square() {
        let (d1, d2) = quad_perpendiculars([p(1.0, 0.0), p(0.0, 1.0), p(-1.0, 0.0), p(0.0, -1.0)]).unwrap();
        let expect = 2.0 * (1.0 + 2f64.sqrt()).ln();
        assert!((d1 - expect).abs() < 1e-12 && (d2 - expect).abs() < 1e-12);
    }

    #[test]
    fn pinched_square() {
        let a = 1e-3;
        let q = [p(0.0, 0.0), p(a, 0.0), p(1.0, 0.0), ComplexPoint::Infinity];
        let (d1, d2) = quad_perpendiculars(q).unwrap();
        assert!(d1.max(d2) > 5.0);
        assert!(((d1 / 2.0).sinh() * (d2 / 2.0).sinh() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn visual_angle_values() {
        assert!((visual_angle(1f64.asinh()) - FRAC_PI_2).abs() < 1e-15);
        let mut last = f64::INFINITY;
        for i in 1..100 {
            let d = 0.1 * i as f64;
            let phi = visual_angle(d);
            assert!(((phi / 2.0).tan() * d.sinh() - 1.0).abs() < 1e-12);
            assert!(phi < last);
            last = phi;
        }
    }
}
