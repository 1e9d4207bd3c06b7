//! Minkowski space R^{3,1} with signature (+,+,+,-): hyperboloid points,
//! plane normals and null vectors for ideal points.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::complex::{ComplexPoint, GenCircle};
use crate::error::{Error, Result};

/// |<v1,v2>| within this of 1 is reported as tangency.
pub const TANGENCY_TOL: f64 = 1e-9;
/// Allowed drift of a normalized vector from its role.
pub const NORM_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinkVector(pub [f64; 4]);

impl MinkVector {
    pub fn new(x: f64, y: f64, z: f64, t: f64) -> Self {
        MinkVector([x, y, z, t])
    }

    pub fn dot(&self, o: &MinkVector) -> f64 {
        let (a, b) = (&self.0, &o.0);
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3]
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn euclid_norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Scales a spacelike vector to unit length.
    pub fn normalize_plane(&self) -> Option<MinkVector> {
        let n = self.norm_sq();
        if n <= 0.0 {
            return None;
        }
        Some(*self * (1.0 / n.sqrt()))
    }

    /// Scales a timelike vector onto the upper sheet of the hyperboloid.
    pub fn normalize_point(&self) -> Option<MinkVector> {
        let n = self.norm_sq();
        if n >= 0.0 {
            return None;
        }
        let s = if self.0[3] > 0.0 { 1.0 } else { -1.0 };
        Some(*self * (s / (-n).sqrt()))
    }

    pub fn is_point(&self) -> bool {
        (self.norm_sq() + 1.0).abs() < NORM_TOL * self.0[3].abs().max(1.0).powi(2) && self.0[3] > 0.0
    }

    pub fn is_plane(&self) -> bool {
        (self.norm_sq() - 1.0).abs() < NORM_TOL * self.euclid_norm().max(1.0).powi(2)
    }
}

impl Add for MinkVector {
    type Output = MinkVector;
    fn add(self, o: MinkVector) -> MinkVector {
        MinkVector(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for MinkVector {
    type Output = MinkVector;
    fn sub(self, o: MinkVector) -> MinkVector {
        MinkVector(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Mul<f64> for MinkVector {
    type Output = MinkVector;
    fn mul(self, s: f64) -> MinkVector {
        MinkVector(self.0.map(|x| x * s))
    }
}

impl Neg for MinkVector {
    type Output = MinkVector;
    fn neg(self) -> MinkVector {
        self * -1.0
    }
}

/// Unit normal of the plane over `c`; `<nu, p(z)> > 0` exactly where
/// `c.eval(z) < 0` (inside the circle, or on the normal's side of a line).
pub fn to_mink_plane(c: &GenCircle) -> MinkVector {
    match *c {
        GenCircle::Circle { center, radius } => {
            let a = center.norm_sqr() - radius * radius;
            MinkVector::new(center.re, center.im, 0.5 * (a - 1.0), 0.5 * (a + 1.0)) * (1.0 / radius)
        }
        GenCircle::Line { normal, offset } => MinkVector::new(normal.re, normal.im, offset, offset),
    }
}

/// Inverse of [`to_mink_plane`]. The flag is `false` when the positive side
/// of the normal is the outside of the returned circle.
pub fn plane_to_circle(v: &MinkVector) -> (GenCircle, bool) {
    let [a, b, c, d] = v.0;
    let s = d - c;
    let scale = v.euclid_norm();
    if s.abs() <= 1e-14 * scale {
        let n = (a * a + b * b).sqrt();
        let line = GenCircle::Line { normal: C64::new(a / n, b / n), offset: 0.5 * (c + d) / n };
        return (line, true);
    }
    let center = C64::new(a / s, b / s);
    (GenCircle::Circle { center, radius: 1.0 / s.abs() }, s > 0.0)
}

/// Null vector of an ideal point, scaled to time coordinate 1 (Euclidean
/// size bounded for every point including infinity).
pub fn ideal_point(p: &ComplexPoint) -> MinkVector {
    match p {
        ComplexPoint::Infinity => MinkVector::new(0.0, 0.0, 1.0, 1.0),
        ComplexPoint::Finite(z) => {
            let m = z.norm_sqr();
            let k = 1.0 / (1.0 + m);
            MinkVector::new(2.0 * z.re * k, 2.0 * z.im * k, (m - 1.0) * k, 1.0)
        }
    }
}

pub fn ideal_to_complex(v: &MinkVector) -> ComplexPoint {
    let [a, b, c, d] = v.0;
    let den = d - c;
    if den.abs() <= 1e-15 * d.abs() {
        ComplexPoint::Infinity
    } else {
        ComplexPoint::Finite(C64::new(a / den, b / den))
    }
}

/// Hyperboloid point of the upper half-space point `(z, t)`.
pub fn point_from_half_space(z: C64, t: f64) -> MinkVector {
    let s = z.norm_sqr() + t * t;
    MinkVector::new(2.0 * z.re, 2.0 * z.im, s - 1.0, s + 1.0) * (0.5 / t)
}

pub fn point_to_half_space(x: &MinkVector) -> (C64, f64) {
    let t = 1.0 / (x.0[3] - x.0[2]);
    (C64::new(x.0[0] * t, x.0[1] * t), t)
}

pub fn plane_hermitian(v: &MinkVector) -> [[C64; 2]; 2] {
    let [a, b, c, d] = v.0;
    [
        [C64::new(d - c, 0.0), -C64::new(a, b)],
        [-C64::new(a, -b), C64::new(d + c, 0.0)],
    ]
}

pub fn plane_from_hermitian(h: &[[C64; 2]; 2]) -> MinkVector {
    let dm = h[0][0].re;
    let dp = h[1][1].re;
    MinkVector::new(-h[0][1].re, -h[0][1].im, 0.5 * (dp - dm), 0.5 * (dp + dm))
}

pub fn point_hermitian(x: &MinkVector) -> [[C64; 2]; 2] {
    let [a, b, c, d] = x.0;
    [
        [C64::new(d + c, 0.0), C64::new(a, b)],
        [C64::new(a, -b), C64::new(d - c, 0.0)],
    ]
}

pub fn point_from_hermitian(p: &[[C64; 2]; 2]) -> MinkVector {
    let sp = p[0][0].re;
    let sm = p[1][1].re;
    MinkVector::new(p[0][1].re, p[0][1].im, 0.5 * (sp - sm), 0.5 * (sp + sm))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PairTag {
    /// Planes cross; interior dihedral angle for outward normals.
    Angle(f64),
    /// Planes meet at a single ideal point.
    Tangent,
    /// Planes are disjoint at this hyperbolic distance.
    Distance(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairInvariant {
    pub value: f64,
    pub tag: PairTag,
}

pub fn plane_pair_invariant(v1: &MinkVector, v2: &MinkVector) -> PairInvariant {
    let value = v1.dot(v2);
    let tag = if (value.abs() - 1.0).abs() <= TANGENCY_TOL {
        PairTag::Tangent
    } else if value.abs() < 1.0 {
        PairTag::Angle((-value).acos())
    } else {
        PairTag::Distance(value.abs().acosh())
    };
    PairInvariant { value, tag }
}

/// Interior dihedral angle between two crossing planes with outward normals.
pub fn dihedral_angle(v1: &MinkVector, v2: &MinkVector) -> f64 {
    (-v1.dot(v2)).clamp(-1.0, 1.0).acos()
}

/// Vector Minkowski-orthogonal to three given vectors (generalized cross product).
pub fn mink_cross(v1: &MinkVector, v2: &MinkVector, v3: &MinkVector) -> MinkVector {
    // Rows are J v_i, so the Euclidean null vector x satisfies <x, v_i> = 0.
    let r = [v1, v2, v3].map(|v| [v.0[0], v.0[1], v.0[2], -v.0[3]]);
    let minor = |c0: usize, c1: usize, c2: usize| {
        r[0][c0] * (r[1][c1] * r[2][c2] - r[1][c2] * r[2][c1])
            - r[0][c1] * (r[1][c0] * r[2][c2] - r[1][c2] * r[2][c0])
            + r[0][c2] * (r[1][c0] * r[2][c1] - r[1][c1] * r[2][c0])
    };
    MinkVector::new(minor(1, 2, 3), -minor(0, 2, 3), minor(0, 1, 3), -minor(0, 1, 2))
}

/// The hyperbolic point common to three planes.
pub fn tri_plane_vertex(v1: &MinkVector, v2: &MinkVector, v3: &MinkVector) -> Result<MinkVector> {
    let x = mink_cross(v1, v2, v3);
    let scale = x.euclid_norm();
    if scale == 0.0 || x.norm_sq() >= -1e-12 * scale * scale {
        return Err(Error::NoVertex);
    }
    x.normalize_point().ok_or(Error::NoVertex)
}

pub fn mink_distance(x: &MinkVector, y: &MinkVector) -> f64 {
    (-x.dot(y)).max(1.0).acosh()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(x: f64, y: f64, r: f64) -> GenCircle {
        GenCircle::circle(C64::new(x, y), r).unwrap()
    }

    #[test]
    fn circle_normal_is_unit_and_signs_inside() {
        let c = circ(0.3, -1.2, 0.7);
        let v = to_mink_plane(&c);
        assert!((v.norm_sq() - 1.0).abs() < 1e-14);
        let inside = ideal_point(&ComplexPoint::new(0.3, -1.0));
        let outside = ideal_point(&ComplexPoint::new(2.0, 0.0));
        assert!(v.dot(&inside) > 0.0 && v.dot(&outside) < 0.0);
        let (back, inward) = plane_to_circle(&v);
        assert!(inward);
        match back {
            GenCircle::Circle { center, radius } => {
                assert!((center - C64::new(0.3, -1.2)).norm() < 1e-14);
                assert!((radius - 0.7).abs() < 1e-14);
            }
            _ => panic!(),
        }
        assert!(!plane_to_circle(&-v).1);
    }

    #[test]
    fn line_normal_round_trip() {
        let l = GenCircle::line(C64::new(0.0, 1.0), 2.0).unwrap();
        let v = to_mink_plane(&l);
        assert!(v.dot(&ideal_point(&ComplexPoint::Infinity)).abs() < 1e-15);
        assert_eq!(plane_to_circle(&v).0, l);
    }

    #[test]
    fn orthogonal_circles() {
        let a = to_mink_plane(&circ(0.0, 0.0, 1.0));
        let b = to_mink_plane(&circ(2f64.sqrt(), 0.0, 1.0));
        let inv = plane_pair_invariant(&a, &b);
        assert!(inv.value.abs() < 1e-15);
        match inv.tag {
            PairTag::Angle(t) => assert!((t - std::f64::consts::FRAC_PI_2).abs() < 1e-14),
            _ => panic!(),
        }
    }

    #[test]
    fn tangent_and_nested() {
        let a = to_mink_plane(&circ(0.0, 0.0, 1.0));
        let b = to_mink_plane(&circ(3.0, 0.0, 2.0));
        let inv = plane_pair_invariant(&a, &b);
        assert!((inv.value.abs() - 1.0).abs() < 1e-12);
        assert_eq!(inv.tag, PairTag::Tangent);
        let c = to_mink_plane(&circ(0.0, 0.0, std::f64::consts::E));
        match plane_pair_invariant(&a, &c).tag {
            PairTag::Distance(d) => assert!((d - 1.0).abs() < 1e-12),
            t => panic!("{t:?}"),
        }
    }

    #[test]
    fn tangency_tag_flips_under_perturbation() {
        let a = to_mink_plane(&circ(0.0, 0.0, 1.0));
        for (dx, expect_angle) in [(-1e-6, true), (1e-6, false)] {
            let b = to_mink_plane(&circ(2.0 + dx, 0.0, 1.0));
            let tag = plane_pair_invariant(&a, &b).tag;
            assert_eq!(matches!(tag, PairTag::Angle(_)), expect_angle);
            assert_eq!(matches!(tag, PairTag::Distance(_)), !expect_angle);
        }
    }

    #[test]
    fn half_space_round_trip() {
        let x = point_from_half_space(C64::new(0.4, -2.0), 0.3);
        assert!(x.is_point());
        let (z, t) = point_to_half_space(&x);
        assert!((z - C64::new(0.4, -2.0)).norm() < 1e-13 && (t - 0.3).abs() < 1e-14);
    }

    #[test]
    fn three_hemispheres_meet() {
        // the point (0, 1) in half-space lies on the unit hemisphere and the two vertical planes x=0, y=0
        let a = to_mink_plane(&circ(0.0, 0.0, 1.0));
        let b = to_mink_plane(&GenCircle::line(C64::new(1.0, 0.0), 0.0).unwrap());
        let c = to_mink_plane(&GenCircle::line(C64::new(0.0, 1.0), 0.0).unwrap());
        let x = tri_plane_vertex(&a, &b, &c).unwrap();
        let (z, t) = point_to_half_space(&x);
        assert!(z.norm() < 1e-14 && (t - 1.0).abs() < 1e-14);
        let far = to_mink_plane(&circ(5.0, 0.0, 1.0));
        assert_eq!(tri_plane_vertex(&a, &far, &b), Err(Error::NoVertex));
    }

    #[test]
    fn distance_along_vertical_axis() {
        let x = point_from_half_space(C64::new(0.0, 0.0), 1.0);
        let y = point_from_half_space(C64::new(0.0, 0.0), 2f64.exp());
        assert!((mink_distance(&x, &y) - 2.0).abs() < 1e-12);
    }
}
