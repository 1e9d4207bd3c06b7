//! Extended complex plane: points, generalized circles and Möbius maps.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ComplexPoint {
    Finite(C64),
    Infinity,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexPoint::Finite(C64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ComplexPoint::Infinity)
    }

    pub fn finite(&self) -> Option<C64> {
        match self {
            ComplexPoint::Finite(z) => Some(*z),
            ComplexPoint::Infinity => None,
        }
    }

    /// Chordal distance on the unit sphere; treats infinity uniformly.
    pub fn chordal(&self, other: &ComplexPoint) -> f64 {
        match (self, other) {
            (ComplexPoint::Infinity, ComplexPoint::Infinity) => 0.0,
            (ComplexPoint::Finite(z), ComplexPoint::Infinity)
            | (ComplexPoint::Infinity, ComplexPoint::Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
            (ComplexPoint::Finite(a), ComplexPoint::Finite(b)) => {
                2.0 * (a - b).norm() / ((1.0 + a.norm_sqr()).sqrt() * (1.0 + b.norm_sqr()).sqrt())
            }
        }
    }
}

impl From<C64> for ComplexPoint {
    fn from(z: C64) -> Self {
        ComplexPoint::Finite(z)
    }
}

/// Circle or straight line in the plane.
///
/// Lines are `{z : Re(conj(normal) * z) = offset}` with `|normal| = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GenCircle {
    Circle { center: C64, radius: f64 },
    Line { normal: C64, offset: f64 },
}

impl GenCircle {
    pub fn circle(center: C64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !center.re.is_finite() || !center.im.is_finite() {
            return Err(Error::InvalidInput(format!("bad circle radius {radius}")));
        }
        Ok(GenCircle::Circle { center, radius })
    }

    pub fn line(normal: C64, offset: f64) -> Result<Self> {
        let n = normal.norm();
        if !(n > 0.0) || !offset.is_finite() {
            return Err(Error::InvalidInput("degenerate line normal".into()));
        }
        Ok(GenCircle::Line { normal: normal / n, offset: offset / n })
    }

    /// Generalized circle through three distinct points.
    pub fn through(a: ComplexPoint, b: ComplexPoint, c: ComplexPoint) -> Result<Self> {
        let pts = [a, b, c];
        let finite: Vec<C64> = pts.iter().filter_map(|p| p.finite()).collect();
        match finite.len() {
            3 => {
                let (z1, z2, z3) = (finite[0], finite[1], finite[2]);
                let d = 2.0 * ((z2 - z1).conj() * (z3 - z1)).im;
                let scale = (z2 - z1).norm() * (z3 - z1).norm();
                if d.abs() <= 1e-14 * scale {
                    let dir = z2 - z1;
                    if dir.norm() == 0.0 {
                        return Err(Error::InvalidInput("repeated points".into()));
                    }
                    let normal = C64::new(-dir.im, dir.re);
                    let normal = normal / normal.norm();
                    return GenCircle::line(normal, (normal.conj() * z1).re);
                }
                let a2 = (z2 - z1).norm_sqr();
                let a3 = (z3 - z1).norm_sqr();
                let w2 = z2 - z1;
                let w3 = z3 - z1;
                // circumcenter relative to z1
                let cx = (w3.im * a2 - w2.im * a3) / d;
                let cy = (w2.re * a3 - w3.re * a2) / d;
                let off = C64::new(cx, cy);
                GenCircle::circle(z1 + off, off.norm())
            }
            2 => {
                let (z1, z2) = (finite[0], finite[1]);
                let dir = z2 - z1;
                if dir.norm() == 0.0 {
                    return Err(Error::InvalidInput("repeated points".into()));
                }
                let normal = C64::new(-dir.im, dir.re) / dir.norm();
                GenCircle::line(normal, (normal.conj() * z1).re)
            }
            _ => Err(Error::InvalidInput("repeated points at infinity".into())),
        }
    }

    /// Signed power-like value: negative inside a circle / on the normal's
    /// negative side of a line, zero on the curve.
    pub fn eval(&self, z: C64) -> f64 {
        match *self {
            GenCircle::Circle { center, radius } => (z - center).norm() - radius,
            GenCircle::Line { normal, offset } => offset - (normal.conj() * z).re,
        }
    }

    pub fn contains_point(&self, p: &ComplexPoint, tol: f64) -> bool {
        match (self, p) {
            (GenCircle::Line { .. }, ComplexPoint::Infinity) => true,
            (GenCircle::Circle { .. }, ComplexPoint::Infinity) => false,
            (_, ComplexPoint::Finite(z)) => self.eval(*z).abs() <= tol,
        }
    }

    /// Three distinct points on the curve (the last is infinity for lines).
    pub fn sample_points(&self) -> [ComplexPoint; 3] {
        match *self {
            GenCircle::Circle { center, radius } => [
                ComplexPoint::Finite(center + C64::new(radius, 0.0)),
                ComplexPoint::Finite(center + C64::new(0.0, radius)),
                ComplexPoint::Finite(center - C64::new(radius, 0.0)),
            ],
            GenCircle::Line { normal, offset } => {
                let base = normal * offset;
                let dir = C64::new(-normal.im, normal.re);
                [
                    ComplexPoint::Finite(base),
                    ComplexPoint::Finite(base + dir),
                    ComplexPoint::Infinity,
                ]
            }
        }
    }
}

/// Cross-ratio `(a-c)(b-d) / ((a-d)(b-c))`, with the usual limits at infinity.
pub fn cross_ratio(a: ComplexPoint, b: ComplexPoint, c: ComplexPoint, d: ComplexPoint) -> Result<C64> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i].chordal(&pts[j]) == 0.0 {
                return Err(Error::InvalidInput("cross-ratio of repeated points".into()));
            }
        }
    }
    let diff = |p: ComplexPoint, q: ComplexPoint| -> Option<C64> {
        match (p, q) {
            (ComplexPoint::Finite(x), ComplexPoint::Finite(y)) => Some(x - y),
            _ => None,
        }
    };
    // Factors involving infinity cancel pairwise.
    let num = [diff(a, c), diff(b, d)];
    let den = [diff(a, d), diff(b, c)];
    let prod = |v: [Option<C64>; 2]| v.iter().flatten().fold(C64::new(1.0, 0.0), |acc, x| acc * x);
    Ok(prod(num) / prod(den))
}

/// Möbius transformation `z -> (a z + b) / (c z + d)` normalized to `ad - bc = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mobius {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Mobius {
    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Mobius { a: one, b: zero, c: zero, d: one }
    }

    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() == 0.0 || !det.re.is_finite() || !det.im.is_finite() {
            return Err(Error::InvalidInput("singular Möbius matrix".into()));
        }
        let k = det.sqrt().inv();
        Ok(Mobius { a: a * k, b: b * k, c: c * k, d: d * k })
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    /// Sends `z1 -> 0`, `z2 -> 1`, `z3 -> infinity`.
    pub fn to_zero_one_inf(z1: ComplexPoint, z2: ComplexPoint, z3: ComplexPoint) -> Result<Self> {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        for (p, q) in [(z1, z2), (z1, z3), (z2, z3)] {
            if p.chordal(&q) == 0.0 {
                return Err(Error::InvalidInput("degenerate triple".into()));
            }
        }
        match (z1, z2, z3) {
            (ComplexPoint::Infinity, ComplexPoint::Finite(z2), ComplexPoint::Finite(z3)) => {
                Mobius::new(zero, -(z2 - z3), -one, z3)
            }
            (ComplexPoint::Finite(z1), ComplexPoint::Infinity, ComplexPoint::Finite(z3)) => {
                Mobius::new(one, -z1, one, -z3)
            }
            (ComplexPoint::Finite(z1), ComplexPoint::Finite(z2), ComplexPoint::Infinity) => {
                Mobius::new(-one, z1, zero, -(z2 - z1))
            }
            (ComplexPoint::Finite(z1), ComplexPoint::Finite(z2), ComplexPoint::Finite(z3)) => {
                Mobius::new(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))
            }
            _ => Err(Error::InvalidInput("degenerate triple".into())),
        }
    }

    /// The unique map with `src[i] -> dst[i]`.
    pub fn from_triple(src: [ComplexPoint; 3], dst: [ComplexPoint; 3]) -> Result<Self> {
        let s = Mobius::to_zero_one_inf(src[0], src[1], src[2])?;
        let d = Mobius::to_zero_one_inf(dst[0], dst[1], dst[2])?;
        Ok(d.inverse().compose(&s))
    }

    pub fn inverse(&self) -> Self {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Self {
        let m = Mobius {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        };
        Mobius::new(m.a, m.b, m.c, m.d).unwrap_or(m)
    }

    pub fn apply(&self, p: ComplexPoint) -> ComplexPoint {
        match p {
            ComplexPoint::Infinity => {
                if self.c.norm() == 0.0 {
                    ComplexPoint::Infinity
                } else {
                    ComplexPoint::Finite(self.a / self.c)
                }
            }
            ComplexPoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() == 0.0 {
                    ComplexPoint::Infinity
                } else {
                    ComplexPoint::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    pub fn apply_circle(&self, g: &GenCircle) -> Result<GenCircle> {
        let v = super::mink::to_mink_plane(g);
        Ok(super::mink::plane_to_circle(&self.apply_plane(&v)).0)
    }

    /// Action on a Minkowski plane normal via its Hermitian form `M^{-*} H M^{-1}`.
    pub fn apply_plane(&self, v: &super::mink::MinkVector) -> super::mink::MinkVector {
        let h = super::mink::plane_hermitian(v);
        let inv = self.inverse();
        let m = [[inv.a, inv.b], [inv.c, inv.d]];
        let out = herm_conj(&h, &m);
        super::mink::plane_from_hermitian(&out)
    }

    /// Action on a hyperboloid point (or null vector) via `M P M^*`.
    pub fn apply_mink_point(&self, x: &super::mink::MinkVector) -> super::mink::MinkVector {
        let p = super::mink::point_hermitian(x);
        let m = [[self.a, self.b], [self.c, self.d]];
        // M P M^* = (M^*)^* P (M^*)
        let mstar = [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]];
        let out = herm_conj(&p, &mstar);
        super::mink::point_from_hermitian(&out)
    }
}

/// Computes `A^* H A` for 2x2 complex matrices.
fn herm_conj(h: &[[C64; 2]; 2], a: &[[C64; 2]; 2]) -> [[C64; 2]; 2] {
    let mut ha = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            ha[i][j] = h[i][0] * a[0][j] + h[i][1] * a[1][j];
        }
    }
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[0][i].conj() * ha[0][j] + a[1][i].conj() * ha[1][j];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    #[test]
    fn cross_ratio_with_infinity() {
        // (a-c)(b-d)/((a-d)(b-c)) with c = inf reduces to (b-d)/(a-d) = 2 at d = -1.
        let v = cross_ratio(p(0.0, 0.0), p(1.0, 0.0), ComplexPoint::Infinity, p(-1.0, 0.0)).unwrap();
        assert!((v - C64::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cross_ratio_harmonic() {
        let v = cross_ratio(p(1.0, 0.0), p(-1.0, 0.0), p(0.0, 1.0), p(0.0, -1.0)).unwrap();
        assert!((v - C64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cross_ratio_rejects_repeats() {
        assert!(cross_ratio(p(1.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(2.0, 0.0)).is_err());
    }

    #[test]
    fn triple_identity() {
        let t = [p(0.0, 0.0), p(1.0, 0.0), ComplexPoint::Infinity];
        let m = Mobius::from_triple(t, t).unwrap();
        // identity up to sign
        let s = if m.a.re < 0.0 { -1.0 } else { 1.0 };
        assert!((m.a * s - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((m.d * s - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(m.b.norm() < 1e-12 && m.c.norm() < 1e-12);
    }

    #[test]
    fn triple_maps_targets() {
        let src = [p(1.0, 0.0), p(0.0, 1.0), p(-1.0, 0.0)];
        let dst = [p(0.0, 0.0), p(1.0, 0.0), ComplexPoint::Infinity];
        let m = Mobius::from_triple(src, dst).unwrap();
        for i in 0..3 {
            assert!(m.apply(src[i]).chordal(&dst[i]) < 1e-12);
        }
        assert!((m.det() - C64::new(1.0, 0.0)).norm() < 1e-12);
        // image of -i equals the cross-ratio normal form of (-i, 1, i, -1)
        let img = m.apply(p(0.0, -1.0)).finite().unwrap();
        let cr = cross_ratio(p(0.0, -1.0), p(0.0, 1.0), p(1.0, 0.0), p(-1.0, 0.0)).unwrap();
        assert!((img - cr).norm() < 1e-12, "{img} vs {cr}");
    }

    #[test]
    fn rotation_scaling_of_unit_circle() {
        let m = Mobius::new(C64::new(0.0, 2.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)).unwrap();
        let c = m.apply_circle(&GenCircle::circle(C64::new(0.0, 0.0), 1.0).unwrap()).unwrap();
        match c {
            GenCircle::Circle { center, radius } => {
                assert!(center.norm() < 1e-12);
                assert!((radius - 2.0).abs() < 1e-12);
            }
            _ => panic!("expected circle"),
        }
    }

    #[test]
    fn circle_through_points() {
        let c = GenCircle::through(p(1.0, 0.0), p(0.0, 1.0), p(-1.0, 0.0)).unwrap();
        match c {
            GenCircle::Circle { center, radius } => {
                assert!(center.norm() < 1e-14 && (radius - 1.0).abs() < 1e-14)
            }
            _ => panic!(),
        }
        let l = GenCircle::through(p(0.0, 0.0), p(1.0, 1.0), ComplexPoint::Infinity).unwrap();
        assert!(l.contains_point(&p(2.0, 2.0), 1e-12));
    }
}
