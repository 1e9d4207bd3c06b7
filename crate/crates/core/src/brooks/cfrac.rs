//! Funnel quadrilaterals and their greedy continued-fraction packings.

use serde::{Deserialize, Serialize};

use super::base::{extended_pattern, tangency_point, Incidence, TangencyGraph};
use crate::error::{Error, Result};
use crate::geom::{cross_ratio, ComplexPoint, GenCircle, Mobius, C64};

/// Dead band on the signed clearance to the right side.
pub const CLEARANCE_BAND: f64 = 1e-9;
/// Tolerance on the tangencies produced by a greedy step.
pub const APOLLONIUS_TOL: f64 = 1e-11;
const ROW_CAP: usize = 100_000;

/// Four sides (left, top, right, bottom) and corners
/// (left∩top, top∩right, right∩bottom, bottom∩left). The region lies to the
/// left of the boundary traversed in corner order.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadRegion {
    pub sides: [GenCircle; 4],
    pub corners: [ComplexPoint; 4],
}

impl QuadRegion {
    /// Labels four bounded circles in cyclic order, choosing top and bottom
    /// so the bounded region between them is traversed counterclockwise.
    pub fn from_sides(left: GenCircle, a: GenCircle, right: GenCircle, b: GenCircle) -> Result<Self> {
        let t = |x: &GenCircle, y: &GenCircle| tangency_point(x, y);
        let ring = [t(&left, &a)?, t(&a, &right)?, t(&right, &b)?, t(&b, &left)?];
        let area: f64 = (0..4).map(|i| (ring[i].conj() * ring[(i + 1) % 4]).im).sum();
        let (sides, corners) = if area > 0.0 {
            ([left, a, right, b], ring)
        } else {
            ([left, b, right, a], [ring[3], ring[2], ring[1], ring[0]])
        };
        Ok(QuadRegion { sides, corners: corners.map(ComplexPoint::Finite) })
    }

    pub fn transformed(&self, m: &Mobius) -> Result<Self> {
        let mut sides = self.sides;
        for s in &mut sides {
            *s = m.apply_circle(s)?;
        }
        Ok(QuadRegion { sides, corners: self.corners.map(|p| m.apply(p)) })
    }

    /// Old top becomes the left side.
    pub fn rotated(&self) -> Self {
        let [l, t, r, b] = self.sides;
        let [p0, p1, p2, p3] = self.corners;
        QuadRegion { sides: [t, r, b, l], corners: [p1, p2, p3, p0] }
    }

    /// Corner cross-ratio (p0, p2; p1, p3).
    pub fn cross_ratio(&self) -> Result<C64> {
        let [p0, p1, p2, p3] = self.corners;
        cross_ratio(p0, p2, p1, p3)
    }

    /// Point test for a bounded region with finite corners: inside the corner
    /// polygon and outside every side disk.
    pub fn contains(&self, z: C64) -> bool {
        let c: Vec<C64> = self.corners.iter().filter_map(|p| p.finite()).collect();
        if c.len() < 4 {
            return false;
        }
        let left_of_all = (0..4).all(|i| ((c[(i + 1) % 4] - c[i]).conj() * (z - c[i])).im > 0.0);
        left_of_all && self.sides.iter().all(|s| s.eval(z) > 0.0)
    }

    /// Largest distance of a corner from its two sides.
    pub fn corner_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            if let ComplexPoint::Finite(z) = self.corners[i] {
                let a = self.sides[i].eval(z).abs();
                let b = self.sides[(i + 1) % 4].eval(z).abs();
                worst = worst.max(a.max(b) / (1.0 + z.norm()));
            }
        }
        worst
    }
}

/// One greedy circle: tangent to left, top and bottom.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreedyStep {
    pub circle: GenCircle,
    pub top_contact: ComplexPoint,
    pub bottom_contact: ComplexPoint,
    /// Signed gap to the right side, measured where left and top are the
    /// lines y = 0 and y = 1.
    pub clearance: f64,
}

/// Möbius map sending left∩top to ∞, left to y = 0 and top to y = 1, with
/// the region on the side of large real part.
fn normalizer(q: &QuadRegion) -> Result<Mobius> {
    let [p0, p1, _, p3] = q.corners;
    let inf = ComplexPoint::Infinity;
    let m1 = Mobius::from_triple([p0, p3, p1], [inf, ComplexPoint::new(0.0, 0.0), ComplexPoint::new(1.0, 0.0)])?;
    // direction of the image of the left side, from a point far from p0, p3
    let far = q.sides[0]
        .sample_points()
        .into_iter()
        .max_by(|a, b| {
            let s = |x: &ComplexPoint| x.chordal(&p0).min(x.chordal(&p3));
            s(a).total_cmp(&s(b))
        })
        .expect("three samples");
    let Some(w) = m1.apply(far).finite().filter(|w| w.norm() > 0.0) else {
        return Err(Error::ConstructionViolated("left side does not pass through its corner".into()));
    };
    let mut u = (w / w.norm()).conj();
    let mut h = u.im;
    if h < 0.0 {
        u = -u;
        h = -h;
    }
    if !(h > 0.0) {
        return Err(Error::ConstructionViolated("left and top sides coincide".into()));
    }
    let a = Mobius::new(u / h, C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0))?;
    Ok(a.compose(&m1))
}

fn circle_parts(g: GenCircle, what: &str) -> Result<(C64, f64)> {
    match g {
        GenCircle::Circle { center, radius } => Ok((center, radius)),
        GenCircle::Line { .. } => Err(Error::ConstructionViolated(format!("{what} side became a line"))),
    }
}

/// The circle tangent to left, top and bottom inside `q`, solved by the
/// inversion at left∩top.
pub fn greedy_step(q: &QuadRegion) -> Result<GreedyStep> {
    let m = normalizer(q)?;
    let (cb, rb) = circle_parts(m.apply_circle(&q.sides[3])?, "bottom")?;
    let (cr, rr) = circle_parts(m.apply_circle(&q.sides[2])?, "right")?;
    let reach = (rb + 0.5).powi(2) - (0.5 - cb.im).powi(2);
    if reach < 0.0 {
        return Err(Error::ConstructionViolated("bottom side leaves the strip".into()));
    }
    let c = C64::new(cb.re + reach.sqrt(), 0.5);
    let clearance = (c - cr).norm() - (0.5 + rr);
    let touch_b = cb + (c - cb) * (rb / (rb + 0.5));
    let inv = m.inverse();
    let circle = inv.apply_circle(&GenCircle::circle(c, 0.5)?)?;
    let top_contact = inv.apply(ComplexPoint::Finite(C64::new(c.re, 1.0)));
    let bottom_contact = inv.apply(ComplexPoint::Finite(touch_b));
    Ok(GreedyStep { circle, top_contact, bottom_contact, clearance })
}

/// The first `count` circles of the row along top and bottom, ignoring the
/// right side.
pub fn greedy_chain(q: &QuadRegion, count: usize) -> Result<Vec<GreedyStep>> {
    let mut cur = q.clone();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let s = greedy_step(&cur)?;
        cur.sides[0] = s.circle;
        cur.corners[0] = s.top_contact;
        cur.corners[3] = s.bottom_contact;
        out.push(s);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CFracDigits {
    pub digits: Vec<u64>,
    /// A circle touched all four sides within the dead band.
    pub terminated: bool,
    pub value: f64,
}

impl CFracDigits {
    fn evaluate(digits: &[u64]) -> f64 {
        let mut v = f64::INFINITY;
        for &d in digits.iter().rev() {
            v = d as f64 + 1.0 / v;
        }
        v
    }
}

/// Greedy packing digits of `q`. The first digit is zero when no circle fits.
pub fn greedy_cfrac(q: &QuadRegion, max_digits: usize) -> Result<CFracDigits> {
    let mut cur = q.clone();
    let mut digits = Vec::new();
    let mut terminated = false;
    while digits.len() < max_digits && !terminated {
        let mut count = 0u64;
        loop {
            let s = greedy_step(&cur)?;
            if s.clearance < -CLEARANCE_BAND {
                break;
            }
            count += 1;
            cur.sides[0] = s.circle;
            cur.corners[0] = s.top_contact;
            cur.corners[3] = s.bottom_contact;
            if s.clearance <= CLEARANCE_BAND {
                terminated = true;
                break;
            }
            if count as usize >= ROW_CAP {
                break;
            }
        }
        digits.push(count);
        if count as usize >= ROW_CAP {
            break;
        }
        cur = cur.rotated();
    }
    let value = CFracDigits::evaluate(&digits);
    Ok(CFracDigits { digits, terminated, value })
}

/// The four funnel quadrilaterals of an extended pattern: 4-cycles of
/// tangent circles, opposite sides disjoint, mixing both families, enclosing
/// no other circle, with one side whose two neighbors share its family. That
/// side is the left one.
pub fn funnel_quads(g: &TangencyGraph) -> Result<Vec<(QuadRegion, [usize; 4])>> {
    let packing: Vec<usize> = (0..g.circles.len()).filter(|&i| !g.tangent_neighbors(i).is_empty()).collect();
    let tangent = |a: usize, b: usize| g.pair(a, b).is_some_and(|p| p.kind == Incidence::Tangent);
    let disjoint = |a: usize, b: usize| g.pair(a, b).is_some_and(|p| p.kind == Incidence::Disjoint);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for &a in &packing {
        for &b in &packing {
            for &c in &packing {
                for &d in &packing {
                    let cyc = [a, b, c, d];
                    if !(tangent(a, b) && tangent(b, c) && tangent(c, d) && tangent(d, a) && disjoint(a, c) && disjoint(b, d)) {
                        continue;
                    }
                    let fam = cyc.map(|i| g.circles[i].family);
                    if fam.iter().all(|&f| f == fam[0]) {
                        continue;
                    }
                    let mut key = cyc;
                    key.sort_unstable();
                    if !seen.insert(key) {
                        continue;
                    }
                    // an alternating ring encloses a whole face, not a funnel
                    let Some(l) = (0..4).find(|&i| fam[(i + 1) % 4] == fam[i] && fam[(i + 3) % 4] == fam[i]) else {
                        continue;
                    };
                    let rot = [cyc[l], cyc[(l + 1) % 4], cyc[(l + 2) % 4], cyc[(l + 3) % 4]];
                    let circ = rot.map(|i| g.circles[i].circle);
                    let q = QuadRegion::from_sides(circ[0], circ[1], circ[2], circ[3])?;
                    let occupied = (0..g.circles.len()).filter(|i| !cyc.contains(i)).any(|i| {
                        let c = &g.circles[i].circle;
                        let mut pts: Vec<C64> = c.sample_points().iter().filter_map(|p| p.finite()).collect();
                        if let GenCircle::Circle { center, .. } = c {
                            pts.push(*center);
                        }
                        pts.iter().any(|&z| q.contains(z))
                    });
                    if occupied {
                        continue;
                    }
                    let labels = if q.sides[1] == circ[1] { rot } else { [rot[0], rot[3], rot[2], rot[1]] };
                    out.push((q, labels));
                }
            }
        }
    }
    Ok(out)
}

/// The upper funnel of the extended pattern at `r`, with sides
/// (C2, C1, M(C1), C1′). Checks that the four funnels are Möbius-equivalent.
pub fn funnel_quad(r: f64) -> Result<QuadRegion> {
    let g = extended_pattern(r)?;
    funnel_quad_of(&g).map(|(q, _)| q)
}

pub fn funnel_quad_of(g: &TangencyGraph) -> Result<(QuadRegion, [usize; 4])> {
    let quads = funnel_quads(g)?;
    if quads.len() != 4 {
        return Err(Error::ConstructionViolated(format!("{} funnels found", quads.len())));
    }
    let moduli: Vec<f64> = quads.iter().map(|(q, _)| q.cross_ratio().map(|c| c.norm())).collect::<Result<_>>()?;
    if moduli.iter().any(|m| (m - moduli[0]).abs() > 1e-9 * moduli[0].max(1.0)) {
        return Err(Error::ConstructionViolated(format!("funnels not equivalent: {moduli:?}")));
    }
    let want = ["C2", "C1", "M(C1)", "C1'"];
    let upper = quads
        .into_iter()
        .find(|(_, l)| l.iter().zip(want).all(|(&i, w)| g.circles[i].label == w))
        .ok_or_else(|| Error::ConstructionViolated("upper funnel is not bounded by C2, C1, M(C1), C1'".into()))?;
    Ok(upper)
}

/// Signed clearance of the n-th circle of the first row of Q_r, or the
/// first negative clearance when an earlier circle already hits the right
/// side. Same sign as c(Q_r) − n away from the roots.
pub fn row_clearance(r: f64, n: usize) -> Result<f64> {
    let mut cur = funnel_quad(r)?;
    let mut last = f64::INFINITY;
    for _ in 0..n {
        let s = greedy_step(&cur)?;
        last = s.clearance;
        if last < 0.0 {
            break;
        }
        cur.sides[0] = s.circle;
        cur.corners[0] = s.top_contact;
        cur.corners[3] = s.bottom_contact;
    }
    Ok(last)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    pub lo: f64,
    pub hi: f64,
    /// Bisection stops at this relative width.
    pub width: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { lo: 1.84, hi: 30.0, width: 1e-14 }
    }
}

/// r with c(Q_r) = n: bisection on the sign of the n-th row clearance.
pub fn solve_r(n: usize) -> Result<f64> {
    solve_r_with(n, &SolveOptions::default())
}

pub fn solve_r_with(n: usize, opts: &SolveOptions) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let bad = || Error::BracketNotFound(format!("no sign change for n = {n} on [{}, {}]", opts.lo, opts.hi));
    if row_clearance(opts.lo, n).map_err(|_| bad())? >= 0.0 {
        return Err(bad());
    }
    // grow the bracket geometrically; very large r loses precision
    let (mut lo, mut hi) = (opts.lo, opts.lo);
    loop {
        hi = (hi * 1.25).min(opts.hi);
        if row_clearance(hi, n).map_err(|_| bad())? > 0.0 {
            break;
        }
        if hi >= opts.hi {
            return Err(bad());
        }
        lo = hi;
    }
    for _ in 0..200 {
        if hi - lo <= opts.width * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if row_clearance(mid, n)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Annulus row: left and right circles with two gaps' worth of room.
    pub(crate) fn two_row() -> QuadRegion {
        let (r_out, r_in): (f64, f64) = (3.0, 1.0);
        let (m, rho) = (0.5 * (r_out + r_in), 0.5 * (r_out - r_in));
        let alpha = 2.0 * (rho / m).asin();
        let at = |k: f64| GenCircle::circle(C64::from_polar(m, k * alpha), rho).unwrap();
        let outer = GenCircle::circle(C64::new(0.0, 0.0), r_out).unwrap();
        let inner = GenCircle::circle(C64::new(0.0, 0.0), r_in).unwrap();
        QuadRegion::from_sides(at(0.0), outer, at(3.0), inner).unwrap()
    }

    #[test]
    fn two_circle_row() {
        let q = two_row();
        assert!(q.corner_error() < 1e-12);
        let d = greedy_cfrac(&q, 10).unwrap();
        assert_eq!(d.digits, vec![2]);
        assert!(d.terminated && d.value == 2.0);
        let chain = greedy_chain(&q, 2).unwrap();
        let GenCircle::Circle { center, radius } = chain[1].circle else { panic!() };
        assert!((radius - 1.0).abs() < APOLLONIUS_TOL);
        assert!((center.norm() - 2.0).abs() < APOLLONIUS_TOL);
        assert!(chain[1].clearance.abs() < 1e-12);
    }

    #[test]
    fn upper_funnel() {
        let g = extended_pattern(2.0).unwrap();
        let (q, l) = funnel_quad_of(&g).unwrap();
        let tp = |a: &str, b: &str| {
            let (i, j) = (g.index(a).unwrap(), g.index(b).unwrap());
            g.tangency_points.iter().find(|t| (t.0 == i.min(j)) && t.1 == i.max(j)).unwrap().2
        };
        let want = [tp("C2", "C1"), tp("C1", "M(C1)"), tp("M(C1)", "C1'"), tp("C1'", "C2")];
        for (c, w) in q.corners.iter().zip(want) {
            assert!((c.finite().unwrap() - w).norm() < 1e-12);
        }
        assert_eq!(g.circles[l[0]].label, "C2");
        assert_eq!(funnel_quads(&g).unwrap().len(), 4);
    }
}
