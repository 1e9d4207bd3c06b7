//! Volumes of realized polyhedra.

use std::f64::consts::FRAC_PI_2;

use super::solver::ACCEPT_RESIDUAL;
use super::types::CirclePattern;
use crate::error::{Error, Result};
use crate::geom::{ideal_tet_volume, lobachevsky, mink, plane_to_circle, ComplexPoint, GenCircle, Mobius, C64};

/// Volume by coning every face not containing `apex` from that ideal vertex;
/// requires all vertices ideal.
pub fn ideal_fan_volume(pat: &CirclePattern, apex: usize) -> Result<f64> {
    let a = pat.ideal[apex].ok_or_else(|| Error::InvalidInput(format!("apex {apex} is not ideal")))?;
    let mut total = 0.0;
    for cyc in &pat.poly.faces {
        if cyc.contains(&apex) {
            continue;
        }
        let pts: Vec<ComplexPoint> = cyc
            .iter()
            .map(|&v| pat.ideal[v].ok_or_else(|| Error::InvalidInput("finite vertex in fan volume".into())))
            .collect::<Result<_>>()?;
        for k in 1..pts.len() - 1 {
            total += ideal_tet_volume(a, pts[0], pts[k], pts[k + 1])?;
        }
    }
    Ok(total.abs())
}

/// `-1/4 [G(psi2) - G(psi1)]`: integral of `dA / (2 (R^2 - r^2))` over the
/// sector of the triangle `(c, p, q)` seen from the circle center `c`.
fn triangle_integral(c: C64, radius: f64, p: C64, q: C64) -> f64 {
    let (u, w) = (p - c, q - c);
    let d = w - u;
    let len = d.norm();
    if len == 0.0 {
        return 0.0;
    }
    let cross = (u.conj() * w).im;
    let h = cross.abs() / len;
    if h <= 1e-15 * radius {
        return 0.0;
    }
    // foot of the perpendicular, psi measured from it along the line direction
    let dir = d / len;
    let t1 = (u.conj() * dir).re;
    let t2 = (w.conj() * dir).re;
    let psi1 = (t1 / h).atan();
    let psi2 = (t2 / h).atan();
    let delta = (h / radius).min(1.0).acos();
    let g = |psi: f64| -lobachevsky(delta + psi) + lobachevsky(delta - psi) - 2.0 * lobachevsky(FRAC_PI_2 - psi);
    let val = -0.25 * (g(psi2) - g(psi1));
    val * cross.signum()
}

/// Volume with ideal vertex `apex` sent to infinity: sum over the remaining
/// faces of the integral of `dA / (2 h(z)^2)` over their vertical projections.
/// Works for finite vertices as well.
pub fn projection_volume(pat: &CirclePattern, apex: usize) -> Result<f64> {
    let a = pat.ideal[apex].ok_or_else(|| Error::InvalidInput(format!("apex {apex} is not ideal")))?;
    let one = C64::new(1.0, 0.0);
    let m = match a {
        ComplexPoint::Infinity => Mobius::identity(),
        ComplexPoint::Finite(z) => Mobius::new(C64::new(0.0, 0.0), one, one, -z)?,
    };
    let t = pat.transformed(&m);
    let proj = |v: usize| -> Result<C64> {
        if let Some(p) = t.ideal[v] {
            return p.finite().ok_or_else(|| Error::InvalidInput("vertex at infinity".into()));
        }
        let x = t.finite[v].ok_or_else(|| Error::InvalidInput(format!("vertex {v} missing")))?;
        Ok(mink::point_to_half_space(&x).0)
    };
    let mut total = 0.0;
    for (f, cyc) in t.poly.faces.iter().enumerate() {
        if cyc.contains(&apex) {
            continue;
        }
        let (circle, _) = plane_to_circle(&t.normals[f]);
        let GenCircle::Circle { center, radius } = circle else {
            return Err(Error::InvalidInput(format!("face {f} is vertical without containing the apex")));
        };
        let pts: Vec<C64> = cyc.iter().map(|&v| proj(v)).collect::<Result<_>>()?;
        let mut face = 0.0;
        let mut area = 0.0;
        for k in 0..pts.len() {
            let (p, q) = (pts[k], pts[(k + 1) % pts.len()]);
            face += triangle_integral(center, radius, p, q);
            area += (p.conj() * q).im;
        }
        total += face * area.signum();
    }
    Ok(total)
}

/// Volume of an accepted pattern (apex = lowest-index ideal vertex).
pub fn polyhedron_volume(pat: &CirclePattern) -> Result<f64> {
    if pat.residual > ACCEPT_RESIDUAL {
        return Err(Error::ResidualTooLarge(pat.residual));
    }
    let apex = (0..pat.ideal.len())
        .find(|&v| pat.ideal[v].is_some())
        .ok_or_else(|| Error::InvalidInput("no ideal vertex".into()))?;
    if pat.ideal.iter().all(Option::is_some) {
        ideal_fan_volume(pat, apex)
    } else {
        projection_volume(pat, apex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::drum;
    use crate::pattern::{realize, AngleAssignment, RealizeOptions};
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn octahedron_volume_both_ways() {
        let pat = realize(&drum(3).unwrap(), &AngleAssignment::right(), &RealizeOptions::default()).unwrap();
        let expect = 8.0 * lobachevsky(FRAC_PI_4);
        let v = polyhedron_volume(&pat).unwrap();
        assert!((v - expect).abs() < 1e-9, "{v}");
        for apex in 0..6 {
            assert!((projection_volume(&pat, apex).unwrap() - expect).abs() < 1e-9);
            assert!((ideal_fan_volume(&pat, apex).unwrap() - expect).abs() < 1e-9);
        }
    }
}
