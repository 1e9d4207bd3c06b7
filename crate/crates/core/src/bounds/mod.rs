//! Checkable forms of the volume-increase inequalities: thin polygons, the
//! bending bound, the constant K and per-surgery drilling verdicts.

pub mod thin;

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combin::{admissible_surgeries, canonical_code, surgery, CombPolyhedron, SurgerySpec};
use crate::error::{Error, Result};
use crate::numeric::integrate;
use crate::pattern::{bent_complex, face_perp_length, polyhedron_volume, realize, AngleAssignment, CirclePattern, DeformationFamily, RealizeOptions};

pub use thin::{face_points, thin_lhs, thin_polygon_check, ThinPolygonReport, THIN_TOL};

/// Slack allowed on the ΔV inequalities.
pub const BOUND_SLACK: f64 = 1e-8;

/// (2π(n−3)/(π−2))·asinh(tan(φ/2)).
pub fn bend_bound(phi: f64, n: usize) -> Result<f64> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("side count {n} < 4")));
    }
    if !(phi > 0.0 && phi < PI) {
        return Err(Error::InvalidParameter(format!("angle {phi} outside (0, pi)")));
    }
    Ok(2.0 * PI * (n as f64 - 3.0) / (PI - 2.0) * (phi / 2.0).tan().asinh())
}

const TAIL: f64 = 1e-3;

/// ∫₀^π asinh(tan(φ/2)) dφ: adaptive quadrature on (0, π − δ) plus the
/// tail expansion ∫₀^δ (ln(4/u) − u²/48) du.
pub fn bend_integral(max_depth: u32) -> f64 {
    let body = integrate(|p: f64| (p / 2.0).tan().asinh(), 0.0, PI - TAIL, 1e-15, max_depth);
    let tail = TAIL * ((4.0 / TAIL).ln() + 1.0) - TAIL.powi(3) / 144.0;
    body + tail
}

/// K = (π/(π−2))·∫₀^π asinh(tan(φ/2)) dφ.
pub fn combinatorial_k() -> f64 {
    static K: OnceLock<f64> = OnceLock::new();
    *K.get_or_init(|| PI / (PI - 2.0) * bend_integral(40))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DrillVerdict {
    pub polyhedron_code: String,
    pub spec: SurgerySpec,
    pub face_n: usize,
    pub l: f64,
    pub volume_before: f64,
    pub volume_after: f64,
    pub delta_v: f64,
    pub pi_bound: f64,
    pub k_bound: f64,
    /// Four-fold cover numbers: ΔV′ = 4ΔV, L = 2l, πL.
    pub delta_v_cover: f64,
    pub length_cover: f64,
    pub pi_l_cover: f64,
    pub pass_pi: bool,
    pub pass_k: bool,
}

fn verdict(p: &CombPolyhedron, pat: &CirclePattern, s: &SurgerySpec, opts: &RealizeOptions) -> Result<DrillVerdict> {
    let v0 = polyhedron_volume(pat)?;
    let after = realize(&surgery(p, s)?, &AngleAssignment::right(), opts)?;
    let v1 = polyhedron_volume(&after)?;
    let l = face_perp_length(pat, s.face, s.e1, s.e2)?;
    let n = p.faces[s.face].len();
    let dv = v1 - v0;
    let pi_bound = FRAC_PI_2 * l;
    let k_bound = combinatorial_k() * (n as f64 - 3.0);
    Ok(DrillVerdict {
        polyhedron_code: canonical_code(p)?.short(),
        spec: *s,
        face_n: n,
        l,
        volume_before: v0,
        volume_after: v1,
        delta_v: dv,
        pi_bound,
        k_bound,
        delta_v_cover: 4.0 * dv,
        length_cover: 2.0 * l,
        pi_l_cover: 2.0 * PI * l,
        pass_pi: dv > 0.0 && dv <= pi_bound + BOUND_SLACK && 4.0 * dv <= 2.0 * PI * l + 4.0 * BOUND_SLACK,
        pass_k: dv > 0.0 && dv <= k_bound + BOUND_SLACK,
    })
}

/// Realizes P and P′ = surgery(P, s) and compares ΔV with both bounds.
pub fn drill_report(p: &CombPolyhedron, s: &SurgerySpec, opts: &RealizeOptions) -> Result<DrillVerdict> {
    let pat = realize(p, &AngleAssignment::right(), opts)?;
    verdict(p, &pat, s, opts)
}

/// Admissible surgeries of `p`, one per class of the bent complex P ∪ {g}
/// under combinatorial equivalence (reflections included).
pub fn distinct_surgeries(p: &CombPolyhedron) -> Result<Vec<SurgerySpec>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in admissible_surgeries(p) {
        let code = canonical_code(&bent_complex(p, &s)?.poly)?;
        if seen.insert(code) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Drill verdicts for the distinct surgeries of every polyhedron, in input
/// order. Parallel over surgeries; results do not depend on scheduling.
pub fn drill_inventory(polys: &[CombPolyhedron], opts: &RealizeOptions) -> Result<Vec<DrillVerdict>> {
    let mut out = Vec::new();
    for p in polys {
        let pat = realize(p, &AngleAssignment::right(), opts)?;
        let specs = distinct_surgeries(p)?;
        let rows: Result<Vec<DrillVerdict>> = specs.par_iter().map(|s| verdict(p, &pat, s, opts)).collect();
        out.extend(rows?);
    }
    Ok(out)
}

/// Thin-polygon reports for every face with n ≥ 4 and every admissible
/// edge pair of a realized pattern.
pub fn thin_inventory(pat: &CirclePattern) -> Result<Vec<ThinPolygonReport>> {
    let mut out = Vec::new();
    for s in admissible_surgeries(&pat.poly) {
        let pts = face_points(pat, s.face)?;
        out.push(thin_polygon_check(&pts, s.e1, s.e2)?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyBoundSample {
    pub theta: f64,
    pub l: f64,
    pub bound: f64,
    pub pass: bool,
}

/// l(θ) against bend_bound at the interior angle θ of g.
pub fn family_bend_check(fam: &DeformationFamily, n: usize) -> Result<Vec<FamilyBoundSample>> {
    fam.samples
        .iter()
        .map(|s| {
            let bound = bend_bound(s.theta, n)?;
            Ok(FamilyBoundSample { theta: s.theta, l: s.l, bound, pass: s.l <= bound })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::drum;

    const CATALAN: f64 = 0.915_965_594_177_219_015;

    #[test]
    fn bound_values() {
        let b = bend_bound(FRAC_PI_2, 4).unwrap();
        assert!((b - 2.0 * PI / (PI - 2.0) * 1f64.asinh()).abs() < 1e-12);
        assert!((b - 4.851).abs() < 1e-3, "{b}");
        let mut prev = 0.0;
        for k in 1..100 {
            let v = bend_bound(PI * k as f64 / 100.0, 5).unwrap();
            assert!(v > prev);
            prev = v;
        }
        assert!(bend_bound(1e-9, 4).unwrap() < 1e-8);
        let one = bend_bound(1.0, 4).unwrap();
        assert!((bend_bound(1.0, 7).unwrap() - 4.0 * one).abs() < 1e-12);
        assert!(bend_bound(1.0, 3).is_err() && bend_bound(PI, 4).is_err());
    }

    #[test]
    fn constant_k() {
        let i = bend_integral(40);
        assert!((i - 4.0 * CATALAN).abs() < 1e-10, "{i}");
        assert!((bend_integral(80) - i).abs() < 1e-10);
        let k = combinatorial_k();
        assert!((k - 10.083).abs() < 1e-3, "{k}");
    }

    #[test]
    fn drum4_drilling() {
        let d = drum(4).unwrap();
        let v = drill_report(&d, &SurgerySpec::new(0, 0, 2), &RealizeOptions::default()).unwrap();
        assert!(v.delta_v > 0.0 && v.pass_pi && v.pass_k, "{v:?}");
        assert!((v.delta_v_cover - 4.0 * v.delta_v).abs() < 1e-15);
        assert!((v.pi_l_cover - PI * v.length_cover).abs() < 1e-12);
        assert_eq!(distinct_surgeries(&d).unwrap().len(), 1);
        assert_eq!(distinct_surgeries(&drum(6).unwrap()).unwrap().len(), 2);
    }
}
