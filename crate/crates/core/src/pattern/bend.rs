//! Bending a face along the common perpendicular of two of its edges:
//! the complex P ∪ {g}, its realizations for θ ∈ (0, π/2], and deformation
//! families in θ.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::solver::{realize, realize_from, InitialGuess, RealizeOptions};
use super::types::{AngleAssignment, CirclePattern};
use super::volume::polyhedron_volume;
use crate::combin::{surgery_detailed, CombPolyhedron, SurgerySpec};
use crate::error::{Error, Result};
use crate::geom::{geodesic_distance, mink_distance, ComplexPoint, Geodesic, C64};

pub type BendSpec = SurgerySpec;

/// P ∪ {g}: the bent face is split into `faces[0]` (at the original index)
/// and `faces[1]` (appended); `g` joins the finite vertices `v1`, `v2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BentComplex {
    pub poly: CombPolyhedron,
    pub faces: [usize; 2],
    pub v1: usize,
    pub v2: usize,
    /// Faces across e1 and e2, which gain v1 and v2 respectively.
    pub sides: [usize; 2],
}

/// Builds P ∪ {g}. Face and vertex indices agree with `surgery_detailed`,
/// except that the pinch vertex is replaced by `v1` and `v2`.
pub fn bent_complex(p: &CombPolyhedron, b: &BendSpec) -> Result<BentComplex> {
    let pinched = surgery_detailed(p, b)?;
    let cyc = &p.faces[b.face];
    let n = cyc.len();
    let (i, j) = (b.e1, b.e2);
    let (a0, a1) = (cyc[i], cyc[(i + 1) % n]);
    let (b0, b1) = (cyc[j], cyc[(j + 1) % n]);
    let v1 = p.vertex_count;
    let v2 = v1 + 1;
    let mut f1 = vec![v1];
    f1.extend((i + 1..=j).map(|k| cyc[k]));
    f1.push(v2);
    let mut f2 = vec![v2];
    f2.extend((j + 1..=i + n).map(|k| cyc[k % n]));
    f2.push(v1);
    // keep the same face slots as the pinched complex
    let first_is_f1 = pinched.poly.faces[b.face].contains(&a1);
    let darts = p.dart_map();
    let g1 = darts[&(a1, a0)].0;
    let g2 = darts[&(b1, b0)].0;
    let mut faces = p.faces.clone();
    let insert = |face: &mut Vec<usize>, u: usize, v: usize, x: usize| {
        let m = face.len();
        let pos = (0..m).find(|&k| face[k] == u && face[(k + 1) % m] == v).expect("dart present");
        face.insert(pos + 1, x);
    };
    insert(&mut faces[g1], a1, a0, v1);
    insert(&mut faces[g2], b1, b0, v2);
    let (lo, hi) = if first_is_f1 { (f1, f2) } else { (f2, f1) };
    faces[b.face] = lo;
    faces.push(hi);
    let last = faces.len() - 1;
    let poly = CombPolyhedron::new(v2 + 1, faces);
    let report = poly.validate();
    if !report.ok() {
        return Err(Error::ConstructionFailed(report.failures.join("; ")));
    }
    let faces = if first_is_f1 { [b.face, last] } else { [last, b.face] };
    Ok(BentComplex { poly, faces, v1, v2, sides: [g1, g2] })
}

/// Geodesic distance between the edges at positions `e1`, `e2` of `face`,
/// both taken as geodesics between their ideal endpoints.
pub fn face_perp_length(pat: &CirclePattern, face: usize, e1: usize, e2: usize) -> Result<f64> {
    let cyc = pat
        .poly
        .faces
        .get(face)
        .ok_or_else(|| Error::InvalidInput(format!("no face {face}")))?;
    let n = cyc.len();
    if e1 >= n || e2 >= n {
        return Err(Error::InvalidInput(format!("edge position out of range for face {face}")));
    }
    if e1 == e2 || (e1 + 1) % n == e2 || (e2 + 1) % n == e1 {
        return Err(Error::AdjacentEdges(format!("edges {e1} and {e2} of face {face}")));
    }
    let end = |v: usize| pat.ideal[v].ok_or_else(|| Error::InvalidInput(format!("vertex {v} is not ideal")));
    let g1 = Geodesic::new(end(cyc[e1])?, end(cyc[(e1 + 1) % n])?)?;
    let g2 = Geodesic::new(end(cyc[e2])?, end(cyc[(e2 + 1) % n])?)?;
    Ok(geodesic_distance(&g1, &g2).distance)
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta <= FRAC_PI_2 + 1e-15 {
        Ok(())
    } else {
        Err(Error::UnsupportedRange(theta))
    }
}

/// Angles for the bent complex: π/2 everywhere except θ on g.
pub fn bent_angles(bc: &BentComplex, theta: f64) -> AngleAssignment {
    AngleAssignment::right().with(bc.v1, bc.v2, theta)
}

fn guess_from(pat: &CirclePattern, bc: &BentComplex) -> InitialGuess {
    let mut points: Vec<C64> = (0..bc.poly.vertex_count)
        .map(|v| match pat.ideal.get(v).copied().flatten() {
            Some(ComplexPoint::Finite(z)) => z,
            _ => C64::new(0.0, 0.0),
        })
        .collect();
    // pinched vertex (index v1 in the pinched complex) seeds both finite vertices
    if let Some(Some(ComplexPoint::Finite(z))) = pat.ideal.get(bc.v1) {
        points[bc.v2] = *z;
    }
    InitialGuess { normals: pat.normals.clone(), points }
}

/// Length of g: distance between the two finite vertices.
pub fn bend_length(pat: &CirclePattern, bc: &BentComplex) -> Result<f64> {
    match (pat.finite[bc.v1], pat.finite[bc.v2]) {
        (Some(x), Some(y)) => Ok(mink_distance(&x, &y)),
        _ => Err(Error::ConstructionFailed("bent vertices are not finite".into())),
    }
}

fn solve_bent(bc: &BentComplex, theta: f64, guess: &InitialGuess, opts: &RealizeOptions) -> Result<CirclePattern> {
    let pat = realize_from(&bc.poly, &bent_angles(bc, theta), guess, opts)?;
    if pat.finite[bc.v1].is_none() || pat.finite[bc.v2].is_none() {
        return Err(Error::ConstructionFailed("bent vertices are not finite".into()));
    }
    Ok(pat)
}

/// Realizes P ∪ {g} with angle θ at g, continuing from the pinched
/// polyhedron (the θ → 0 limit).
pub fn bent_realize(p: &CombPolyhedron, b: &BendSpec, theta: f64, opts: &RealizeOptions) -> Result<CirclePattern> {
    check_theta(theta)?;
    let bc = bent_complex(p, b)?;
    let pinched = surgery_detailed(p, b)?;
    let start = realize(&pinched.poly, &AngleAssignment::right(), opts)?;
    solve_bent(&bc, theta, &guess_from(&start, &bc), opts)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeformationSample {
    pub theta: f64,
    pub l: f64,
    pub volume: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeformationFamily {
    pub samples: Vec<DeformationSample>,
}

/// Samples the bent family on `grid`, each solve warm-started from the
/// previous grid point.
pub fn deform_family(p: &CombPolyhedron, b: &BendSpec, grid: &[f64], opts: &RealizeOptions) -> Result<DeformationFamily> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty grid".into()));
    }
    for w in grid.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::InvalidParameter("grid must be strictly increasing".into()));
        }
    }
    for &t in grid {
        check_theta(t)?;
    }
    let bc = bent_complex(p, b)?;
    let pinched = surgery_detailed(p, b)?;
    let start = realize(&pinched.poly, &AngleAssignment::right(), opts)?;
    let mut guess = guess_from(&start, &bc);
    let mut samples = Vec::with_capacity(grid.len());
    for &t in grid {
        let pat = solve_bent(&bc, t, &guess, opts)?;
        samples.push(DeformationSample { theta: t, l: bend_length(&pat, &bc)?, volume: polyhedron_volume(&pat)? });
        guess = InitialGuess {
            normals: pat.normals.clone(),
            points: (0..bc.poly.vertex_count)
                .map(|v| pat.ideal[v].and_then(|z| z.finite()).unwrap_or(C64::new(0.0, 0.0)))
                .collect(),
        };
    }
    Ok(DeformationFamily { samples })
}

/// Max over interior samples of |dV/dθ + l/2|, with dV/dθ from the
/// three-point formula (the centered difference on uniform spacing).
pub fn schlafli_residual(fam: &DeformationFamily) -> Result<f64> {
    let s = &fam.samples;
    if s.len() < 3 {
        return Err(Error::InvalidParameter("need at least three samples".into()));
    }
    let mut worst: f64 = 0.0;
    for k in 1..s.len() - 1 {
        let h1 = s[k].theta - s[k - 1].theta;
        let h2 = s[k + 1].theta - s[k].theta;
        let dv = -h2 / (h1 * (h1 + h2)) * s[k - 1].volume
            + (h2 - h1) / (h1 * h2) * s[k].volume
            + h1 / (h2 * (h1 + h2)) * s[k + 1].volume;
        worst = worst.max((dv + 0.5 * s[k].l).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::drum;
    use crate::geom::dihedral_angle;

    #[test]
    fn bent_complex_shape() {
        let d = drum(4).unwrap();
        let bc = bent_complex(&d, &BendSpec::new(0, 0, 2)).unwrap();
        assert_eq!(bc.poly.vertex_count, 10);
        assert_eq!(bc.poly.faces.len(), 11);
        let rot = bc.poly.rotations().unwrap();
        assert_eq!(rot[bc.v1].len(), 3);
        assert!(rot[bc.v1].contains(&bc.v2));
    }

    #[test]
    fn drum4_square_perpendicular() {
        let d = drum(4).unwrap();
        let pat = realize(&d, &AngleAssignment::right(), &RealizeOptions::default()).unwrap();
        let d1 = face_perp_length(&pat, 0, 0, 2).unwrap();
        let d2 = face_perp_length(&pat, 0, 1, 3).unwrap();
        let want = 2.0 * (1.0 + 2f64.sqrt()).ln();
        assert!((d1 - want).abs() < 1e-9 && (d2 - want).abs() < 1e-9, "{d1} {d2}");
        assert!(((d1 / 2.0).sinh() * (d2 / 2.0).sinh() - 1.0).abs() < 1e-9);
        assert!(matches!(face_perp_length(&pat, 0, 0, 1), Err(Error::AdjacentEdges(_))));
    }

    #[test]
    fn bent_right_angle() {
        let d = drum(4).unwrap();
        let b = BendSpec::new(0, 0, 2);
        let bc = bent_complex(&d, &b).unwrap();
        let pat = bent_realize(&d, &b, FRAC_PI_2, &RealizeOptions::default()).unwrap();
        let t = dihedral_angle(&pat.normals[bc.faces[0]], &pat.normals[bc.faces[1]]);
        assert!((t - FRAC_PI_2).abs() < 1e-8);
        assert!(bend_length(&pat, &bc).unwrap() > 0.0);
        assert!(matches!(bent_realize(&d, &b, 2.0, &RealizeOptions::default()), Err(Error::UnsupportedRange(_))));
    }

    #[test]
    fn synthetic_family_exact() {
        let l = 0.7;
        let samples = (1..10)
            .map(|k| {
                let t = 0.1 * k as f64;
                DeformationSample { theta: t, l, volume: -t * l / 2.0 }
            })
            .collect();
        assert!(schlafli_residual(&DeformationFamily { samples }).unwrap() < 1e-12);
    }
}
