//! Interstice truncation, assembly of P_n and the drilling experiment.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::base::{expansion_factor, extended_pattern, Incidence, LabeledCircle, TangencyGraph, AUDIT_TOL};
use super::cfrac::{funnel_quads, greedy_cfrac, greedy_chain, solve_r};
use crate::bounds::combinatorial_k;
use crate::combin::{surgery, CombPolyhedron, SurgerySpec};
use crate::error::{Error, Result};
use crate::geom::{ideal_point, ComplexPoint, GenCircle, C64};
use crate::pattern::solver::{choose_gauge, pattern_residual};
use crate::pattern::{face_perp_length, polyhedron_volume, realize, AngleAssignment, CirclePattern, RealizeOptions};

/// Largest |⟨ν, p⟩| for a point counted as lying on a circle.
const ON_CIRCLE_TOL: f64 = 1e-8;

fn on_circle(c: &LabeledCircle, z: C64) -> bool {
    c.normal.dot(&ideal_point(&ComplexPoint::Finite(z))).abs() <= ON_CIRCLE_TOL
}

fn center(c: &GenCircle) -> Result<C64> {
    match c {
        GenCircle::Circle { center, .. } => Ok(*center),
        GenCircle::Line { .. } => Err(Error::InvalidInput("lines are not supported in a packing".into())),
    }
}

/// Tangent neighbors of `a` in the order met walking its boundary with the
/// cut-away side on the right.
fn boundary_order(g: &TangencyGraph, a: usize) -> Result<Vec<(usize, C64)>> {
    let c = center(&g.circles[a].circle)?;
    let mut nb = g.tangent_neighbors(a);
    nb.sort_by(|x, y| (x.1 - c).arg().total_cmp(&(y.1 - c).arg()));
    if !g.circles[a].cuts_exterior() {
        nb.reverse();
    }
    Ok(nb)
}

/// Adds the circle through the three contact points of every triangular
/// interstice of the packing (the tangency graph on circles with at least
/// one contact). Gaps whose contact points already lie on a common circle
/// are left alone.
pub fn truncate_interstices(g: &TangencyGraph) -> Result<TangencyGraph> {
    let mut out = g.clone();
    let members: Vec<usize> = (0..g.circles.len()).filter(|&i| !g.tangent_neighbors(i).is_empty()).collect();
    let orders: Vec<Vec<(usize, C64)>> = (0..g.circles.len())
        .map(|i| if members.contains(&i) { boundary_order(g, i) } else { Ok(Vec::new()) })
        .collect::<Result<_>>()?;
    let mut used = BTreeSet::new();
    let mut added = 0usize;
    for &a in &members {
        for &(b0, _) in &orders[a] {
            if used.contains(&(a, b0)) {
                continue;
            }
            // trace the gap to the left of the dart a → b0
            let (mut x, mut y) = (a, b0);
            let mut ring = Vec::new();
            let mut points = Vec::new();
            loop {
                used.insert((x, y));
                ring.push(x);
                let ord = &orders[y];
                let i = ord.iter().position(|n| n.0 == x).expect("symmetric tangency");
                points.push(ord[i].1);
                let next = ord[(i + 1) % ord.len()].0;
                (x, y) = (y, next);
                if (x, y) == (a, b0) {
                    break;
                }
                if ring.len() > g.circles.len() {
                    return Err(Error::ConstructionViolated("gap boundary does not close".into()));
                }
            }
            let covered = out
                .circles
                .iter()
                .enumerate()
                .any(|(i, c)| !ring.contains(&i) && points.iter().all(|&z| on_circle(c, z)));
            if covered {
                continue;
            }
            if ring.len() != 3 {
                let labels: Vec<&str> = ring.iter().map(|&i| g.circles[i].label.as_str()).collect();
                return Err(Error::NonTriangular(format!("gap bounded by {labels:?}")));
            }
            let pts = points.iter().map(|&z| ComplexPoint::Finite(z)).collect::<Vec<_>>();
            let circle = GenCircle::through(pts[0], pts[1], pts[2])?;
            let idx = out.push(LabeledCircle::new(format!("D{added}"), 3, circle))?;
            added += 1;
            for &s in &ring {
                let p = out.pair(s, idx).expect("pair recorded");
                if p.kind != Incidence::Orthogonal {
                    return Err(Error::ConstructionViolated(format!(
                        "truncating circle not orthogonal to {}: {}",
                        out.circles[s].label, p.value
                    )));
                }
            }
        }
    }
    Ok(out)
}

/// Ideal vertices (points where four circles meet) and faces (one per
/// circle, counterclockwise around the cut-away side).
pub fn extract_polyhedron(g: &TangencyGraph) -> Result<(CombPolyhedron, Vec<C64>)> {
    let mut points: Vec<C64> = Vec::new();
    for &(_, _, t) in &g.tangency_points {
        if !points.iter().any(|p| (p - t).norm() <= 1e-8 * (1.0 + t.norm())) {
            points.push(t);
        }
    }
    let mut faces = vec![Vec::new(); g.circles.len()];
    for (v, &z) in points.iter().enumerate() {
        let on: Vec<usize> = (0..g.circles.len()).filter(|&i| on_circle(&g.circles[i], z)).collect();
        if on.len() != 4 {
            return Err(Error::Extraction(format!("point {z} lies on {} circles", on.len())));
        }
        for f in on {
            faces[f].push(v);
        }
    }
    for (f, cyc) in faces.iter_mut().enumerate() {
        let c = center(&g.circles[f].circle)?;
        cyc.sort_by(|&u, &v| (points[u] - c).arg().total_cmp(&(points[v] - c).arg()));
        if g.circles[f].cuts_exterior() {
            cyc.reverse();
        }
        if cyc.len() < 3 {
            return Err(Error::Extraction(format!("circle {} carries {} vertices", g.circles[f].label, cyc.len())));
        }
    }
    let poly = CombPolyhedron::new(points.len(), faces);
    let report = poly.validate_basic();
    if !report.ok() || !report.is_basic {
        return Err(Error::Extraction(report.failures.join("; ")));
    }
    Ok((poly, points))
}

#[derive(Clone, Debug)]
pub struct BuiltPolyhedron {
    pub n: usize,
    pub r: f64,
    pub graph: TangencyGraph,
    pub poly: CombPolyhedron,
    pub pattern: CirclePattern,
}

impl BuiltPolyhedron {
    pub fn face(&self, label: &str) -> Result<usize> {
        self.graph.index(label).ok_or_else(|| Error::Extraction(format!("no circle {label}")))
    }

    /// Position in face `f` of the edge shared with face `g`.
    pub fn shared_edge(&self, f: usize, g: usize) -> Result<usize> {
        let cyc = &self.poly.faces[f];
        let other: BTreeSet<usize> = self.poly.faces[g].iter().copied().collect();
        (0..cyc.len())
            .find(|&i| other.contains(&cyc[i]) && other.contains(&cyc[(i + 1) % cyc.len()]))
            .ok_or_else(|| Error::Extraction(format!("faces {f} and {g} share no edge")))
    }
}

/// Packs every funnel of the extended pattern at r_n with n circles,
/// truncates the interstices and reads off P_n with its circle pattern.
pub fn build_pn(n: usize) -> Result<BuiltPolyhedron> {
    let r = solve_r(n)?;
    build_at(n, r)
}

/// Image of a disk under z ↦ ik/z̄, which swaps the base family with its image.
fn mirror_image(c: &GenCircle, k: f64) -> Result<GenCircle> {
    let GenCircle::Circle { center, radius } = *c else {
        return Err(Error::ConstructionViolated("chain circle is a line".into()));
    };
    let pow = center.norm_sqr() - radius * radius;
    if !(pow > 0.0) {
        return Err(Error::ConstructionViolated("chain circle contains the origin".into()));
    }
    GenCircle::circle(C64::new(0.0, k) * center / pow, k * radius / pow)
}

pub fn build_at(n: usize, r: f64) -> Result<BuiltPolyhedron> {
    let mut g = extended_pattern(r)?;
    let funnels = funnel_quads(&g)?;
    if funnels.len() != 4 {
        return Err(Error::ConstructionViolated(format!("{} funnels found", funnels.len())));
    }
    let k = expansion_factor(r)?;
    let mut chains: Vec<(String, Vec<GenCircle>)> = Vec::new();
    for (q, labels) in &funnels {
        let digits = greedy_cfrac(q, 2)?;
        if digits.digits != [n as u64] || !digits.terminated {
            return Err(Error::ConstructionViolated(format!("funnel packs as {:?}", digits.digits)));
        }
        if g.circles[labels[0]].family == 0 {
            let chain = greedy_chain(q, n)?.into_iter().map(|s| s.circle).collect();
            chains.push((g.circles[labels[0]].label.clone(), chain));
        }
    }
    // the image funnels are mirror copies under z ↦ ik/z̄; mapping the base
    // chains keeps their tangencies as sharp as the originals
    let base_chains = chains.clone();
    for (left, chain) in base_chains {
        let image = chain.iter().map(|c| mirror_image(c, k)).collect::<Result<Vec<_>>>()?;
        chains.push((format!("M({left})"), image));
    }
    for (left, chain) in chains {
        for (j, c) in chain.into_iter().enumerate() {
            g.push(LabeledCircle::new(format!("K{left}.{}", j + 1), 2, c))?;
        }
    }
    let g = truncate_interstices(&g)?;
    let audit = g.audit_error();
    if audit > AUDIT_TOL {
        return Err(Error::ConstructionViolated(format!("audit error {audit}")));
    }
    let (poly, points) = extract_polyhedron(&g)?;
    let ideal: Vec<bool> = vec![true; poly.vertex_count];
    let gauge = choose_gauge(&poly, &ideal)?;
    let mut pattern = CirclePattern {
        poly: poly.clone(),
        angles: AngleAssignment::right(),
        normals: g.circles.iter().map(|c| c.normal).collect(),
        ideal: points.iter().map(|&z| Some(ComplexPoint::Finite(z))).collect(),
        finite: vec![None; poly.vertex_count],
        residual: 0.0,
        gauge,
    };
    pattern.residual = pattern_residual(&pattern);
    if pattern.residual > 1e-9 {
        return Err(Error::ConstructionViolated(format!("assembled pattern residual {}", pattern.residual)));
    }
    Ok(BuiltPolyhedron { n, r, graph: g, poly, pattern })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub n: usize,
    pub r_n: f64,
    pub l_n: f64,
    #[serde(rename = "V_Pn")]
    pub v_pn: f64,
    #[serde(rename = "V_Pn_prime")]
    pub v_pn_prime: f64,
    #[serde(rename = "dV")]
    pub dv: f64,
    #[serde(rename = "K_bound")]
    pub k_bound: f64,
    /// ΔV_n / l_n^a.
    pub ratio: f64,
}

/// Drills P_n along the perpendicular between the C2 and C2′ edges of the
/// C0 face and records the volume change.
pub fn family_row(n: usize, a: f64, opts: &RealizeOptions) -> Result<FamilyRow> {
    let b = build_pn(n)?;
    let c0 = b.face("C0")?;
    let e1 = b.shared_edge(c0, b.face("C2")?)?;
    let e2 = b.shared_edge(c0, b.face("C2'")?)?;
    let l = face_perp_length(&b.pattern, c0, e1, e2)?;
    let v = polyhedron_volume(&b.pattern)?;
    let drilled = surgery(&b.poly, &SurgerySpec::new(c0, e1, e2))?;
    let v2 = polyhedron_volume(&realize(&drilled, &AngleAssignment::right(), opts)?)?;
    let dv = v2 - v;
    Ok(FamilyRow {
        n,
        r_n: b.r,
        l_n: l,
        v_pn: v,
        v_pn_prime: v2,
        dv,
        k_bound: combinatorial_k(),
        ratio: dv / l.powf(a),
    })
}

/// Rows for every n, in input order; rows are computed in parallel.
pub fn family_experiment(ns: &[usize], a: f64, opts: &RealizeOptions) -> Result<Vec<FamilyRow>> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("exponent {a} must be positive")));
    }
    ns.par_iter().map(|&n| family_row(n, a, opts)).collect()
}
