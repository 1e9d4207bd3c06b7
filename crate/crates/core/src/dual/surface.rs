//! Spherical cone surfaces stored as polygon gluing data.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::combin::CombPolyhedron;
use crate::error::{Error, Result};
use crate::pattern::AngleAssignment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolygonKind {
    /// Dual of a finite vertex.
    Cell,
    /// Dual of an ideal vertex; every corner is an equator point with angle π.
    Hemisphere,
    /// One of the two triangles of an inserted bigon.
    Bigon,
    /// Triangle from a pole to an equator arc.
    Pole,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphPolygon {
    pub kind: PolygonKind,
    /// Side `k` runs from `vertices[k]` to `vertices[k + 1]`.
    pub vertices: Vec<usize>,
    pub lengths: Vec<f64>,
    /// Corner angle at `vertices[k]`.
    pub angles: Vec<f64>,
    /// Glued edge per side.
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualEdge {
    /// (polygon, side) pairs, glued with reversed orientation.
    pub sides: [(usize, usize); 2],
    pub in_bigon: bool,
    /// Primal edge (sorted endpoints) this edge is dual to, if any.
    pub primal: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeSurface {
    pub vertex_count: usize,
    pub polygons: Vec<SphPolygon>,
    pub edges: Vec<DualEdge>,
}

/// Corner angles of a spherical triangle with sides `s[k]` from corner `k`
/// to corner `k + 1`.
pub fn sph_triangle_angles(s: [f64; 3]) -> Result<[f64; 3]> {
    let mut out = [0.0; 3];
    for k in 0..3 {
        let (b, c, a) = (s[(k + 2) % 3], s[k], s[(k + 1) % 3]);
        if (b - FRAC_PI_2).abs() < 1e-15 && (c - FRAC_PI_2).abs() < 1e-15 {
            out[k] = a;
            continue;
        }
        if (b - FRAC_PI_2).abs() < 1e-15 && (a - FRAC_PI_2).abs() < 1e-15
            || (c - FRAC_PI_2).abs() < 1e-15 && (a - FRAC_PI_2).abs() < 1e-15
        {
            out[k] = FRAC_PI_2;
            continue;
        }
        let den = b.sin() * c.sin();
        if den.abs() < 1e-300 {
            return Err(Error::ConstructionFailed(format!("degenerate spherical triangle {s:?}")));
        }
        out[k] = ((a.cos() - b.cos() * c.cos()) / den).clamp(-1.0, 1.0).acos();
    }
    Ok(out)
}

impl SphPolygon {
    pub fn area(&self) -> f64 {
        let k = self.vertices.len() as f64;
        self.angles.iter().sum::<f64>() - (k - 2.0) * PI
    }
}

impl ConeSurface {
    pub fn edge_length(&self, e: usize) -> f64 {
        let (p, s) = self.edges[e].sides[0];
        self.polygons[p].lengths[s]
    }

    /// Endpoints of side `s` of polygon `p`.
    pub fn side_ends(&self, p: usize, s: usize) -> (usize, usize) {
        let v = &self.polygons[p].vertices;
        (v[s], v[(s + 1) % v.len()])
    }

    pub fn dual_edge_for(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().position(|e| e.primal == Some(key))
    }

    pub fn area(&self) -> f64 {
        self.polygons.iter().map(SphPolygon::area).sum()
    }

    /// Largest difference between the two glued side lengths of an edge.
    pub fn gluing_mismatch(&self) -> f64 {
        self.edges
            .iter()
            .map(|e| {
                let [(p, s), (q, t)] = e.sides;
                (self.polygons[p].lengths[s] - self.polygons[q].lengths[t]).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Structural checks: side references, reversed gluing, lengths.
    pub fn validate(&self) -> Result<()> {
        for (i, e) in self.edges.iter().enumerate() {
            let [(p, s), (q, t)] = e.sides;
            if self.polygons[p].edges[s] != i || self.polygons[q].edges[t] != i {
                return Err(Error::ConstructionFailed(format!("edge {i} side references disagree")));
            }
            let (a, b) = self.side_ends(p, s);
            let (c, d) = self.side_ends(q, t);
            if (a, b) != (d, c) {
                return Err(Error::ConstructionFailed(format!("edge {i} not glued with reversed orientation")));
            }
        }
        for (k, p) in self.polygons.iter().enumerate() {
            let n = p.vertices.len();
            if p.lengths.len() != n || p.angles.len() != n || p.edges.len() != n {
                return Err(Error::ConstructionFailed(format!("polygon {k} has inconsistent data")));
            }
            if p.lengths.iter().any(|&l| !(l >= 0.0 && l < PI)) {
                return Err(Error::ConstructionFailed(format!("polygon {k} has a side outside [0, pi)")));
            }
        }
        if self.gluing_mismatch() > 1e-10 {
            return Err(Error::ConstructionFailed("glued sides differ in length".into()));
        }
        Ok(())
    }

    /// Corner sum at every vertex.
    pub fn cone_angles(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.vertex_count];
        for p in &self.polygons {
            for (v, a) in p.vertices.iter().zip(&p.angles) {
                out[*v] += a;
            }
        }
        out
    }

    /// Vertices whose cone angle is not above 2π (with tolerance `tol`).
    pub fn cone_violations(&self, tol: f64) -> Vec<usize> {
        self.cone_angles()
            .iter()
            .enumerate()
            .filter(|(_, &a)| a <= 2.0 * PI + tol)
            .map(|(v, _)| v)
            .collect()
    }

    /// |area − (4π + Σ(cone − 2π))|.
    pub fn gauss_bonnet_defect(&self) -> f64 {
        let excess: f64 = self.cone_angles().iter().map(|a| a - 2.0 * PI).sum();
        (self.area() - (4.0 * PI + excess)).abs()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let out: ConeSurface = serde_json::from_str(s)?;
        out.validate()?;
        Ok(out)
    }

    /// Order- and id-independent gluing description with lengths rounded
    /// to 1e−10, for comparing surfaces.
    pub fn gluing_signature(&self) -> Vec<(Vec<usize>, Vec<i64>, Vec<usize>, Vec<i64>)> {
        let round = |x: f64| (x * 1e10).round() as i64;
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                let [(p, s), (q, t)] = e.sides;
                let key = |p: usize, s: usize| {
                    let poly = &self.polygons[p];
                    let n = poly.vertices.len();
                    let vs: Vec<usize> = (0..n).map(|k| poly.vertices[(s + k) % n]).collect();
                    let ls: Vec<i64> = (0..n).map(|k| round(poly.lengths[(s + k) % n])).collect();
                    (vs, ls)
                };
                let (a, b) = (key(p, s), key(q, t));
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                (a.0, a.1, b.0, b.1)
            })
            .collect();
        out.sort();
        out
    }
}

/// Spherical dual: a hemisphere per ideal vertex, a cell per finite
/// trivalent vertex, dual edge lengths π − dihedral angle. Dual vertex `f`
/// corresponds to face `f`.
pub fn dual_of(p: &CombPolyhedron, a: &AngleAssignment) -> Result<ConeSurface> {
    let report = p.validate();
    if !report.ok() {
        return Err(Error::InvalidInput(report.failures.join("; ")));
    }
    let rot = p.rotations()?;
    let darts = p.dart_map();
    let prim = p.edges()?;
    let edge_id: BTreeMap<(usize, usize), usize> = prim.iter().enumerate().map(|(i, e)| ((e.u, e.v), i)).collect();
    let mut polygons = Vec::with_capacity(p.vertex_count);
    let mut sides: Vec<Vec<(usize, usize)>> = vec![Vec::new(); prim.len()];
    for (v, nb) in rot.iter().enumerate() {
        let lengths: Vec<f64> = nb.iter().map(|&w| PI - a.angle(v, w)).collect();
        let ext: f64 = lengths.iter().sum();
        let vertices: Vec<usize> = nb.iter().map(|&w| darts[&(w, v)].0).collect();
        let (kind, angles) = if (ext - 2.0 * PI).abs() < 1e-12 {
            (PolygonKind::Hemisphere, vec![PI; nb.len()])
        } else if ext < 2.0 * PI && nb.len() == 3 {
            let t = sph_triangle_angles([lengths[0], lengths[1], lengths[2]])?;
            (PolygonKind::Cell, t.to_vec())
        } else {
            return Err(Error::InvalidInput(format!(
                "vertex {v}: only ideal vertices and finite trivalent vertices have a determined dual cell"
            )));
        };
        let mut edges = Vec::with_capacity(nb.len());
        for (k, &w) in nb.iter().enumerate() {
            let id = edge_id[&(v.min(w), v.max(w))];
            sides[id].push((v, k));
            edges.push(id);
        }
        polygons.push(SphPolygon { kind, vertices, lengths, angles, edges });
    }
    let edges = prim
        .iter()
        .zip(sides)
        .map(|(e, s)| DualEdge { sides: [s[0], s[1]], in_bigon: false, primal: Some((e.u, e.v)) })
        .collect();
    let out = ConeSurface { vertex_count: p.faces.len(), polygons, edges };
    out.validate()?;
    Ok(out)
}

/// Link of a vertex: corners in cyclic order, each followed by the edge
/// crossed to reach the next corner.
pub(crate) fn vertex_links(s: &ConeSurface) -> Vec<Vec<((usize, usize), usize)>> {
    let mut seen: Vec<Vec<bool>> = s.polygons.iter().map(|p| vec![false; p.vertices.len()]).collect();
    let mut links = vec![Vec::new(); s.vertex_count];
    for p0 in 0..s.polygons.len() {
        for k0 in 0..s.polygons[p0].vertices.len() {
            if seen[p0][k0] {
                continue;
            }
            let v = s.polygons[p0].vertices[k0];
            let mut link = Vec::new();
            let (mut p, mut k) = (p0, k0);
            while !seen[p][k] {
                seen[p][k] = true;
                let e = s.polygons[p].edges[k];
                link.push(((p, k), e));
                let other = if s.edges[e].sides[0] == (p, k) { s.edges[e].sides[1] } else { s.edges[e].sides[0] };
                let n = s.polygons[other.0].vertices.len();
                p = other.0;
                k = (other.1 + 1) % n;
            }
            links[v].push(link);
        }
    }
    links.into_iter().map(|mut l| if l.len() == 1 { l.pop().unwrap() } else { l.concat() }).collect()
}

/// Cuts along dual edges `e1` and `e2` (which share exactly one endpoint,
/// the dual of the bent face) and glues in a bigon of angle π − θ split
/// into two triangles by g*. The split-off half of the shared endpoint gets
/// the new vertex id.
pub fn insert_bigon(s: &ConeSurface, e1: usize, e2: usize, theta: f64) -> Result<ConeSurface> {
    if !(theta > 0.0 && theta <= PI) {
        return Err(Error::InvalidParameter(format!("bigon angle parameter {theta} outside (0, pi]")));
    }
    if e1 >= s.edges.len() || e2 >= s.edges.len() || e1 == e2 {
        return Err(Error::InvalidInput("bad dual edge ids".into()));
    }
    let ends = |e: usize| s.side_ends(s.edges[e].sides[0].0, s.edges[e].sides[0].1);
    let (x1, y1) = ends(e1);
    let (x2, y2) = ends(e2);
    let common: Vec<usize> = [x1, y1].into_iter().filter(|v| *v == x2 || *v == y2).collect();
    if common.len() != 1 {
        return Err(Error::InvalidInput("dual edges must share exactly one endpoint".into()));
    }
    let polys = |e: usize| [s.edges[e].sides[0].0, s.edges[e].sides[1].0];
    if polys(e1).iter().any(|p| polys(e2).contains(p)) {
        return Err(Error::AdjacentEdges("dual edges border a common polygon".into()));
    }
    let cf = common[0];
    let links = vertex_links(s);
    let link = &links[cf];
    let pos = |e: usize| link.iter().position(|&(_, x)| x == e).expect("edge in link");
    let (i, j) = (pos(e1), pos(e2));
    let n = link.len();
    let mut out = s.clone();
    let cf2 = out.vertex_count;
    out.vertex_count += 1;
    // corners strictly after e2 up to and including the corner before e1
    let mut k = (j + 1) % n;
    while k != (i + 1) % n {
        let (p, c) = link[k].0;
        out.polygons[p].vertices[c] = cf2;
        k = (k + 1) % n;
    }
    let mut tri = Vec::new();
    for &e in &[e1, e2] {
        let [sa, sb] = out.edges[e].sides;
        let apex = if ends(e).0 == cf { ends(e).1 } else { ends(e).0 };
        let (a0, a1) = out.side_ends(sa.0, sa.1);
        let (b0, b1) = out.side_ends(sb.0, sb.1);
        let la = out.polygons[sa.0].lengths[sa.1];
        let lb = out.polygons[sb.0].lengths[sb.1];
        // triangle must contain (a1 -> a0) and (b1 -> b0)
        let free = |x: usize, y: usize| if x == apex { y } else { x };
        let (fa, fb) = (free(a0, a1), free(b0, b1));
        let order = if a1 == apex { [apex, fa, fb] } else { [apex, fb, fa] };
        let side_of = |u: usize, v: usize| (0..3).find(|&k| order[k] == u && order[(k + 1) % 3] == v);
        let ka = side_of(a1, a0).ok_or_else(|| Error::ConstructionFailed("inconsistent slit orientation".into()))?;
        let kb = side_of(b1, b0).ok_or_else(|| Error::ConstructionFailed("inconsistent slit orientation".into()))?;
        let kg = 3 - ka - kb;
        let mut lengths = [0.0; 3];
        lengths[ka] = la;
        lengths[kb] = lb;
        lengths[kg] = PI - theta;
        let angles = if theta == PI {
            let mut a = [FRAC_PI_2; 3];
            a[0] = 0.0;
            a
        } else {
            sph_triangle_angles(lengths)?
        };
        let t = out.polygons.len();
        let new_edge = out.edges.len();
        out.edges[e].sides = [sa, (t, ka)];
        out.edges[e].in_bigon = true;
        out.polygons[sb.0].edges[sb.1] = new_edge;
        out.edges.push(DualEdge { sides: [sb, (t, kb)], in_bigon: true, primal: out.edges[e].primal });
        let mut edges = vec![0; 3];
        edges[ka] = e;
        edges[kb] = new_edge;
        edges[kg] = usize::MAX;
        out.polygons.push(SphPolygon {
            kind: PolygonKind::Bigon,
            vertices: order.to_vec(),
            lengths: lengths.to_vec(),
            angles: angles.to_vec(),
            edges,
        });
        tri.push((t, kg));
    }
    let g = out.edges.len();
    out.edges.push(DualEdge { sides: [tri[0], tri[1]], in_bigon: true, primal: None });
    for &(t, kg) in &tri {
        out.polygons[t].edges[kg] = g;
    }
    out.validate()?;
    Ok(out)
}

/// Undoes a bigon of angle 0 (θ = π): removes its triangles, reglues the
/// slit and merges the split vertex back.
pub fn prune_degenerate(s: &ConeSurface) -> Result<ConeSurface> {
    let bigons: Vec<usize> = (0..s.polygons.len())
        .filter(|&p| s.polygons[p].kind == PolygonKind::Bigon)
        .collect();
    if bigons.len() != 2 {
        return Ok(s.clone());
    }
    let g = s.polygons[bigons[0]].edges.iter().copied().find(|&e| s.edges[e].primal.is_none());
    let g = match g {
        Some(g) if s.edge_length(g) == 0.0 => g,
        _ => return Ok(s.clone()),
    };
    let (u, v) = s.side_ends(s.edges[g].sides[0].0, s.edges[g].sides[0].1);
    let (keep, gone) = (u.min(v), u.max(v));
    let mut out = s.clone();
    let mut drop_edges = vec![g];
    for &t in &bigons {
        let lips: Vec<usize> = s.polygons[t].edges.iter().copied().filter(|&e| e != g).collect();
        let outer = |e: usize| {
            let [a, b] = s.edges[e].sides;
            if a.0 == t { b } else { a }
        };
        let (sa, sb) = (outer(lips[0]), outer(lips[1]));
        let (first, second) = (lips[0].min(lips[1]), lips[0].max(lips[1]));
        out.edges[first].sides = [sa, sb];
        out.edges[first].in_bigon = false;
        out.polygons[sa.0].edges[sa.1] = first;
        out.polygons[sb.0].edges[sb.1] = first;
        drop_edges.push(second);
    }
    for p in &mut out.polygons {
        for x in &mut p.vertices {
            if *x == gone {
                *x = keep;
            }
        }
    }
    // remove dropped edges and the bigon polygons, compacting ids
    drop_edges.sort();
    let edge_map: Vec<Option<usize>> = {
        let mut next = 0;
        (0..out.edges.len())
            .map(|e| {
                if drop_edges.binary_search(&e).is_ok() {
                    None
                } else {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect()
    };
    let poly_map: Vec<Option<usize>> = {
        let mut next = 0;
        (0..out.polygons.len())
            .map(|p| {
                if bigons.contains(&p) {
                    None
                } else {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect()
    };
    let polygons: Vec<SphPolygon> = out
        .polygons
        .iter()
        .enumerate()
        .filter(|(p, _)| poly_map[*p].is_some())
        .map(|(_, poly)| {
            let mut poly = poly.clone();
            for e in &mut poly.edges {
                *e = edge_map[*e].expect("kept edge");
            }
            for x in &mut poly.vertices {
                if *x > gone {
                    *x -= 1;
                }
            }
            poly
        })
        .collect();
    let edges: Vec<DualEdge> = out
        .edges
        .iter()
        .enumerate()
        .filter(|(e, _)| edge_map[*e].is_some())
        .map(|(_, e)| {
            let mut e = e.clone();
            for s in &mut e.sides {
                s.0 = poly_map[s.0].expect("kept polygon");
            }
            e
        })
        .collect();
    let out = ConeSurface { vertex_count: s.vertex_count - 1, polygons, edges };
    out.validate()?;
    Ok(out)
}

/// Scales every edge outside the bigon by (1 + t) and cones each
/// hemisphere from a new pole vertex (pole edges of length π/2). `t = 0`
/// returns the surface unchanged.
pub fn scale_and_polarize(s: &ConeSurface, t: f64) -> Result<ConeSurface> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("scale parameter {t} must be non-negative")));
    }
    if t == 0.0 {
        return Ok(s.clone());
    }
    let mut out = s.clone();
    for e in &s.edges {
        if e.in_bigon {
            continue;
        }
        for &(p, k) in &e.sides {
            out.polygons[p].lengths[k] *= 1.0 + t;
        }
    }
    if out.polygons.iter().flat_map(|p| &p.lengths).any(|&l| l >= PI) {
        return Err(Error::InvalidParameter(format!("scale parameter {t} makes an edge reach length pi")));
    }
    for h in 0..s.polygons.len() {
        if s.polygons[h].kind != PolygonKind::Hemisphere {
            continue;
        }
        let hemi = out.polygons[h].clone();
        let n = hemi.vertices.len();
        let pole = out.vertex_count;
        out.vertex_count += 1;
        let ids: Vec<usize> = (0..n).map(|k| if k == 0 { h } else { out.polygons.len() + k - 1 }).collect();
        let first_pole_edge = out.edges.len();
        for k in 0..n {
            let arc = hemi.lengths[k];
            let e = hemi.edges[k];
            for side in &mut out.edges[e].sides {
                if *side == (h, k) {
                    *side = (ids[k], 1);
                }
            }
            let tri = SphPolygon {
                kind: PolygonKind::Pole,
                vertices: vec![pole, hemi.vertices[k], hemi.vertices[(k + 1) % n]],
                lengths: vec![FRAC_PI_2, arc, FRAC_PI_2],
                angles: vec![arc, FRAC_PI_2, FRAC_PI_2],
                edges: vec![first_pole_edge + (k + n - 1) % n, e, first_pole_edge + k],
            };
            if k == 0 {
                out.polygons[h] = tri;
            } else {
                out.polygons.push(tri);
            }
        }
        for k in 0..n {
            out.edges.push(DualEdge { sides: [(ids[k], 2), (ids[(k + 1) % n], 0)], in_bigon: false, primal: None });
        }
    }
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::drum;

    #[test]
    fn octahedron_dual() {
        let s = dual_of(&drum(3).unwrap(), &AngleAssignment::right()).unwrap();
        assert_eq!(s.polygons.len(), 6);
        for p in &s.polygons {
            assert_eq!(p.kind, PolygonKind::Hemisphere);
            assert_eq!(p.lengths, vec![FRAC_PI_2; 4]);
        }
        for a in s.cone_angles() {
            assert!((a - 3.0 * PI).abs() < 1e-12);
        }
        assert!(s.gauss_bonnet_defect() < 1e-10);
    }

    #[test]
    fn face_size_gives_cone_angle() {
        let d = drum(5).unwrap();
        let s = dual_of(&d, &AngleAssignment::right()).unwrap();
        for (f, a) in s.cone_angles().iter().enumerate() {
            assert!((a - d.faces[f].len() as f64 * PI).abs() < 1e-12);
        }
    }

    #[test]
    fn triangle_angles_law_of_cosines() {
        let t = 0.7;
        let a = sph_triangle_angles([FRAC_PI_2, PI - t, FRAC_PI_2]).unwrap();
        // corner k is opposite side k + 1
        assert!((a[0] - (PI - t)).abs() < 1e-15);
        assert!((a[1] - FRAC_PI_2).abs() < 1e-15);
        assert!((a[2] - FRAC_PI_2).abs() < 1e-15);
        let g = sph_triangle_angles([1.0, 1.2, 0.9]).unwrap();
        // compare with the general formula on a perturbed copy
        let h = sph_triangle_angles([1.0, 1.2, 0.9 + 1e-9]).unwrap();
        for k in 0..3 {
            assert!((g[k] - h[k]).abs() < 1e-8);
        }
        assert!(g.iter().sum::<f64>() > PI);
    }
}
