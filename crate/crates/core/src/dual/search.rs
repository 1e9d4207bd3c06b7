//! Budgeted search for closed edge-geodesics on a cone surface.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::surface::{vertex_links, ConeSurface};

/// Tolerance on the "angle ≥ π on both sides" test.
pub const GEODESIC_ANGLE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeGeodesic {
    pub length: f64,
    /// Edge ids in traversal order.
    pub edges: Vec<usize>,
    /// Vertices visited; the first is repeated at the end.
    pub vertices: Vec<usize>,
}

struct Graph {
    /// (edge, other endpoint, position in own link) per vertex
    out: Vec<Vec<(usize, usize, usize)>>,
    /// cumulative corner angles per vertex link, with total at the end
    cum: Vec<Vec<f64>>,
    lengths: Vec<f64>,
}

impl Graph {
    fn new(s: &ConeSurface) -> Graph {
        let links = vertex_links(s);
        let mut out = vec![Vec::new(); s.vertex_count];
        let mut cum = vec![Vec::new(); s.vertex_count];
        for (v, link) in links.iter().enumerate() {
            let mut acc = vec![0.0];
            for (i, &((p, k), e)) in link.iter().enumerate() {
                acc.push(acc[i] + s.polygons[p].angles[k]);
                let (p0, k0) = s.edges[e].sides[0];
                let (a, b) = s.side_ends(p0, k0);
                let w = if a == v { b } else { a };
                if a != b {
                    out[v].push((e, w, i));
                }
            }
            cum[v] = acc;
        }
        let lengths = (0..s.edges.len()).map(|e| s.edge_length(e)).collect();
        Graph { out, cum, lengths }
    }

    fn position(&self, v: usize, e: usize) -> usize {
        self.out[v].iter().find(|x| x.0 == e).expect("edge at vertex").2
    }

    /// Both angles between link positions `i` and `j` at `v` are ≥ π.
    fn straight(&self, v: usize, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let c = &self.cum[v];
        let total = *c.last().expect("nonempty");
        // the edge after corner i sits between corners i and i+1
        let (lo, hi) = (i.min(j), i.max(j));
        let inner = c[hi + 1] - c[lo + 1];
        let outer = total - inner;
        inner >= PI - GEODESIC_ANGLE_TOL && outer >= PI - GEODESIC_ANGLE_TOL
    }
}

/// Shortest closed edge path with at most `budget` edges that is straight
/// (angle ≥ π on both sides) at every vertex, or `None`.
pub fn edge_geodesic_search(s: &ConeSurface, budget: usize) -> Option<EdgeGeodesic> {
    let g = Graph::new(s);
    let mut best: Option<EdgeGeodesic> = None;
    let mut path_e = Vec::with_capacity(budget);
    let mut path_v = Vec::with_capacity(budget + 1);
    for start in 0..s.vertex_count {
        for &(e0, w0, _) in &g.out[start] {
            path_e.clear();
            path_v.clear();
            path_v.push(start);
            path_v.push(w0);
            path_e.push(e0);
            dfs(&g, budget, g.lengths[e0], &mut path_e, &mut path_v, &mut best);
        }
    }
    best
}

fn dfs(g: &Graph, budget: usize, len: f64, pe: &mut Vec<usize>, pv: &mut Vec<usize>, best: &mut Option<EdgeGeodesic>) {
    if let Some(b) = best {
        if len >= b.length {
            return;
        }
    }
    let v = *pv.last().expect("nonempty");
    let last = *pe.last().expect("nonempty");
    let i = g.position(v, last);
    if v == pv[0] && pe.len() >= 2 {
        let j = g.position(v, pe[0]);
        if g.straight(v, i, j) {
            *best = Some(EdgeGeodesic { length: len, edges: pe.clone(), vertices: pv.clone() });
            return;
        }
    }
    if pe.len() == budget {
        return;
    }
    for &(e, w, j) in &g.out[v] {
        if !g.straight(v, i, j) {
            continue;
        }
        pe.push(e);
        pv.push(w);
        dfs(g, budget, len + g.lengths[e], pe, pv, best);
        pe.pop();
        pv.pop();
    }
}
