//! Oriented 2-sphere cell complexes given by counterclockwise face cycles.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombPolyhedron {
    #[serde(rename = "vertices")]
    pub vertex_count: usize,
    pub faces: Vec<Vec<usize>>,
}

/// Undirected edge `u < v`; `left` is the face traversing `u -> v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeInfo {
    pub u: usize,
    pub v: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<String>,
    pub is_basic: bool,
    pub euler: i64,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl CombPolyhedron {
    pub fn new(vertex_count: usize, faces: Vec<Vec<usize>>) -> Self {
        CombPolyhedron { vertex_count, faces }
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Map from directed edge `(u, v)` to `(face, position of u)`.
    pub fn dart_map(&self) -> HashMap<(usize, usize), (usize, usize)> {
        let mut m = HashMap::new();
        for (f, cyc) in self.faces.iter().enumerate() {
            for i in 0..cyc.len() {
                m.insert((cyc[i], cyc[(i + 1) % cyc.len()]), (f, i));
            }
        }
        m
    }

    /// Edge table sorted by `(u, v)`; errors when the complex is not closed.
    pub fn edges(&self) -> Result<Vec<EdgeInfo>> {
        let darts = self.dart_map();
        let mut out = Vec::with_capacity(darts.len() / 2);
        for (&(u, v), &(f, _)) in &darts {
            if u < v {
                let &(g, _) = darts
                    .get(&(v, u))
                    .ok_or_else(|| Error::InvalidInput(format!("edge {u}-{v} has one face")))?;
                out.push(EdgeInfo { u, v, left: f, right: g });
            } else if !darts.contains_key(&(v, u)) {
                return Err(Error::InvalidInput(format!("edge {v}-{u} has one face")));
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn edge_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn euler(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.vertex_count];
        for cyc in &self.faces {
            for &v in cyc {
                if v < self.vertex_count {
                    val[v] += 1;
                }
            }
        }
        val
    }

    /// Neighbors of each vertex in rotation order: the successor of `w`
    /// around `v` is the vertex preceding `v` on the face through `v -> w`.
    pub fn rotations(&self) -> Result<Vec<Vec<usize>>> {
        let darts = self.dart_map();
        let mut rot = vec![Vec::new(); self.vertex_count];
        let mut out_darts: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for &(u, v) in darts.keys() {
            out_darts[u].push(v);
        }
        for v in 0..self.vertex_count {
            let Some(&start) = out_darts[v].iter().min() else {
                return Err(Error::InvalidInput(format!("vertex {v} unused")));
            };
            let mut w = start;
            loop {
                rot[v].push(w);
                let &(f, p) = darts
                    .get(&(v, w))
                    .ok_or_else(|| Error::InvalidInput(format!("missing dart {v}-{w}")))?;
                let cyc = &self.faces[f];
                let u = cyc[(p + cyc.len() - 1) % cyc.len()];
                if !darts.contains_key(&(u, v)) {
                    return Err(Error::InvalidInput(format!("edge {u}-{v} has one face")));
                }
                w = u;
                if w == start {
                    break;
                }
                if rot[v].len() > out_darts[v].len() {
                    return Err(Error::InvalidInput(format!("rotation at {v} is not a cycle")));
                }
            }
            if rot[v].len() != out_darts[v].len() {
                return Err(Error::InvalidInput(format!("rotation at {v} splits into several cycles")));
            }
        }
        Ok(rot)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        for (f, cyc) in self.faces.iter().enumerate() {
            if cyc.len() < 2 {
                failures.push(format!("face {f} has fewer than two sides"));
            }
            if let Some(v) = cyc.iter().find(|&&v| v >= self.vertex_count) {
                failures.push(format!("face {f} references vertex {v} out of range"));
            }
            let mut sorted = cyc.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cyc.len() {
                failures.push(format!("face {f} repeats a vertex"));
            }
        }
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (f, cyc) in self.faces.iter().enumerate() {
            for i in 0..cyc.len() {
                let d = (cyc[i], cyc[(i + 1) % cyc.len()]);
                if let Some(g) = seen.insert(d, f) {
                    failures.push(format!("directed edge {}-{} used by faces {g} and {f}", d.0, d.1));
                }
            }
        }
        for &(u, v) in seen.keys() {
            if !seen.contains_key(&(v, u)) {
                failures.push(format!("edge {}-{} has one face", u.min(v), u.max(v)));
            }
        }
        failures.sort();
        failures.dedup();
        if failures.is_empty() {
            if let Err(e) = self.rotations() {
                failures.push(e.to_string());
            }
        }
        let euler = self.euler();
        if euler != 2 {
            failures.push(format!("Euler characteristic {euler} != 2"));
        }
        let is_basic = failures.is_empty()
            && self.valences().iter().all(|&d| d == 4)
            && self.faces.iter().all(|c| c.len() >= 3);
        ValidationReport { failures, is_basic, euler }
    }

    /// Validation that additionally requires every vertex to have valence four.
    pub fn validate_basic(&self) -> ValidationReport {
        let mut r = self.validate();
        if r.ok() && !r.is_basic {
            for (v, d) in self.valences().iter().enumerate() {
                if *d != 4 {
                    r.failures.push(format!("vertex {v} has valence {d}"));
                }
            }
            if let Some(f) = self.faces.iter().position(|c| c.len() < 3) {
                r.failures.push(format!("face {f} is a bigon"));
            }
        }
        r
    }

    /// Same complex with vertex `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        CombPolyhedron {
            vertex_count: self.vertex_count,
            faces: self.faces.iter().map(|c| c.iter().map(|&v| perm[v]).collect()).collect(),
        }
    }

    /// Orientation-reversed complex.
    pub fn mirror(&self) -> Self {
        CombPolyhedron {
            vertex_count: self.vertex_count,
            faces: self.faces.iter().map(|c| c.iter().rev().copied().collect()).collect(),
        }
    }

    /// Position of edge `(a, b)` (either direction) in face `f`.
    pub fn edge_position(&self, f: usize, a: usize, b: usize) -> Option<usize> {
        let cyc = &self.faces[f];
        let n = cyc.len();
        (0..n).find(|&i| {
            let (x, y) = (cyc[i], cyc[(i + 1) % n]);
            (x, y) == (a, b) || (x, y) == (b, a)
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Antiprism with two `n`-gons (faces 0 = top, 1 = bottom) and `2n` triangles.
pub fn drum(n: usize) -> Result<CombPolyhedron> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("drum needs n >= 3, got {n}")));
    }
    let a = |i: usize| i % n;
    let b = |i: usize| n + i % n;
    let mut faces = vec![(0..n).collect::<Vec<_>>(), (0..n).rev().map(b).collect()];
    for i in 0..n {
        faces.push(vec![a(i + 1), a(i), b(i)]);
        faces.push(vec![a(i + 1), b(i), b(i + 1)]);
    }
    Ok(CombPolyhedron::new(2 * n, faces))
}

/// Prism over an `n`-gon; faces 0 = top, 1 = bottom.
pub fn prism(n: usize) -> Result<CombPolyhedron> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("prism needs n >= 3, got {n}")));
    }
    let mut faces = vec![(n..2 * n).collect::<Vec<_>>(), (0..n).rev().collect()];
    for i in 0..n {
        let j = (i + 1) % n;
        faces.push(vec![i, j, n + j, n + i]);
    }
    Ok(CombPolyhedron::new(2 * n, faces))
}

pub fn cube() -> CombPolyhedron {
    prism(4).expect("n = 4")
}

pub fn tetrahedron() -> CombPolyhedron {
    CombPolyhedron::new(4, vec![vec![0, 2, 1], vec![0, 1, 3], vec![1, 2, 3], vec![2, 0, 3]])
}

/// Edge table keyed by sorted vertex pair.
pub fn edge_index(edges: &[EdgeInfo]) -> BTreeMap<(usize, usize), usize> {
    edges.iter().enumerate().map(|(i, e)| ((e.u, e.v), i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drum_counts() {
        for n in 3..9 {
            let d = drum(n).unwrap();
            assert_eq!(d.vertex_count, 2 * n);
            assert_eq!(d.edge_count(), 4 * n);
            assert_eq!(d.face_count(), 2 * n + 2);
            let r = d.validate();
            assert!(r.ok(), "{:?}", r.failures);
            assert!(r.is_basic);
        }
        assert!(matches!(drum(2), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn octahedron_is_all_triangles() {
        assert!(drum(3).unwrap().faces.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn dangling_edge_fails() {
        let mut t = tetrahedron();
        t.faces.pop();
        let r = t.validate();
        assert!(r.failures.iter().any(|f| f.contains("has one face")), "{:?}", r.failures);
    }

    #[test]
    fn cube_and_tetrahedron_valid() {
        for p in [cube(), tetrahedron(), prism(5).unwrap()] {
            let r = p.validate();
            assert!(r.ok(), "{:?}", r.failures);
            assert!(!r.is_basic);
            assert!(p.valences().iter().all(|&d| d == 3));
        }
    }

    #[test]
    fn rotation_cycles_have_full_length() {
        let d = drum(5).unwrap();
        let rot = d.rotations().unwrap();
        assert!(rot.iter().all(|r| r.len() == 4));
    }

    #[test]
    fn json_round_trip() {
        let d = drum(4).unwrap();
        let s = d.to_json();
        assert!(s.starts_with("{\"vertices\":8,\"faces\":"));
        let back = CombPolyhedron::from_json(&s).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_json(), s);
    }
}
