//! Pinching two non-adjacent edges of a face, and enumeration of the
//! resulting basic polyhedra.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canon::{canonical_code, CanonicalCode};
use super::poly::CombPolyhedron;
use crate::error::{Error, Result};

/// Edges are positions in the face cycle: edge `i` joins `face[i]` and `face[i+1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SurgerySpec {
    pub face: usize,
    pub e1: usize,
    pub e2: usize,
}

impl SurgerySpec {
    pub fn new(face: usize, e1: usize, e2: usize) -> Self {
        SurgerySpec { face, e1: e1.min(e2), e2: e1.max(e2) }
    }

    pub fn check(&self, p: &CombPolyhedron) -> Result<()> {
        let cyc = p
            .faces
            .get(self.face)
            .ok_or_else(|| Error::InvalidSurgery(format!("no face {}", self.face)))?;
        let n = cyc.len();
        if n < 4 {
            return Err(Error::InvalidSurgery(format!("face {} has only {n} sides", self.face)));
        }
        let (a, b) = (self.e1.min(self.e2), self.e1.max(self.e2));
        if b >= n {
            return Err(Error::InvalidSurgery(format!("edge position {b} out of range")));
        }
        if a == b || b == a + 1 || (b + 1) % n == a {
            return Err(Error::InvalidSurgery(format!("edges {a} and {b} are not disjoint")));
        }
        Ok(())
    }
}

/// All admissible specs, ordered by face then edge pair.
pub fn admissible_surgeries(p: &CombPolyhedron) -> Vec<SurgerySpec> {
    let mut out = Vec::new();
    for (f, cyc) in p.faces.iter().enumerate() {
        let n = cyc.len();
        for i in 0..n {
            for j in (i + 2)..n {
                if (j + 1) % n != i {
                    out.push(SurgerySpec { face: f, e1: i, e2: j });
                }
            }
        }
    }
    out
}

/// Result of pinching: new vertex index and the indices of the two halves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryResult {
    pub poly: CombPolyhedron,
    pub new_vertex: usize,
    pub halves: [usize; 2],
}

pub fn surgery(p: &CombPolyhedron, s: &SurgerySpec) -> Result<CombPolyhedron> {
    surgery_detailed(p, s).map(|r| r.poly)
}

pub fn surgery_detailed(p: &CombPolyhedron, s: &SurgerySpec) -> Result<SurgeryResult> {
    s.check(p)?;
    let cyc = &p.faces[s.face];
    let n = cyc.len();
    let (i, j) = (s.e1.min(s.e2), s.e1.max(s.e2));
    let x = p.vertex_count;
    let (a0, a1) = (cyc[i], cyc[(i + 1) % n]);
    let (b0, b1) = (cyc[j], cyc[(j + 1) % n]);
    let darts = p.dart_map();
    let &(g1, _) = darts
        .get(&(a1, a0))
        .ok_or_else(|| Error::InvalidSurgery("edge without opposite face".into()))?;
    let &(g2, _) = darts
        .get(&(b1, b0))
        .ok_or_else(|| Error::InvalidSurgery("edge without opposite face".into()))?;
    if g1 == g2 {
        return Err(Error::InvalidSurgery("both edges border the same second face".into()));
    }
    let mut half_a = vec![x];
    half_a.extend((i + 1..=j).map(|k| cyc[k]));
    let mut half_b = vec![x];
    half_b.extend((j + 1..=i + n).map(|k| cyc[k % n]));
    if half_b.iter().skip(1).min() < half_a.iter().skip(1).min() {
        std::mem::swap(&mut half_a, &mut half_b);
    }
    let mut faces = p.faces.clone();
    let insert = |face: &mut Vec<usize>, u: usize, v: usize| {
        let m = face.len();
        let pos = (0..m).find(|&k| face[k] == u && face[(k + 1) % m] == v).expect("dart present");
        face.insert(pos + 1, x);
    };
    insert(&mut faces[g1], a1, a0);
    insert(&mut faces[g2], b1, b0);
    faces[s.face] = half_a;
    faces.push(half_b);
    let halves = [s.face, faces.len() - 1];
    Ok(SurgeryResult { poly: CombPolyhedron::new(x + 1, faces), new_vertex: x, halves })
}

#[derive(Clone, Debug)]
pub struct EnumEntry {
    pub code: CanonicalCode,
    pub poly: CombPolyhedron,
    pub generation: usize,
    /// Index of the entry this one was obtained from, with the surgery used.
    pub parent: Option<(usize, SurgerySpec)>,
}

/// Closure of `seeds` under `generations` rounds of surgery, deduplicated by
/// canonical code (reflections identified). Order: seeds, then each round's
/// new classes sorted by code.
pub fn enumerate_basic(seeds: &[CombPolyhedron], generations: usize) -> Result<Vec<EnumEntry>> {
    let mut out: Vec<EnumEntry> = Vec::new();
    let mut seen: BTreeMap<CanonicalCode, usize> = BTreeMap::new();
    for s in seeds {
        let code = canonical_code(s)?;
        if !seen.contains_key(&code) {
            seen.insert(code.clone(), out.len());
            out.push(EnumEntry { code, poly: s.clone(), generation: 0, parent: None });
        }
    }
    let mut frontier: Vec<usize> = (0..out.len()).collect();
    for gen in 1..=generations {
        let jobs: Vec<(usize, SurgerySpec)> = frontier
            .iter()
            .flat_map(|&k| admissible_surgeries(&out[k].poly).into_iter().map(move |s| (k, s)))
            .collect();
        let results: Vec<Result<(CanonicalCode, usize, SurgerySpec, CombPolyhedron)>> = jobs
            .par_iter()
            .map(|&(k, s)| {
                let q = surgery(&out[k].poly, &s)?;
                Ok((canonical_code(&q)?, k, s, q))
            })
            .collect();
        let mut fresh: BTreeMap<CanonicalCode, (usize, SurgerySpec, CombPolyhedron)> = BTreeMap::new();
        for r in results {
            let (code, k, s, q) = r?;
            if seen.contains_key(&code) {
                continue;
            }
            fresh.entry(code).or_insert((k, s, q));
        }
        frontier.clear();
        for (code, (k, s, q)) in fresh {
            seen.insert(code.clone(), out.len());
            frontier.push(out.len());
            out.push(EnumEntry { code, poly: q, generation: gen, parent: Some((k, s)) });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::poly::drum;

    #[test]
    fn drum4_opposite_edges() {
        let d = drum(4).unwrap();
        let q = surgery(&d, &SurgerySpec::new(0, 0, 2)).unwrap();
        assert_eq!((q.vertex_count, q.edge_count(), q.face_count()), (9, 18, 11));
        let r = q.validate();
        assert!(r.ok() && r.is_basic, "{:?}", r.failures);
    }

    #[test]
    fn rejects_bad_specs() {
        let d = drum(4).unwrap();
        assert!(matches!(surgery(&d, &SurgerySpec::new(0, 0, 1)), Err(Error::InvalidSurgery(_))));
        assert!(matches!(surgery(&d, &SurgerySpec::new(0, 0, 3)), Err(Error::InvalidSurgery(_))));
        assert!(matches!(surgery(&d, &SurgerySpec::new(2, 0, 2)), Err(Error::InvalidSurgery(_))));
        assert!(admissible_surgeries(&drum(3).unwrap()).is_empty());
    }

    #[test]
    fn octahedron_is_terminal() {
        let e = enumerate_basic(&[drum(3).unwrap()], 1).unwrap();
        assert_eq!(e.len(), 1);
    }

    #[test]
    fn drum4_one_generation() {
        let e = enumerate_basic(&[drum(4).unwrap()], 1).unwrap();
        assert!(e.len() >= 2);
        for x in &e {
            assert!(x.poly.validate().is_basic);
        }
    }
}
