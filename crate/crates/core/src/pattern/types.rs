//! Angle assignments and realized circle patterns.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::combin::CombPolyhedron;
use crate::error::{Error, Result};
use crate::geom::{ideal_point, plane_to_circle, ComplexPoint, GenCircle, MinkVector, Mobius, C64};

/// Interior dihedral angle per edge, keyed by sorted vertex pair.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleAssignment {
    pub default: f64,
    pub special: BTreeMap<(usize, usize), f64>,
}

impl Default for AngleAssignment {
    fn default() -> Self {
        AngleAssignment { default: FRAC_PI_2, special: BTreeMap::new() }
    }
}

impl AngleAssignment {
    pub fn right() -> Self {
        Self::default()
    }

    pub fn with(mut self, u: usize, v: usize, theta: f64) -> Self {
        self.special.insert((u.min(v), u.max(v)), theta);
        self
    }

    pub fn angle(&self, u: usize, v: usize) -> f64 {
        *self.special.get(&(u.min(v), u.max(v))).unwrap_or(&self.default)
    }
}

/// A realized polyhedron: one outward plane normal per face, one point per
/// ideal vertex, derived hyperboloid points for finite vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct CirclePattern {
    pub poly: CombPolyhedron,
    pub angles: AngleAssignment,
    pub normals: Vec<MinkVector>,
    pub ideal: Vec<Option<ComplexPoint>>,
    pub finite: Vec<Option<MinkVector>>,
    pub residual: f64,
    pub gauge: [usize; 3],
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CircleJson {
    Circle { face: usize, center: [f64; 2], radius: f64 },
    Line { face: usize, line: [f64; 3] },
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: usize,
    point: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct PatternJson {
    circles: Vec<CircleJson>,
    vertices: Vec<VertexJson>,
    residual: f64,
}

impl CirclePattern {
    pub fn circle(&self, f: usize) -> GenCircle {
        plane_to_circle(&self.normals[f]).0
    }

    pub fn circles(&self) -> Vec<GenCircle> {
        (0..self.normals.len()).map(|f| self.circle(f)).collect()
    }

    pub fn is_ideal(&self, v: usize) -> bool {
        self.ideal[v].is_some()
    }

    /// Null vector of ideal vertex `v`.
    pub fn ideal_vector(&self, v: usize) -> Option<MinkVector> {
        self.ideal[v].as_ref().map(ideal_point)
    }

    /// Image under a Möbius transformation (normals stay outward).
    pub fn transformed(&self, m: &Mobius) -> CirclePattern {
        let mut out = self.clone();
        out.normals = self.normals.iter().map(|n| m.apply_plane(n)).collect();
        out.ideal = self.ideal.iter().map(|p| p.map(|z| m.apply(z))).collect();
        out.finite = self.finite.iter().map(|x| x.map(|y| m.apply_mink_point(&y))).collect();
        out.residual = super::solver::pattern_residual(&out);
        out
    }

    /// Pattern JSON: circles (or lines `nx x + ny y = c`), ideal vertex points, residual.
    pub fn to_json(&self) -> String {
        let circles = self
            .circles()
            .into_iter()
            .enumerate()
            .map(|(face, c)| match c {
                GenCircle::Circle { center, radius } => CircleJson::Circle { face, center: [center.re, center.im], radius },
                GenCircle::Line { normal, offset } => CircleJson::Line { face, line: [normal.re, normal.im, offset] },
            })
            .collect();
        let vertices = self
            .ideal
            .iter()
            .enumerate()
            .filter_map(|(id, p)| match p {
                Some(ComplexPoint::Finite(z)) => Some(VertexJson { id, point: [z.re, z.im] }),
                _ => None,
            })
            .collect();
        serde_json::to_string(&PatternJson { circles, vertices, residual: self.residual }).expect("serializable")
    }

    /// Circles and vertex points from pattern JSON (orientation is not stored).
    pub fn circles_from_json(s: &str) -> Result<(Vec<(usize, GenCircle)>, Vec<(usize, C64)>, f64)> {
        let j: PatternJson = serde_json::from_str(s)?;
        let mut circles = Vec::new();
        for c in j.circles {
            match c {
                CircleJson::Circle { face, center, radius } => {
                    circles.push((face, GenCircle::circle(C64::new(center[0], center[1]), radius)?))
                }
                CircleJson::Line { face, line } => {
                    circles.push((face, GenCircle::line(C64::new(line[0], line[1]), line[2])?))
                }
            }
        }
        if circles.is_empty() {
            return Err(Error::Parse("no circles".into()));
        }
        let pts = j.vertices.iter().map(|v| (v.id, C64::new(v.point[0], v.point[1]))).collect();
        Ok((circles, pts, j.residual))
    }
}
