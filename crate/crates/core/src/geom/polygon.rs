//! Convex polygonal curves in the hyperbolic plane built from angle and
//! side-length data.
//!
//! The plane is embedded in R^{3,1} as the slice with third coordinate 0, so
//! line normals are ordinary [`MinkVector`]s.

use std::f64::consts::PI;

use super::mink::MinkVector;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PolygonalCurve {
    /// Outward unit normals of the lines `E_1..E_n`.
    pub normals: Vec<MinkVector>,
    /// Vertices `A_i = E_i ∩ E_{i+1}`.
    pub vertices: Vec<MinkVector>,
}

/// Marches the curve `E_1, ..., E_n` with interior angles `angles[i]` at
/// `A_{i+1}` (n-1 of them) and side lengths `lengths[i]` of `E_{i+2}` between
/// consecutive vertices (n-2 of them). The curve turns left.
pub fn polygon_from_data(angles: &[f64], lengths: &[f64]) -> Result<PolygonalCurve> {
    if angles.len() < 2 || lengths.len() + 1 != angles.len() {
        return Err(Error::ConstructionFailed(format!(
            "need n-1 angles and n-2 lengths, got {} and {}",
            angles.len(),
            lengths.len()
        )));
    }
    if let Some(a) = angles.iter().find(|a| !(**a > 0.0 && **a < PI)) {
        return Err(Error::ConstructionFailed(format!("angle {a} outside (0, pi)")));
    }
    if let Some(l) = lengths.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
        return Err(Error::ConstructionFailed(format!("length {l} not positive")));
    }
    let mut x = MinkVector::new(0.0, 0.0, 0.0, 1.0);
    let mut t = MinkVector::new(1.0, 0.0, 0.0, 0.0);
    let mut n = MinkVector::new(0.0, 1.0, 0.0, 0.0);
    let mut normals = vec![-n];
    let mut vertices = Vec::with_capacity(angles.len());
    for (i, &alpha) in angles.iter().enumerate() {
        if i > 0 {
            let l = lengths[i - 1];
            let (c, s) = (l.cosh(), l.sinh());
            let nx = x * c + t * s;
            t = x * s + t * c;
            x = nx;
        }
        vertices.push(x);
        let beta = PI - alpha;
        let (cb, sb) = (beta.cos(), beta.sin());
        let nt = t * cb + n * sb;
        n = n * cb - t * sb;
        t = nt;
        normals.push(-n);
    }
    Ok(PolygonalCurve { normals, vertices })
}

impl PolygonalCurve {
    /// Interior angles recovered from consecutive normals.
    pub fn angles(&self) -> Vec<f64> {
        self.normals
            .windows(2)
            .map(|w| super::mink::dihedral_angle(&w[0], &w[1]))
            .collect()
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.vertices
            .windows(2)
            .map(|w| super::mink::mink_distance(&w[0], &w[1]))
            .collect()
    }

    /// `<nu_1, nu_n>`.
    pub fn end_product(&self) -> f64 {
        self.normals[0].dot(self.normals.last().expect("nonempty"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn right_angled_chain_reconstructs() {
        let angles = [FRAC_PI_2; 4];
        let lengths = [0.8, 1.1, 0.5];
        let c = polygon_from_data(&angles, &lengths).unwrap();
        for (a, b) in c.angles().iter().zip(angles) {
            assert!((a - b).abs() < 1e-10);
        }
        for (a, b) in c.lengths().iter().zip(lengths) {
            assert!((a - b).abs() < 1e-10);
        }
        for v in &c.normals {
            assert!((v.norm_sq() - 1.0).abs() < 1e-12);
        }
        for (i, a) in c.vertices.iter().enumerate() {
            assert!(c.normals[i].dot(a).abs() < 1e-12);
            assert!(c.normals[i + 1].dot(a).abs() < 1e-12);
        }
    }

    #[test]
    fn congruent_data_equal_products() {
        let a = polygon_from_data(&[1.0, 2.0, 1.5], &[0.7, 0.9]).unwrap();
        let b = polygon_from_data(&[1.0, 2.0, 1.5], &[0.7, 0.9]).unwrap();
        assert!((a.end_product() - b.end_product()).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_data() {
        assert!(polygon_from_data(&[1.0, 4.0], &[1.0]).is_err());
        assert!(polygon_from_data(&[1.0, 1.0], &[0.0]).is_err());
        assert!(polygon_from_data(&[1.0, 1.0], &[1.0, 1.0]).is_err());
    }
}
