//! Spherical duals of polyhedra as cone surfaces: bigon insertion, scaling
//! with pole subdivision, cone angles and closed edge-geodesic search.

pub mod search;
pub mod surface;

pub use search::{edge_geodesic_search, EdgeGeodesic, GEODESIC_ANGLE_TOL};
pub use surface::{
    dual_of, insert_bigon, prune_degenerate, scale_and_polarize, sph_triangle_angles, ConeSurface, DualEdge,
    PolygonKind, SphPolygon,
};

use crate::combin::{CombPolyhedron, SurgerySpec};
use crate::error::{Error, Result};
use crate::pattern::AngleAssignment;

/// S_θ: the dual of `p` with a bigon inserted across the edges `b.e1`,
/// `b.e2` of face `b.face`.
pub fn bent_dual(p: &CombPolyhedron, a: &AngleAssignment, b: &SurgerySpec, theta: f64) -> Result<ConeSurface> {
    let cyc = p
        .faces
        .get(b.face)
        .ok_or_else(|| Error::InvalidInput(format!("no face {}", b.face)))?;
    let n = cyc.len();
    if b.e1 >= n || b.e2 >= n {
        return Err(Error::InvalidInput("edge position out of range".into()));
    }
    let s = dual_of(p, a)?;
    let find = |k: usize| {
        s.dual_edge_for(cyc[k], cyc[(k + 1) % n])
            .ok_or_else(|| Error::InvalidInput(format!("no dual edge for position {k}")))
    };
    insert_bigon(&s, find(b.e1)?, find(b.e2)?, theta)
}
