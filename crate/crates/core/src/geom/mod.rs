//! Hyperbolic geometry kernel.

pub mod complex;
pub mod distance;
pub mod lobachevsky;
pub mod mink;
pub mod polygon;

pub use complex::{cross_ratio, ComplexPoint, GenCircle, Mobius, C64};
pub use distance::{geodesic_distance, quad_perpendiculars, visual_angle, Geodesic, GeodesicDistance, Relation};
pub use lobachevsky::{clausen2, ideal_tet_volume, lobachevsky, shape_volume};
pub use mink::{
    dihedral_angle, ideal_point, ideal_to_complex, mink_distance, plane_pair_invariant, plane_to_circle,
    tri_plane_vertex, to_mink_plane, MinkVector, PairInvariant, PairTag,
};
pub use polygon::{polygon_from_data, PolygonalCurve};

/// `mobius_from_triple` in free-function form.
pub fn mobius_from_triple(src: [ComplexPoint; 3], dst: [ComplexPoint; 3]) -> crate::error::Result<Mobius> {
    Mobius::from_triple(src, dst)
}
