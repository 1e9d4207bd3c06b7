//! Realization of ideal and bent polyhedra as circle patterns.

pub mod bend;
pub mod packing;
pub mod render;
pub mod solver;
pub mod types;
pub mod volume;

pub use bend::{
    bend_length, bent_complex, bent_realize, deform_family, face_perp_length, schlafli_residual, BendSpec,
    BentComplex, DeformationFamily, DeformationSample,
};
pub use render::{render_svg, svg_from_circles, svg_string};
pub use solver::{realize, realize_from, tutte_guess, InitialGuess, RealizeOptions, ACCEPT_RESIDUAL};
pub use types::{AngleAssignment, CirclePattern};
pub use volume::{ideal_fan_volume, polyhedron_volume, projection_volume};
