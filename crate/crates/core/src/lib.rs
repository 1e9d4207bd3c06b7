//! Ideal right-angled hyperbolic polyhedra: combinatorial surgery, circle
//! pattern realization, volumes, bending families and drilling bounds.

pub mod bounds;
pub mod brooks;
pub mod combin;
pub mod dual;
pub mod error;
pub mod geom;
pub mod numeric;
pub mod pattern;

pub use error::{Error, Result};
