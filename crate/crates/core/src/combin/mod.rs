//! Combinatorial polyhedra, surgery, enumeration and signed polyhedra.

pub mod canon;
pub mod poly;
pub mod signed;
pub mod surgery;

pub use canon::{canonical_code, CanonicalCode};
pub use poly::{cube, drum, prism, tetrahedron, CombPolyhedron, EdgeInfo, ValidationReport};
pub use signed::{
    check_rigidity_dichotomy, collapse_zero_edges, sign_changes, sign_indices, CollapseResult, CollapsedSphere,
    DichotomyVerdict, Quarters, Sign, SignIndices, SignedPolyhedron,
};
pub use surgery::{admissible_surgeries, enumerate_basic, surgery, surgery_detailed, EnumEntry, SurgeryResult, SurgerySpec};
