//! Circle packings in funnel quadrilaterals and the family of polyhedra
//! whose drilled volume change stays bounded while the perpendicular grows.

pub mod base;

pub use base::{pair_value, 
    base_pattern, classify, expansion_factor, extended_pattern, tangency_point, BasePattern, Incidence, LabeledCircle,
    PairRecord, TangencyGraph, AUDIT_TOL,
};
pub mod cfrac;

pub use cfrac::{
    funnel_quad, funnel_quad_of, funnel_quads, greedy_cfrac, greedy_chain, greedy_step, row_clearance, solve_r,
    solve_r_with, CFracDigits, GreedyStep, QuadRegion, SolveOptions, APOLLONIUS_TOL, CLEARANCE_BAND,
};
pub mod assemble;

pub use assemble::{
    build_at, build_pn, extract_polyhedron, family_experiment, family_row, truncate_interstices, BuiltPolyhedron,
    FamilyRow,
};
