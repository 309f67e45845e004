//! Instance generators and checkers for two hardness constructions:
//! Line-Covering rays turned into a red/blue point set scored by `phi_LC`,
//! and max-weight triangles in a tripartite graph turned into weighted double
//! lines whose heaviest point sits at a triple crossing.

mod gadget;
mod line_covering;

pub use gadget::{
    brute_force_max_triangle, check_gadget, gen_clique_gadget, max_weight_point, point_weight, verify_gadget, EdgeClass,
    GadgetCheck, GadgetEdge, GadgetInstance, TripartiteGraph, MAX_WEIGHT_POINT_LIMIT,
};
pub use line_covering::{
    achievable_cut_counts, exactify, gen_line_covering, line_cover_exists, planted_rays, random_rays,
    scan_line_covering, verify_line_covering, LineCoverInstance, Ray, RayDir,
};
