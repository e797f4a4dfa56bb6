//! Intersection theory on finite graded rings.

pub mod chern;
pub mod formulas;
pub mod pipeline;
pub mod ring;

pub use chern::{chern_twist, divide_to_rank, whitney_product, whitney_quotient, ChernVector};
pub use formulas::{
    assemble_intersection_matrix, blowup_selfintersection_correction, lagrangian_self_intersection,
    lefschetz_pencil_correction, matrix_rank, IntersectionMatrix,
};
pub use pipeline::{
    compute_intersections, projective_hypersurface_euler, relative_cotangent_c1, IntersectionInputs,
    IntersectionNumbers,
};
pub use ring::{ring_degree, ring_reduce, Generator, Monomial, Relation, RingElement, RingSpec};
