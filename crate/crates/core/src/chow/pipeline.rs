//! Intersection numbers of the Lagrangian classes in the resolved O'Grady-type
//! fibre, from the Chow-ring data of the blown-up Lagrangian `K̂` and of the
//! projective bundles over the sixteen centres.

use std::sync::Arc;

use num_bigint::BigInt;

use super::chern::{chern_twist, divide_to_rank, whitney_product, whitney_quotient, ChernVector};
use super::formulas::{
    assemble_intersection_matrix, blowup_selfintersection_correction, lagrangian_self_intersection,
    lefschetz_pencil_correction, IntersectionMatrix,
};
use super::ring::{ring_degree, RingElement, RingSpec};
use crate::error::ChowError;

/// Everything the computation consumes. Ring expressions are strings in the
/// generators of the corresponding ring.
#[derive(Clone, Debug)]
pub struct IntersectionInputs {
    /// Ring of `K̂`: hyperplane class, exceptional class, fibre class.
    pub khat_ring: Arc<RingSpec>,
    /// Total Chern class of the pulled-back cotangent bundle of the base surface (rank 2).
    pub base_cotangent: String,
    /// Hyperplane class of the projective bundle.
    pub hyperplane: String,
    /// First Chern class of the bundle the projective bundle is built from.
    pub normal_c1: String,
    /// First Chern class of the line bundle that twists the normal bundle.
    pub twist_line: String,
    /// Ring of the pairing between `K̂` and one exceptional projective bundle.
    pub pairing_ring: Arc<RingSpec>,
    /// Total Chern class of the cotangent bundle of a centre, pulled back (rank 3).
    pub center_cotangent: String,
    /// Total Chern class of the dual tautological line (rank 1).
    pub tautological_dual: String,
    /// The class `K̂` restricts to on the projective bundle.
    pub restricted_class: String,
    /// Complex dimension of each Lagrangian.
    pub lagrangian_dim: u32,
    pub euler_lagrangian_n: BigInt,
    pub euler_center: BigInt,
    /// Ambient dimension of the pencils below.
    pub pencil_ambient_dim: u32,
    pub euler_quadric_surface: BigInt,
    pub quadric_nodes: u64,
    pub euler_quartic_surface: BigInt,
    pub quartic_nodes: u64,
    pub num_centers: u64,
    pub transverse_points: u64,
}

#[derive(Clone, Debug)]
pub struct IntersectionNumbers {
    pub khat_cotangent: ChernVector,
    pub khat_cotangent_top: BigInt,
    pub twisted_normal: ChernVector,
    pub normal: ChernVector,
    pub khat_self: BigInt,
    pub per_center: BigInt,
    pub k_self: BigInt,
    pub n_self: BigInt,
    pub omega_self: BigInt,
    pub n_omega: BigInt,
    pub omega_j_k: BigInt,
    pub omega_k: BigInt,
    pub n_k: BigInt,
    pub matrix: IntersectionMatrix,
    pub rank: usize,
}

/// `c_1` of the relative cotangent bundle of `P(E)`, `-(2 zeta + c_1(E))`, for rank-2 `E`.
pub fn relative_cotangent_c1(zeta: &RingElement, c1_e: &RingElement) -> RingElement {
    -&(&zeta.scale(&BigInt::from(2)) + c1_e)
}

pub fn compute_intersections(inp: &IntersectionInputs) -> Result<IntersectionNumbers, ChowError> {
    let r = &inp.khat_ring;
    let parse = |s: &str| RingElement::parse(r, s);

    let base = ChernVector::parse(r, &inp.base_cotangent, 2)?;
    let rel_c1 = relative_cotangent_c1(&parse(&inp.hyperplane)?, &parse(&inp.normal_c1)?);
    let rel = ChernVector::new(r, vec![rel_c1])?;
    let khat_cotangent = whitney_product(r, &base, &rel);
    let khat_cotangent_top = ring_degree(&khat_cotangent.c(r, 3))?;

    // The twisted normal bundle sits in c(T*K) = c(N(D)) c(O(l)); untwisting by l recovers N.
    let line = parse(&inp.twist_line)?;
    let line_class = ChernVector::new(r, vec![line.clone()])?;
    let twisted_normal = divide_to_rank(r, &khat_cotangent, &line_class, 3);
    let normal = chern_twist(r, &twisted_normal, &line)?;
    let khat_self = ring_degree(&normal.c(r, 3))?;

    let p = &inp.pairing_ring;
    let center = ChernVector::parse(p, &inp.center_cotangent, 3)?;
    let taut = ChernVector::parse(p, &inp.tautological_dual, 1)?;
    let quotient = whitney_quotient(p, &center, &taut)?;
    let restricted = RingElement::parse(p, &inp.restricted_class)?;
    let top = p.top_degree();
    let per_center = ring_degree(&(&quotient.total(p) * &restricted).homogeneous_part(top))?;

    let k_self = blowup_selfintersection_correction(&khat_self, &per_center, inp.num_centers);
    let n_self = lagrangian_self_intersection(&inp.euler_lagrangian_n, inp.lagrangian_dim);
    let centers = BigInt::from(inp.num_centers);
    let omega_self = &centers * lagrangian_self_intersection(&inp.euler_center, inp.lagrangian_dim);
    let n_omega = BigInt::from(inp.transverse_points);
    let omega_j_k = lefschetz_pencil_correction(&inp.euler_quadric_surface, inp.quadric_nodes, inp.pencil_ambient_dim);
    let omega_k = &centers * &omega_j_k;
    let n_k = lefschetz_pencil_correction(&inp.euler_quartic_surface, inp.quartic_nodes, inp.pencil_ambient_dim);

    let matrix = assemble_intersection_matrix(
        &["fibre", "N", "Omega", "K"],
        &[
            (1, 1, n_self.clone()),
            (1, 2, n_omega.clone()),
            (1, 3, n_k.clone()),
            (2, 2, omega_self.clone()),
            (2, 3, omega_k.clone()),
            (3, 3, k_self.clone()),
        ],
    )?;
    let rank = matrix.rank();
    Ok(IntersectionNumbers {
        khat_cotangent,
        khat_cotangent_top,
        twisted_normal,
        normal,
        khat_self,
        per_center,
        k_self,
        n_self,
        omega_self,
        n_omega,
        omega_j_k,
        omega_k,
        n_k,
        matrix,
        rank,
    })
}

/// Euler characteristic of a smooth degree-`d` hypersurface in `P^n`, via
/// `c(T X) = (1 + H)^{n+1} / (1 + d H)`.
pub fn projective_hypersurface_euler(n: u32, d: u32) -> Result<BigInt, ChowError> {
    assert!(n >= 2 && d >= 1, "need a hypersurface of positive dimension");
    let top = format!("H^{}", n - 1);
    let ring = RingSpec::new(&[("H", 2)], &[], 2 * (n - 1), &[(top.as_str(), BigInt::from(d))])?;
    let h = RingElement::parse(&ring, "H")?;
    let ambient_total = (&RingElement::one(&ring) + &h).pow(n + 1);
    let ambient = ChernVector::from_total(&ambient_total, n as usize + 1)?;
    let normal = ChernVector::new(&ring, vec![h.scale(&BigInt::from(d))])?;
    let tangent = whitney_quotient(&ring, &ambient, &normal)?;
    ring_degree(&tangent.c(&ring, n as usize - 1))
}
