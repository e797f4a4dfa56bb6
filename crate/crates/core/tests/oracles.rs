//! Engine outputs against brute-force recomputations.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use pwcheck_core::bb::{attr_repell_dims, symplectic_completion, WeightVector};
use pwcheck_core::chow::{projective_hypersurface_euler, RingElement, RingSpec};
use pwcheck_core::graded::{check_relative_hard_lefschetz, sym_power};
use pwcheck_core::kummer::{gs_poincare, partitions, SurfaceGroupModel};
use pwcheck_core::{FiltKind, FiltTable, GradedVS, LaurentPoly};

/// Partitions of `n` as sorted part lists, from all 2^(n-1) compositions.
fn partitions_from_compositions(n: u32) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << (n - 1) {
        let mut parts = Vec::new();
        let mut run = 1;
        for i in 0..n - 1 {
            if mask >> i & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        parts.sort_unstable();
        out.insert(parts);
    }
    out
}

#[test]
fn partitions_match_composition_enumeration() {
    for n in 1..=12 {
        let oracle = partitions_from_compositions(n);
        let got: BTreeSet<Vec<u32>> = partitions(n)
            .iter()
            .map(|p| {
                let mut parts: Vec<u32> = p
                    .mult()
                    .iter()
                    .flat_map(|(&v, &a)| std::iter::repeat_n(v, a as usize))
                    .collect();
                parts.sort_unstable();
                assert_eq!(p.n(), n);
                assert_eq!(p.size() as usize, parts.len());
                assert_eq!(p.gcd_type(), parts.iter().fold(0, |g, &x| g.gcd(&x)));
                parts
            })
            .collect();
        assert_eq!(got, oracle, "n = {n}");
        assert_eq!(partitions(n).len(), oracle.len());
    }
}

#[test]
fn sym_powers_of_small_spaces() {
    // Sym^n of an even line is a line; of an odd line vanishes for n >= 2.
    let even = GradedVS::from_cells([(2, 1, 1u32)]);
    let odd = GradedVS::from_cells([(1, 1, 1u32)]);
    assert_eq!(sym_power(&even, 3), GradedVS::from_cells([(6, 3, 1u32)]));
    assert!(sym_power(&odd, 2).is_empty());
    // H*(P^1)^{(2)} = H*(P^2).
    let p1 = GradedVS::from_cells([(0, 0, 1u32), (2, 0, 1)]);
    assert_eq!(
        sym_power(&p1, 2).poincare(),
        LaurentPoly::from_coeffs(0, &[1, 0, 1, 0, 1])
    );
}

#[test]
fn kummer_betti_numbers_of_known_examples() {
    // K^[2] of an abelian surface is a Kummer K3 surface.
    let k3 = gs_poincare(2, &SurfaceGroupModel::abelian_surface()).unwrap();
    assert_eq!(k3, LaurentPoly::from_coeffs(0, &[1, 0, 22, 0, 1]));
    // Generalized Kummer fourfold: b2 = 7, b3 = 8, b4 = 108.
    let k4 = gs_poincare(3, &SurfaceGroupModel::abelian_surface()).unwrap();
    assert_eq!(k4, LaurentPoly::from_coeffs(0, &[1, 0, 7, 8, 108, 8, 7, 0, 1]));
}

#[test]
fn projective_space_euler_numbers() {
    // A hyperplane in P^n is P^(n-1).
    for n in 2..=8 {
        assert_eq!(projective_hypersurface_euler(n, 1).unwrap(), BigInt::from(n));
    }
    // Plane curves: 2 - 2g with g = (d-1)(d-2)/2.
    for d in 1..=6i64 {
        let g = (d - 1) * (d - 2) / 2;
        assert_eq!(
            projective_hypersurface_euler(2, d as u32).unwrap(),
            BigInt::from(2 - 2 * g)
        );
    }
}

#[test]
fn rewriting_agrees_with_polynomial_expansion() {
    let ring = RingSpec::new(&[("h", 2)], &[], 10, &[("h^5", BigInt::from(1))]).unwrap();
    let h = RingElement::parse(&ring, "h").unwrap();
    let one = RingElement::one(&ring);
    // (1 + h)^6 truncated at h^5 against binomial coefficients.
    let lhs = (&one + &h).pow(6);
    let rhs = RingElement::parse(&ring, "1 + 6*h + 15*h^2 + 20*h^3 + 15*h^4 + 6*h^5").unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn completion_codimensions() {
    for (lag, codim) in [(vec![1, 1, 1], 0), (vec![-1, 0, 1], 1), (vec![2, 2, 2], 3)] {
        let w = symplectic_completion(&WeightVector(lag));
        assert_eq!(attr_repell_dims(&w).codim_attr(), codim);
    }
}

#[test]
fn lefschetz_reflects_about_the_centre() {
    let t = FiltTable::from_entries(
        FiltKind::Perverse,
        [(0, 0, 1u32), (2, 0, 2), (2, 1, 3), (2, 2, 1), (4, 1, 5), (4, 2, 2)],
    );
    assert!(check_relative_hard_lefschetz(&t, 1).unwrap().holds);
    let t = FiltTable::from_entries(FiltKind::Perverse, [(0, 0, 1u32), (2, 1, 3)]);
    let v = check_relative_hard_lefschetz(&t, 1).unwrap();
    assert_eq!(v.violations.len(), 1);
    assert_eq!((v.violations[0].low, v.violations[0].high), ((0, 0), (2, 2)));
}
