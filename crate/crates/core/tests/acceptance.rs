//! Acceptance suite: one verdict line per criterion, exact integer comparisons.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use pwcheck_core::bb::{
    bb_poincare, gamma_split, invariant_exterior, symplectic_completion, FixedComponent, GammaCharacter, WeightVector,
};
use pwcheck_core::catalog::CaseFile;
use pwcheck_core::chow::{
    chern_twist, compute_intersections, whitney_product, whitney_quotient, ChernVector, RingElement, RingSpec,
};
use pwcheck_core::decomp::{
    convolve_sl_to_gl, ih_poincare_from_resolution, solve_weight_table, LinearConstraintSystem, ResolutionData,
    WeightBounds,
};
use pwcheck_core::graded::{
    check_curious_hard_lefschetz, check_pw_exchange, check_relative_hard_lefschetz, sym_power, table_sums, Violation,
};
use pwcheck_core::kummer::{check_pw_genus1, gs_poincare, SurfaceGroupModel};
use pwcheck_core::{run_case, CaseCatalog, CheckValue, FiltKind, FiltTable, GradedVS, LaurentPoly, Report};

type Outcome = Result<(), String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

const OG6: &str = "og6-genus2-sl2";

fn poly(low: i64, coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_coeffs(low, coeffs)
}

fn table(kind: FiltKind, cells: &[(i64, i64, u32)]) -> FiltTable {
    FiltTable::from_entries(kind, cells.iter().copied())
}

fn same<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn catalog() -> CaseCatalog {
    CaseCatalog::builtin().expect("built-in catalog loads")
}

fn og6_case(cat: &CaseCatalog) -> &CaseFile {
    cat.get(OG6).expect("og6 case present")
}

fn og6_report(cat: &CaseCatalog) -> Report {
    run_case(cat, OG6, None).expect("og6 case runs")
}

fn computed(r: &Report, name: &str) -> Result<CheckValue, String> {
    r.checks
        .iter()
        .find(|c| c.name == name)
        .map(|c| c.computed.clone())
        .ok_or_else(|| format!("report has no check {name}"))
}

fn computed_poly(r: &Report, name: &str, want: LaurentPoly, var: &str) -> Outcome {
    same(name, computed(r, name)?, CheckValue::poly(&want, var))
}

fn computed_table(r: &Report, name: &str) -> Result<FiltTable, String> {
    computed(r, name)?
        .as_table()
        .ok_or_else(|| format!("{name} is not a table"))
}

fn og6_diamond() -> FiltTable {
    table(
        FiltKind::Perverse,
        &[
            (0, 0, 1),
            (2, 1, 1),
            (2, 2, 1),
            (4, 2, 16),
            (4, 3, 6),
            (4, 4, 1),
            (6, 3, 16),
            (6, 4, 16),
            (6, 5, 1),
            (6, 6, 1),
        ],
    )
}

fn criterion_1() -> Outcome {
    let cat = catalog();
    let og6 = og6_case(&cat).og6.as_ref().unwrap();
    let comps = |recs: &[pwcheck_core::catalog::ComponentRecord]| -> Vec<FixedComponent> {
        recs.iter().map(|r| r.to_component().unwrap()).collect()
    };
    same(
        "P_t(M)",
        bb_poincare(&comps(&og6.singular_loci)),
        poly(0, &[1, 0, 1, 0, 1, 0, 17]),
    )?;
    same(
        "P_t(resolution)",
        bb_poincare(&comps(&og6.resolution_loci)),
        poly(0, &[1, 0, 2, 0, 23, 0, 34]),
    )
}

fn criterion_2() -> Outcome {
    let ip = |total, sigma, omega| {
        ih_poincare_from_resolution(&ResolutionData { total, sigma, omega }).map_err(|e| e.to_string())
    };
    same(
        "IP direct",
        ip(
            poly(0, &[1, 0, 2, 0, 23, 0, 34]),
            poly(0, &[1, 0, 6, 0, 1]),
            poly(0, &[16]),
        )?,
        poly(0, &[1, 0, 1, 0, 17, 0, 17]),
    )?;
    let r = og6_report(&catalog());
    computed_poly(&r, "decomp.ip", poly(0, &[1, 0, 1, 0, 17, 0, 17]), "t")?;
    computed_poly(&r, "decomp.ip.invariant", poly(0, &[1, 0, 1, 0, 2, 0, 2]), "t")?;
    computed_poly(&r, "decomp.ip.variant", poly(4, &[15, 0, 15]), "t")
}

fn criterion_3() -> Outcome {
    let r = og6_report(&catalog());
    computed_poly(&r, "decomp.e.resolution", poly(0, &[1, 1, 17, 22, 17, 1, 1]), "q")?;
    computed_poly(&r, "decomp.ie", poly(0, &[1, 0, 17, 0, 17, 0, 1]), "q")?;
    same(
        "IE palindromic about q^3",
        computed(&r, "decomp.ie.palindromic")?,
        CheckValue::bool(true),
    )
}

fn criterion_4() -> Outcome {
    let want = table(
        FiltKind::Weight,
        &[(0, 0, 1), (2, 4, 1), (4, 4, 16), (4, 8, 1), (6, 8, 16), (6, 12, 1)],
    );
    let sys = LinearConstraintSystem::weight_system(
        &poly(0, &[1, 0, 1, 0, 17, 0, 17]),
        &poly(0, &[1, 0, 17, 0, 17, 0, 1]),
        WeightBounds::LowerAndUpper,
    );
    same(
        "weight table",
        solve_weight_table(&sys).map_err(|e| e.to_string())?,
        want.clone(),
    )?;
    let r = og6_report(&catalog());
    same("weight table (case)", computed_table(&r, "decomp.weight_table")?, want)?;
    computed_poly(&r, "decomp.ie.invariant", poly(0, &[1, 0, 2, 0, 2, 0, 1]), "q")?;
    computed_poly(&r, "decomp.ie.variant", poly(2, &[15, 0, 15]), "q")
}

fn criterion_5() -> Outcome {
    let r = og6_report(&catalog());
    let d = computed_table(&r, "diamond.resolution")?;
    same("diamond", d.clone(), og6_diamond())?;
    let (betti, levels) = table_sums(&d);
    same("diagonal sums", betti, poly(0, &[1, 0, 2, 0, 23, 0, 34]))?;
    same("row sums", levels, poly(0, &[1, 1, 17, 22, 17, 1, 1]))?;
    same(
        "RHL",
        check_relative_hard_lefschetz(&d, 3).map_err(|e| e.to_string())?.holds,
        true,
    )
}

fn violation(low: (i64, i64), high: (i64, i64), low_dim: u32, high_dim: u32) -> Violation {
    Violation {
        low,
        high,
        low_dim: BigUint::from(low_dim),
        high_dim: BigUint::from(high_dim),
    }
}

fn criterion_6() -> Outcome {
    let cat = catalog();
    let tables = &og6_case(&cat).og6.as_ref().unwrap().tables;
    let w = tables.singular_weight.to_table().map_err(|e| e.to_string())?;
    let p = tables.singular_perverse.to_table().map_err(|e| e.to_string())?;
    let chl = check_curious_hard_lefschetz(&w, 6).map_err(|e| e.to_string())?;
    same(
        "CHL on H*(M_B)",
        (chl.holds, chl.violations),
        (false, vec![violation((4, 4), (6, 8), 0, 16)]),
    )?;
    let rhl = check_relative_hard_lefschetz(&p, 3).map_err(|e| e.to_string())?;
    same(
        "RHL on H*(M)",
        (rhl.holds, rhl.violations),
        (false, vec![violation((4, 2), (6, 4), 0, 16)]),
    )
}

fn criterion_7() -> Outcome {
    let r = og6_report(&catalog());
    for name in ["pw.ih", "pw.ih.invariant", "pw.ih.variant"] {
        same(name, computed(&r, name)?, CheckValue::bool(true))?;
    }
    let w = table(
        FiltKind::Weight,
        &[(0, 0, 1), (2, 4, 1), (4, 4, 16), (4, 8, 1), (6, 8, 16), (6, 12, 1)],
    );
    let p = table(
        FiltKind::Perverse,
        &[(0, 0, 1), (2, 2, 1), (4, 2, 16), (4, 4, 1), (6, 4, 16), (6, 6, 1)],
    );
    same(
        "PI=WI on the literal tables",
        check_pw_exchange(&p, &w).map_err(|e| e.to_string())?.holds,
        true,
    )
}

fn criterion_8() -> Outcome {
    for n in 1..=6 {
        same(&format!("P=W genus 1, n={n}"), check_pw_genus1(n), true)?;
    }
    let torus = SurfaceGroupModel::multiplicative_torus();
    same(
        "gs_poincare(2)",
        gs_poincare(2, &torus).map_err(|e| e.to_string())?,
        poly(0, &[1, 0, 5]),
    )?;
    for m in [torus, SurfaceGroupModel::elliptic_times_line()] {
        for n in 1..=8 {
            let p = gs_poincare(n, &m).map_err(|e| format!("n={n}: {e}"))?;
            same(&format!("nonnegative quotient n={n}"), p.is_nonnegative(), true)?;
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let cat = catalog();
    let inputs = og6_case(&cat)
        .og6
        .as_ref()
        .unwrap()
        .chow
        .to_inputs()
        .map_err(|e| e.to_string())?;
    let n = compute_intersections(&inputs).map_err(|e| e.to_string())?;
    let b = BigInt::from;
    same("[N]^2", n.n_self, b(-4))?;
    same("[Omega]^2", n.omega_self, b(-64))?;
    same("[N].[Omega]", n.n_omega, b(16))?;
    same("[Omega_j].[K]", n.omega_j_k, b(2))?;
    same("[N].[K]", n.n_k, b(-8))?;
    same("[Khat]^2", n.khat_self, b(16))?;
    same("[K]^2", n.k_self, b(-16))?;
    let rows: Vec<Vec<BigInt>> = [[0, 0, 0, 0], [0, -4, 16, -8], [0, 16, -64, 32], [0, -8, 32, -16]]
        .iter()
        .map(|r| r.iter().map(|&x| b(x)).collect())
        .collect();
    same("intersection matrix", n.matrix.entries, rows)?;
    same("rank", n.rank, 1)
}

fn criterion_10() -> Outcome {
    let jac_w = invariant_exterior(&[1, 1, 1, 1]);
    let jac_p = GradedVS::from_cells(jac_w.iter().map(|((d, a), n)| (d, a / 2, n.clone())));
    let p = convolve_sl_to_gl(&table(FiltKind::Perverse, &[(0, 0, 1)]), &jac_p);
    let w = convolve_sl_to_gl(&table(FiltKind::Weight, &[(0, 0, 1)]), &jac_w);
    same(
        "GL perverse table",
        p.clone(),
        table(
            FiltKind::Perverse,
            &[(0, 0, 1), (1, 1, 4), (2, 2, 6), (3, 3, 4), (4, 4, 1)],
        ),
    )?;
    same(
        "GL P=W",
        check_pw_exchange(&p, &w).map_err(|e| e.to_string())?.holds,
        true,
    )
}

// Property suites.

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(-50i64..=50, 0..6)).prop_map(|(low, c)| LaurentPoly::from_coeffs(low, &c))
}

fn arb_nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    arb_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_vs() -> impl Strategy<Value = GradedVS> {
    prop::collection::vec((0i64..4, 0i64..4), 0..=4)
        .prop_map(|cells| GradedVS::from_cells(cells.into_iter().map(|(d, a)| (d, a, 1u32))))
}

/// Basis of `Sym^n V` enumerated directly as multisets of basis vectors in
/// which odd-degree vectors appear at most once.
fn sym_power_oracle(v: &GradedVS, n: u32) -> BTreeMap<(i64, i64), u64> {
    let basis: Vec<(i64, i64)> = v
        .iter()
        .flat_map(|((d, a), m)| std::iter::repeat_n((d, a), usize::try_from(m).unwrap()))
        .collect();
    let mut out = BTreeMap::new();
    fn go(
        basis: &[(i64, i64)],
        start: usize,
        left: u32,
        last: Option<usize>,
        acc: (i64, i64),
        out: &mut BTreeMap<(i64, i64), u64>,
    ) {
        if left == 0 {
            *out.entry(acc).or_default() += 1;
            return;
        }
        for i in start..basis.len() {
            let (d, a) = basis[i];
            if d % 2 == 1 && last == Some(i) {
                continue;
            }
            go(basis, i, left - 1, Some(i), (acc.0 + d, acc.1 + a), out);
        }
    }
    go(&basis, 0, n, None, (0, 0), &mut out);
    out
}

fn line_ring() -> Arc<RingSpec> {
    RingSpec::new(&[("h", 2)], &[], 8, &[("h^4", BigInt::from(1))]).unwrap()
}

fn arb_chern(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..=20, rank)
}

fn chern_of(ring: &Arc<RingSpec>, coeffs: &[i64]) -> ChernVector {
    let h = RingElement::parse(ring, "h").unwrap();
    let classes = coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| h.pow(i as u32 + 1).scale(&BigInt::from(c)))
        .collect();
    ChernVector::new(ring, classes).unwrap()
}

fn arb_character(p: &LaurentPoly) -> BoxedStrategy<GammaCharacter> {
    let p = p.clone();
    let split = p.clone();
    prop_oneof![
        Just(GammaCharacter::Trivial { dim: None }),
        Just(GammaCharacter::Trivial {
            dim: Some(BigUint::try_from(p.eval_at_one()).unwrap())
        }),
        prop::collection::vec(0u8..=100, 8).prop_map(move |pct| {
            let inv = LaurentPoly::from_terms(
                split
                    .terms()
                    .zip(pct.iter().cycle())
                    .map(|((e, c), &q)| (e, c * BigInt::from(q) / BigInt::from(100))),
            );
            let var = &split - &inv;
            GammaCharacter::Custom {
                invariant: inv,
                variant: var,
            }
        }),
    ]
    .boxed()
}

fn arb_component() -> impl Strategy<Value = FixedComponent> {
    (prop::collection::vec(0i64..=30, 1..5), 0u32..4, 1u64..5, any::<bool>()).prop_flat_map(
        |(coeffs, codim, order, regular)| {
            let p = LaurentPoly::from_coeffs(0, &coeffs);
            let base = FixedComponent::new("c", p.clone(), codim);
            if regular {
                let scaled = p.scale(&BigInt::from(order));
                Just(FixedComponent::new("c", scaled, codim).with_gamma(GammaCharacter::Regular { order })).boxed()
            } else {
                arb_character(&p).prop_map(move |g| base.clone().with_gamma(g)).boxed()
            }
        },
    )
}

fn property<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn criterion_11() -> Outcome {
    property("ring axioms", (arb_poly(), arb_poly(), arb_poly()), |(a, b, c)| {
        let one = LaurentPoly::one();
        let zero = LaurentPoly::zero();
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert!((&(&a + &b) - &b) == a);
        prop_assert_eq!(&a + &(-&a), zero);
        Ok(())
    })?;
    property("exact division", (arb_poly(), arb_nonzero_poly()), |(p, q)| {
        prop_assert_eq!((&p * &q).divide_exact(&q).unwrap(), p);
        Ok(())
    })?;
    property("sym_power oracle", (arb_vs(), 0u32..=5), |(v, n)| {
        let fast: BTreeMap<(i64, i64), u64> = sym_power(&v, n)
            .iter()
            .map(|(k, m)| (k, u64::try_from(m).unwrap()))
            .collect();
        prop_assert_eq!(fast, sym_power_oracle(&v, n));
        Ok(())
    })?;
    let ring = line_ring();
    property(
        "chern_twist involution",
        (1usize..=4, arb_chern(4), -20i64..=20),
        |(rank, c, l)| {
            let cv = chern_of(&ring, &c[..rank]);
            let line = RingElement::parse(&ring, "h").unwrap().scale(&BigInt::from(l));
            let there = chern_twist(&ring, &cv, &line).unwrap();
            prop_assert_eq!(chern_twist(&ring, &there, &(-&line)).unwrap(), cv);
            Ok(())
        },
    )?;
    property(
        "whitney_quotient reconstruction",
        (0usize..=2, 0usize..=2, arb_chern(2), arb_chern(2)),
        |(ra, rb, a, b)| {
            let a = chern_of(&ring, &a[..ra]);
            let b = chern_of(&ring, &b[..rb]);
            let total = whitney_product(&ring, &a, &b);
            let q = whitney_quotient(&ring, &total, &b).unwrap();
            prop_assert_eq!(whitney_product(&ring, &q, &b), total);
            prop_assert_eq!(q, a);
            Ok(())
        },
    )?;
    property(
        "gamma_split conservation",
        prop::collection::vec(arb_component(), 1..4),
        |comps| {
            let (inv, var) = gamma_split(&comps).unwrap();
            prop_assert!(inv.is_nonnegative() && var.is_nonnegative());
            prop_assert_eq!(&inv + &var, bb_poincare(&comps));
            Ok(())
        },
    )?;
    property("symplectic completion", prop::collection::vec(-5i64..=6, 0..6), |w| {
        let full = symplectic_completion(&WeightVector(w.clone())).0;
        prop_assert_eq!(full.len(), 2 * w.len());
        prop_assert_eq!(&full[..w.len()], &w[..]);
        let mut mirrored: Vec<i64> = full.iter().map(|a| 1 - a).collect();
        let mut sorted = full.clone();
        mirrored.sort_unstable();
        sorted.sort_unstable();
        prop_assert_eq!(mirrored, sorted);
        Ok(())
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "Poincare polynomials from fixed loci", criterion_1),
        (2, "intersection Poincare polynomials and Gamma channels", criterion_2),
        (3, "E-polynomials and palindromic IE", criterion_3),
        (4, "unique weight table and IE channels", criterion_4),
        (5, "resolution diamond, sums and relative hard Lefschetz", criterion_5),
        (6, "hard Lefschetz failures on ordinary cohomology", criterion_6),
        (7, "PI=WI and its Gamma channels", criterion_7),
        (8, "genus-1 P=W, Betti numbers and divisibility", criterion_8),
        (9, "intersection numbers, matrix and rank", criterion_9),
        (10, "SL to GL convolution", criterion_10),
        (11, "property suites (1000 cases each)", criterion_11),
    ];
    let mut failed = 0;
    for (n, label, check) in criteria {
        match check() {
            Ok(()) => println!("criterion {n}: PASS  {label}"),
            Err(e) => {
                failed += 1;
                println!("criterion {n}: FAIL  {label}: {e}");
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
