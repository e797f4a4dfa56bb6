//! Named verification cases: each evaluates its checks from catalog inputs and
//! compares them with the catalog's expected values.

use std::fmt::Display;

use num_bigint::{BigInt, BigUint};

use crate::bb::{bb_poincare, gamma_split, invariant_exterior, invariant_exterior_negated, FixedComponent};
use crate::catalog::{strata_component, CaseCatalog, CaseFile, Engine, ExpectedRecord, Genus1Data, Og6Data};
use crate::chow::{compute_intersections, projective_hypersurface_euler};
use crate::decomp::{
    assemble_resolution_diamond, bottom_level_table, convolve_sl_to_gl, e_stratified_sum, ie_from_resolution,
    ih_poincare_from_resolution, locate_variant_weights, solve_weight_table, strip_resolution_diamond,
    top_perversity_table, LinearConstraintSystem, ResolutionData, WeightBounds,
};
use crate::error::{CaseError, DecompError};
use crate::graded::{
    check_curious_hard_lefschetz, check_pw_exchange, check_relative_hard_lefschetz, table_sums, weight_e_polynomial,
    FiltKind, FiltTable, GradedVS, LaurentPoly,
};
use crate::kummer::{check_pw_genus1, gs_bigraded, gs_poincare, partitions, SurfaceGroupModel};
use crate::report::{CheckRecord, CheckValue, Report, ViolationValue};

struct Checks<'a> {
    case: &'a CaseFile,
    filter: Option<&'a str>,
    records: Vec<CheckRecord>,
}

impl<'a> Checks<'a> {
    fn wanted(&self, name: &str) -> bool {
        self.filter.is_none_or(|f| name.contains(f))
    }

    /// Compares with the catalog's expected value for `name`.
    fn expect(&mut self, name: &str, inputs: &str, computed: CheckValue) -> Result<(), CaseError> {
        if !self.wanted(name) {
            return Ok(());
        }
        let rec = self.case.expected(name).ok_or_else(|| CaseError::Evaluation {
            check: name.to_string(),
            reason: format!("case {} has no expected value for it", self.case.name),
        })?;
        let expected = expected_value(rec).map_err(|reason| CaseError::Evaluation {
            check: name.to_string(),
            reason,
        })?;
        self.records
            .push(CheckRecord::new(name, inputs, computed, expected, &rec.provenance));
        Ok(())
    }

    /// Compares with an expected value fixed by the check itself.
    fn derived(&mut self, name: &str, inputs: &str, computed: CheckValue, expected: CheckValue, provenance: &str) {
        if self.wanted(name) {
            self.records
                .push(CheckRecord::new(name, inputs, computed, expected, provenance));
        }
    }
}

fn expected_value(rec: &ExpectedRecord) -> Result<CheckValue, String> {
    if let Some(x) = rec.integer {
        return Ok(CheckValue::integer(x));
    }
    if let Some(b) = rec.holds {
        return Ok(CheckValue::bool(b));
    }
    if let Some(p) = &rec.poly {
        return Ok(CheckValue::poly(&p.to_poly(), rec.var.as_deref().unwrap_or("t")));
    }
    if let Some(t) = &rec.table {
        return t.to_table().map(|t| CheckValue::table(&t)).map_err(|e| e.to_string());
    }
    if let Some(m) = &rec.matrix {
        let rows: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        return Ok(CheckValue::matrix(&rows));
    }
    if let Some(c) = &rec.class {
        return Ok(CheckValue::class(c.clone()));
    }
    if let Some(v) = &rec.violations {
        return Ok(CheckValue::Violations {
            cells: v
                .iter()
                .map(|v| ViolationValue {
                    low: (v.low[0], v.low[1]),
                    high: (v.high[0], v.high[1]),
                    low_dim: (v.low_dim as i64).into(),
                    high_dim: (v.high_dim as i64).into(),
                })
                .collect(),
        });
    }
    Err("expected record carries no value".into())
}

fn ev<T, E: Display>(check: &str, r: Result<T, E>) -> Result<T, CaseError> {
    r.map_err(|e| CaseError::Evaluation {
        check: check.to_string(),
        reason: e.to_string(),
    })
}

/// Runs every check of `name` whose name contains `filter`.
pub fn run_case(catalog: &CaseCatalog, name: &str, filter: Option<&str>) -> Result<Report, CaseError> {
    let case = catalog
        .get(name)
        .ok_or_else(|| CaseError::UnknownCase(name.to_string()))?;
    let mut checks = Checks {
        case,
        filter,
        records: Vec::new(),
    };
    match case.engine {
        Engine::Og6 => {
            let d = case.og6.as_ref().ok_or_else(|| CaseError::Evaluation {
                check: "case".into(),
                reason: "missing [og6] section".into(),
            })?;
            run_og6(&mut checks, d)?;
        }
        Engine::Genus1 => {
            let d = case.genus1.as_ref().ok_or_else(|| CaseError::Evaluation {
                check: "case".into(),
                reason: "missing [genus1] section".into(),
            })?;
            run_genus1(&mut checks, d)?;
        }
    }
    Ok(Report::new(&case.name, checks.records))
}

fn solver_outcome(r: &Result<FiltTable, DecompError>) -> String {
    match r {
        Ok(_) => "unique".into(),
        Err(DecompError::NonUniqueSolution(_)) => "non-unique".into(),
        Err(DecompError::NoSolution(_)) => "no-solution".into(),
        Err(e) => format!("error: {e}"),
    }
}

/// A copy of `v` with auxiliary weight grades `2j` read as perversities `j`.
fn halve_aux(v: &GradedVS) -> GradedVS {
    GradedVS::from_cells(v.iter().map(|((d, a), n)| (d, a / 2, n.clone())))
}

fn run_og6(c: &mut Checks, d: &Og6Data) -> Result<(), CaseError> {
    let components = |recs: &[crate::catalog::ComponentRecord]| -> Result<Vec<FixedComponent>, CaseError> {
        recs.iter().map(|r| r.to_component().map_err(CaseError::from)).collect()
    };
    let res = components(&d.resolution_loci)?;
    let sing = components(&d.singular_loci)?;
    let res_inputs = format!("{:?}", d.resolution_loci);
    let sing_inputs = format!("{:?}", d.singular_loci);
    let strata_inputs = format!("{:?}", d.strata);

    // Betti numbers from the fixed loci.
    let p_res = bb_poincare(&res);
    c.expect("bb.poincare.resolution", &res_inputs, CheckValue::poly(&p_res, "t"))?;
    c.expect(
        "bb.poincare.singular",
        &sing_inputs,
        CheckValue::poly(&bb_poincare(&sing), "t"),
    )?;
    let (inv_res, var_res) = ev("bb.variant.resolution", gamma_split(&res))?;
    c.expect("bb.variant.resolution", &res_inputs, CheckValue::poly(&var_res, "t"))?;
    c.derived(
        "bb.split_conservation",
        &res_inputs,
        CheckValue::bool(&inv_res + &var_res == p_res),
        CheckValue::bool(true),
        "invariant and variant sums add up to the full sum",
    );

    // Intersection Betti numbers.
    let s = &d.strata;
    let sigma_poly = s.sigma.to_poly();
    let omega_poly = s.omega.to_poly();
    let (sigma_inv, sigma_var) = ev(
        "decomp.ip",
        strata_component("sigma", &s.sigma, &s.sigma_character).gamma_split(),
    )?;
    let (omega_inv, omega_var) = ev(
        "decomp.ip",
        strata_component("omega", &s.omega, &s.omega_character).gamma_split(),
    )?;
    let ip = ev(
        "decomp.ip",
        ih_poincare_from_resolution(&ResolutionData {
            total: p_res.clone(),
            sigma: sigma_poly.clone(),
            omega: omega_poly.clone(),
        }),
    )?;
    let ip_inv = ev(
        "decomp.ip.invariant",
        ih_poincare_from_resolution(&ResolutionData {
            total: inv_res,
            sigma: sigma_inv.clone(),
            omega: omega_inv.clone(),
        }),
    )?;
    let ip_var = ev(
        "decomp.ip.variant",
        ih_poincare_from_resolution(&ResolutionData {
            total: var_res,
            sigma: sigma_var,
            omega: omega_var,
        }),
    )?;
    let ip_inputs = format!("{res_inputs}{strata_inputs}");
    c.expect("decomp.ip", &ip_inputs, CheckValue::poly(&ip, "t"))?;
    c.expect("decomp.ip.invariant", &ip_inputs, CheckValue::poly(&ip_inv, "t"))?;
    c.expect("decomp.ip.variant", &ip_inputs, CheckValue::poly(&ip_var, "t"))?;
    c.expect(
        "decomp.ip.palindromic",
        &ip_inputs,
        CheckValue::bool(ip.is_palindromic(d.dimension / 2)),
    )?;

    // E-polynomials of the Betti side.
    let sigma_b = invariant_exterior_negated(s.sigma_exterior_generators);
    let sigma_b_weight = sigma_b.to_table(FiltKind::Weight, 0, 0);
    let e_sigma = ev("decomp.e.sigma", weight_e_polynomial(&sigma_b_weight))?;
    c.expect("decomp.e.sigma", &strata_inputs, CheckValue::poly(&e_sigma, "q"))?;
    let e_smooth = &s.singular_e.to_poly() - &e_sigma;
    c.expect(
        "decomp.e.smooth_locus",
        &strata_inputs,
        CheckValue::poly(&e_smooth, "q"),
    )?;
    let e_res = e_stratified_sum(&[
        (e_smooth, LaurentPoly::one()),
        (&e_sigma - &omega_poly, s.sigma_fibre.to_poly()),
        (omega_poly.clone(), s.omega_fibre.to_poly()),
    ]);
    c.expect("decomp.e.resolution", &strata_inputs, CheckValue::poly(&e_res, "q"))?;
    let ie = ev(
        "decomp.ie",
        ie_from_resolution(&ResolutionData {
            total: e_res,
            sigma: e_sigma,
            omega: omega_poly.clone(),
        }),
    )?;
    c.expect("decomp.ie", &strata_inputs, CheckValue::poly(&ie, "q"))?;
    c.expect(
        "decomp.ie.palindromic",
        &strata_inputs,
        CheckValue::bool(ie.is_palindromic(d.dimension / 2)),
    )?;

    // Weight table of intersection cohomology.
    let sys_inputs = format!("{ip}|{ie}");
    let wt = ev(
        "decomp.weight_table",
        solve_weight_table(&LinearConstraintSystem::weight_system(
            &ip,
            &ie,
            WeightBounds::LowerAndUpper,
        )),
    )?;
    c.expect("decomp.weight_table", &sys_inputs, CheckValue::table(&wt))?;
    let lower = solve_weight_table(&LinearConstraintSystem::weight_system(&ip, &ie, WeightBounds::Lower));
    c.expect(
        "decomp.weight_table.lower_bound_only",
        &sys_inputs,
        CheckValue::class(solver_outcome(&lower)),
    )?;
    let var_w = ev("decomp.ie.variant", locate_variant_weights(&wt, &ip_var))?;
    let inv_w = ev("decomp.ie.invariant", wt.minus(&var_w))?;
    let ie_var = ev("decomp.ie.variant", weight_e_polynomial(&var_w))?;
    let ie_inv = ev("decomp.ie.invariant", weight_e_polynomial(&inv_w))?;
    c.expect("decomp.ie.invariant", &sys_inputs, CheckValue::poly(&ie_inv, "q"))?;
    c.expect("decomp.ie.variant", &sys_inputs, CheckValue::poly(&ie_var, "q"))?;

    // Diamonds.
    let ih_p = ev("diamond.resolution", wt.weight_to_perverse())?;
    let sigma_p = ev("diamond.resolution", top_perversity_table(&sigma_poly))?;
    let omega_p = ev(
        "diamond.resolution",
        bottom_level_table(&omega_poly, FiltKind::Perverse),
    )?;
    let diamond = ev(
        "diamond.resolution",
        assemble_resolution_diamond(&ih_p, &sigma_p, &omega_p),
    )?;
    let diamond_inputs = format!("{sys_inputs}|{sigma_poly}|{omega_poly}");
    c.expect("diamond.resolution", &diamond_inputs, CheckValue::table(&diamond))?;
    let (betti, levels) = table_sums(&diamond);
    c.expect(
        "diamond.resolution.degree_sums",
        &diamond_inputs,
        CheckValue::poly(&betti, "t"),
    )?;
    c.expect(
        "diamond.resolution.level_sums",
        &diamond_inputs,
        CheckValue::poly(&levels, "q"),
    )?;
    let omega_w = ev(
        "diamond.resolution_weight",
        bottom_level_table(&omega_poly, FiltKind::Weight),
    )?;
    let diamond_w = ev(
        "diamond.resolution_weight",
        assemble_resolution_diamond(&wt, &sigma_b_weight, &omega_w),
    )?;
    let e_levels = ev("diamond.resolution_weight.level_sums", weight_e_polynomial(&diamond_w))?;
    c.expect(
        "diamond.resolution_weight.level_sums",
        &diamond_inputs,
        CheckValue::poly(&e_levels, "q"),
    )?;
    c.derived(
        "pw.resolution",
        &diamond_inputs,
        CheckValue::bool(ev("pw.resolution", check_pw_exchange(&diamond, &diamond_w))?.holds),
        CheckValue::bool(true),
        "perverse and weight assemblies of the resolution agree",
    );

    // Hard Lefschetz symmetries.
    let tables = &d.tables;
    let rhl = |t: &FiltTable, check: &str| ev(check, check_relative_hard_lefschetz(t, d.rhl_center));
    c.expect(
        "lefschetz.rhl.resolution",
        &diamond_inputs,
        CheckValue::bool(rhl(&diamond, "lefschetz.rhl.resolution")?.holds),
    )?;
    c.expect(
        "lefschetz.rhl.ih",
        &diamond_inputs,
        CheckValue::bool(rhl(&ih_p, "lefschetz.rhl.ih")?.holds),
    )?;
    let sing_p = tables.singular_perverse.to_table()?;
    let sing_w = tables.singular_weight.to_table()?;
    let sing_tables = format!("{:?}{:?}", tables.singular_perverse, tables.singular_weight);
    c.expect(
        "lefschetz.rhl.singular",
        &sing_tables,
        CheckValue::violations(&rhl(&sing_p, "lefschetz.rhl.singular")?.violations),
    )?;
    let chl = ev(
        "lefschetz.chl.singular",
        check_curious_hard_lefschetz(&sing_w, d.dimension),
    )?;
    c.expect(
        "lefschetz.chl.singular",
        &sing_tables,
        CheckValue::violations(&chl.violations),
    )?;

    // P=W on intersection cohomology and its Γ-channels.
    let res_diamond = tables.resolution_perverse.to_table()?;
    let ih_catalog = ev("pw.ih", strip_resolution_diamond(&res_diamond, &sigma_p, &omega_p))?;
    let var_p = tables.ih_variant_perverse.to_table()?;
    let inv_p = ev("pw.ih.invariant", ih_catalog.minus(&var_p))?;
    let pw_inputs = format!(
        "{:?}{:?}|{sys_inputs}",
        tables.resolution_perverse, tables.ih_variant_perverse
    );
    let pw = |p: &FiltTable, w: &FiltTable, check: &str| {
        ev(check, check_pw_exchange(p, w)).map(|v| CheckValue::bool(v.holds))
    };
    c.expect("pw.ih", &pw_inputs, pw(&ih_catalog, &wt, "pw.ih")?)?;
    c.expect("pw.ih.invariant", &pw_inputs, pw(&inv_p, &inv_w, "pw.ih.invariant")?)?;
    c.expect("pw.ih.variant", &pw_inputs, pw(&var_p, &var_w, "pw.ih.variant")?)?;
    c.expect("pw.singular", &sing_tables, pw(&sing_p, &sing_w, "pw.singular")?)?;

    // GL from SL: a point SL table tensored with the Jacobian factor.
    let jac_w = invariant_exterior(&vec![1; d.gl_jacobian_generators]);
    let jac_p = halve_aux(&jac_w);
    let gl_p = convolve_sl_to_gl(&FiltTable::from_entries(FiltKind::Perverse, [(0, 0, 1u32)]), &jac_p);
    let gl_w = convolve_sl_to_gl(&FiltTable::from_entries(FiltKind::Weight, [(0, 0, 1u32)]), &jac_w);
    let gl_inputs = format!("jacobian generators {}", d.gl_jacobian_generators);
    c.expect("gl.perverse", &gl_inputs, CheckValue::table(&gl_p))?;
    c.expect("gl.weight", &gl_inputs, CheckValue::table(&gl_w))?;
    c.expect("pw.gl", &gl_inputs, pw(&gl_p, &gl_w, "pw.gl")?)?;

    // Intersection numbers.
    let chow_inputs = format!("{:?}", d.chow);
    let inputs = d.chow.to_inputs()?;
    let nums = ev("chow", compute_intersections(&inputs))?;
    c.expect(
        "chow.khat.cotangent_c3",
        &chow_inputs,
        CheckValue::integer(nums.khat_cotangent_top.clone()),
    )?;
    c.expect(
        "chow.khat.twisted_normal",
        &chow_inputs,
        CheckValue::class(nums.twisted_normal.total(&inputs.khat_ring).to_string()),
    )?;
    for (name, v) in [
        ("chow.khat.self", &nums.khat_self),
        ("chow.per_center", &nums.per_center),
        ("chow.k_self", &nums.k_self),
        ("chow.n_self", &nums.n_self),
        ("chow.omega_self", &nums.omega_self),
        ("chow.n_omega", &nums.n_omega),
        ("chow.omega_j_k", &nums.omega_j_k),
        ("chow.omega_k", &nums.omega_k),
        ("chow.n_k", &nums.n_k),
    ] {
        c.expect(name, &chow_inputs, CheckValue::integer(v.clone()))?;
    }
    c.expect("chow.matrix", &chow_inputs, CheckValue::matrix(&nums.matrix.entries))?;
    c.expect("chow.rank", &chow_inputs, CheckValue::integer(nums.rank))?;
    for h in &d.chow.euler_cross_checks {
        let name = format!("chow.euler.{}", h.name);
        let e = ev(&name, projective_hypersurface_euler(h.ambient_dim, h.degree))?;
        let constant = d.chow.constant(&h.matches).expect("validated at load");
        c.derived(
            &name,
            &format!("{h:?}"),
            CheckValue::integer(e),
            CheckValue::integer(constant),
            &format!("catalog constant {} recomputed from Chern classes", h.matches),
        );
    }

    // The invariant P_3 H^6 is bounded by the rank of the intersection form.
    let sigma_inv_p = ev("rank_bound", top_perversity_table(&sigma_inv))?;
    let omega_inv_p = ev("rank_bound", bottom_level_table(&omega_inv, FiltKind::Perverse))?;
    let inv_diamond = ev(
        "rank_bound",
        assemble_resolution_diamond(&inv_p, &sigma_inv_p, &omega_inv_p),
    )?;
    let p3 = inv_diamond.filtered_dim(d.dimension, d.rhl_center);
    let p3_ih = inv_p.filtered_dim(d.dimension, d.rhl_center);
    let rank_inputs = format!("{pw_inputs}|{strata_inputs}|{chow_inputs}");
    c.expect(
        "rank_bound.p3_h6_invariant",
        &rank_inputs,
        CheckValue::integer(BigInt::from(p3.clone())),
    )?;
    c.expect(
        "rank_bound.p3_ih6_invariant",
        &rank_inputs,
        CheckValue::integer(BigInt::from(p3_ih)),
    )?;
    c.expect(
        "rank_bound.holds",
        &rank_inputs,
        CheckValue::bool(p3 <= BigUint::from(nums.rank)),
    )?;
    Ok(())
}

fn models() -> [(&'static str, SurfaceGroupModel); 3] {
    [
        ("torus", SurfaceGroupModel::multiplicative_torus()),
        ("elliptic", SurfaceGroupModel::elliptic_times_line()),
        ("abelian", SurfaceGroupModel::abelian_surface()),
    ]
}

fn run_genus1(c: &mut Checks, d: &Genus1Data) -> Result<(), CaseError> {
    for n in 1..=d.pw_max_n {
        c.derived(
            &format!("genus1.pw.n{n}"),
            &format!("n={n}"),
            CheckValue::bool(check_pw_genus1(n)),
            CheckValue::bool(true),
            "P=W for X x K^[n] through the partition splitting",
        );
    }
    for (label, m) in models().into_iter().take(2) {
        let name = format!("genus1.poincare.n{}.{label}", d.poincare_n);
        let p = ev(&name, gs_poincare(d.poincare_n, &m))?;
        c.expect(&name, &format!("n={} {label}", d.poincare_n), CheckValue::poly(&p, "t"))?;
    }
    for n in 1..=d.divisibility_max_n {
        for (label, m) in models() {
            let r = gs_poincare(n, &m);
            let c_ok = r.as_ref().is_ok_and(|p| p.is_nonnegative());
            let mut rec = CheckRecord::new(
                &format!("genus1.divisibility.{label}.n{n}"),
                &format!("n={n} {label}"),
                CheckValue::bool(c_ok),
                CheckValue::bool(true),
                "the partition sum is divisible by P_t(X) with nonnegative quotient",
            );
            if let Ok(p) = r {
                rec = rec.with_notes(format!("P_t(K^[{n}]) = {p}"));
            }
            if c.wanted(&rec.name) {
                c.records.push(rec);
            }
        }
    }
    for (i, &count) in d.partition_counts.iter().enumerate() {
        let n = i as u32 + 1;
        c.derived(
            &format!("genus1.partitions.n{n}"),
            &format!("n={n}"),
            CheckValue::integer(partitions(n).len()),
            CheckValue::integer(count),
            "number of partitions of n (catalog table)",
        );
    }
    Ok(())
}

/// Report for the `kummer` subcommand: Betti numbers of `K^[n]` on both sides,
/// and optionally the table-level P=W comparison.
pub fn kummer_report(n: u32, check_pw: bool) -> Report {
    let mut records = Vec::new();
    let inputs = format!("n={n}");
    let mut betti = Vec::new();
    for (label, m) in models() {
        let r = gs_poincare(n, &m);
        let mut rec = CheckRecord::new(
            &format!("kummer.divisibility.{label}"),
            &inputs,
            CheckValue::bool(r.is_ok()),
            CheckValue::bool(true),
            "the partition sum is divisible by P_t(X)",
        );
        if let Ok(p) = &r {
            rec = rec.with_notes(format!("P_t(K^[{n}]) = {p}"));
        }
        records.push(rec);
        betti.push(r.ok());
    }
    if let (Some(torus), Some(elliptic)) = (&betti[0], &betti[1]) {
        records.push(CheckRecord::new(
            "kummer.betti_agree",
            &inputs,
            CheckValue::poly(torus, "t"),
            CheckValue::poly(elliptic, "t"),
            "Dolbeault and Betti sides have the same Betti numbers",
        ));
    }
    if check_pw {
        let p = gs_bigraded(n, &SurfaceGroupModel::elliptic_times_line());
        let w = gs_bigraded(n, &SurfaceGroupModel::multiplicative_torus());
        let holds = check_pw_exchange(&p, &w).map(|v| v.holds).unwrap_or(false);
        records.push(CheckRecord::new(
            "kummer.pw",
            &inputs,
            CheckValue::bool(holds),
            CheckValue::bool(true),
            "P=W for X x K^[n] through the partition splitting",
        ));
        let expected = w
            .weight_to_perverse()
            .map(|t| CheckValue::table(&t))
            .unwrap_or_else(|e| CheckValue::class(e.to_string()));
        records.push(CheckRecord::new(
            "kummer.table.perverse",
            &inputs,
            CheckValue::table(&p),
            expected,
            "perverse table of X x K^[n] against the halved weight table",
        ));
    }
    Report::new(&format!("kummer-n{n}"), records)
}

/// The assembled perverse diamond of an og6 case.
pub fn resolution_diamond(catalog: &CaseCatalog, case: &str) -> Result<FiltTable, CaseError> {
    let report = run_case(catalog, case, Some("diamond.resolution"))?;
    report
        .checks
        .iter()
        .find(|r| r.name == "diamond.resolution")
        .and_then(|r| r.computed.as_table())
        .ok_or_else(|| CaseError::Evaluation {
            check: "diamond.resolution".into(),
            reason: format!("case {case} has no resolution diamond"),
        })
}
