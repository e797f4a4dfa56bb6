//! Decomposition-theorem arithmetic for a semismall resolution with two
//! relevant strata, the weight-table linear system, and SL to GL convolution.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{DecompError, TableError};
use crate::graded::{Cell, FiltKind, FiltTable, GradedVS, LaurentPoly};

/// Degree shifts of the two strata summands.
pub const SIGMA_DEGREE_SHIFT: i64 = 2;
pub const OMEGA_DEGREE_SHIFT: i64 = 6;

/// Total space and strata contributions, as polynomials or tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionData<T> {
    pub total: T,
    pub sigma: T,
    pub omega: T,
}

fn nonnegative(p: LaurentPoly, what: &str) -> Result<LaurentPoly, DecompError> {
    if p.is_nonnegative() {
        Ok(p)
    } else {
        Err(DecompError::NegativeCoefficient(format!("{what} = {p}")))
    }
}

/// `IP = P(total) - P(sigma) t^2 - P(omega) t^6`.
pub fn ih_poincare_from_resolution(d: &ResolutionData<LaurentPoly>) -> Result<LaurentPoly, DecompError> {
    let ip = &(&d.total - &d.sigma.shift(SIGMA_DEGREE_SHIFT)) - &d.omega.shift(OMEGA_DEGREE_SHIFT);
    nonnegative(ip, "intersection Poincaré polynomial")
}

/// `IE = E(total) - E(sigma) q - E(omega) q^3`.
pub fn ie_from_resolution(d: &ResolutionData<LaurentPoly>) -> Result<LaurentPoly, DecompError> {
    let ie = &(&d.total - &d.sigma.shift(SIGMA_DEGREE_SHIFT / 2)) - &d.omega.shift(OMEGA_DEGREE_SHIFT / 2);
    nonnegative(ie, "intersection E-polynomial")
}

/// `sum_i E_i * m_i` over strata with multipliers.
pub fn e_stratified_sum(strata: &[(LaurentPoly, LaurentPoly)]) -> LaurentPoly {
    strata.iter().map(|(e, m)| e * m).sum()
}

/// Places `H^d` at perverse level `d`.
pub fn top_perversity_table(p: &LaurentPoly) -> Result<FiltTable, DecompError> {
    dims_table(p, FiltKind::Perverse, |d| d)
}

/// Places all of the cohomology at level 0.
pub fn bottom_level_table(p: &LaurentPoly, kind: FiltKind) -> Result<FiltTable, DecompError> {
    dims_table(p, kind, |_| 0)
}

fn dims_table(p: &LaurentPoly, kind: FiltKind, level: impl Fn(i64) -> i64) -> Result<FiltTable, DecompError> {
    let mut t = FiltTable::new(kind);
    for (d, c) in p.terms() {
        let dim = c
            .to_biguint()
            .ok_or_else(|| DecompError::NegativeCoefficient(format!("{p}")))?;
        t.add(d, level(d), &dim);
    }
    Ok(t)
}

fn level_shifts(kind: FiltKind) -> (i64, i64) {
    match kind {
        FiltKind::Perverse => (1, 3),
        FiltKind::Weight => (2, 6),
    }
}

/// `ih(d,k) + sigma(d-2, k-s1) + omega(d-6, k-s2)` with level shifts `(1, 3)`
/// for perverse tables and `(2, 6)` for weight tables.
pub fn assemble_resolution_diamond(
    ih: &FiltTable,
    sigma: &FiltTable,
    omega: &FiltTable,
) -> Result<FiltTable, DecompError> {
    let (s1, s2) = level_shifts(ih.kind());
    Ok(ih
        .plus(&sigma.shifted(SIGMA_DEGREE_SHIFT, s1))?
        .plus(&omega.shifted(OMEGA_DEGREE_SHIFT, s2))?)
}

/// Inverse of [`assemble_resolution_diamond`]: removes the strata summands.
pub fn strip_resolution_diamond(
    total: &FiltTable,
    sigma: &FiltTable,
    omega: &FiltTable,
) -> Result<FiltTable, DecompError> {
    let (s1, s2) = level_shifts(total.kind());
    let out = total
        .minus(&sigma.shifted(SIGMA_DEGREE_SHIFT, s1))
        .and_then(|t| t.minus(&omega.shifted(OMEGA_DEGREE_SHIFT, s2)));
    out.map_err(|e| match e {
        TableError::NegativeDimension { d, k } => DecompError::NegativeCoefficient(format!("cell (d={d}, k={k})")),
        other => other.into(),
    })
}

/// `gl(d, k) = sum_j sl(d - j, k - a) * dim aux_(j, a)`.
pub fn convolve_sl_to_gl(sl: &FiltTable, aux: &GradedVS) -> FiltTable {
    let mut out = FiltTable::new(sl.kind());
    for ((d, k), x) in sl.iter() {
        for ((j, a), y) in aux.iter() {
            out.add(d + j, k + a, &(x * y));
        }
    }
    out
}

/// Splits off the Γ-variant part of a weight table, given the variant Betti
/// numbers. In degree `d`, the top weight piece `Gr^W_{2d}` is treated as
/// invariant, so the variant classes must fit in a single lower weight cell.
pub fn locate_variant_weights(full: &FiltTable, variant_betti: &LaurentPoly) -> Result<FiltTable, DecompError> {
    full.expect_kind(FiltKind::Weight)?;
    let mut out = FiltTable::new(FiltKind::Weight);
    for (d, v) in variant_betti.terms() {
        let v = v
            .to_biguint()
            .ok_or_else(|| DecompError::NegativeCoefficient(format!("variant b_{d} = {v}")))?;
        let below_top: Vec<(i64, BigUint)> = full.degree_slice(d).into_iter().filter(|(w, _)| *w < 2 * d).collect();
        match below_top.as_slice() {
            [(w, dim)] if *dim >= v => out.add(d, *w, &v),
            _ => {
                return Err(DecompError::AmbiguousVariant(format!(
                    "degree {d} needs {v} variant classes, cells below the top weight: {below_top:?}"
                )))
            }
        }
    }
    Ok(out)
}

/// One integer linear equation over table cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearEquation {
    pub label: String,
    pub terms: Vec<(Cell, BigInt)>,
    pub rhs: BigInt,
}

/// Which vanishing constraints to impose on `Gr^W_w IH^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightBounds {
    /// `w < d` vanishes.
    Lower,
    /// `w < d` and `w > 2d` vanish, the weight range of a smooth variety.
    LowerAndUpper,
}

/// Unknown cell dimensions, equations on their sums, and cells forced to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraintSystem {
    pub kind: FiltKind,
    pub unknowns: BTreeSet<Cell>,
    pub equations: Vec<LinearEquation>,
    pub vanishing: BTreeSet<Cell>,
}

impl LinearConstraintSystem {
    /// Unknowns `Gr^W_w IH^d` with degree sums from `ip` and level sums from `ie`
    /// (coefficient of `q^k` = sum of the weight-`2k` cells). Odd weights vanish.
    pub fn weight_system(ip: &LaurentPoly, ie: &LaurentPoly, bounds: WeightBounds) -> Self {
        let dmax = ip.max_exp().unwrap_or(0).max(0);
        let kmax = ie.max_exp().unwrap_or(0).max(0);
        let wmax = (2 * kmax).max(2 * dmax);
        let mut unknowns = BTreeSet::new();
        let mut vanishing = BTreeSet::new();
        for d in 0..=dmax {
            for w in 0..=wmax {
                unknowns.insert((d, w));
                let upper = bounds == WeightBounds::LowerAndUpper && w > 2 * d;
                if w < d || w % 2 != 0 || upper {
                    vanishing.insert((d, w));
                }
            }
        }
        let mut equations = Vec::new();
        for d in 0..=dmax {
            equations.push(LinearEquation {
                label: format!("degree {d}"),
                terms: (0..=wmax).map(|w| ((d, w), BigInt::from(1))).collect(),
                rhs: ip.coeff(d),
            });
        }
        for k in 0..=wmax / 2 {
            equations.push(LinearEquation {
                label: format!("weight {}", 2 * k),
                terms: (0..=dmax).map(|d| ((d, 2 * k), BigInt::from(1))).collect(),
                rhs: ie.coeff(k),
            });
        }
        Self {
            kind: FiltKind::Weight,
            unknowns,
            equations,
            vanishing,
        }
    }
}

const SEARCH_LIMIT: u128 = 10_000_000;

/// The unique nonnegative integer solution of the system, as a table.
pub fn solve_weight_table(sys: &LinearConstraintSystem) -> Result<FiltTable, DecompError> {
    let vars: Vec<Cell> = sys
        .unknowns
        .iter()
        .filter(|c| !sys.vanishing.contains(c))
        .copied()
        .collect();
    let index: BTreeMap<Cell, usize> = vars.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let nv = vars.len();

    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for eq in &sys.equations {
        let mut row = vec![BigInt::zero(); nv + 1];
        for (cell, coef) in &eq.terms {
            if let Some(&i) = index.get(cell) {
                row[i] += coef;
            } else if !sys.unknowns.contains(cell) {
                return Err(DecompError::NoSolution(format!(
                    "equation {:?} mentions cell {cell:?} outside the unknowns",
                    eq.label
                )));
            }
        }
        row[nv] = eq.rhs.clone();
        rows.push(row);
    }

    let bounds = upper_bounds(&rows, nv)?;
    let pivots = row_reduce(&mut rows, nv);
    if let Some(row) = rows[pivots.len()..].iter().find(|r| !r[nv].is_zero()) {
        return Err(DecompError::NoSolution(format!(
            "equations are inconsistent (a combination reduces to 0 = {})",
            row[nv]
        )));
    }

    let pivot_cols: BTreeSet<usize> = pivots.iter().map(|(_, c)| *c).collect();
    let free: Vec<usize> = (0..nv).filter(|c| !pivot_cols.contains(c)).collect();
    let mut space: u128 = 1;
    for &f in &free {
        let b = bounds[f]
            .as_ref()
            .ok_or_else(|| DecompError::NonUniqueSolution(format!("cell {:?} is free and unbounded", vars[f])))?;
        space = space.saturating_mul(b.to_u128().unwrap_or(u128::MAX).saturating_add(1));
    }
    if space > SEARCH_LIMIT {
        return Err(DecompError::NonUniqueSolution(format!(
            "{} free cells span {space} candidate assignments",
            free.len()
        )));
    }

    let mut found: Vec<Vec<BigInt>> = Vec::new();
    let mut assign = vec![BigInt::zero(); nv];
    search(&rows, &pivots, &free, &bounds, 0, &mut assign, &mut found);

    let to_table = |sol: &Vec<BigInt>| {
        FiltTable::from_entries(
            sys.kind,
            vars.iter()
                .zip(sol)
                .map(|((d, k), v)| (*d, *k, v.to_biguint().expect("solutions are nonnegative"))),
        )
    };
    match found.len() {
        0 => Err(DecompError::NoSolution(
            "no assignment of the free cells gives nonnegative integers".into(),
        )),
        1 => Ok(to_table(&found[0])),
        _ => Err(DecompError::NonUniqueSolution(format!(
            "{:?} and {:?}",
            to_table(&found[0]).records(),
            to_table(&found[1]).records()
        ))),
    }
}

/// Upper bounds `rhs / coef` from equations whose coefficients are all nonnegative.
fn upper_bounds(rows: &[Vec<BigInt>], nv: usize) -> Result<Vec<Option<BigInt>>, DecompError> {
    let mut bounds: Vec<Option<BigInt>> = vec![None; nv];
    for row in rows {
        if row[..nv].iter().any(|c| c.is_negative()) {
            continue;
        }
        if row[nv].is_negative() {
            return Err(DecompError::NoSolution(format!(
                "a sum of nonnegative cells must equal {}",
                row[nv]
            )));
        }
        for (i, c) in row[..nv].iter().enumerate() {
            if c.is_positive() {
                let b = row[nv].div_floor(c);
                bounds[i] = Some(match bounds[i].take() {
                    Some(old) if old < b => old,
                    _ => b,
                });
            }
        }
    }
    Ok(bounds)
}

/// Fraction-free reduction to a form where each pivot column is zero outside its row.
fn row_reduce(rows: &mut [Vec<BigInt>], nv: usize) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nv {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let (a, b) = (rows[r][col].clone(), rows[i][col].clone());
            let pivot_row = rows[r].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                *x = &*x * &a - y * &b;
            }
            normalize(&mut rows[i]);
        }
        normalize(&mut rows[r]);
        pivots.push((r, col));
        r += 1;
    }
    pivots
}

fn normalize(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::from(1) {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn search(
    rows: &[Vec<BigInt>],
    pivots: &[(usize, usize)],
    free: &[usize],
    bounds: &[Option<BigInt>],
    depth: usize,
    assign: &mut Vec<BigInt>,
    found: &mut Vec<Vec<BigInt>>,
) {
    if found.len() >= 2 {
        return;
    }
    if depth == free.len() {
        let nv = assign.len();
        let mut sol = assign.clone();
        for &(r, c) in pivots {
            let mut rest = rows[r][nv].clone();
            for &f in free {
                rest -= &rows[r][f] * &assign[f];
            }
            let (q, rem) = rest.div_rem(&rows[r][c]);
            if !rem.is_zero() || q.is_negative() {
                return;
            }
            sol[c] = q;
        }
        found.push(sol);
        return;
    }
    let f = free[depth];
    let hi = bounds[f].clone().expect("free cells are bounded");
    let mut v = BigInt::zero();
    while v <= hi {
        assign[f] = v.clone();
        search(rows, pivots, free, bounds, depth + 1, assign, found);
        v += 1;
    }
    assign[f] = BigInt::zero();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(0, c)
    }

    fn res(total: LaurentPoly, sigma: LaurentPoly, omega: LaurentPoly) -> ResolutionData<LaurentPoly> {
        ResolutionData { total, sigma, omega }
    }

    #[test]
    fn intersection_poincare_polynomials() {
        let d = res(p(&[1, 0, 2, 0, 23, 0, 34]), p(&[1, 0, 6, 0, 1]), p(&[16]));
        assert_eq!(ih_poincare_from_resolution(&d).unwrap(), p(&[1, 0, 1, 0, 17, 0, 17]));
        let d = res(p(&[0, 0, 0, 0, 15, 0, 30]), LaurentPoly::zero(), p(&[15]));
        assert_eq!(ih_poincare_from_resolution(&d).unwrap(), p(&[0, 0, 0, 0, 15, 0, 15]));
        let d = res(p(&[1]), p(&[1]), LaurentPoly::zero());
        assert!(matches!(
            ih_poincare_from_resolution(&d),
            Err(DecompError::NegativeCoefficient(_))
        ));
    }

    #[test]
    fn intersection_e_polynomial() {
        let d = res(p(&[1, 1, 17, 22, 17, 1, 1]), p(&[1, 0, 6, 0, 1]), p(&[16]));
        let ie = ie_from_resolution(&d).unwrap();
        assert_eq!(ie, p(&[1, 0, 17, 0, 17, 0, 1]));
        assert!(ie.is_palindromic(3));
    }

    #[test]
    fn strata_sum() {
        let e_mb = p(&[1, 0, 1, 0, 17, 0, 1]);
        let e_sigma = p(&[1, 0, 6, 0, 1]);
        let smooth = &e_mb - &e_sigma;
        assert_eq!(smooth, LaurentPoly::from_coeffs(2, &[-5, 0, 16, 0, 1]));
        let total = e_stratified_sum(&[
            (smooth, p(&[1])),
            (&e_sigma - &p(&[16]), p(&[1, 1])),
            (p(&[1, 1, 1, 1]), p(&[16])),
        ]);
        assert_eq!(total, p(&[1, 1, 17, 22, 17, 1, 1]));
    }

    #[test]
    fn trivial_solver_cases() {
        let one = LaurentPoly::one();
        let sys = LinearConstraintSystem::weight_system(&one, &one, WeightBounds::Lower);
        let t = solve_weight_table(&sys).unwrap();
        assert_eq!(t.records(), vec![(0, 0, BigUint::from(1u32))]);
        let sys = LinearConstraintSystem::weight_system(&one, &p(&[2]), WeightBounds::Lower);
        assert!(matches!(solve_weight_table(&sys), Err(DecompError::NoSolution(_))));
    }

    #[test]
    fn convolution_with_a_point() {
        let pt = FiltTable::from_entries(FiltKind::Perverse, [(0, 0, 1u32)]);
        let aux = GradedVS::from_cells([(0, 0, 1u32)]);
        assert_eq!(convolve_sl_to_gl(&pt, &aux), pt);
    }

    #[test]
    fn strip_inverts_assemble() {
        let ih = FiltTable::from_entries(FiltKind::Perverse, [(0, 0, 1u32), (2, 2, 1)]);
        let sigma = FiltTable::from_entries(FiltKind::Perverse, [(0, 0, 1u32)]);
        let omega = FiltTable::from_entries(FiltKind::Perverse, [(0, 0, 2u32)]);
        let total = assemble_resolution_diamond(&ih, &sigma, &omega).unwrap();
        assert_eq!(total.get(2, 1), BigUint::from(1u32));
        assert_eq!(total.get(6, 3), BigUint::from(2u32));
        assert_eq!(strip_resolution_diamond(&total, &sigma, &omega).unwrap(), ih);
        assert!(strip_resolution_diamond(&ih, &sigma, &omega).is_err());
    }
}
