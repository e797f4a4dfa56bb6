//! Bigraded vector spaces and graded-symmetric powers.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::poly::LaurentPoly;
use super::table::{FiltKind, FiltTable};

/// Dimensions indexed by `(cohomological degree, auxiliary grade)`.
///
/// The auxiliary grade carries a weight or a perversity, depending on context.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedVS {
    dims: BTreeMap<(i64, i64), BigUint>,
}

impl GradedVS {
    pub fn new() -> Self {
        Self::default()
    }

    /// The ground field in bidegree `(0, 0)`.
    pub fn unit() -> Self {
        Self::from_cells([(0, 0, 1u32)])
    }

    pub fn from_cells<D: Into<BigUint>>(cells: impl IntoIterator<Item = (i64, i64, D)>) -> Self {
        let mut v = Self::new();
        for (d, a, n) in cells {
            v.add(d, a, &n.into());
        }
        v
    }

    pub fn add(&mut self, d: i64, a: i64, n: &BigUint) {
        if !n.is_zero() {
            *self.dims.entry((d, a)).or_default() += n;
        }
    }

    pub fn get(&self, d: i64, a: i64) -> BigUint {
        self.dims.get(&(d, a)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), &BigUint)> {
        self.dims.iter().map(|(c, n)| (*c, n))
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> BigUint {
        self.dims.values().sum()
    }

    /// Dimensions summed over the auxiliary grade, as a polynomial in the degree.
    pub fn poincare(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.iter().map(|((d, _), n)| (d, BigInt::from(n.clone()))))
    }

    /// Dimensions summed over the degree, as a polynomial in the auxiliary grade.
    pub fn aux_polynomial(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.iter().map(|((_, a), n)| (a, BigInt::from(n.clone()))))
    }

    pub fn tensor(&self, other: &GradedVS) -> GradedVS {
        let mut out = GradedVS::new();
        for ((d1, a1), n1) in self.iter() {
            for ((d2, a2), n2) in other.iter() {
                out.add(d1 + d2, a1 + a2, &(n1 * n2));
            }
        }
        out
    }

    /// Reads the space as a filtration table, shifting degree and level.
    pub fn to_table(&self, kind: FiltKind, degree_shift: i64, level_shift: i64) -> FiltTable {
        FiltTable::from_entries(
            kind,
            self.iter()
                .map(|((d, a), n)| (d + degree_shift, a + level_shift, n.clone())),
        )
    }
}

/// `Sym^n` in the graded-commutative sense: classes of odd degree anticommute,
/// so they contribute exterior powers, while even classes contribute symmetric powers.
pub fn sym_power(v: &GradedVS, n: u32) -> GradedVS {
    // Coefficients of the generating series prod_even (1 - s x)^{-1} prod_odd (1 + s x),
    // indexed by (number of factors, degree, aux) and truncated at n factors.
    let mut series: BTreeMap<(u32, i64, i64), BigUint> = BTreeMap::new();
    series.insert((0, 0, 0), BigUint::one());
    for ((d, a), mult) in v.iter() {
        let copies = u64::try_from(mult).expect("basis too large to enumerate");
        let odd = d.rem_euclid(2) == 1;
        for _ in 0..copies {
            let mut next: BTreeMap<(u32, i64, i64), BigUint> = BTreeMap::new();
            for (&(c, deg, aux), coef) in &series {
                let max_extra = if odd { 1 } else { n - c };
                for m in 0..=max_extra.min(n - c) {
                    let key = (c + m, deg + m as i64 * d, aux + m as i64 * a);
                    *next.entry(key).or_default() += coef;
                }
            }
            series = next;
        }
    }
    let mut out = GradedVS::new();
    for ((c, d, a), coef) in series {
        if c == n {
            out.add(d, a, &coef);
        }
    }
    out
}
