//! Partitions, symmetric products of a two-dimensional group, and the
//! Göttsche–Soergel splitting of Kummer-type fibres.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;

use crate::error::PolyError;
use crate::graded::{check_pw_exchange, sym_power, FiltKind, FiltTable, GradedVS, LaurentPoly};

/// A partition stored as multiplicities `nu -> alpha_nu`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    mult: BTreeMap<u32, u32>,
}

impl Partition {
    /// Builds a partition from `(part, multiplicity)` pairs; zero multiplicities are dropped.
    pub fn from_mult(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut mult = BTreeMap::new();
        for (nu, a) in pairs {
            assert!(nu > 0, "parts are positive");
            if a > 0 {
                *mult.entry(nu).or_insert(0) += a;
            }
        }
        Self { mult }
    }

    pub fn mult(&self) -> &BTreeMap<u32, u32> {
        &self.mult
    }

    /// `n = sum nu * alpha_nu`.
    pub fn n(&self) -> u32 {
        self.mult.iter().map(|(nu, a)| nu * a).sum()
    }

    /// `|alpha| = sum alpha_nu`.
    pub fn size(&self) -> u32 {
        self.mult.values().sum()
    }

    /// `g(alpha) = gcd { nu : alpha_nu != 0 }`.
    pub fn gcd_type(&self) -> u32 {
        self.mult.keys().fold(0, |g, nu| g.gcd(nu))
    }
}

/// All partitions of `n`, in reverse lexicographic order of their parts.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, parts: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::from_mult(parts.iter().map(|&p| (p, 1))));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            parts.push(p);
            go(rest - p, p, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// `C* x C*`; `H^k` has weight `2k`.
    MultiplicativeTorus,
    /// `A x C` over the line; `H^k` has perversity `k`.
    EllipticTimesLine,
    /// A compact abelian surface; `H^k` is pure of weight `k`.
    AbelianSurface,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceGroupModel {
    pub kind: ModelKind,
    /// Betti numbers with the model's auxiliary grading.
    pub cohomology: GradedVS,
    /// The table kind the auxiliary grading represents.
    pub table_kind: FiltKind,
    /// `|X(g)| = g^torsion_exponent`.
    pub torsion_exponent: u32,
}

impl SurfaceGroupModel {
    pub fn multiplicative_torus() -> Self {
        Self {
            kind: ModelKind::MultiplicativeTorus,
            cohomology: GradedVS::from_cells([(0, 0, 1u32), (1, 2, 2), (2, 4, 1)]),
            table_kind: FiltKind::Weight,
            torsion_exponent: 2,
        }
    }

    pub fn elliptic_times_line() -> Self {
        Self {
            kind: ModelKind::EllipticTimesLine,
            cohomology: GradedVS::from_cells([(0, 0, 1u32), (1, 1, 2), (2, 2, 1)]),
            table_kind: FiltKind::Perverse,
            torsion_exponent: 2,
        }
    }

    pub fn abelian_surface() -> Self {
        Self {
            kind: ModelKind::AbelianSurface,
            cohomology: GradedVS::from_cells([(0, 0, 1u32), (1, 1, 4), (2, 2, 6), (3, 3, 4), (4, 4, 1)]),
            table_kind: FiltKind::Weight,
            torsion_exponent: 4,
        }
    }

    /// Number of `g`-torsion points.
    pub fn torsion_count(&self, g: u32) -> BigUint {
        BigUint::from(g).pow(self.torsion_exponent)
    }

    /// Level shift attached to a Tate twist by `t`: `t` on the perverse side, `2t` on the weight side.
    fn twist_level(&self, t: i64) -> i64 {
        match self.table_kind {
            FiltKind::Perverse => t,
            FiltKind::Weight => 2 * t,
        }
    }
}

/// `H^*(X^(alpha)) = tensor over nu of Sym^{alpha_nu} H^*(X)`.
pub fn sym_product_cohomology(m: &SurfaceGroupModel, alpha: &Partition) -> GradedVS {
    alpha
        .mult()
        .values()
        .fold(GradedVS::unit(), |acc, &a| acc.tensor(&sym_power(&m.cohomology, a)))
}

/// The bigraded table of `H^*(X x K^[n])`: the sum over partitions `alpha` and
/// `g(alpha)`-torsion points of `H^*(X^(alpha))`, shifted in degree by
/// `2(n - |alpha|)` and in level by the matching Tate twist.
pub fn gs_bigraded(n: u32, m: &SurfaceGroupModel) -> FiltTable {
    let mut out = FiltTable::new(m.table_kind);
    for alpha in partitions(n) {
        let t = (n - alpha.size()) as i64;
        let summand = sym_product_cohomology(m, &alpha)
            .to_table(m.table_kind, 2 * t, m.twist_level(t))
            .scaled(&m.torsion_count(alpha.gcd_type()));
        out = out.plus(&summand).expect("summands share the model's table kind");
    }
    out
}

/// `P_t(K^[n]) = P_t(X x K^[n]) / P_t(X)`.
pub fn gs_poincare(n: u32, m: &SurfaceGroupModel) -> Result<LaurentPoly, PolyError> {
    let product: LaurentPoly = partitions(n)
        .iter()
        .map(|alpha| {
            let shift = 2 * (n - alpha.size()) as i64;
            let count = BigInt::from(m.torsion_count(alpha.gcd_type()));
            sym_product_cohomology(m, alpha).poincare().shift(shift).scale(&count)
        })
        .sum();
    product.divide_exact(&m.cohomology.poincare())
}

/// P=W for `X x K^[n]`: the elliptic model's perverse table against the torus model's weight table.
pub fn check_pw_genus1(n: u32) -> bool {
    let p = gs_bigraded(n, &SurfaceGroupModel::elliptic_times_line());
    let w = gs_bigraded(n, &SurfaceGroupModel::multiplicative_torus());
    check_pw_exchange(&p, &w).map(|v| v.holds).unwrap_or(false)
}
