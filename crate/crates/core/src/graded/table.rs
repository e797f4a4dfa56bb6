//! Bigraded dimension tables: `(degree d, level k) -> dim Gr_k H^d`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::LaurentPoly;
use crate::error::TableError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltKind {
    Perverse,
    Weight,
}

impl fmt::Display for FiltKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiltKind::Perverse => "perverse",
            FiltKind::Weight => "weight",
        })
    }
}

pub type Cell = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiltTable {
    kind: FiltKind,
    entries: BTreeMap<Cell, BigUint>,
}

impl FiltTable {
    pub fn new(kind: FiltKind) -> Self {
        Self {
            kind,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<D: Into<BigUint>>(kind: FiltKind, entries: impl IntoIterator<Item = (i64, i64, D)>) -> Self {
        let mut t = Self::new(kind);
        for (d, k, dim) in entries {
            t.add(d, k, &dim.into());
        }
        t
    }

    pub fn kind(&self) -> FiltKind {
        self.kind
    }

    pub fn get(&self, d: i64, k: i64) -> BigUint {
        self.entries.get(&(d, k)).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, d: i64, k: i64, dim: &BigUint) {
        if dim.is_zero() {
            return;
        }
        *self.entries.entry((d, k)).or_default() += dim;
    }

    /// Nonzero cells in `(d, k)` order.
    pub fn iter(&self) -> impl Iterator<Item = (Cell, &BigUint)> {
        self.entries.iter().map(|(c, v)| (*c, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn total_dim(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Flat `(d, k, dim)` records.
    pub fn records(&self) -> Vec<(i64, i64, BigUint)> {
        self.iter().map(|((d, k), v)| (d, k, v.clone())).collect()
    }

    pub fn shifted(&self, dd: i64, dk: i64) -> Self {
        Self {
            kind: self.kind,
            entries: self
                .entries
                .iter()
                .map(|((d, k), v)| ((d + dd, k + dk), v.clone()))
                .collect(),
        }
    }

    pub fn scaled(&self, m: &BigUint) -> Self {
        let mut out = Self::new(self.kind);
        for ((d, k), v) in self.iter() {
            out.add(d, k, &(v * m));
        }
        out
    }

    /// Cellwise sum; kinds must agree.
    pub fn plus(&self, other: &FiltTable) -> Result<Self, TableError> {
        self.same_kind(other)?;
        let mut out = self.clone();
        for ((d, k), v) in other.iter() {
            out.add(d, k, v);
        }
        Ok(out)
    }

    /// Cellwise difference, failing on any negative cell.
    pub fn minus(&self, other: &FiltTable) -> Result<Self, TableError> {
        self.same_kind(other)?;
        let mut out = self.clone();
        for ((d, k), v) in other.iter() {
            let have = out.get(d, k);
            if &have < v {
                return Err(TableError::NegativeDimension { d, k });
            }
            let rest = have - v;
            if rest.is_zero() {
                out.entries.remove(&(d, k));
            } else {
                out.entries.insert((d, k), rest);
            }
        }
        Ok(out)
    }

    fn same_kind(&self, other: &FiltTable) -> Result<(), TableError> {
        if self.kind != other.kind {
            return Err(TableError::KindMismatch {
                expected: self.kind.to_string(),
                found: other.kind.to_string(),
            });
        }
        Ok(())
    }

    pub fn expect_kind(&self, kind: FiltKind) -> Result<(), TableError> {
        if self.kind != kind {
            return Err(TableError::KindMismatch {
                expected: kind.to_string(),
                found: self.kind.to_string(),
            });
        }
        Ok(())
    }

    /// Relabels a perverse table as a weight table via `k -> 2k`.
    pub fn perverse_to_weight(&self) -> Result<Self, TableError> {
        self.expect_kind(FiltKind::Perverse)?;
        Ok(Self {
            kind: FiltKind::Weight,
            entries: self
                .entries
                .iter()
                .map(|((d, k), v)| ((*d, 2 * k), v.clone()))
                .collect(),
        })
    }

    /// Relabels a weight table as a perverse table via `w -> w/2`.
    pub fn weight_to_perverse(&self) -> Result<Self, TableError> {
        self.expect_kind(FiltKind::Weight)?;
        let mut entries = BTreeMap::new();
        for ((d, w), v) in self.iter() {
            if w % 2 != 0 {
                return Err(TableError::OddWeight { d, w });
            }
            entries.insert((d, w / 2), v.clone());
        }
        Ok(Self {
            kind: FiltKind::Perverse,
            entries,
        })
    }

    /// Sum of the cells in degree `d` with level at most `k`, i.e. `dim P_k H^d`.
    pub fn filtered_dim(&self, d: i64, k: i64) -> BigUint {
        self.iter()
            .filter(|((dd, kk), _)| *dd == d && *kk <= k)
            .map(|(_, v)| v.clone())
            .sum()
    }

    /// Restriction to one degree.
    pub fn degree_slice(&self, d: i64) -> Vec<(i64, BigUint)> {
        self.iter()
            .filter(|((dd, _), _)| *dd == d)
            .map(|((_, k), v)| (k, v.clone()))
            .collect()
    }
}

/// Degree sums (Betti numbers) and level sums of a table.
pub fn table_sums(t: &FiltTable) -> (LaurentPoly, LaurentPoly) {
    let mut betti = LaurentPoly::zero();
    let mut levels = LaurentPoly::zero();
    for ((d, k), v) in t.iter() {
        let v = BigInt::from(v.clone());
        betti = &betti + &LaurentPoly::monomial(v.clone(), d);
        levels = &levels + &LaurentPoly::monomial(v, k);
    }
    (betti, levels)
}

/// `sum dim Gr^W_{2k} H^d q^k` for a weight table with only even weights.
pub fn weight_e_polynomial(t: &FiltTable) -> Result<LaurentPoly, TableError> {
    let halved = t.weight_to_perverse()?;
    Ok(table_sums(&halved).1)
}
