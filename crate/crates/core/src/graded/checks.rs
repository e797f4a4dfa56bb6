//! Hard Lefschetz symmetries and the P=W exchange, checked cell by cell.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::table::{Cell, FiltKind, FiltTable};
use crate::error::TableError;

/// A pair of cells that the symmetry says should have equal dimension.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub low: Cell,
    pub high: Cell,
    pub low_dim: BigUint,
    pub high_dim: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryVerdict {
    pub holds: bool,
    pub violations: Vec<Violation>,
}

impl SymmetryVerdict {
    fn from_set(set: BTreeSet<Violation>) -> Self {
        Self {
            holds: set.is_empty(),
            violations: set.into_iter().collect(),
        }
    }
}

/// Checks `Gr_{c-s k} H^d = Gr_{c+s k} H^{d+2k}` for every `k > 0`, where the
/// level step `s` is 1 for perverse tables and 2 for weight tables.
fn reflection_check(t: &FiltTable, center: i64, step: i64) -> SymmetryVerdict {
    let mut bad = BTreeSet::new();
    for ((d, lvl), _) in t.iter() {
        let off = lvl - center;
        if off == 0 || off % step != 0 {
            continue;
        }
        let k = off.abs() / step;
        let (low, high) = if off < 0 {
            ((d, lvl), (d + 2 * k, center + step * k))
        } else {
            ((d - 2 * k, center - step * k), (d, lvl))
        };
        let (a, b) = (t.get(low.0, low.1), t.get(high.0, high.1));
        if a != b {
            bad.insert(Violation {
                low,
                high,
                low_dim: a,
                high_dim: b,
            });
        }
    }
    SymmetryVerdict::from_set(bad)
}

/// Relative hard Lefschetz for a perverse table centred at `r`.
pub fn check_relative_hard_lefschetz(t: &FiltTable, r: i64) -> Result<SymmetryVerdict, TableError> {
    t.expect_kind(FiltKind::Perverse)?;
    Ok(reflection_check(t, r, 1))
}

/// Curious hard Lefschetz for a weight table centred at `n`.
pub fn check_curious_hard_lefschetz(t: &FiltTable, n: i64) -> Result<SymmetryVerdict, TableError> {
    t.expect_kind(FiltKind::Weight)?;
    Ok(reflection_check(t, n, 2))
}

/// `p(d, k) = w(d, 2k)` for every cell, with odd-weight cells required to vanish.
///
/// A violation records the perverse cell as `low` and the weight cell as `high`.
pub fn check_pw_exchange(p: &FiltTable, w: &FiltTable) -> Result<SymmetryVerdict, TableError> {
    p.expect_kind(FiltKind::Perverse)?;
    w.expect_kind(FiltKind::Weight)?;
    let mut cells: BTreeSet<Cell> = p.iter().map(|(c, _)| c).collect();
    for ((d, wt), _) in w.iter() {
        if wt % 2 == 0 {
            cells.insert((d, wt / 2));
        }
    }
    let mut bad = BTreeSet::new();
    for (d, k) in cells {
        let (a, b) = (p.get(d, k), w.get(d, 2 * k));
        if a != b {
            bad.insert(Violation {
                low: (d, k),
                high: (d, 2 * k),
                low_dim: a,
                high_dim: b,
            });
        }
    }
    for ((d, wt), v) in w.iter() {
        if wt % 2 != 0 {
            bad.insert(Violation {
                low: (d, wt),
                high: (d, wt),
                low_dim: BigUint::default(),
                high_dim: v.clone(),
            });
        }
    }
    Ok(SymmetryVerdict::from_set(bad))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perverse(cells: &[(i64, i64, u32)]) -> FiltTable {
        FiltTable::from_entries(FiltKind::Perverse, cells.iter().copied())
    }

    fn weight(cells: &[(i64, i64, u32)]) -> FiltTable {
        FiltTable::from_entries(FiltKind::Weight, cells.iter().copied())
    }

    #[test]
    fn rhl_on_resolution_diamond() {
        let t = perverse(&[
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
        ]);
        assert!(check_relative_hard_lefschetz(&t, 3).unwrap().holds);
        assert!(check_relative_hard_lefschetz(&perverse(&[]), 3).unwrap().holds);
    }

    #[test]
    fn rhl_fails_when_level_four_is_unmatched() {
        let t = perverse(&[(0, 0, 1), (2, 2, 1), (4, 4, 1), (6, 4, 16), (6, 6, 1)]);
        let v = check_relative_hard_lefschetz(&t, 3).unwrap();
        assert!(!v.holds);
        assert_eq!(v.violations.len(), 1);
        assert_eq!((v.violations[0].low, v.violations[0].high), ((4, 2), (6, 4)));
    }

    #[test]
    fn chl_examples() {
        let ih = weight(&[(0, 0, 1), (2, 4, 1), (4, 4, 16), (4, 8, 1), (6, 8, 16), (6, 12, 1)]);
        assert!(check_curious_hard_lefschetz(&ih, 6).unwrap().holds);
        let h = weight(&[(0, 0, 1), (2, 4, 1), (4, 8, 1), (6, 8, 16), (6, 12, 1)]);
        let v = check_curious_hard_lefschetz(&h, 6).unwrap();
        assert_eq!(v.violations.len(), 1);
        assert_eq!((v.violations[0].low, v.violations[0].high), ((4, 4), (6, 8)));
        assert!(check_curious_hard_lefschetz(&weight(&[]), 6).unwrap().holds);
    }

    #[test]
    fn kinds_are_enforced() {
        assert!(check_relative_hard_lefschetz(&weight(&[]), 3).is_err());
        assert!(check_pw_exchange(&weight(&[]), &weight(&[])).is_err());
    }

    #[test]
    fn pw_examples() {
        assert!(
            check_pw_exchange(&perverse(&[(0, 0, 1)]), &weight(&[(0, 0, 1)]))
                .unwrap()
                .holds
        );
        assert!(
            !check_pw_exchange(&perverse(&[(2, 1, 1)]), &weight(&[(2, 4, 1)]))
                .unwrap()
                .holds
        );
        assert!(!check_pw_exchange(&perverse(&[]), &weight(&[(1, 1, 1)])).unwrap().holds);
    }
}
