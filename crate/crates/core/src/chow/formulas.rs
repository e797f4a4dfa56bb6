//! Closed-form intersection numbers and exact matrix rank.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::ChowError;

/// Self-intersection of a smooth Lagrangian: `(-1)^dim e`.
pub fn lagrangian_self_intersection(euler_char: &BigInt, dim: u32) -> BigInt {
    if dim.is_multiple_of(2) {
        euler_char.clone()
    } else {
        -euler_char
    }
}

/// Correction for a Lefschetz pencil member with `num_nodes` ordinary double
/// points: `(-1)^{n-1} e(H_t) - 2k`.
pub fn lefschetz_pencil_correction(euler_general: &BigInt, num_nodes: u64, dim_ambient: u32) -> BigInt {
    let smooth = if dim_ambient % 2 == 1 {
        euler_general.clone()
    } else {
        -euler_general
    };
    smooth - BigInt::from(2u64 * num_nodes)
}

/// `hat_self + num_centers * per_center`.
pub fn blowup_selfintersection_correction(hat_self: &BigInt, per_center: &BigInt, num_centers: u64) -> BigInt {
    hat_self + per_center * BigInt::from(num_centers)
}

/// A symmetric integer matrix with labelled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionMatrix {
    pub basis: Vec<String>,
    pub entries: Vec<Vec<BigInt>>,
}

impl IntersectionMatrix {
    pub fn rank(&self) -> usize {
        matrix_rank(&self.entries)
    }
}

/// Builds a matrix from `(i, j, value)` entries; each unordered pair may be
/// given once or twice, and both orders must agree. Missing entries are zero.
pub fn assemble_intersection_matrix(
    basis: &[&str],
    entries: &[(usize, usize, BigInt)],
) -> Result<IntersectionMatrix, ChowError> {
    let n = basis.len();
    let mut m: Vec<Vec<Option<BigInt>>> = vec![vec![None; n]; n];
    for (i, j, v) in entries {
        let (i, j) = (*i, *j);
        if i >= n || j >= n {
            return Err(ChowError::IndexOutOfRange { i, j, n });
        }
        for (a, b) in [(i, j), (j, i)] {
            match &m[a][b] {
                Some(old) if old != v => {
                    return Err(ChowError::AsymmetricMatrix {
                        i: a,
                        j: b,
                        a: old.to_string(),
                        b: v.to_string(),
                    })
                }
                _ => m[a][b] = Some(v.clone()),
            }
        }
    }
    Ok(IntersectionMatrix {
        basis: basis.iter().map(|s| s.to_string()).collect(),
        entries: m
            .into_iter()
            .map(|row| row.into_iter().map(Option::unwrap_or_default).collect())
            .collect(),
    })
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn matrix_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            for c in col + 1..cols {
                let v = (&a[r][c] * &a[rank][col] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].abs();
        rank += 1;
    }
    rank
}
