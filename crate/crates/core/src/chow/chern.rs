//! Total Chern classes with values in a [`RingSpec`].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::ring::{RingElement, RingSpec};
use crate::error::ChowError;

/// Chern classes `c_1..c_rank` of a bundle of the given rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernVector {
    rank: usize,
    c: Vec<RingElement>,
}

impl ChernVector {
    /// Checks that `c[i - 1]` is homogeneous of degree `2i`.
    pub fn new(ring: &Arc<RingSpec>, c: Vec<RingElement>) -> Result<Self, ChowError> {
        for (i, ci) in c.iter().enumerate() {
            if !Arc::ptr_eq(ci.ring(), ring) {
                return Err(ChowError::RankMismatch("classes from a different ring".into()));
            }
            let d = 2 * (i as u32 + 1);
            if !ci.is_homogeneous_of(d) {
                return Err(ChowError::DegreeMismatch {
                    expected: d.to_string(),
                    found: format!("c_{} = {ci}", i + 1),
                });
            }
        }
        Ok(Self { rank: c.len(), c })
    }

    /// The trivial bundle of rank `rank`.
    pub fn trivial(ring: &Arc<RingSpec>, rank: usize) -> Self {
        Self {
            rank,
            c: vec![RingElement::zero(ring); rank],
        }
    }

    /// Splits a total Chern class into its graded pieces. The constant term must
    /// be 1 and nothing may sit above degree `2 rank`.
    pub fn from_total(total: &RingElement, rank: usize) -> Result<Self, ChowError> {
        let ring = total.ring();
        let top = ring.top_degree();
        let constant = total.homogeneous_part(0);
        if constant != RingElement::one(ring) {
            return Err(ChowError::DegreeMismatch {
                expected: "constant term 1".into(),
                found: format!("{total}"),
            });
        }
        let mut rebuilt = constant;
        let c: Vec<RingElement> = (1..=rank).map(|i| total.homogeneous_part(2 * i as u32)).collect();
        for ci in &c {
            rebuilt = &rebuilt + ci;
        }
        if rebuilt != *total {
            let extra = total - &rebuilt;
            return Err(ChowError::RankMismatch(format!(
                "terms {extra} of {total} exceed rank {rank} (top degree {top})"
            )));
        }
        Self::new(ring, c)
    }

    /// Parses a total Chern class.
    pub fn parse(ring: &Arc<RingSpec>, total: &str, rank: usize) -> Result<Self, ChowError> {
        Self::from_total(&RingElement::parse(ring, total)?, rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `c_k`, with `c_0 = 1` and zero above the rank.
    pub fn c(&self, ring: &Arc<RingSpec>, k: usize) -> RingElement {
        match k {
            0 => RingElement::one(ring),
            _ if k <= self.rank => self.c[k - 1].clone(),
            _ => RingElement::zero(ring),
        }
    }

    pub fn classes(&self) -> &[RingElement] {
        &self.c
    }

    pub fn total(&self, ring: &Arc<RingSpec>) -> RingElement {
        self.c.iter().fold(RingElement::one(ring), |acc, x| &acc + x)
    }

    /// Chern classes of the dual bundle.
    pub fn dual(&self) -> ChernVector {
        Self {
            rank: self.rank,
            c: self
                .c
                .iter()
                .enumerate()
                .map(|(i, x)| if i % 2 == 0 { -x } else { x.clone() })
                .collect(),
        }
    }
}

impl fmt::Display for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {}: 1", self.rank)?;
        for x in self.c.iter().filter(|x| !x.is_zero()) {
            write!(f, " + ({x})")?;
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `c(F (x) L)` from `c(F)` and `l = c_1(L)`:
/// `c_k = sum_i C(r - i, k - i) c_i l^{k - i}`.
pub fn chern_twist(ring: &Arc<RingSpec>, cv: &ChernVector, l: &RingElement) -> Result<ChernVector, ChowError> {
    if !l.is_homogeneous_of(2) {
        return Err(ChowError::DegreeMismatch {
            expected: "2".into(),
            found: format!("line class {l}"),
        });
    }
    let r = cv.rank;
    let c = (1..=r)
        .map(|k| {
            (0..=k).fold(RingElement::zero(ring), |acc, i| {
                let term = (&cv.c(ring, i) * &l.pow((k - i) as u32)).scale(&binomial(r - i, k - i));
                &acc + &term
            })
        })
        .collect();
    ChernVector::new(ring, c)
}

/// `c(A (+) B)`.
pub fn whitney_product(ring: &Arc<RingSpec>, a: &ChernVector, b: &ChernVector) -> ChernVector {
    let total = &a.total(ring) * &b.total(ring);
    let rank = a.rank + b.rank;
    let c = (1..=rank).map(|i| total.homogeneous_part(2 * i as u32)).collect();
    ChernVector::new(ring, c).expect("products of graded pieces stay graded")
}

/// `c(total) / c(sub)` truncated at degree `2 rank`.
pub fn divide_to_rank(ring: &Arc<RingSpec>, total: &ChernVector, sub: &ChernVector, rank: usize) -> ChernVector {
    // Power-series inverse of c(sub): s_0 = 1, s_k = -sum_{i >= 1} c_i(sub) s_{k - i}.
    let mut inv = vec![RingElement::one(ring)];
    for k in 1..=rank {
        let s = (1..=k.min(sub.rank)).fold(RingElement::zero(ring), |acc, i| {
            &acc - &(&sub.c(ring, i) * &inv[k - i])
        });
        inv.push(s);
    }
    let c = (1..=rank)
        .map(|k| {
            (0..=k).fold(RingElement::zero(ring), |acc, i| {
                &acc + &(&total.c(ring, i) * &inv[k - i])
            })
        })
        .collect();
    ChernVector::new(ring, c).expect("quotients of graded pieces stay graded")
}

/// `c(total) / c(sub)` for a subbundle, at rank `total.rank - sub.rank`.
pub fn whitney_quotient(
    ring: &Arc<RingSpec>,
    total: &ChernVector,
    sub: &ChernVector,
) -> Result<ChernVector, ChowError> {
    let rank = total
        .rank
        .checked_sub(sub.rank)
        .ok_or_else(|| ChowError::RankMismatch(format!("subbundle rank {} exceeds rank {}", sub.rank, total.rank)))?;
    Ok(divide_to_rank(ring, total, sub, rank))
}
