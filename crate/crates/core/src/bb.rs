//! Torus weights at fixed loci, Białynicki-Birula sums and Γ-equivariant splittings.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::BbError;
use crate::graded::{GradedVS, LaurentPoly};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn sorted(&self) -> WeightVector {
        let mut w = self.0.clone();
        w.sort_unstable();
        WeightVector(w)
    }
}

/// Counts of positive, negative and zero weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightCounts {
    pub dim_attr: usize,
    pub dim_repell: usize,
    pub dim_fixed: usize,
}

impl WeightCounts {
    /// Codimension of the attracting set. Zero weights count as attracting
    /// directions along a component, so only negative weights contribute.
    pub fn codim_attr(&self) -> usize {
        self.dim_repell
    }
}

pub fn attr_repell_dims(w: &WeightVector) -> WeightCounts {
    let mut c = WeightCounts {
        dim_attr: 0,
        dim_repell: 0,
        dim_fixed: 0,
    };
    for &m in &w.0 {
        match m.signum() {
            1 => c.dim_attr += 1,
            -1 => c.dim_repell += 1,
            _ => c.dim_fixed += 1,
        }
    }
    c
}

/// Extends Lagrangian weights `a_i` to the full tangent weights `a_i, 1 - a_i`
/// for a symplectic form of weight one.
pub fn symplectic_completion(lagrangian: &WeightVector) -> WeightVector {
    let mut w = lagrangian.0.clone();
    w.extend(lagrangian.0.iter().map(|a| 1 - a));
    WeightVector(w)
}

/// How the finite group Γ acts on the cohomology of a component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GammaCharacter {
    /// Γ acts trivially; `dim`, when present, must equal the total Betti number.
    Trivial { dim: Option<BigUint> },
    /// Each nonzero Betti number is a multiple of the group order and carries
    /// copies of the regular representation.
    Regular { order: u64 },
    /// Explicit invariant and variant Poincaré polynomials.
    Custom {
        invariant: LaurentPoly,
        variant: LaurentPoly,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedComponent {
    pub name: String,
    pub poincare: LaurentPoly,
    pub codim_attr: u32,
    pub weights: Option<WeightVector>,
    pub gamma: GammaCharacter,
}

impl FixedComponent {
    pub fn new(name: impl Into<String>, poincare: LaurentPoly, codim_attr: u32) -> Self {
        Self {
            name: name.into(),
            poincare,
            codim_attr,
            weights: None,
            gamma: GammaCharacter::Trivial { dim: None },
        }
    }

    pub fn with_weights(mut self, w: WeightVector) -> Self {
        self.weights = Some(w);
        self
    }

    pub fn with_gamma(mut self, g: GammaCharacter) -> Self {
        self.gamma = g;
        self
    }

    /// Checks the codimension against the weights and the character against the Betti numbers.
    pub fn validate(&self) -> Result<(), BbError> {
        if let Some(w) = &self.weights {
            let negative = attr_repell_dims(w).codim_attr();
            if negative != self.codim_attr as usize {
                return Err(BbError::CodimMismatch {
                    name: self.name.clone(),
                    codim: self.codim_attr,
                    negative,
                });
            }
        }
        self.gamma_split().map(|_| ())
    }

    /// Invariant and variant Poincaré polynomials of this component.
    pub fn gamma_split(&self) -> Result<(LaurentPoly, LaurentPoly), BbError> {
        let bad = |reason: String| BbError::InconsistentCharacter {
            name: self.name.clone(),
            reason,
        };
        if !self.poincare.is_nonnegative() {
            return Err(bad(format!(
                "Poincaré polynomial {} has a negative coefficient",
                self.poincare
            )));
        }
        match &self.gamma {
            GammaCharacter::Trivial { dim } => {
                if let Some(dim) = dim {
                    let total = self.poincare.eval_at_one();
                    if BigInt::from(dim.clone()) != total {
                        return Err(bad(format!("trivial character of dimension {dim} on {total} classes")));
                    }
                }
                Ok((self.poincare.clone(), LaurentPoly::zero()))
            }
            GammaCharacter::Regular { order } => {
                if *order == 0 {
                    return Err(bad("regular representation of a group of order 0".into()));
                }
                let m = BigInt::from(*order);
                let mut inv = LaurentPoly::zero();
                for (e, c) in self.poincare.terms() {
                    let (copies, r) = c.div_rem(&m);
                    if !r.is_zero() {
                        return Err(bad(format!("b_{e} = {c} is not a multiple of the group order {order}")));
                    }
                    inv = &inv + &LaurentPoly::monomial(copies, e);
                }
                let var = &self.poincare - &inv;
                Ok((inv, var))
            }
            GammaCharacter::Custom { invariant, variant } => {
                if !invariant.is_nonnegative() || !variant.is_nonnegative() {
                    return Err(bad("negative dimension in custom split".into()));
                }
                if invariant + variant != self.poincare {
                    return Err(bad(format!(
                        "invariant {invariant} plus variant {variant} differs from {}",
                        self.poincare
                    )));
                }
                Ok((invariant.clone(), variant.clone()))
            }
        }
    }
}

fn attr_shift(c: &FixedComponent) -> LaurentPoly {
    LaurentPoly::monomial(1, 2 * c.codim_attr as i64)
}

/// `sum_F P_t(F) t^{2 codim Attr(F)}`.
pub fn bb_poincare(components: &[FixedComponent]) -> LaurentPoly {
    components.iter().map(|c| &c.poincare * &attr_shift(c)).sum()
}

/// The BB sum computed separately on Γ-invariant and Γ-variant cohomology.
pub fn gamma_split(components: &[FixedComponent]) -> Result<(LaurentPoly, LaurentPoly), BbError> {
    let mut inv = LaurentPoly::zero();
    let mut var = LaurentPoly::zero();
    for c in components {
        let (i, v) = c.gamma_split()?;
        let s = attr_shift(c);
        inv = &inv + &(&i * &s);
        var = &var + &(&v * &s);
    }
    Ok((inv, var))
}

/// Invariants of an involution on the exterior algebra over `signs.len()`
/// degree-one generators, generator `i` being multiplied by `signs[i]`.
/// Degree `d` carries weight `2d`.
pub fn invariant_exterior(signs: &[i8]) -> GradedVS {
    // counts[(degree, parity of the number of negated generators)]
    let mut counts: BTreeMap<(i64, bool), BigUint> = BTreeMap::new();
    counts.insert((0, false), BigUint::one());
    for s in signs {
        let flip = s.is_negative();
        let mut next = counts.clone();
        for ((d, parity), n) in &counts {
            *next.entry((d + 1, parity ^ flip)).or_default() += n;
        }
        counts = next;
    }
    GradedVS::from_cells(
        counts
            .into_iter()
            .filter(|((_, odd), _)| !odd)
            .map(|((d, _), n)| (d, 2 * d, n)),
    )
}

/// [`invariant_exterior`] for an involution negating all `n` generators.
pub fn invariant_exterior_negated(n: usize) -> GradedVS {
    invariant_exterior(&vec![-1; n])
}
