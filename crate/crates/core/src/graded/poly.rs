//! Laurent polynomials with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// A finitely supported map from integer exponents to nonzero integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

/// Binary operations exposed through [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * x^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// Builds `sum_i coeffs[i] x^(low + i)`.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(low: i64, coeffs: &[C]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (low + i as i64, c.clone().into())),
        )
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent and dense coefficient list; `(0, [])` for the zero polynomial.
    pub fn dense(&self) -> (i64, Vec<BigInt>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, (lo..=hi).map(|e| self.coeff(e)).collect()),
            _ => (0, Vec::new()),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.terms().map(|(e, x)| (e, x * c)))
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `x -> x^m`.
    pub fn dilate(&self, m: i64) -> Self {
        assert!(m != 0, "dilation factor must be nonzero");
        Self::from_terms(self.terms().map(|(e, c)| (e * m, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Sum of coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn eval_at_minus_one(&self) -> BigInt {
        self.terms()
            .map(|(e, c)| if e.is_even() { c.clone() } else { -c })
            .sum()
    }

    /// Evaluation at an integer; `None` when a negative exponent would need a
    /// non-unit inverse.
    pub fn eval(&self, x: &BigInt) -> Option<BigInt> {
        let mut total = BigInt::zero();
        for (e, c) in self.terms() {
            let v = if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else if x.abs().is_one() {
                num_traits::pow(x.clone(), (-e) as usize)
            } else {
                return None;
            };
            total += c * v;
        }
        Some(total)
    }

    /// Exact quotient `q` with `self = den * q`.
    pub fn divide_exact(&self, den: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        let (Some(dlo), Some(dhi)) = (den.min_exp(), den.max_exp()) else {
            return Err(PolyError::DivisionByZero);
        };
        let Some(nhi) = self.max_exp() else {
            return Ok(Self::zero());
        };
        let lead = den.coeff(dlo);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rlo) = rem.min_exp() {
            let e = rlo - dlo;
            let (q, r) = rem.coeff(rlo).div_rem(&lead);
            if !r.is_zero() || e + dhi > nhi {
                return Err(PolyError::InexactDivision {
                    num: self.to_string(),
                    den: den.to_string(),
                });
            }
            let term = Self::monomial(q, e);
            rem = &rem - &(den * &term);
            quot = &quot + &term;
        }
        Ok(quot)
    }

    /// Coefficient symmetry about `center`.
    pub fn is_palindromic(&self, center: i64) -> bool {
        self.terms().all(|(e, c)| self.coeff(2 * center - e) == *c)
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let body = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if body.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{mag}{body}"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&BigInt::from(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| &a + &b)
    }
}

pub fn poly_arith(p: &LaurentPoly, q: &LaurentPoly, op: PolyOp) -> LaurentPoly {
    match op {
        PolyOp::Add => p + q,
        PolyOp::Sub => p - q,
        PolyOp::Mul => p * q,
    }
}

pub fn poly_divide_exact(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    num.divide_exact(den)
}

pub fn is_palindromic(p: &LaurentPoly, center: i64) -> bool {
    p.is_palindromic(center)
}
