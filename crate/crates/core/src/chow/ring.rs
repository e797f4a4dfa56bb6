//! Finite graded-commutative rings presented by monomial rewriting rules.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::ChowError;

/// Exponent vector, indexed like the ring's generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, by: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&by.0).map(|(a, b)| a - b).collect())
    }

    fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

pub type Terms = BTreeMap<Monomial, BigInt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// A rewriting rule `lhs -> rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Monomial,
    pub rhs: Terms,
    pub source: String,
}

#[derive(Debug, PartialEq, Eq)]
pub struct RingSpec {
    generators: Vec<Generator>,
    relations: Vec<Relation>,
    top_degree: u32,
    degree_map: BTreeMap<Monomial, BigInt>,
}

impl RingSpec {
    /// Builds and validates a ring.
    ///
    /// `relations` are strings `"monomial = expression"`; `degree_map` assigns
    /// integers to top-degree monomials. Entries that are not in normal form are
    /// checked against the entries that are.
    pub fn new(
        generators: &[(&str, u32)],
        relations: &[&str],
        top_degree: u32,
        degree_map: &[(&str, BigInt)],
    ) -> Result<Arc<RingSpec>, ChowError> {
        let mut gens = Vec::new();
        for &(name, degree) in generators {
            if degree == 0 || degree % 2 != 0 {
                return Err(ChowError::BadGeneratorDegree {
                    name: name.to_string(),
                    degree,
                });
            }
            if gens.iter().any(|g: &Generator| g.name == name) {
                return Err(ChowError::Parse {
                    input: name.to_string(),
                    reason: "duplicate generator".into(),
                });
            }
            gens.push(Generator {
                name: name.to_string(),
                degree,
            });
        }
        let mut spec = RingSpec {
            generators: gens,
            relations: Vec::new(),
            top_degree,
            degree_map: BTreeMap::new(),
        };

        for &rel in relations {
            let (lhs, rhs) = rel.split_once('=').ok_or_else(|| ChowError::Parse {
                input: rel.to_string(),
                reason: "expected `monomial = expression`".into(),
            })?;
            let lhs = spec.parse_monomial(lhs)?;
            let rhs = spec.parse_terms(rhs)?;
            let d = spec.monomial_degree(&lhs);
            if rhs.keys().any(|m| spec.monomial_degree(m) != d) {
                return Err(ChowError::Inhomogeneous(rel.to_string()));
            }
            if rhs.keys().any(|m| deglex(&spec, m, &lhs) != Ordering::Less) {
                return Err(ChowError::NonTerminating(rel.to_string()));
            }
            spec.relations.push(Relation {
                lhs,
                rhs,
                source: rel.trim().to_string(),
            });
        }
        spec.check_critical_pairs()?;

        let mut pending = Vec::new();
        for (text, value) in degree_map {
            let m = spec.parse_monomial(text)?;
            if spec.monomial_degree(&m) != top_degree {
                return Err(ChowError::DegreeMismatch {
                    expected: top_degree.to_string(),
                    found: format!("{text} of degree {}", spec.monomial_degree(&m)),
                });
            }
            let nf = spec.reduce_monomial(&m);
            if nf.len() == 1 && nf.get(&m).is_some_and(|c| c.is_one()) {
                spec.degree_map.insert(m, value.clone());
            } else {
                pending.push((text.to_string(), nf, value.clone()));
            }
        }
        for (text, nf, value) in pending {
            let derived = spec.integrate(&nf)?;
            if derived != value {
                return Err(ChowError::InconsistentDegreeMap {
                    monomial: text,
                    assigned: value.to_string(),
                    derived: derived.to_string(),
                });
            }
        }
        Ok(Arc::new(spec))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.generators).map(|(e, g)| e * g.degree).sum()
    }

    fn check_critical_pairs(&self) -> Result<(), ChowError> {
        for (i, a) in self.relations.iter().enumerate() {
            for b in &self.relations[i + 1..] {
                let l = a.lhs.lcm(&b.lhs);
                let left = self.reduce_terms(&shift_terms(&a.rhs, &l.quotient(&a.lhs)));
                let right = self.reduce_terms(&shift_terms(&b.rhs, &l.quotient(&b.lhs)));
                if left != right {
                    return Err(ChowError::NonConfluent {
                        monomial: self.format_monomial(&l),
                        left: self.format_terms(&left),
                        right: self.format_terms(&right),
                    });
                }
            }
        }
        Ok(())
    }

    /// Normal form of a monomial; anything above the top degree vanishes.
    pub fn reduce_monomial(&self, m: &Monomial) -> Terms {
        let mut out = Terms::new();
        let mut todo = vec![(m.clone(), BigInt::one())];
        while let Some((m, c)) = todo.pop() {
            if self.monomial_degree(&m) > self.top_degree {
                continue;
            }
            match self.relations.iter().find(|r| r.lhs.divides(&m)) {
                Some(r) => {
                    let rest = m.quotient(&r.lhs);
                    for (rm, rc) in &r.rhs {
                        todo.push((rest.times(rm), &c * rc));
                    }
                }
                None => add_term(&mut out, m, c),
            }
        }
        out
    }

    pub fn reduce_terms(&self, terms: &Terms) -> Terms {
        let mut out = Terms::new();
        for (m, c) in terms {
            for (nm, nc) in self.reduce_monomial(m) {
                add_term(&mut out, nm, c * nc);
            }
        }
        out
    }

    /// Integral of normal-form terms of top degree.
    fn integrate(&self, terms: &Terms) -> Result<BigInt, ChowError> {
        let mut total = BigInt::zero();
        for (m, c) in terms {
            let d = self.monomial_degree(m);
            if d != self.top_degree {
                return Err(ChowError::DegreeMismatch {
                    expected: self.top_degree.to_string(),
                    found: format!("{} of degree {d}", self.format_monomial(m)),
                });
            }
            let v = self
                .degree_map
                .get(m)
                .ok_or_else(|| ChowError::UndefinedDegree(self.format_monomial(m)))?;
            total += c * v;
        }
        Ok(total)
    }

    fn generator_index(&self, name: &str) -> Result<usize, ChowError> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| ChowError::UnknownGenerator(name.to_string()))
    }

    fn parse_monomial(&self, text: &str) -> Result<Monomial, ChowError> {
        let terms = self.parse_terms(text)?;
        match terms.iter().next() {
            Some((m, c)) if terms.len() == 1 && c.is_one() => Ok(m.clone()),
            _ => Err(ChowError::Parse {
                input: text.to_string(),
                reason: "expected a single monomial".into(),
            }),
        }
    }

    /// Parses `[+-] term ([+-] term)*` with `term = factor (* factor)*` and
    /// `factor = integer | name | name^integer`.
    fn parse_terms(&self, text: &str) -> Result<Terms, ChowError> {
        let err = |reason: &str| ChowError::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let tokens = tokenize(text).map_err(|r| err(&r))?;
        let n = self.generators.len();
        let mut out = Terms::new();
        let mut i = 0;
        if tokens.is_empty() {
            return Err(err("empty expression"));
        }
        while i < tokens.len() {
            let mut sign = BigInt::one();
            if let Tok::Sign(s) = &tokens[i] {
                if *s < 0 {
                    sign = -sign;
                }
                i += 1;
            } else if i > 0 {
                return Err(err("expected + or - between terms"));
            }
            let mut coef = sign;
            let mut mono = Monomial::one(n);
            let mut first = true;
            loop {
                if !first {
                    match tokens.get(i) {
                        Some(Tok::Star) => i += 1,
                        _ => break,
                    }
                }
                first = false;
                match tokens.get(i) {
                    Some(Tok::Int(v)) => {
                        coef *= v;
                        i += 1;
                    }
                    Some(Tok::Name(name)) => {
                        let g = self.generator_index(name)?;
                        i += 1;
                        let mut e = 1u32;
                        if let Some(Tok::Caret) = tokens.get(i) {
                            match tokens.get(i + 1) {
                                Some(Tok::Int(v)) => {
                                    e = u32::try_from(v).map_err(|_| err("bad exponent"))?;
                                    i += 2;
                                }
                                _ => return Err(err("expected an exponent after ^")),
                            }
                        }
                        mono.0[g] += e;
                    }
                    _ => return Err(err("expected a number or a generator")),
                }
            }
            add_term(&mut out, mono, coef);
        }
        Ok(out)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> =
            m.0.iter()
                .zip(&self.generators)
                .filter(|(e, _)| **e > 0)
                .map(|(e, g)| {
                    if *e == 1 {
                        g.name.clone()
                    } else {
                        format!("{}^{e}", g.name)
                    }
                })
                .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn format_terms(&self, terms: &Terms) -> String {
        if terms.is_empty() {
            return "0".into();
        }
        let mut ordered: Vec<(&Monomial, &BigInt)> = terms.iter().collect();
        // Ascending degree, larger monomials first within a degree.
        ordered.sort_by(|a, b| {
            let (da, db) = (self.monomial_degree(a.0), self.monomial_degree(b.0));
            da.cmp(&db).then_with(|| b.0.cmp(a.0))
        });
        let mut out = String::new();
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let body = self.format_monomial(m);
            if body == "1" {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{mag}*{body}"));
            }
        }
        out
    }
}

/// Degree first, then lexicographic in the generator order.
fn deglex(spec: &RingSpec, a: &Monomial, b: &Monomial) -> Ordering {
    spec.monomial_degree(a)
        .cmp(&spec.monomial_degree(b))
        .then_with(|| a.0.cmp(&b.0))
}

fn shift_terms(terms: &Terms, by: &Monomial) -> Terms {
    terms.iter().map(|(m, c)| (m.times(by), c.clone())).collect()
}

fn add_term(out: &mut Terms, m: Monomial, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = out.entry(m.clone()).or_insert_with(BigInt::zero);
    *slot += c;
    if slot.is_zero() {
        out.remove(&m);
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sign(i8),
    Star,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Sign(1));
                i += 1;
            }
            '-' => {
                out.push(Tok::Sign(-1));
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Int(digits.parse().map_err(|_| "bad integer".to_string())?));
            }
            _ if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Name(chars[start..i].iter().collect()));
            }
            _ => return Err(format!("unexpected character {c:?}")),
        }
    }
    Ok(out)
}

/// An element of a [`RingSpec`], always in normal form.
#[derive(Clone, Debug)]
pub struct RingElement {
    ring: Arc<RingSpec>,
    terms: Terms,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for RingElement {}

impl RingElement {
    pub fn from_terms(ring: &Arc<RingSpec>, terms: &Terms) -> Self {
        Self {
            ring: ring.clone(),
            terms: ring.reduce_terms(terms),
        }
    }

    /// Parses an expression in the ring's generators.
    pub fn parse(ring: &Arc<RingSpec>, text: &str) -> Result<Self, ChowError> {
        let terms = ring.parse_terms(text)?;
        Ok(Self::from_terms(ring, &terms))
    }

    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        Self {
            ring: ring.clone(),
            terms: Terms::new(),
        }
    }

    pub fn one(ring: &Arc<RingSpec>) -> Self {
        Self::constant(ring, BigInt::one())
    }

    pub fn constant(ring: &Arc<RingSpec>, c: BigInt) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, Monomial::one(ring.generators.len()), c);
        Self::from_terms(ring, &terms)
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous elements.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| self.ring.monomial_degree(m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// True when every term has degree `d` (vacuous for zero).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| self.ring.monomial_degree(m) == d)
    }

    pub fn homogeneous_part(&self, d: u32) -> RingElement {
        Self {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.monomial_degree(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> RingElement {
        let terms: Terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        Self::from_terms(&self.ring, &terms)
    }

    pub fn pow(&self, n: u32) -> RingElement {
        (0..n).fold(RingElement::one(&self.ring), |acc, _| &acc * self)
    }

    fn check_ring(&self, other: &RingElement) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring),
            "ring elements from different rings cannot be combined"
        );
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_terms(&self.terms))
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.check_ring(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        RingElement {
            ring: self.ring.clone(),
            terms,
        }
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self + &(-rhs)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.check_ring(rhs);
        let mut raw = Terms::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                add_term(&mut raw, a.times(b), x * y);
            }
        }
        RingElement::from_terms(&self.ring, &raw)
    }
}

/// Normal form under the ring's rewriting rules (elements are stored reduced,
/// so this is the identity on well-formed elements).
pub fn ring_reduce(e: &RingElement) -> RingElement {
    RingElement::from_terms(&e.ring, &e.terms)
}

/// Integral of a top-degree element via the degree map.
pub fn ring_degree(e: &RingElement) -> Result<BigInt, ChowError> {
    e.ring.integrate(&e.terms)
}
