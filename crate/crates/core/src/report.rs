//! Check records, reports, and their JSON and markdown forms.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::{BigInt, BigUint};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::graded::{FiltKind, FiltTable, LaurentPoly, Violation};

/// An exact integer. Serialized as a JSON number when it fits in `i64`,
/// otherwise as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Int(pub BigInt);

impl From<BigInt> for Int {
    fn from(x: BigInt) -> Self {
        Int(x)
    }
}

impl From<&BigUint> for Int {
    fn from(x: &BigUint) -> Self {
        Int(BigInt::from(x.clone()))
    }
}

impl From<i64> for Int {
    fn from(x: i64) -> Self {
        Int(BigInt::from(x))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(x) => s.serialize_i64(x),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(Int(BigInt::from(x))),
            Repr::Text(s) => s.parse().map(Int).map_err(de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationValue {
    pub low: (i64, i64),
    pub high: (i64, i64),
    pub low_dim: Int,
    pub high_dim: Int,
}

impl From<&Violation> for ViolationValue {
    fn from(v: &Violation) -> Self {
        Self {
            low: v.low,
            high: v.high,
            low_dim: (&v.low_dim).into(),
            high_dim: (&v.high_dim).into(),
        }
    }
}

/// A computed or expected value. Equality is exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CheckValue {
    Integer {
        value: Int,
    },
    Bool {
        value: bool,
    },
    Poly {
        var: String,
        low: i64,
        coeffs: Vec<Int>,
    },
    Table {
        kind: FiltKind,
        entries: Vec<(i64, i64, Int)>,
    },
    Matrix {
        rows: Vec<Vec<Int>>,
    },
    Violations {
        cells: Vec<ViolationValue>,
    },
    Class {
        value: String,
    },
}

impl CheckValue {
    pub fn integer(x: impl Into<BigInt>) -> Self {
        CheckValue::Integer { value: Int(x.into()) }
    }

    pub fn bool(value: bool) -> Self {
        CheckValue::Bool { value }
    }

    pub fn poly(p: &LaurentPoly, var: &str) -> Self {
        let (low, coeffs) = p.dense();
        CheckValue::Poly {
            var: var.to_string(),
            low,
            coeffs: coeffs.into_iter().map(Int).collect(),
        }
    }

    pub fn table(t: &FiltTable) -> Self {
        CheckValue::Table {
            kind: t.kind(),
            entries: t.records().into_iter().map(|(d, k, n)| (d, k, (&n).into())).collect(),
        }
    }

    pub fn matrix(rows: &[Vec<BigInt>]) -> Self {
        CheckValue::Matrix {
            rows: rows.iter().map(|r| r.iter().cloned().map(Int).collect()).collect(),
        }
    }

    pub fn violations(v: &[Violation]) -> Self {
        CheckValue::Violations {
            cells: v.iter().map(ViolationValue::from).collect(),
        }
    }

    pub fn class(s: impl Into<String>) -> Self {
        CheckValue::Class { value: s.into() }
    }

    pub fn as_table(&self) -> Option<FiltTable> {
        match self {
            CheckValue::Table { kind, entries } => Some(FiltTable::from_entries(
                *kind,
                entries
                    .iter()
                    .map(|(d, k, n)| (*d, *k, n.0.to_biguint().expect("table dimensions are nonnegative"))),
            )),
            _ => None,
        }
    }
}

impl fmt::Display for CheckValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckValue::Integer { value } => write!(f, "{value}"),
            CheckValue::Bool { value } => write!(f, "{value}"),
            CheckValue::Poly { var, low, coeffs } => {
                let p = LaurentPoly::from_coeffs(*low, &coeffs.iter().map(|c| c.0.clone()).collect::<Vec<_>>());
                f.write_str(&p.display_with(var))
            }
            CheckValue::Table { kind, entries } => {
                write!(f, "{kind} table {{")?;
                for (i, (d, k, n)) in entries.iter().enumerate() {
                    let sep = if i == 0 { "" } else { ", " };
                    write!(f, "{sep}({d},{k}):{n}")?;
                }
                f.write_str("}")
            }
            CheckValue::Matrix { rows } => {
                f.write_str("[")?;
                for (i, r) in rows.iter().enumerate() {
                    let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                    let sep = if i == 0 { "" } else { ", " };
                    write!(f, "{sep}[{}]", cells.join(", "))?;
                }
                f.write_str("]")
            }
            CheckValue::Violations { cells } => {
                if cells.is_empty() {
                    return f.write_str("no violations");
                }
                let parts: Vec<String> = cells
                    .iter()
                    .map(|v| {
                        format!(
                            "({},{})={} vs ({},{})={}",
                            v.low.0, v.low.1, v.low_dim, v.high.0, v.high.1, v.high_dim
                        )
                    })
                    .collect();
                f.write_str(&parts.join("; "))
            }
            CheckValue::Class { value } => f.write_str(value),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// Truncated SHA-256 of the check's input description.
    pub inputs: String,
    pub computed: CheckValue,
    pub expected: CheckValue,
    pub provenance: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

impl CheckRecord {
    pub fn new(name: &str, inputs: &str, computed: CheckValue, expected: CheckValue, provenance: &str) -> Self {
        let pass = computed == expected;
        Self {
            name: name.to_string(),
            inputs: inputs_digest(inputs),
            computed,
            expected,
            provenance: provenance.to_string(),
            pass,
            notes: None,
        }
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = Some(notes.into());
        self
    }
}

pub fn inputs_digest(inputs: &str) -> String {
    let h = Sha256::digest(inputs.as_bytes());
    hex::encode(&h[..8])
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub case: String,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    /// Sorts the records by name and computes the summary.
    pub fn new(case: &str, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = checks.iter().filter(|c| c.pass).count();
        Self {
            case: case.to_string(),
            summary: Summary {
                total: checks.len(),
                passed,
                failed: checks.len() - passed,
            },
            checks,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Case `{}`\n", self.case);
        let _ = writeln!(
            out,
            "{} checks, {} passed, {} failed.\n",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        if self.checks.is_empty() {
            return out;
        }
        out.push_str("| check | verdict | computed | expected | provenance |\n");
        out.push_str("|---|---|---|---|---|\n");
        for c in &self.checks {
            let verdict = if c.pass { "pass" } else { "FAIL" };
            let computed = match c.computed {
                CheckValue::Table { .. } => "see below".to_string(),
                _ => escape(&c.computed.to_string()),
            };
            let expected = match c.expected {
                CheckValue::Table { .. } => "see below".to_string(),
                _ => escape(&c.expected.to_string()),
            };
            let _ = writeln!(
                out,
                "| `{}` | {verdict} | {computed} | {expected} | {} |",
                c.name,
                escape(&c.provenance)
            );
        }
        for c in &self.checks {
            if let Some(t) = c.computed.as_table() {
                let _ = writeln!(out, "\n## `{}`\n", c.name);
                out.push_str(&render_diamond(&t));
                if c.computed != c.expected {
                    if let Some(e) = c.expected.as_table() {
                        out.push_str("\nExpected:\n\n");
                        out.push_str(&render_diamond(&e));
                    }
                }
            }
            if let Some(n) = &c.notes {
                let _ = writeln!(out, "\n- `{}`: {}", c.name, escape(n));
            }
        }
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('|', "\\|")
}

/// Markdown grid with one row per level (descending) and one column per
/// `Δ = d - level`, where a weight `w` counts as level `w / 2`. Cells between
/// the first and last nonzero entry of a row show 0; cells outside are blank.
pub fn render_diamond(t: &FiltTable) -> String {
    let (label, step) = match t.kind() {
        FiltKind::Perverse => ("p", 1),
        FiltKind::Weight => ("w", 2),
    };
    if t.is_empty() {
        return format!("| {label} \\ Δ |\n|---|\n");
    }
    let mut rows: BTreeMap<i64, BTreeMap<i64, String>> = BTreeMap::new();
    for ((d, k), n) in t.iter() {
        rows.entry(k).or_default().insert(d - k.div_euclid(step), n.to_string());
    }
    let dmin = rows.values().flat_map(|r| r.keys()).min().copied().unwrap_or(0);
    let dmax = rows.values().flat_map(|r| r.keys()).max().copied().unwrap_or(0);
    let kmin = *rows.keys().next().expect("nonempty");
    let kmax = *rows.keys().next_back().expect("nonempty");

    let mut out = format!("| {label} \\ Δ |");
    for delta in dmin..=dmax {
        let _ = write!(out, " {delta} |");
    }
    out.push_str("\n|---|");
    for _ in dmin..=dmax {
        out.push_str("---|");
    }
    out.push('\n');
    for k in (kmin..=kmax).rev().filter(|k| (k - kmin) % step == 0) {
        let _ = write!(out, "| {k} |");
        let row = rows.get(&k);
        let lo = row.and_then(|r| r.keys().next().copied());
        let hi = row.and_then(|r| r.keys().next_back().copied());
        for delta in dmin..=dmax {
            let cell = match (row.and_then(|r| r.get(&delta)), lo, hi) {
                (Some(n), _, _) => n.clone(),
                (None, Some(a), Some(b)) if a <= delta && delta <= b => "0".into(),
                _ => String::new(),
            };
            let _ = write!(out, " {cell} |");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn og6_diamond() -> FiltTable {
        FiltTable::from_entries(
            FiltKind::Perverse,
            [
                (0, 0, 1u32),
                (2, 1, 1),
                (2, 2, 1),
                (4, 2, 16),
                (4, 3, 6),
                (4, 4, 1),
                (6, 3, 16),
                (6, 4, 16),
                (6, 5, 1),
                (6, 6, 1),
            ],
        )
    }

    #[test]
    fn diamond_layout() {
        let grid = render_diamond(&og6_diamond());
        let lines: Vec<&str> = grid.lines().collect();
        assert_eq!(lines.len(), 2 + 7);
        assert_eq!(lines[0], "| p \\ Δ | 0 | 1 | 2 | 3 |");
        assert_eq!(lines[2], "| 6 | 1 |  |  |  |");
        assert_eq!(lines[5], "| 3 |  | 6 | 0 | 16 |");
        assert_eq!(lines[8], "| 0 | 1 |  |  |  |");
    }

    #[test]
    fn weight_diamond_uses_half_weights() {
        let w = og6_diamond().perverse_to_weight().unwrap();
        let text = render_diamond(&w);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[0], "| w \\ Δ | 0 | 1 | 2 | 3 |");
        assert_eq!(lines[2], "| 12 | 1 |  |  |  |");
        assert_eq!(lines[5], "| 6 |  | 6 | 0 | 16 |");
    }

    #[test]
    fn json_round_trip() {
        let big: BigInt = BigInt::from(u64::MAX) * 7;
        let checks = vec![
            CheckRecord::new(
                "b",
                "x",
                CheckValue::integer(big.clone()),
                CheckValue::integer(big),
                "p",
            ),
            CheckRecord::new("a", "y", CheckValue::table(&og6_diamond()), CheckValue::bool(true), "q").with_notes("n"),
        ];
        let r = Report::new("demo", checks);
        assert_eq!(r.checks[0].name, "a");
        assert_eq!(
            r.summary,
            Summary {
                total: 2,
                passed: 1,
                failed: 1
            }
        );
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        let empty = Report::new("empty", vec![]);
        assert_eq!(Report::from_json(&empty.to_json()).unwrap(), empty);
        assert!(empty.to_markdown().contains("0 checks"));
    }

    #[test]
    fn polynomial_values_are_normalized() {
        let p = LaurentPoly::from_coeffs(0, &[0, 0, 1]);
        assert_eq!(
            CheckValue::poly(&p, "t"),
            CheckValue::poly(&LaurentPoly::monomial(1, 2), "t")
        );
        assert_eq!(CheckValue::poly(&p, "q").to_string(), "q^2");
    }
}
