use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{num} is not divisible by {den}")]
    InexactDivision { num: String, den: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("subtraction leaves a negative dimension at (d={d}, k={k})")]
    NegativeDimension { d: i64, k: i64 },
    #[error("expected a {expected} table, found {found}")]
    KindMismatch { expected: String, found: String },
    #[error("weight table has odd weight {w} in degree {d}; cannot halve levels")]
    OddWeight { d: i64, w: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BbError {
    #[error("component {name}: codim_attr {codim} but weight vector has {negative} negative weights")]
    CodimMismatch { name: String, codim: u32, negative: usize },
    #[error("component {name}: inconsistent character ({reason})")]
    InconsistentCharacter { name: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("negative coefficient after subtracting strata: {0}")]
    NegativeCoefficient(String),
    #[error("weight system has no nonnegative integer solution: {0}")]
    NoSolution(String),
    #[error("weight system has more than one nonnegative integer solution: {0}")]
    NonUniqueSolution(String),
    #[error("variant classes cannot be located: {0}")]
    AmbiguousVariant(String),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("cannot parse ring expression {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("generator {name} has odd or nonpositive degree {degree}")]
    BadGeneratorDegree { name: String, degree: u32 },
    #[error("relation {0} is not homogeneous")]
    Inhomogeneous(String),
    #[error("relation {0} does not decrease in the deglex order, so rewriting may not terminate")]
    NonTerminating(String),
    #[error("rewriting is not confluent: {monomial} reduces to {left} and to {right}")]
    NonConfluent {
        monomial: String,
        left: String,
        right: String,
    },
    #[error("expected an element of degree {expected}, found {found}")]
    DegreeMismatch { expected: String, found: String },
    #[error("degree of top monomial {0} is not determined by the degree map")]
    UndefinedDegree(String),
    #[error("degree map assigns {monomial} the value {assigned} but its normal form integrates to {derived}")]
    InconsistentDegreeMap {
        monomial: String,
        assigned: String,
        derived: String,
    },
    #[error("chern vector ranks incompatible: {0}")]
    RankMismatch(String),
    #[error("intersection matrix is not symmetric at ({i}, {j}): {a} vs {b}")]
    AsymmetricMatrix { i: usize, j: usize, a: String, b: String },
    #[error("intersection matrix entry ({i}, {j}) out of range for dimension {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("cannot read catalog {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("cannot parse catalog {path}: {reason}")]
    Parse { path: String, reason: String },
    #[error("catalog validation failed ({invariant}): {detail}")]
    Validation { invariant: String, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("unknown case {0:?}")]
    UnknownCase(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("check {check} could not be evaluated: {reason}")]
    Evaluation { check: String, reason: String },
}

impl CatalogError {
    pub fn validation(invariant: impl Into<String>, detail: impl ToString) -> Self {
        CatalogError::Validation {
            invariant: invariant.into(),
            detail: detail.to_string(),
        }
    }
}
