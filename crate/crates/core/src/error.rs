//! Error types shared across the crate.
//!
//! Errors are split into three severity kinds, which the CLI maps onto exit
//! codes: `Usage` (bad invocation), `Validation` (well-formed request over
//! invalid data) and `Consistency` (an internal exact-arithmetic identity
//! failed, which signals corrupt input tables or a violated hypothesis).

use thiserror::Error;

/// Severity of an [`Error`], used to select the CLI exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed invocation: unknown flags, unparsable specs.
    Usage,
    /// Input data failed validation (schema, group axioms, action relations).
    Validation,
    /// An exact mathematical identity failed to hold.
    Consistency,
}

#[derive(Debug, Error)]
pub enum Error {
    // ---- usage ----
    #[error("cannot parse divisor spec {0:?}: expected comma-separated `branch<j>:<r>` or `free:<r>` terms")]
    DivisorSpec(String),
    #[error("cannot parse family spec {0:?}: expected `klein`, `fermat:<p>` or `cyclic-custom:<n>:<e1>,...,<er>`")]
    FamilySpec(String),
    #[error("exactly one of --family and --action must be given")]
    InputChoice,
    #[error("command requires a --divisor argument")]
    MissingDivisor,

    // ---- validation: exact ----
    #[error("invalid conductor 0: roots of unity need n >= 1")]
    InvalidConductor,
    #[error("cannot parse rational literal {0:?}")]
    RationalLiteral(String),

    // ---- validation: group ----
    #[error("multiplication table is not square ({0} rows)")]
    TableNotSquare(usize),
    #[error("element 0 is not a two-sided identity (row or column 0 is not the identity map)")]
    IdentityMissing,
    #[error("row or column {0} of the multiplication table is not a bijection")]
    NotABijection(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("permutation generator {0} is not a permutation of 0..{1}")]
    BadPermutation(usize, usize),
    #[error("closure of the generators exceeds the size bound {0}")]
    ClosureTooLarge(usize),
    #[error("element index {0} out of range for a group of order {1}")]
    ElementOutOfRange(usize, usize),
    #[error("cyclic subgroup belongs to a different group (order {subgroup} vs {group})")]
    SubgroupMismatch { subgroup: usize, group: usize },

    // ---- validation: chartab ----
    #[error("character table must be square: {rows} rows for {classes} conjugacy classes")]
    TableShape { rows: usize, classes: usize },
    #[error("row {0} has {1} values, expected one per conjugacy class ({2})")]
    RowLength(usize, usize, usize),
    #[error("the trivial character must be row 0 (all values 1)")]
    TrivialMisplaced,
    #[error("character degree at row {0} is not a positive integer")]
    BadDegree(usize),
    #[error("sum of squared degrees is {got}, expected the group order {want}")]
    DegreeSum { got: String, want: usize },
    #[error("row orthogonality fails for rows ({0}, {1})")]
    RowOrthogonality(usize, usize),
    #[error("column orthogonality fails for classes ({0}, {1})")]
    ColumnOrthogonality(usize, usize),
    #[error("value at row {row}, class {class} does not lie in Q(zeta_{order}) for an element of order {order}")]
    ValueField { row: usize, class: usize, order: u64 },
    #[error("class list does not match the computed conjugacy classes at position {0}")]
    ClassMismatch(usize),
    #[error("group is not abelian: elements {0} and {1} do not commute")]
    NotAbelian(usize, usize),
    #[error("unsupported metacyclic parameters (m={m}, k={k}, t={t}): {reason}; supply an explicit character table instead")]
    UnsupportedMetacyclic { m: u64, k: u64, t: u64, reason: String },

    // ---- validation: cover ----
    #[error("hyperbolic generator lists have lengths {a} and {b}, expected gamma = {gamma} each")]
    HyperbolicLength { a: usize, b: usize, gamma: u64 },
    #[error("branch point {index}: declared order {declared} but element {element} has order {actual}")]
    BranchOrder { index: usize, declared: u64, element: usize, actual: u64 },
    #[error("branch point {index}: stabilizer order must exceed 1")]
    BranchOrderOne { index: usize },
    #[error("long relation fails: product of commutators and branch generators is element {product}, not the identity")]
    LongRelation { product: usize },
    #[error("the 2*gamma + r entries of the vector do not generate the group")]
    GenerationFailure,
    #[error("Riemann-Hurwitz genus is not a non-negative integer: {0}")]
    BadGenus(String),
    #[error("branch index {0} out of range ({1} branch points)")]
    BranchIndex(usize, usize),

    // ---- validation: divisor ----
    #[error("duplicate divisor site {0}")]
    DuplicateSite(String),
    #[error("unknown divisor site {0}")]
    UnknownSite(String),
    #[error("pullback coefficients must be non-negative, got {0}")]
    NegativePullback(i64),
    #[error("divisor is not effective (coefficient {r} at site {site})")]
    NotEffective { site: String, r: i64 },
    #[error("divisor of degree {degree} is not certified non-special (need degree > {bound}); pass the non-special assertion to proceed")]
    NotCertifiedNonSpecial { degree: i64, bound: i64 },

    // ---- validation: families ----
    #[error("fermat family requires a prime p >= 5, got {0}")]
    FermatParameter(u64),
    #[error("cyclic-custom family is invalid: {0}")]
    CyclicCustom(String),

    // ---- io ----
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),

    // ---- consistency ----
    #[error("eigenvalue multiplicity N[{k}] of irreducible {irreducible} is not a non-negative integer: {value}")]
    EigenvalueCount {
        irreducible: usize,
        k: u64,
        value: String,
    },
    #[error("multiplicity {label}({irreducible}) is not a non-negative integer: {value}")]
    NonIntegralMultiplicity {
        label: &'static str,
        irreducible: usize,
        value: String,
    },
    #[error("ramification module coefficient {coeff} of irreducible {irreducible} is not divisible by the group order {order}")]
    RamificationDivisibility {
        irreducible: usize,
        coeff: i64,
        order: usize,
    },
    #[error("multiplicity of irreducible {irreducible} is negative ({value}): the divisor is special or the non-special assertion is wrong")]
    HypothesisViolation { irreducible: usize, value: i64 },
    #[error("Corollary hypothesis fails for irreducible {irreducible}: value {value} is not an integer")]
    HalfIntegerValue { irreducible: usize, value: String },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// Coarse classification used for exit codes.
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            DivisorSpec(_) | FamilySpec(_) | InputChoice | MissingDivisor => ErrorKind::Usage,
            EigenvalueCount { .. }
            | NonIntegralMultiplicity { .. }
            | RamificationDivisibility { .. }
            | HypothesisViolation { .. }
            | HalfIntegerValue { .. }
            | Consistency(_) => ErrorKind::Consistency,
            _ => ErrorKind::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
