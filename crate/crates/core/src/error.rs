use thiserror::Error;

use crate::poly::VarId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{num} is not divisible by {den} (remainder {remainder})")]
    NonExactDivision {
        num: String,
        den: String,
        remainder: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("rule for {var}^{power} is not homogeneous of degree {expected}")]
    InhomogeneousRule { var: VarId, power: u32, expected: i64 },
    #[error("rule for {var}^{power} violates triangularity: {reason}")]
    TriangularityViolation {
        var: VarId,
        power: u32,
        reason: String,
    },
    #[error("variable {0} has no bounding rule, the quotient is infinite dimensional")]
    InfiniteDimension(VarId),
    #[error("rules on shared variable {0} disagree")]
    IncompatibleBase(VarId),
    #[error("reduction failed: {0}")]
    ReductionFailed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MfError {
    #[error("deg b - deg a = {0} is odd")]
    OddShift(i64),
    #[error("row entry is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("incompatible base rings: {0}")]
    IncompatibleBase(#[from] RingError),
    #[error("not a matrix factorization: {product} at ({row}, {col}) is {found}, expected {expected}")]
    NotAFactorization {
        product: &'static str,
        row: usize,
        col: usize,
        found: String,
        expected: String,
    },
    #[error("matrix shapes do not match: {0}")]
    ShapeMismatch(String),
    #[error("row index {index} out of range ({len} rows)")]
    RowOutOfRange { index: usize, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("row index {index} out of range ({len} rows)")]
    RowOutOfRange { index: usize, len: usize },
    #[error("variable {0} occurs in the potential")]
    VariableInPotential(VarId),
    #[error("row {row} is not monic in {var}")]
    NotMonicInVariable { row: usize, var: VarId },
    #[error(transparent)]
    TriangularityViolation(#[from] RingError),
    #[error("variable {0} still occurs in a row")]
    ResidualVariable(VarId),
    #[error("no rule with leader {0} in the base ring")]
    MissingRule(VarId),
    #[error("trace step {step} does not apply: {reason}")]
    ReplayMismatch { step: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("{line}:{col}: syntax error: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown parameter `{name}`")]
    UnknownParameter {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: invalid diagram: {msg}")]
    ValidationError { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: parameter `{name}` is already used in that position")]
    DuplicateUse {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: glue needs one head end and one tail end, got `{p}` and `{q}`")]
    OrientationMismatch {
        line: usize,
        col: usize,
        p: String,
        q: String,
    },
    #[error("{line}:{col}: cannot glue single parameter to double parameter (`{p}`, `{q}`)")]
    KindMismatch {
        line: usize,
        col: usize,
        p: String,
        q: String,
    },
    #[error("{kind} expects {expected} parameters, got {found}")]
    ArityMismatch {
        kind: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("n = {n} is not supported here (need n >= {min})")]
    UnsupportedN { n: u32, min: u32 },
    #[error(transparent)]
    Mf(#[from] MfError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    InfiniteDimension(#[from] RingError),
    #[error("potential is {0}, homology needs potential 0")]
    NonzeroPotential(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoyError {
    #[error("no relation applies to the residual graph: {0}")]
    StuckGraph(String),
    #[error("graph is not closed: {0}")]
    NotClosed(String),
    #[error("Laurent division left remainder {0}")]
    NonExactDivision(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Umbrella error for callers that mix several modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Mf(#[from] MfError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Moy(#[from] MoyError),
}
