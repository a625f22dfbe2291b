use thiserror::Error;

use crate::rbvp::SolvabilityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element is not invertible (complex part {c1_abs:e} is below threshold)")]
    NotInvertible { c1_abs: f64 },

    #[error("exponential overflows: real part of exponent is {re}")]
    Overflow { re: f64 },

    #[error("degenerate basis: determinant {det:e} fails the independence threshold {threshold:e}")]
    DegenerateBasis { det: f64, threshold: f64 },

    #[error("element does not lie in the subspace E (rho-component mismatch {mismatch:e})")]
    NotInSubspace { mismatch: f64 },

    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at offset {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("variable `{0}` is not bound")]
    UnboundVariable(&'static str),

    #[error("expression depends on boundary variables and cannot be differentiated in z")]
    NotAFieldExpression,

    #[error("contour is self-intersecting (segments {0} and {1})")]
    SelfIntersecting(usize, usize),

    #[error("empty contour specification: {0}")]
    EmptySpec(String),

    #[error("invalid contour: {0}")]
    InvalidContour(String),

    #[error("point at distance {distance:e} is inside the guard band {guard:e} of the contour")]
    TooCloseToBoundary { distance: f64, guard: f64 },

    #[error("boundary limit did not converge at node {node} (error estimate {estimate:e})")]
    NoConvergence { node: usize, estimate: f64 },

    #[error("node {0} is a corner of the contour; one-sided limits are not taken there")]
    CornerNode(usize),

    #[error("function is not invertible on the contour at nodes {0:?}")]
    NotInvertibleOnContour(Vec<usize>),

    #[error("logarithmic residue {raw} is not within tolerance of an integer")]
    NonIntegerResidue { raw: f64 },

    #[error("triangle vertices are collinear")]
    DegenerateTriangle,

    #[error("complex part varies along a fiber by {deviation:e}; input is not monogenic")]
    FiberInconsistency { deviation: f64 },

    #[error("argument of the coefficient turns by {turn} rad between nodes {node} and {next} even after refinement")]
    BranchAmbiguity { node: usize, next: usize, turn: f64 },

    #[error("winding {raw} is not within tolerance of an integer")]
    NonIntegerIndex { raw: f64 },

    #[error("continuous logarithm does not close up (mismatch {mismatch:e}); index is wrong")]
    ClosureFailure { mismatch: f64 },

    #[error("the origin must lie inside the contour")]
    OriginNotInterior,

    #[error("polynomial of degree {degree} is not admissible for index {kappa}")]
    PolynomialDegree { degree: usize, kappa: i64 },

    #[error("problem is not solvable: {} solvability moment(s) do not vanish", .0.moments.len())]
    Unsolvable(Box<SolvabilityReport>),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("solution does not belong to this problem (contour hash {found} != {expected})")]
    ContourMismatch { expected: String, found: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Unsolvable(_) => 2,
            Error::BranchAmbiguity { .. }
            | Error::NoConvergence { .. }
            | Error::ClosureFailure { .. }
            | Error::NonIntegerIndex { .. }
            | Error::NonIntegerResidue { .. }
            | Error::Overflow { .. } => 4,
            _ => 3,
        }
    }
}
