use thiserror::Error;

/// Errors surfaced by the exact pipeline.
///
/// The CLI maps these onto stable exit codes: input/schema problems exit 2,
/// domain violations (zero polynomials, positivity, bad tolerances) exit 3,
/// oracle disagreement exits 4. Internal-consistency failures should never
/// occur on valid inputs; they exit 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational literal `{0}` (expected `p/q` or `p` with integer p, q)")]
    ParseRational(String),
    #[error("invalid decimal literal `{0}`")]
    ParseDecimal(String),
    #[error("zero polynomial not allowed in {0}")]
    ZeroPolynomial(&'static str),
    #[error("polynomial must have degree >= 1 for {0}")]
    ConstantPolynomial(&'static str),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquareMatrix { rows: usize, cols: usize },
    #[error("matrix entry count {got} does not match {rows}x{cols}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        got: usize,
    },
    #[error("constant term is zero; strip zero roots before positive-root counting")]
    ZeroConstantTerm,
    #[error("degenerate interval: lower bound must be strictly below upper bound")]
    DegenerateInterval,
    #[error("interval does not bracket a root of the square-free part")]
    NoBracket,
    #[error("tolerance must be strictly positive")]
    InvalidTolerance,
    #[error("quadrature failed to converge within the subdivision cap")]
    QuadratureDiverged,
    #[error("piecewise function invalid: {0}")]
    PiecewiseInvalid(String),
    #[error("kernel factor violates positivity: {0}")]
    PositivityViolation(String),
    #[error("alpha-vector sign invariant violated: {0}")]
    AlphaSign(String),
    #[error("operation requires n == {expected}, got n == {got}")]
    WrongN { expected: usize, got: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(
        "count paths disagree: even-composition path gives {path1}, direct path gives {path2}"
    )]
    PathDisagreement { path1: usize, path2: usize },
    #[error("solution count {m} violates the bound {bound} for n = {n}")]
    BoundViolation { m: usize, bound: String, n: usize },
    #[error("input document invalid: {0}")]
    SchemaViolation(String),
    #[error("oracle disagreement: {0}")]
    OracleMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
