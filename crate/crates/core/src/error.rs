use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed rational literal `{0}`")]
    BadRationalLiteral(String),
    #[error("zero denominator in rational literal `{0}`")]
    ZeroDenominator(String),
    #[error("decimal literal `{0}` has more than {1} fractional digits")]
    TooManyFractionDigits(String, usize),
    #[error("negative parameter where a nonnegative one is required: {0}")]
    NegativeParameter(String),
    #[error("grid of {rows} x {cols} cells exceeds the cell budget {budget}")]
    CellBudget { rows: usize, cols: usize, budget: usize },
    #[error("boundary row(0) = {row0} and col(0) = {col0} disagree at the corner")]
    BoundaryCornerMismatch { row0: String, col0: String },
    #[error("path enumeration size guard exceeded: m + n = {0} > {1}")]
    PathGuard(usize, usize),
    #[error("decomposition requires the fully normalized form (alpha, beta nonzero); got kind {0}")]
    NotFullyNormalizable(String),
    #[error("decomposition requires A != 1 after normalization")]
    AHatIsOne,
    #[error("xfloat exponent overflow")]
    ExponentOverflow,
    #[error("generating-function precondition violated: {0}")]
    GfPrecondition(String),
    #[error("denominator within {0:e} of zero in closed-form evaluation")]
    NearZeroDenominator(f64),
    #[error("recurrence discovery found no relation of order {order}, degree {degree}")]
    NoRecurrence { order: usize, degree: usize },
    #[error("recurrence discovery is ambiguous: nullspace dimension {dim} > 1")]
    AmbiguousRecurrence { dim: usize },
    #[error("need at least {needed} diagonal terms, got {got}")]
    NotEnoughTerms { needed: usize, got: usize },
    #[error("requested order {order} or degree {degree} exceeds the caps (order <= {max_order}, degree <= {max_degree})")]
    DiscoveryCaps { order: usize, degree: usize, max_order: usize, max_degree: usize },
    #[error("leading coefficient p0({0}) = 0; the index must be covered by the seed")]
    BlockedIndex(usize),
    #[error("seed of length {got} does not cover indices below {needed}")]
    SeedTooShort { needed: usize, got: usize },
    #[error("parameters are not in any reduced-recurrence class (need A or B in {{0,1}} after normalization)")]
    NotDegenerate,
    #[error("the A = B three-term recurrence requires A != 1")]
    AEqualsOne,
    #[error("constant K is defined only in the surd regime (got {0})")]
    NotSurdRegime(String),
    #[error("constant K with gamma = 0 is outside the paper's hypotheses")]
    GammaZeroConstant,
    #[error("trajectory too short for diagnosis: {0} < {1}")]
    TrajectoryTooShort(usize, usize),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
