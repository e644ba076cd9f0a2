use thiserror::Error;

/// Errors from polynomial arithmetic and variable bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("`{0}` is not a valid variable name")]
    InvalidVariableName(String),
    #[error("polynomials live over different variable contexts")]
    ContextMismatch,
    #[error("no variable carries the parameter role")]
    NoParameter,
    #[error("more than one variable carries the parameter role")]
    AmbiguousParameter,
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("division by zero")]
    DivisionByZero,
}

/// Errors from basis computations and the ideal toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComputeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("resource limit exceeded: {what} > {limit}")]
    ResourceLimit { what: &'static str, limit: usize },
    #[error("operation requires a {expected} ordering")]
    WrongOrderingKind { expected: &'static str },
    #[error("ideal has no cached basis")]
    BasisMissing,
    #[error("empty generator tuple")]
    EmptyTuple,
    #[error("no component is labelled by the parameter variable")]
    NoParameterComponent,
    #[error("module elements have inconsistent rank")]
    RankMismatch,
}

impl ComputeError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, ComputeError::ResourceLimit { .. })
    }
}

/// Errors from the germ-level computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error(transparent)]
    Compute(#[from] ComputeError),
    #[error("invalid germ: {0}")]
    InvalidGerm(String),
    #[error("branch {branch}: elimination ideal not principal ({generators} generators)")]
    NotPrincipal { branch: usize, generators: usize },
    #[error("branch {branch}: elimination ideal is zero, the image is not a hypersurface")]
    ZeroImage { branch: usize },
    #[error("branches {0} and {1} have associate image equations")]
    AssociateBranches(usize, usize),
    #[error("image equation does not vanish on branch {branch}")]
    ImageMismatch { branch: usize },
    #[error("image equation does not vanish at the origin")]
    ImageNotThroughOrigin,
    #[error("{what} has infinite codimension; the germ is not A-finite or the image equation is wrong")]
    InfiniteCodimension { what: &'static str },
    #[error("Samuel profile did not stabilise within k_max = {k_max} (profile {profile:?})")]
    SamuelNotStabilised { k_max: u32, profile: Vec<u64> },
    #[error("all {attempts} sample values of s gave a degenerate slice")]
    DegenerateSlices { attempts: u32 },
    #[error("{0} requires the user flag `{1}`")]
    FlagRequired(&'static str, &'static str),
    #[error("weights do not make the image equation weighted homogeneous")]
    NotWeightedHomogeneous,
}

impl GermError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, GermError::Compute(e) if e.is_resource_limit())
    }
}
