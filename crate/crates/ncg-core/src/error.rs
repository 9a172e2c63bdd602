use thiserror::Error;

#[derive(Debug, Error)]
pub enum NcgError {
    #[error("structure constants are not associative: ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("declared unit is not a two-sided identity")]
    BadUnit,
    #[error("involution fails: {0}")]
    BadInvolution(String),
    #[error("algebra has no involution but one is required")]
    MissingInvolution,
    #[error("state is not positive")]
    NonPositiveState,
    #[error("state is not normalized: phi(1) != 1")]
    NotNormalized,
    #[error("algebra has nonzero radical (not semisimple)")]
    NonSemisimple,
    #[error("center does not split over the scalar field (center dimension {0})")]
    NonSplitCenter(usize),
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("matrix is not invertible with the given inverse")]
    NotInvertible,
    #[error("operator undefined in this degree: {0}")]
    DegreeUnderflow(String),
    #[error("cochain mode mismatch")]
    ModeMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("cochain is not a cyclic cocycle")]
    NotCyclicCocycle,
    #[error("cochain is not normalized")]
    NotNormalizedCochain,
    #[error("tuple is not a (b,B)-cocycle")]
    NotBbCocycle,
    #[error("truncation instability: widths disagree ({0} vs {1})")]
    TruncationUnstable(usize, usize),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("window excludes order -1; residue undefined")]
    WindowExcludesResidue,
    #[error("symbol not certified invertible on the circle")]
    SymbolNotCertified,
    #[error("not a group action: {0}")]
    NotAGroupAction(String),
    #[error("classes do not partition the ground set")]
    BadPartition,
    #[error("composition is not associative or inverses are missing: {0}")]
    BadGroupoid(String),
    #[error("Hopf axiom failed: {0}")]
    HopfAxiom(String),
    #[error("modular pair invalid: {0}")]
    BadModularPair(String),
    #[error("trace fails the required invariance: {0}")]
    BadInvariantTrace(String),
    #[error("precondition violated at level {0}")]
    DeformationPrecondition(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("internal convention check failed: {0}")]
    Internal(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, NcgError>;
