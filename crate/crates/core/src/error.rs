use thiserror::Error;

/// Which defining condition of a generalized Cartan matrix failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CartanCondition {
    /// Diagonal entries equal 2.
    Diagonal,
    /// Off-diagonal entries are nonpositive and their products match the labels.
    Products,
    /// Zero entries come in symmetric pairs.
    ZeroPattern,
}

impl std::fmt::Display for CartanCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CartanCondition::Diagonal => "i",
            CartanCondition::Products => "ii",
            CartanCondition::ZeroPattern => "iii",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidCoxeterMatrix(String),
    #[error("not a generalized Cartan matrix: condition ({condition}) fails at ({row}, {col})")]
    NotCartan {
        condition: CartanCondition,
        row: String,
        col: String,
    },
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("symmetrizing weights differ on the odd edge {0}-{1}")]
    DeltaConflict(String, String),
    #[error("entries use more than one quadratic field")]
    MixedFields,
    #[error("unsupported Coxeter label {0}")]
    UnsupportedLabel(u32),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("word is not reduced")]
    NotReduced,
    #[error("search cap {0} too small to certify the result")]
    CapTooSmall(usize),
    #[error("operation needs rank 3, group has rank {0}")]
    RankNotThree(usize),
    #[error("rank {0} is too large for exact fan checks")]
    RankTooLarge(usize),
    #[error("element {0} is not sortable")]
    NotSortable(String),
    #[error("no bound certifies the join")]
    JoinUnavailable,
    #[error("no common upper bound inside the interval")]
    NoUpperBoundInInterval,
    #[error("the group is infinite")]
    InfiniteGroup,
    #[error("not a face: {0}")]
    NotAFace(String),
    #[error("invalid Coxeter element: {0}")]
    InvalidCoxeterElement(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("projection does not fit this group: {0}")]
    Projection(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
