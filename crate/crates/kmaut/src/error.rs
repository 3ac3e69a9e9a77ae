use thiserror::Error;

/// Errors raised by the algebra, automorphism and classification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor {0} exceeds the supported bound of 1000000")]
    ConductorOverflow(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("matrix has odd dimension")]
    OddDimension,
    #[error("order mismatch: {0}")]
    OrderMismatch(String),
    #[error("order exceeds bound {0}")]
    OrderExceedsBound(u64),
    #[error("unsupported parameter: {0}")]
    UnsupportedParam(String),
    #[error("algebra mismatch")]
    AlgebraMismatch,
    #[error("element is not in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("not an involution")]
    NotInvolution,
    #[error("exceptional algebras carry no matrix model")]
    UnsupportedExceptional,
    #[error("automorphisms do not commute")]
    NonCommuting,
    #[error("no signature rule: {0}")]
    NoSignatureRule(String),
    #[error("twist mismatch: {0}")]
    TwistMismatch(String),
    #[error("periodicity violated: {0}")]
    PeriodicityViolation(String),
    #[error("scaling with epsilon = 1 and s != 1 has infinite order")]
    InfiniteOrderScaling,
    #[error("automorphism does not have finite order: {0}")]
    NotFiniteOrder(String),
    #[error("wrong kind: {0}")]
    WrongKind(String),
    #[error("unclassifiable: {0}")]
    Unclassifiable(String),
    #[error("scaling is not extendable to the affine algebra")]
    ScalingNotExtendable,
    #[error("invalid k = {0}")]
    InvalidK(u32),
    #[error("algebra is described by static data only")]
    StaticOnlyAlgebra,
    #[error("unsupported order {0}")]
    UnsupportedOrder(u64),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("not in compact mode")]
    NotCompactMode,
    #[error("not semisimple with eigenvalues in iQ: {0}")]
    NotDiagonalizable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
