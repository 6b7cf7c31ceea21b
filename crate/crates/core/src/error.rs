use thiserror::Error;

/// Errors across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension exponent d={0} outside supported range [{1}, {2}]")]
    SizeRange(u32, u32, u32),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("not a member of {0}")]
    Membership(String),
    #[error("zero word has no level")]
    ZeroWord,
    #[error("zero vector has no level or top")]
    ZeroVector,
    #[error("word is not a union of cosets of the subspace")]
    Saturation,
    #[error("operands come from different ambient spaces")]
    MixedAmbient,
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("lattice is not integral")]
    NonIntegral,
    #[error("result is not representable over Z[1/2]")]
    NonDyadic,
    #[error("lattice is not invariant under the isometry")]
    NotInvariant,
    #[error("isometry is not an involution")]
    NotInvolution,
    #[error("isometry is not a fourvolution")]
    NotFourvolution,
    #[error("isometries do not commute")]
    NotCommuting,
    #[error("pair does not generate a dihedral group of order 8 with central -1")]
    GroupShape,
    #[error("enumeration budget exhausted after {nodes} nodes")]
    Budget { nodes: u64 },
    #[error("internal consistency failure: {0}")]
    Construction(String),
    #[error("search failed: {0}")]
    SearchFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
