use thiserror::Error;

use crate::bounds::BoundKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("invalid congruence system: {0}")]
    InvalidSystem(String),
    #[error("invalid lattice basis: {0}")]
    InvalidBasis(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("every character is trivial or duplicated away; no coordinates remain")]
    AllColumnsRemoved,
    #[error("value does not fit in 64 bits")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{which} search exceeded radius cap {cap}")]
    CapExceeded { which: BoundKind, cap: u64 },
    #[error("search cancelled")]
    Cancelled,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("input vectors are linearly dependent")]
    DependentInput,
    #[error("no lattice point solves the determinant equation")]
    NoSolution,
    #[error("pair ({0}, {1}) does not give e_i + e_j in the lattice")]
    PairNotInLattice(usize, usize),
    #[error("pairs do not partition the coordinates")]
    PairsNotAPartition,
    #[error("expected a rank-2 lattice, got dimension {0}")]
    NotRankTwo(usize),
    #[error("invalid staircase input: {0}")]
    InvalidStaircase(String),
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Search(#[from] SearchError),
}
