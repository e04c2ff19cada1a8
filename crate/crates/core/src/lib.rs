//! Lattices of invariant monomials for finite abelian groups: exact degree
//! bounds, successive minima and short bases, and rank-two geometry.

pub mod ball;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod geomnum;
mod hnf;
pub mod lattice;
pub mod linalg;
pub mod rank2;
pub mod sample;

pub use ball::Orthant;
pub use bounds::{BoundKind, CancelToken, DegreeBoundReport, SearchOptions};
pub use error::{GeomError, LatticeError, SearchError};
pub use lattice::{CongruenceSystem, CosetLabel, LatticeBasis, LatticeVector};
