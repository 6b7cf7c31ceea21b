//! Exact-arithmetic toolkit for Barnes-Wall lattices, Reed-Muller codes,
//! and the cousin lattices built from commuting involution/fourvolution
//! pairs acting on them.
//!
//! Everything numerical is exact: scalars are dyadic rationals, lattice
//! bases are canonical Hermite forms, and enumeration decisions are made in
//! rational arithmetic.  Claims about ranks, determinants, parity, minimum
//! norms, Jordan numbers, discriminant groups and orthogonal decompositions
//! are therefore verifications, not estimates.

pub mod barneswall;
pub mod codes;
pub mod decompose;
pub mod dyadic;
pub mod enumerate;
pub mod error;
pub mod gram_iso;
pub mod isometry;
pub mod lattice;
pub mod matrix;
pub mod reduction;
pub mod vector;

pub use barneswall::{BarnesWall, EigenData};
pub use decompose::{decompose, Decomposition};
pub use gram_iso::{gram_isometric, IsometryOutcome};
pub use codes::{AffineSubspace, BitWord, Code, CubiDecomposition, RmFamily};
pub use dyadic::Dyadic;
pub use enumerate::{enumerate_short, min_norm, theta_series, EnumerationOptions, ShortVectors, ThetaSeries};
pub use error::{Error, Result};
pub use isometry::{jordan_number, standard_pair, FourvolutionSpec, InvolutionSpec, MonomialIsometry};
pub use lattice::{GramJson, Lattice, LatticeJson};
pub use matrix::IntMatrix;
pub use vector::{AmbientSpace, DyadicVector};
