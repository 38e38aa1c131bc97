//! Combinatorics of triangulations of even-dimensional cyclic polytopes and
//! the associated tilting calculus.
//!
//! The cyclic polytope `C(m, 2d)` is the convex hull of `m` points on the
//! moment curve in dimension `2d`. Its triangulations are completely encoded
//! by their sets of internal `d`-simplices, which are in turn recorded as
//! separated increasing `(d+1)`-tuples of vertex labels. This crate builds
//! that calculus end to end:
//!
//! * the tuple calculus (separation, interiority, interleaving, suspension,
//!   the exchange index maps) — [`combinatorics`]
//! * an exact-arithmetic oracle for moment-curve geometry — [`geometry`]
//! * triangulations, the even-face invariant `e(S)`, reconstruction from
//!   `d`-faces, contraction/deletion and exhaustive enumeration —
//!   [`triangulation`]
//! * bistellar flips and flip graphs — [`mutation`]
//! * summand indexing, Hom/Ext predicates, `τ_d` and exchange sequences for
//!   the higher Auslander algebras of linearly oriented type A — [`reptheory`]
//! * the index model of the associated `(d+2)`-angulated cluster category —
//!   [`cluster`]
//! * tropical exchange relations on generalized laminations — [`tropical`]
//! * the simplicial complex of pairwise non-crossing internal simplices and
//!   the search for non-extendable maximal rigid sets — [`complex`]
//!
//! Vertex labels are 1-based everywhere, including in serialized forms.

pub mod cluster;
pub mod combinatorics;
pub mod complex;
mod error;
pub mod geometry;
pub mod mutation;
pub mod reptheory;
pub mod triangulation;
pub mod tropical;
pub mod verify;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// A 1-based vertex label on the moment curve.
pub type Label = u32;

/// The concrete exact scalar: arbitrary-precision rationals. The geometric
/// oracle and the lamination layer are generic over [`geometry::Scalar`];
/// this is the instantiation used throughout the crate. No floating point is
/// used anywhere: moment-curve linear algebra is far too ill-conditioned for
/// that.
pub type Rat = num_rational::BigRational;

/// Default node budget for backtracking searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
