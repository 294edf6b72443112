//! Exact-arithmetic analysis of configurations of distinct lines in the
//! projective plane.
//!
//! Starting from integer line coefficients, the engine computes the
//! intersection lattice with its Möbius data, the Poincaré polynomial, the
//! graded module of derivations annihilating the Jacobian ideal together
//! with its minimal free resolution and regularity, the Chern data and
//! stability of the associated rank-two bundle, splitting types and jump
//! lines, and a combinatorial constraint pipeline that can certify freeness
//! for a whole lattice class. All arithmetic is over the rationals; nothing
//! is ever rounded.

pub mod arrangement;
pub mod bundle;
pub mod derivations;
mod error;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod report;
pub mod terao;

pub use arrangement::{Arrangement, Line, PoincareData, Point, SingularPoint, TripleData};
pub use derivations::{
    DeletionReport, DerivationModule, FreenessReport, GradedPiece, JacobianData, PolyVec,
    Resolution,
};
pub use error::{Error, Result};
