//! Exact combinatorial and topological invariants of finite affine plane
//! arrangements over Q and Q(i).
//!
//! The main entry points:
//!
//! * [`arrangement`]: arrangements, intersection posets, Möbius values and
//!   the usual classification predicates.
//! * [`gm`]: the Goresky–MacPherson decomposition of the cohomology of the
//!   complement, and the shuffle product on its associated graded ring.
//! * [`os`]: the Orlik–Solomon algebra, an independent route to the same
//!   Betti numbers for complex hyperplane arrangements.
//! * [`real`]: regions, bounded regions, Salvetti cell censuses.
//! * [`twisted`], [`matroid`], [`complexes`], [`homology`].
//!
//! All arithmetic is exact.

pub mod arrangement;
pub mod complexes;
mod error;
pub mod gm;
pub mod homology;
pub mod linalg;
pub mod matroid;
pub mod os;
pub mod par;
pub mod real;
pub mod twisted;

pub use error::{Error, Result};
pub use par::{ComputeOptions, Execution};
