//! Commuting algebras of finite quivers.
//!
//! For a finite quiver `Q`, the commuting algebra `KQ/C` is the path algebra
//! modulo the ideal generated by all differences of parallel paths. This crate
//! builds it as an explicit block-matrix algebra, extracts its basic skeleton
//! as the incidence algebra of the poset of path-connected components,
//! computes global dimensions from minimal projective resolutions, and checks
//! the Hom-space dimensions against a brute-force truncated quotient.

pub mod algebra;
pub mod dsl;
pub mod field;
pub mod graph;
pub mod homology;
pub mod linalg;
pub mod oracle;
pub mod quiver;
pub mod random;
pub mod report;
pub mod skeleton;

pub use algebra::{commuting_algebra, commuting_algebra_over, CommutingAlgebra};
pub use dsl::{emit_dsl, parse_quiver, to_dot};
pub use field::{Field, Scalar};
pub use quiver::{Path, Quiver, VertexId};
pub use skeleton::{skeleton, Poset, Skeleton};
