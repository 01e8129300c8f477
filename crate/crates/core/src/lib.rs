//! Exact symbolic computation with differential graded quiver algebras.
//!
//! Paths compose in function order: the path `a1 a2 ... al` applies `al`
//! first, so its source is `s(al)` and its target is `t(a1)`. All scalars are
//! exact rationals.

pub mod cli;
pub mod constructions;
pub mod dg;
pub mod dot;
pub mod dsl;
pub mod element;
pub mod error;
pub mod homology;
pub mod leavitt;
pub mod linalg;
pub mod quiver;
pub mod quotients;
pub mod scalar;

pub use constructions::{AlgebraPresentation, DeformationParameter, Relation};
pub use dg::DgQuiverAlgebra;
pub use element::{PathElement, Potential};
pub use error::{Error, Result};
pub use quiver::{ArrowId, GradedQuiver, Path, PathFilter, Quiver, VertexId};
pub use scalar::Scalar;
