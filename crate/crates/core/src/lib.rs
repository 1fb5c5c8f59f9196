//! Finite partially ordered sets and three algebraic pipelines built on them:
//! intersection semilattices of rational hyperplane arrangements, lcm-lattices
//! of monomial ideals, and Hibi ideals of posets.
//!
//! All arithmetic is exact. Posets keep their elements sorted by label, so
//! every listing the crate produces is reproducible.

pub mod arrangement;
pub mod error;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod matching;
pub mod monomial;
pub mod order;
pub mod poset;

pub use error::{Error, Result};
pub use poset::{CoverRelation, Label, Poset};
