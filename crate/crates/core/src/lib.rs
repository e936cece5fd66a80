//! Exact computation over set-function valuations on small ground sets.
//!
//! Values are exact rationals and every valuation is a full table over the
//! `2^m` subsets. The crate checks class membership (gross substitutes,
//! submodular, XOS and others), applies GS-preserving transforms, builds the
//! standard budget-additive and threshold constructions, and certifies
//! approximation gaps with an exact LP branch-and-prune search.

pub mod analysis;
pub mod certify;
pub mod classes;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod lp;
pub mod rational;
pub mod setfn;
pub mod transforms;

pub use error::{Error, Result};
pub use rational::Rational;
pub use setfn::{SetFunction, Subset, SymmetryPartition};
