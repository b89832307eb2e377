//! Finite permutation groups with full element enumeration, the subgroup
//! embedding properties used in p-supersolvability criteria, and a checker
//! that evaluates those criteria (hypotheses and conclusion) over catalogs
//! of small groups.

pub mod arith;
pub mod catalog;
pub mod classes;
pub mod embeddings;
pub mod error;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod report;
pub mod scan;
pub mod structure;
pub mod subgroup;
pub mod theorems;

pub use error::{GroupError, Result};
pub use group::{generate_group, Group, Limits};
pub use perm::Permutation;
pub use subgroup::{ElementSet, Subgroup};
