//! Stable branching multiplicities for the classical symmetric pairs,
//! computed from Littlewood-Richardson coefficients, with an independent
//! character-theoretic oracle to check them against.

pub mod branching;
pub mod error;
pub mod lr;
pub mod oracle;
pub mod partition;
pub mod verify;

pub use branching::{
    branch_decompose, branch_decompose_run, littlewood_restriction, multiplicity, multiplicity_unchecked, validate_stable_range,
    BranchingQuery, Decomposition, Family, Label, Pair, PairKind, Ranks, RepLabel,
};
pub use error::{Error, Result};
pub use lr::{lr_coeff, skew_expand, tensor_expand, ExpansionMap, LrEngine};
pub use partition::{parse_partition, GlLabel, Partition};
