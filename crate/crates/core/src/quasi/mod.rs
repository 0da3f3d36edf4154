//! Quasi-probability engine: each CNOT becomes one of three local
//! operations with weights +1, +1, −1, and trajectories stay product states.

pub mod enumerate;
pub mod ops;
pub mod product;
pub mod sample;
pub mod sequence;
pub mod trajectory;

pub use enumerate::{enumerate, EnumerateOptions, Enumeration, SequenceRow, DEFAULT_BUDGET};
pub use ops::{decompose_cnot, signed_decomposition_channel, BranchRule, LocalBranch, LocalOperation, OpKind};
pub use product::ProductState;
pub use sample::{run_trajectory, sample, trajectory_rng, QuasiEstimate, TrajectoryRecord};
pub use sequence::{amplification, overhead_ratio, sequence_census, sequence_sign, SequenceChoice};
pub use trajectory::{apply_local_op, branch_weights, expand_branches};
