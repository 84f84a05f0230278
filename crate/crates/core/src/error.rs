use alloc::string::String;
use alloc::vec::Vec;

use crate::instance::InstanceError;

/// Errors raised by the solvers, graph routines and oracles.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("precedence graph has a cycle through job {job}")]
    Cycle { job: usize },
    #[error("infeasible deadline: M = {deadline} is below the critical path length {critical}")]
    InfeasibleDeadline { deadline: u64, critical: u64 },
    #[error("schedule has {got} entries but the instance has {expected} jobs")]
    LengthMismatch { expected: usize, got: usize },
    #[error("instance is not in the problem class: {0}")]
    WrongClass(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("infeasible instance: {0}")]
    Infeasible(String),
    #[error("job {job} has overlapping or empty execution intervals")]
    MalformedIntervals { job: usize },
    #[error("flow of value {required} is unreachable (max {achieved}); source side of the cut: {source_side:?}")]
    FlowInfeasible {
        required: u64,
        achieved: u64,
        source_side: Vec<usize>,
    },
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("search space of {size} states exceeds the limit of {limit}")]
    SearchSpaceTooLarge { size: u128, limit: u128 },
}

pub type Result<T> = core::result::Result<T, Error>;
