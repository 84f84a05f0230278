//! Exact algorithms for single-resource leveling problems where the
//! objective is the amount of work that fits under a resource level `L`:
//!
//! ```text
//! F(x) = sum over time steps t of min(L, r_t(x))
//! ```
//!
//! The crate is `no_std` (it needs `alloc`). File formats, random instance
//! generation and the command-line front end live in the `leveling-cli`
//! crate.
//!
//! Module map:
//!
//! - [`instance`], [`schedule`], [`preemptive`]: the data model and objective.
//! - [`graph`]: reachability, critical paths, latest start times and the
//!   independence graphs between jobs.
//! - [`matching`]: bipartite and general (blossom) maximum matchings.
//! - [`two_proc`]: Coffman-Graham two-machine scheduling.
//! - [`l2prec`]: the matching-based solver for `L = 2`, unit jobs and
//!   precedence constraints, with its schedule transformations.
//! - [`special`]: in-tree leveling, `L = 1` sequencing, the `L = 2`
//!   subset-sum dynamic program and two trivial cases.
//! - [`flow`], [`lp`], [`pmtn`]: preemptive problems with release and due
//!   dates, solved by min-cost flow or an exact rational simplex.
//! - [`reductions`]: instance transformers from machine scheduling.
//! - [`oracle`]: brute-force optimizers used as ground truth.
#![no_std]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod bitset;
mod error;

pub mod flow;
pub mod graph;
pub mod instance;
pub mod l2prec;
pub mod lp;
pub mod matching;
pub mod oracle;
pub mod pmtn;
pub mod preemptive;
pub mod reductions;
pub mod schedule;
pub mod special;
pub mod two_proc;

pub use error::{Error, Result};
pub use instance::{Instance, InstanceError};
pub use preemptive::{Interval, PreemptiveSchedule, Rational};
pub use schedule::{check_feasible, check_feasible_with_deadline, evaluate_f, ResourceProfile, Schedule, Violation};
