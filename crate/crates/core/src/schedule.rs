//! Integer schedules, resource profiles and the objective `F`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Instance, Result};

/// Integer start time per job.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Schedule {
    starts: Vec<u64>,
}

impl Schedule {
    pub fn new(starts: Vec<u64>) -> Self {
        Schedule { starts }
    }

    pub fn starts(&self) -> &[u64] {
        &self.starts
    }

    #[inline]
    pub fn start(&self, job: usize) -> u64 {
        self.starts[job]
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    pub fn into_starts(self) -> Vec<u64> {
        self.starts
    }

    /// Latest finish time, 0 for an empty schedule.
    pub fn makespan(&self, instance: &Instance) -> u64 {
        self.starts
            .iter()
            .enumerate()
            .map(|(i, &s)| s + instance.duration(i))
            .max()
            .unwrap_or(0)
    }

    /// Jobs grouped by start time, for schedules of unit jobs. Entry `t`
    /// holds the jobs starting at `t` in increasing index order.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let len = self.starts.iter().max().map_or(0, |&m| m as usize + 1);
        let mut cols = vec![Vec::new(); len];
        for (i, &s) in self.starts.iter().enumerate() {
            cols[s as usize].push(i);
        }
        cols
    }
}

impl From<Vec<u64>> for Schedule {
    fn from(starts: Vec<u64>) -> Self {
        Schedule::new(starts)
    }
}

/// Resource usage `r_t(x)` per integer time step, over `[0, makespan)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceProfile {
    usage: Vec<u64>,
}

impl ResourceProfile {
    pub fn of(instance: &Instance, schedule: &Schedule) -> Result<Self> {
        check_len(instance, schedule)?;
        let horizon = schedule.makespan(instance) as usize;
        // difference array over the horizon
        let mut diff = vec![0i128; horizon + 1];
        for i in 0..instance.job_count() {
            let s = schedule.start(i) as usize;
            let e = s + instance.duration(i) as usize;
            diff[s] += instance.consumption(i) as i128;
            diff[e] -= instance.consumption(i) as i128;
        }
        let mut usage = Vec::with_capacity(horizon);
        let mut acc = 0i128;
        for d in &diff[..horizon] {
            acc += d;
            usage.push(acc as u64);
        }
        Ok(ResourceProfile { usage })
    }

    /// Usage at step `t`; zero outside the horizon.
    pub fn at(&self, t: u64) -> u64 {
        self.usage.get(t as usize).copied().unwrap_or(0)
    }

    pub fn usage(&self) -> &[u64] {
        &self.usage
    }

    /// Work under `level`: the sum of `min(level, r_t)`.
    pub fn under_level(&self, level: u64) -> u64 {
        self.usage.iter().map(|&u| u.min(level)).sum()
    }

    /// Total overload cost: the sum of `max(0, r_t - level)`.
    pub fn overload(&self, level: u64) -> u64 {
        self.usage.iter().map(|&u| u.saturating_sub(level)).sum()
    }
}

fn check_len(instance: &Instance, schedule: &Schedule) -> Result<()> {
    if schedule.len() != instance.job_count() {
        return Err(Error::LengthMismatch {
            expected: instance.job_count(),
            got: schedule.len(),
        });
    }
    Ok(())
}

/// Objective `F(x)`: resource use that fits under the instance's level,
/// summed over `[0, makespan)`. Defined for infeasible schedules too.
pub fn evaluate_f(instance: &Instance, schedule: &Schedule) -> Result<u64> {
    Ok(ResourceProfile::of(instance, schedule)?.under_level(instance.level()))
}

/// A broken schedule constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    LengthMismatch { expected: usize, got: usize },
    Precedence { before: usize, after: usize },
    Deadline { job: usize },
    Release { job: usize },
    Due { job: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LengthMismatch { expected, got } => {
                write!(f, "schedule has {got} start times, expected {expected}")
            }
            Violation::Precedence { before, after } => {
                write!(f, "precedence({before},{after}): job {after} starts before {before} finishes")
            }
            Violation::Deadline { job } => write!(f, "deadline({job}): job finishes after M"),
            Violation::Release { job } => write!(f, "release({job}): job starts before its release date"),
            Violation::Due { job } => write!(f, "due({job}): job finishes after its due date"),
        }
    }
}

/// Every violated constraint of `schedule`; empty iff it is feasible.
/// The makespan deadline checked is the instance's own `M`, if any.
pub fn check_feasible(instance: &Instance, schedule: &Schedule) -> Vec<Violation> {
    check_feasible_with_deadline(instance, schedule, instance.deadline())
}

/// Like [`check_feasible`], with an explicit deadline overriding the
/// instance's.
pub fn check_feasible_with_deadline(
    instance: &Instance,
    schedule: &Schedule,
    deadline: Option<u64>,
) -> Vec<Violation> {
    if schedule.len() != instance.job_count() {
        return vec![Violation::LengthMismatch {
            expected: instance.job_count(),
            got: schedule.len(),
        }];
    }
    let mut out = Vec::new();
    let finish = |i: usize| schedule.start(i) + instance.duration(i);
    for &(a, b) in instance.arcs() {
        if finish(a) > schedule.start(b) {
            out.push(Violation::Precedence { before: a, after: b });
        }
    }
    for i in 0..instance.job_count() {
        if let Some(m) = deadline {
            if finish(i) > m {
                out.push(Violation::Deadline { job: i });
            }
        }
        if schedule.start(i) < instance.release_of(i) {
            out.push(Violation::Release { job: i });
        }
        if let Some(d) = instance.due_of(i) {
            if finish(i) > d {
                out.push(Violation::Due { job: i });
            }
        }
    }
    out
}

/// Removes empty time steps before the makespan of a unit-job schedule,
/// preserving the relative order of the occupied steps.
pub fn compact(schedule: &Schedule) -> Schedule {
    let mut times: Vec<u64> = schedule.starts().to_vec();
    times.sort_unstable();
    times.dedup();
    Schedule::new(
        schedule
            .starts()
            .iter()
            .map(|s| times.binary_search(s).unwrap_or(0) as u64)
            .collect(),
    )
}
