//! Instance transformations from machine scheduling and between leveling
//! variants.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Instance, Result, Schedule};

/// A `Pk | beta | C_max` instance: durations plus optional precedence arcs
/// and release/due dates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MachineInstance {
    pub durations: Vec<u64>,
    pub arcs: Vec<(usize, usize)>,
    pub release: Option<Vec<u64>>,
    pub due: Option<Vec<u64>>,
}

impl MachineInstance {
    pub fn new(durations: Vec<u64>) -> Self {
        MachineInstance {
            durations,
            ..Default::default()
        }
    }
}

/// Same jobs and constraints with `L = k`, `c_i = 1` and deadline `M`.
pub fn machine_to_leveling(machine: &MachineInstance, k: u64, deadline: u64) -> Result<Instance> {
    let n = machine.durations.len();
    Ok(Instance::new(machine.durations.clone(), vec![1; n], k)?
        .with_arcs(machine.arcs.clone())?
        .with_release(machine.release.clone())?
        .with_due(machine.due.clone())?
        .with_deadline(Some(deadline))?)
}

/// Splits the jobs of a schedule with `F = sum p_i` onto `k` machines by
/// taking jobs in start order and giving each to the machine that frees up
/// first (smallest index on ties). Fails if a job would overlap the last job
/// of its machine, which happens exactly when `F < sum p_i`.
pub fn least_loaded_partition(instance: &Instance, x: &Schedule, k: usize) -> Result<Vec<usize>> {
    if k == 0 {
        return Err(Error::Precondition("need at least one machine".into()));
    }
    let mut order: Vec<usize> = (0..instance.job_count()).collect();
    order.sort_by_key(|&i| (x.start(i), i));
    let mut free_at = vec![0u64; k];
    let mut machine = vec![0usize; instance.job_count()];
    for i in order {
        let l = (0..k).min_by_key(|&l| (free_at[l], l)).expect("k >= 1");
        if free_at[l] > x.start(i) {
            return Err(Error::Precondition(format!(
                "job {i} overlaps {k} running jobs; the schedule does not keep all work under the level"
            )));
        }
        machine[i] = l;
        free_at[l] = x.start(i) + instance.duration(i);
    }
    Ok(machine)
}

/// Windows of every job, defaulting to `[0, M]`.
fn windows_or_default(instance: &Instance, deadline: u64) -> (Vec<u64>, Vec<u64>) {
    let n = instance.job_count();
    let r = (0..n).map(|i| instance.release_of(i)).collect();
    let d = (0..n).map(|i| instance.due_of(i).unwrap_or(deadline)).collect();
    (r, d)
}

fn deadline_of(instance: &Instance) -> Result<u64> {
    instance
        .deadline()
        .ok_or_else(|| Error::Precondition("the instance needs a deadline M".into()))
}

fn check_unit_windows(instance: &Instance, deadline: u64) -> Result<()> {
    if instance.level() != 1 || !instance.has_unit_consumption() {
        return Err(Error::WrongClass("needs level 1 and unit consumptions".into()));
    }
    if let Some(i) = (0..instance.job_count()).find(|&i| instance.due_of(i).is_some_and(|d| d > deadline)) {
        return Err(Error::Precondition(format!("due date of job {i} exceeds M")));
    }
    Ok(())
}

/// Adds a blocker job using one unit over `[0, M]` and raises the level to 2.
pub fn lift_unit_window_to_l2(instance: &Instance) -> Result<Instance> {
    let m = deadline_of(instance)?;
    check_unit_windows(instance, m)?;
    if m == 0 {
        return Err(Error::Precondition("M must be positive".into()));
    }
    let (mut r, mut d) = windows_or_default(instance, m);
    let mut p = instance.durations().to_vec();
    let mut c = instance.consumptions().to_vec();
    p.push(m);
    c.push(1);
    r.push(0);
    d.push(m);
    Ok(Instance::new(p, c, 2)?
        .with_arcs(instance.arcs().to_vec())?
        .with_windows(r, d)?
        .with_deadline(Some(m))?)
}

/// Replaces windows by chains: a zero-consumption guard of length `r_i`
/// before job `i` and one of length `M - d_i` after it. Guards of length 0
/// are omitted. Guards follow the original jobs in index order.
pub fn windows_to_chains(instance: &Instance) -> Result<Instance> {
    let m = deadline_of(instance)?;
    check_unit_windows(instance, m)?;
    let (r, d) = windows_or_default(instance, m);
    let n = instance.job_count();
    let mut p = instance.durations().to_vec();
    let mut c = instance.consumptions().to_vec();
    let mut arcs = instance.arcs().to_vec();
    for i in 0..n {
        if r[i] > 0 {
            p.push(r[i]);
            c.push(0);
            arcs.push((p.len() - 1, i));
        }
        if d[i] < m {
            p.push(m - d[i]);
            c.push(0);
            arcs.push((i, p.len() - 1));
        }
    }
    Ok(Instance::new(p, c, 1)?.with_arcs(arcs)?.with_deadline(Some(m))?)
}
