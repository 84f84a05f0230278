//! Two identical machines, unit jobs, precedence constraints: Coffman-Graham
//! list scheduling, plus the matching value certificate `|J| - m*`.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{transitive_closure, IndependenceGraph, Reachability};
use crate::matching::max_matching_general;
use crate::{Error, Instance, Result, Schedule};

/// Coffman-Graham labels for `jobs` (positions into `jobs`), 1-based.
fn coffman_graham_labels(succ: &[Vec<usize>]) -> Vec<usize> {
    let k = succ.len();
    let mut label = vec![0usize; k];
    for next in 1..=k {
        let mut best: Option<(Vec<usize>, usize)> = None;
        for v in 0..k {
            if label[v] != 0 || succ[v].iter().any(|&w| label[w] == 0) {
                continue;
            }
            let mut key: Vec<usize> = succ[v].iter().map(|&w| label[w]).collect();
            key.sort_unstable_by(|a, b| b.cmp(a));
            if best.as_ref().is_none_or(|(bk, _)| key < *bk) {
                best = Some((key, v));
            }
        }
        let (_, v) = best.expect("acyclic relation always has a labelable job");
        label[v] = next;
    }
    label
}

/// Schedules `jobs` on two machines with the Coffman-Graham priority list.
/// Returns the step of each job of `jobs`, in the same order, starting at 0.
/// Precedence is the one of `reach` restricted to `jobs`.
pub fn coffman_graham(reach: &Reachability, jobs: &[usize]) -> Vec<u64> {
    let k = jobs.len();
    let succ = reach.reduced_successors(jobs);
    let label = coffman_graham_labels(&succ);
    let mut pending_preds = vec![0usize; k];
    for s in &succ {
        for &w in s {
            pending_preds[w] += 1;
        }
    }
    let mut step = vec![u64::MAX; k];
    let mut done = 0;
    let mut t = 0u64;
    while done < k {
        let mut ready: Vec<usize> = (0..k).filter(|&v| step[v] == u64::MAX && pending_preds[v] == 0).collect();
        ready.sort_unstable_by(|&a, &b| label[b].cmp(&label[a]));
        ready.truncate(2);
        for &v in &ready {
            step[v] = t;
        }
        for &v in &ready {
            for &w in &succ[v] {
                pending_preds[w] -= 1;
            }
        }
        done += ready.len();
        t += 1;
    }
    step
}

/// Coffman-Graham schedule of a whole unit-job instance.
pub fn coffman_graham_schedule(instance: &Instance) -> Result<Schedule> {
    require_uet(instance)?;
    let reach = transitive_closure(instance)?;
    let all: Vec<usize> = (0..instance.job_count()).collect();
    Ok(Schedule::new(coffman_graham(&reach, &all)))
}

/// Minimum two-machine makespan `|J| - m*`, with `m*` the maximum matching
/// of the independence graph.
pub fn fujii_min_makespan(instance: &Instance) -> Result<u64> {
    require_uet(instance)?;
    let reach = transitive_closure(instance)?;
    let m = max_matching_general(IndependenceGraph::from_reachability(&reach).graph()).size();
    Ok((instance.job_count() - m) as u64)
}

/// Repacks `jobs` two per step from `window_start` on, respecting their
/// internal precedence. Returns `(job, start)` pairs in `jobs` order.
pub fn two_machine_reschedule(reach: &Reachability, jobs: &[usize], window_start: u64) -> Vec<(usize, u64)> {
    coffman_graham(reach, jobs)
        .into_iter()
        .zip(jobs)
        .map(|(s, &j)| (j, window_start + s))
        .collect()
}

fn require_uet(instance: &Instance) -> Result<()> {
    if !instance.is_uet() {
        return Err(Error::WrongClass("two-machine scheduling needs unit durations".into()));
    }
    Ok(())
}
