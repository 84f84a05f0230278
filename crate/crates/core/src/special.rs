//! Non-preemptive special cases: in-tree UET leveling, `L = 1` sequencing,
//! the `L = 2` subset-sum dynamic program and two trivial cases.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitRow;
use crate::graph::{is_in_tree, latest_start_times, topological_order};
use crate::{Error, Instance, Result, Schedule};

/// Hu-style list scheduling for in-trees: up to `L` available jobs with the
/// smallest latest start per step, plus every job reaching its latest start.
pub fn uet_in_tree_leveling(instance: &Instance, deadline: u64) -> Result<Schedule> {
    if !instance.is_uet() || !instance.has_unit_consumption() {
        return Err(Error::WrongClass("in-tree leveling needs unit durations and consumptions".into()));
    }
    if !is_in_tree(instance) {
        return Err(Error::WrongClass("precedence graph is not an in-tree".into()));
    }
    let n = instance.job_count();
    let lst = latest_start_times(instance, deadline)?;
    let succ = instance.successors();
    let mut pending = vec![0usize; n];
    for &(_, b) in instance.arcs() {
        pending[b] += 1;
    }
    let level = instance.level() as usize;
    let mut x = vec![u64::MAX; n];
    let mut left = n;
    for tau in 0..deadline {
        if left == 0 {
            break;
        }
        let mut leaves: Vec<usize> = (0..n).filter(|&i| x[i] == u64::MAX && pending[i] == 0).collect();
        leaves.sort_by_key(|&i| (lst.get(i), i));
        let mut step: Vec<usize> = leaves.iter().copied().take(level).collect();
        step.extend(leaves.iter().skip(level).copied().filter(|&i| lst.get(i) == tau));
        for &i in &step {
            x[i] = tau;
            left -= 1;
        }
        for &i in &step {
            for &w in &succ[i] {
                pending[w] -= 1;
            }
        }
    }
    if left > 0 {
        return Err(Error::Invariant("in-tree leveling left jobs unscheduled".into()));
    }
    Ok(Schedule::new(x))
}

/// Checks the structure of an in-tree leveling schedule: at every step
/// holding more than `L` jobs, all of them sit at their latest start, every
/// earlier step holds at least `L` jobs, and no job up to that step has a
/// later latest start.
pub fn in_tree_structure_holds(instance: &Instance, x: &Schedule, deadline: u64) -> Result<bool> {
    let lst = latest_start_times(instance, deadline)?;
    let cols = x.columns();
    let level = instance.level() as usize;
    for (tau, col) in cols.iter().enumerate() {
        if col.len() <= level {
            continue;
        }
        let t = tau as u64;
        if col.iter().any(|&i| lst.get(i) != t) {
            return Ok(false);
        }
        for c in &cols[..=tau] {
            if c.len() < level || c.iter().any(|&i| lst.get(i) > t) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `L = 1` with positive consumptions: jobs in topological order, each at
/// the smaller of the running work total and its latest start.
pub fn unit_resource_leveling(instance: &Instance, deadline: u64) -> Result<Schedule> {
    if instance.level() != 1 || instance.consumptions().contains(&0) {
        return Err(Error::WrongClass("needs level 1 and positive consumptions".into()));
    }
    let lst = latest_start_times(instance, deadline)?;
    let mut x = vec![0u64; instance.job_count()];
    let mut total = 0u64;
    for i in topological_order(instance)? {
        x[i] = total.min(lst.get(i));
        total += instance.duration(i);
    }
    Ok(Schedule::new(x))
}

/// Subset-sum table over the durations of `J_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    rows: Vec<BitRow>,
    width: usize,
}

impl DpTable {
    pub fn new(durations: &[u64]) -> Self {
        let width = durations.iter().sum::<u64>() as usize + 1;
        let mut rows = Vec::with_capacity(durations.len() + 1);
        let mut first = BitRow::new(width);
        first.set(0);
        rows.push(first);
        for &p in durations {
            let prev = rows.last().expect("non-empty");
            let mut row = prev.clone();
            for b in prev.ones() {
                row.set(b + p as usize);
            }
            rows.push(row);
        }
        DpTable { rows, width }
    }

    /// Some subset of the first `k` jobs sums to `b`.
    pub fn reachable(&self, k: usize, b: u64) -> bool {
        (b as usize) < self.width && self.rows[k].get(b as usize)
    }

    pub fn job_count(&self) -> usize {
        self.rows.len() - 1
    }

    /// Reachable sums using all jobs, ascending.
    pub fn sums(&self) -> Vec<u64> {
        self.rows[self.job_count()].ones().map(|b| b as u64).collect()
    }

    /// Positions of a subset summing to `b`, walking backward and leaving a
    /// job out whenever the earlier jobs reach the remaining sum.
    pub fn witness(&self, b: u64, durations: &[u64]) -> Option<Vec<usize>> {
        if !self.reachable(self.job_count(), b) {
            return None;
        }
        let mut rest = b;
        let mut picked = Vec::new();
        for k in (1..=self.job_count()).rev() {
            if self.reachable(k - 1, rest) {
                continue;
            }
            picked.push(k - 1);
            rest -= durations[k - 1];
        }
        picked.reverse();
        Some(picked)
    }
}

/// Jobs split by clamped consumption: 1 into `j1`, 2 or more into `j2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSets {
    pub j1: Vec<usize>,
    pub j2: Vec<usize>,
    pub p_j1: u64,
    pub p_j2: u64,
}

pub fn split_sets(instance: &Instance) -> SplitSets {
    let pick = |pred: fn(u64) -> bool| -> Vec<usize> {
        (0..instance.job_count()).filter(|&i| pred(instance.consumption(i))).collect()
    };
    let j1 = pick(|c| c == 1);
    let j2 = pick(|c| c >= 2);
    let sum = |v: &[usize]| v.iter().map(|&i| instance.duration(i)).sum();
    SplitSets {
        p_j1: sum(&j1),
        p_j2: sum(&j2),
        j1,
        j2,
    }
}

/// Places `jobs` back to back from `start`; from the first one that would
/// pass `deadline`, every remaining job is placed at `deadline - p_i`.
fn chain_then_latest(instance: &Instance, jobs: &[usize], start: u64, deadline: u64, x: &mut [u64]) {
    let mut t = start;
    let mut packing = true;
    for &i in jobs {
        let p = instance.duration(i);
        if packing && t + p <= deadline {
            x[i] = t;
            t += p;
        } else {
            packing = false;
            x[i] = deadline - p;
        }
    }
}

fn check_fits(instance: &Instance, deadline: u64) -> Result<()> {
    if let Some(i) = (0..instance.job_count()).find(|&i| instance.duration(i) > deadline) {
        return Err(Error::Infeasible(format!(
            "job {i} has duration {} > M = {deadline}",
            instance.duration(i)
        )));
    }
    Ok(())
}

/// `L = 2` without precedence or dates. Returns the optimum and a schedule
/// attaining it.
pub fn dp_l2_cmax(instance: &Instance, deadline: u64) -> Result<(u64, Schedule)> {
    if instance.level() != 2 || instance.has_precedence() || instance.has_dates() {
        return Err(Error::WrongClass("needs level 2 and no precedence or dates".into()));
    }
    check_fits(instance, deadline)?;
    let sets = split_sets(instance);
    let mut x = vec![0u64; instance.job_count()];
    if sets.p_j2 >= deadline {
        chain_then_latest(instance, &sets.j2, 0, deadline, &mut x);
        return Ok((2 * deadline, Schedule::new(x)));
    }
    let lane = deadline - sets.p_j2;
    let durations: Vec<u64> = sets.j1.iter().map(|&i| instance.duration(i)).collect();
    let table = DpTable::new(&durations);
    let value = |b: u64| b.min(lane) + (sets.p_j1 - b).min(lane);
    let mut best = 0;
    for b in table.sums() {
        if value(b) > value(best) {
            best = b;
        }
    }
    let picked = table.witness(best, &durations).expect("best sum is reachable");
    let mut in_first = vec![false; sets.j1.len()];
    for &k in &picked {
        in_first[k] = true;
    }
    let first: Vec<usize> = (0..sets.j1.len()).filter(|&k| in_first[k]).map(|k| sets.j1[k]).collect();
    let second: Vec<usize> = (0..sets.j1.len()).filter(|&k| !in_first[k]).map(|k| sets.j1[k]).collect();
    chain_then_latest(instance, &sets.j2, 0, deadline, &mut x);
    chain_then_latest(instance, &first, sets.p_j2, deadline, &mut x);
    chain_then_latest(instance, &second, sets.p_j2, deadline, &mut x);
    Ok((2 * sets.p_j2 + value(best), Schedule::new(x)))
}

/// `L = 1` without precedence or dates: consuming jobs back to back while
/// they fit, the rest at `M - p_i`; non-consuming jobs at 0.
pub fn trivial_l1_cmax(instance: &Instance, deadline: u64) -> Result<Schedule> {
    if instance.level() != 1 || instance.has_precedence() || instance.has_dates() {
        return Err(Error::WrongClass("needs level 1 and no precedence or dates".into()));
    }
    check_fits(instance, deadline)?;
    let jobs: Vec<usize> = (0..instance.job_count()).filter(|&i| instance.consumption(i) > 0).collect();
    let mut x = vec![0u64; instance.job_count()];
    chain_then_latest(instance, &jobs, 0, deadline, &mut x);
    Ok(Schedule::new(x))
}

/// Unit durations and consumptions without precedence or dates: job `i`
/// at step `i mod M`.
pub fn trivial_unit_unit(instance: &Instance, deadline: u64) -> Result<Schedule> {
    if !instance.is_uet() || !instance.has_unit_consumption() || instance.has_precedence() || instance.has_dates() {
        return Err(Error::WrongClass("needs unit jobs without precedence or dates".into()));
    }
    if deadline == 0 && instance.job_count() > 0 {
        return Err(Error::Infeasible("M = 0 leaves no room".into()));
    }
    Ok(Schedule::new((0..instance.job_count() as u64).map(|i| i % deadline.max(1)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{check_feasible, evaluate_f};

    #[test]
    fn in_tree_examples() {
        let chain = Instance::uet(3, 1).unwrap().with_arcs(vec![(0, 1), (1, 2)]).unwrap();
        let x = uet_in_tree_leveling(&chain, 3).unwrap();
        assert_eq!(evaluate_f(&chain, &x).unwrap(), 3);

        let fork = Instance::uet(3, 1).unwrap().with_arcs(vec![(0, 2), (1, 2)]).unwrap();
        let x = uet_in_tree_leveling(&fork, 3).unwrap();
        assert_eq!(x.starts(), &[0, 1, 2]);
        assert_eq!(evaluate_f(&fork, &x).unwrap(), 3);
        let x = uet_in_tree_leveling(&fork, 2).unwrap();
        assert_eq!(x.starts(), &[0, 0, 1]);
        assert_eq!(evaluate_f(&fork, &x).unwrap(), 2);
        assert!(in_tree_structure_holds(&fork, &x, 2).unwrap());
        assert!(uet_in_tree_leveling(&fork, 1).is_err());
    }

    #[test]
    fn out_tree_rejected() {
        let out = Instance::uet(3, 1).unwrap().with_arcs(vec![(0, 1), (0, 2)]).unwrap();
        assert!(matches!(uet_in_tree_leveling(&out, 3), Err(Error::WrongClass(_))));
    }

    #[test]
    fn unit_resource_examples() {
        let two = Instance::new(vec![2, 3], vec![1, 1], 1).unwrap();
        let x = unit_resource_leveling(&two, 10).unwrap();
        assert_eq!(x.starts(), &[0, 2]);
        assert_eq!(evaluate_f(&two, &x).unwrap(), 5);

        let long = Instance::new(vec![4, 4], vec![1, 1], 1).unwrap();
        let x = unit_resource_leveling(&long, 6).unwrap();
        assert_eq!(x.starts(), &[0, 2]);
        assert_eq!(evaluate_f(&long, &x).unwrap(), 6);

        let chain = Instance::uet(2, 1).unwrap().with_arcs(vec![(0, 1)]).unwrap();
        let x = unit_resource_leveling(&chain, 2).unwrap();
        assert_eq!(x.starts(), &[0, 1]);
    }

    #[test]
    fn dp_examples() {
        let inst = Instance::new(vec![3, 3, 2, 1], vec![1, 1, 1, 2], 2).unwrap();
        let (f, x) = dp_l2_cmax(&inst, 5).unwrap();
        assert_eq!(f, 9);
        assert_eq!(evaluate_f(&inst, &x).unwrap(), 9);
        assert!(check_feasible(&inst.clone().with_deadline(Some(5)).unwrap(), &x).is_empty());

        let j2 = Instance::new(vec![3, 4], vec![2, 2], 2).unwrap();
        let (f, x) = dp_l2_cmax(&j2, 5).unwrap();
        assert_eq!(f, 10);
        assert_eq!(evaluate_f(&j2, &x).unwrap(), 10);

        let j1 = Instance::new(vec![2, 2], vec![1, 1], 2).unwrap();
        assert_eq!(dp_l2_cmax(&j1, 2).unwrap().0, 4);
    }

    #[test]
    fn dp_table_rows() {
        let t = DpTable::new(&[3, 3, 2]);
        assert!(t.reachable(0, 0));
        assert!(!t.reachable(1, 2));
        assert!(t.reachable(3, 5));
        assert_eq!(t.sums(), vec![0, 2, 3, 5, 6, 8]);
        assert_eq!(t.witness(5, &[3, 3, 2]), Some(vec![0, 2]));
    }

    #[test]
    fn trivial_examples() {
        let l1 = Instance::new(vec![2, 2], vec![1, 1], 1).unwrap();
        let x = trivial_l1_cmax(&l1, 3).unwrap();
        assert_eq!(x.starts(), &[0, 1]);
        assert_eq!(evaluate_f(&l1, &x).unwrap(), 3);

        let five = Instance::uet(5, 2).unwrap();
        assert_eq!(evaluate_f(&five, &trivial_unit_unit(&five, 2).unwrap()).unwrap(), 4);
        let three = Instance::uet(3, 2).unwrap();
        assert_eq!(evaluate_f(&three, &trivial_unit_unit(&three, 2).unwrap()).unwrap(), 3);
    }
}
