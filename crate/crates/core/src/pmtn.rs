//! Preemptive leveling with release and due dates: min-cost flow for unit
//! consumptions, an exact LP for level 2, and the wrap-around extraction of
//! per-interval amounts into explicit sub-intervals.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::flow::{min_cost_flow, FlowNetwork};
use crate::lp::LinearProgram;
use crate::preemptive::{rat, Interval, PreemptiveSchedule, Rational};
use crate::{Error, Instance, Result};

/// Sorted distinct dates `tau_0 < ... < tau_K`; interval `k` (0-based) is
/// `[tau_k, tau_{k+1}]`. `kappa[i]` lists the intervals inside job `i`'s
/// window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Timeline {
    pub breakpoints: Vec<u64>,
    pub kappa: Vec<Vec<usize>>,
}

impl Timeline {
    pub fn interval_count(&self) -> usize {
        self.breakpoints.len().saturating_sub(1)
    }

    pub fn start(&self, k: usize) -> u64 {
        self.breakpoints[k]
    }

    pub fn end(&self, k: usize) -> u64 {
        self.breakpoints[k + 1]
    }

    pub fn length(&self, k: usize) -> u64 {
        self.end(k) - self.start(k)
    }
}

/// Window `[r_i, d_i]` of every job; `r` defaults to 0 and `d` to `M`.
fn windows(instance: &Instance) -> Result<Vec<(u64, u64)>> {
    (0..instance.job_count())
        .map(|i| {
            let r = instance.release_of(i);
            let d = instance.due_of(i).or(instance.deadline()).ok_or_else(|| {
                Error::Precondition(format!("job {i} has neither a due date nor a deadline M"))
            })?;
            if instance.duration(i) > d.saturating_sub(r) {
                return Err(Error::Infeasible(format!("job {i} does not fit in its window [{r}, {d}]")));
            }
            Ok((r, d))
        })
        .collect()
}

pub fn build_timeline(instance: &Instance) -> Result<Timeline> {
    let w = windows(instance)?;
    let mut breakpoints: Vec<u64> = w.iter().flat_map(|&(r, d)| [r, d]).collect();
    breakpoints.sort_unstable();
    breakpoints.dedup();
    let kappa = w
        .iter()
        .map(|&(r, d)| {
            (0..breakpoints.len().saturating_sub(1))
                .filter(|&k| r <= breakpoints[k] && breakpoints[k + 1] <= d)
                .collect()
        })
        .collect();
    Ok(Timeline { breakpoints, kappa })
}

/// Flow network for unit consumptions: source to job (`p_i`), job to each
/// interval of its window (interval length), interval to sink once under the
/// level (cost 0) and once over it (cost 1).
#[derive(Debug, Clone)]
pub struct UnitPmtnNetwork {
    pub network: FlowNetwork,
    pub source: usize,
    pub sink: usize,
    pub timeline: Timeline,
    /// `(job, interval, arc)` for every assignment arc.
    pub assign: Vec<(usize, usize, usize)>,
    pub under: Vec<usize>,
    pub over: Vec<usize>,
}

pub fn build_flow_network(instance: &Instance) -> Result<UnitPmtnNetwork> {
    if !instance.has_unit_consumption() {
        return Err(Error::WrongClass("flow model needs unit consumptions".into()));
    }
    let timeline = build_timeline(instance)?;
    let n = instance.job_count();
    let kk = timeline.interval_count();
    let source = 0;
    let sink = n + kk + 1;
    let mut network = FlowNetwork::new(n + kk + 2);
    let total = instance.total_work();
    for i in 0..n {
        network.add_arc(source, 1 + i, instance.duration(i), 0);
    }
    let mut assign = Vec::new();
    for i in 0..n {
        for &k in &timeline.kappa[i] {
            assign.push((i, k, network.add_arc(1 + i, 1 + n + k, timeline.length(k), 0)));
        }
    }
    let mut under = Vec::with_capacity(kk);
    let mut over = Vec::with_capacity(kk);
    for k in 0..kk {
        under.push(network.add_arc(1 + n + k, sink, instance.level() * timeline.length(k), 0));
        over.push(network.add_arc(1 + n + k, sink, total, 1));
    }
    Ok(UnitPmtnNetwork {
        network,
        source,
        sink,
        timeline,
        assign,
        under,
        over,
    })
}

/// Fills `[start, end)` line by line with the given amounts, wrapping to
/// `start` when the end is reached. Returns the sub-intervals of each job.
pub fn interval_scheduling(amounts: &[Rational], start: &Rational, end: &Rational) -> Result<Vec<Vec<Interval>>> {
    let len = end - start;
    let mut out = Vec::with_capacity(amounts.len());
    let mut t = Rational::zero();
    for (i, x) in amounts.iter().enumerate() {
        if *x > len || *x < Rational::zero() {
            return Err(Error::Precondition(format!("amount of job {i} does not fit in the interval")));
        }
        let mut next = &t + x;
        let mut ivs = Vec::new();
        if next <= len {
            ivs.push(Interval::new(start + &t, start + &next));
        } else {
            next -= &len;
            ivs.push(Interval::new(start.clone(), start + &next));
            ivs.push(Interval::new(start + &t, end.clone()));
        }
        ivs.retain(|iv| iv.start < iv.end);
        out.push(ivs);
        t = if next == len { Rational::zero() } else { next };
    }
    Ok(out)
}

/// Sorts and merges touching intervals.
fn normalize(mut ivs: Vec<Interval>) -> Vec<Interval> {
    ivs.sort_by(|a, b| a.start.cmp(&b.start));
    let mut out: Vec<Interval> = Vec::with_capacity(ivs.len());
    for iv in ivs {
        match out.last_mut() {
            Some(last) if last.end == iv.start => last.end = iv.end,
            _ => out.push(iv),
        }
    }
    out
}

/// Objective value and a preemptive schedule attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmtnSolution {
    pub f: Rational,
    pub schedule: PreemptiveSchedule,
}

pub fn solve_unit_pmtn(instance: &Instance) -> Result<PmtnSolution> {
    let net = build_flow_network(instance)?;
    let total = instance.total_work();
    let sol = min_cost_flow(&net.network, net.source, net.sink, total)?;
    let tl = &net.timeline;
    let n = instance.job_count();
    let mut per_job: Vec<Vec<Interval>> = vec![Vec::new(); n];
    for k in 0..tl.interval_count() {
        let jobs: Vec<(usize, u64)> = net
            .assign
            .iter()
            .filter(|&&(_, kk, _)| kk == k)
            .map(|&(i, _, a)| (i, sol.flow[a]))
            .collect();
        let amounts: Vec<Rational> = jobs.iter().map(|&(_, f)| rat(f as i64)).collect();
        let placed = interval_scheduling(&amounts, &rat(tl.start(k) as i64), &rat(tl.end(k) as i64))?;
        for ((i, _), ivs) in jobs.iter().zip(placed) {
            per_job[*i].extend(ivs);
        }
    }
    Ok(PmtnSolution {
        f: rat((total - sol.cost) as i64),
        schedule: PreemptiveSchedule::new(per_job.into_iter().map(normalize).collect()),
    })
}

/// The level-2 LP together with the meaning of each variable.
#[derive(Debug, Clone)]
pub struct L2PmtnModel {
    pub lp: LinearProgram,
    pub timeline: Timeline,
    /// `(job, interval, clamped consumption)` per LP variable.
    pub vars: Vec<(usize, usize, u64)>,
}

pub fn build_l2_lp(instance: &Instance) -> Result<L2PmtnModel> {
    if instance.level() != 2 {
        return Err(Error::WrongClass("LP model needs level 2".into()));
    }
    let timeline = build_timeline(instance)?;
    let c = |i: usize| instance.consumption(i).min(2);
    let mut vars = Vec::new();
    for i in 0..instance.job_count() {
        if c(i) == 0 {
            continue;
        }
        for &k in &timeline.kappa[i] {
            vars.push((i, k, c(i)));
        }
    }
    let mut lp = LinearProgram::new(vars.len());
    for (v, &(_, _, ci)) in vars.iter().enumerate() {
        lp.set_objective(v, rat(ci as i64));
    }
    let one = || rat(1);
    for i in 0..instance.job_count() {
        let terms: Vec<(usize, Rational)> = (0..vars.len()).filter(|&v| vars[v].0 == i).map(|v| (v, one())).collect();
        if !terms.is_empty() {
            lp.add_le(terms, rat(instance.duration(i) as i64))?;
        }
    }
    for k in 0..timeline.interval_count() {
        let len = timeline.length(k) as i64;
        let twos: Vec<usize> = (0..vars.len()).filter(|&v| vars[v].1 == k && vars[v].2 == 2).collect();
        let ones: Vec<usize> = (0..vars.len()).filter(|&v| vars[v].1 == k && vars[v].2 == 1).collect();
        for &v in &ones {
            let mut terms = vec![(v, one())];
            terms.extend(twos.iter().map(|&w| (w, one())));
            lp.add_le(terms, rat(len))?;
        }
        if !ones.is_empty() {
            let mut terms: Vec<(usize, Rational)> = ones.iter().map(|&v| (v, one())).collect();
            terms.extend(twos.iter().map(|&w| (w, rat(2))));
            lp.add_le(terms, rat(2 * len))?;
        }
        if !twos.is_empty() {
            lp.add_le(twos.iter().map(|&w| (w, one())).collect(), rat(len))?;
        }
    }
    Ok(L2PmtnModel { lp, timeline, vars })
}

/// Free sub-intervals of `[lo, hi]` not covered by `busy`, left to right.
fn gaps(busy: &[Interval], lo: &Rational, hi: &Rational) -> Vec<Interval> {
    let mut sorted: Vec<&Interval> = busy.iter().collect();
    sorted.sort_by(|a, b| a.start.cmp(&b.start));
    let mut out = Vec::new();
    let mut t = lo.clone();
    for iv in sorted {
        if iv.start > t {
            out.push(Interval::new(t.clone(), iv.start.clone().min(hi.clone())));
        }
        if iv.end > t {
            t = iv.end.clone();
        }
    }
    if *hi > t {
        out.push(Interval::new(t, hi.clone()));
    }
    out.retain(|iv| iv.start < iv.end);
    out
}

pub fn solve_l2_pmtn(instance: &Instance) -> Result<PmtnSolution> {
    let model = build_l2_lp(instance)?;
    let sol = model.lp.solve().map_err(|e| match e {
        Error::Unbounded => Error::Invariant("level-2 LP reported unbounded".into()),
        other => other,
    })?;
    let tl = &model.timeline;
    let n = instance.job_count();
    let mut per_job: Vec<Vec<Interval>> = vec![Vec::new(); n];
    for k in 0..tl.interval_count() {
        let mut t = rat(tl.start(k) as i64);
        let end = rat(tl.end(k) as i64);
        let mut ones = Vec::new();
        for (v, &(i, kk, c)) in model.vars.iter().enumerate() {
            if kk != k || sol.x[v].is_zero() {
                continue;
            }
            if c == 2 {
                let next = &t + &sol.x[v];
                per_job[i].push(Interval::new(t.clone(), next.clone()));
                t = next;
            } else {
                ones.push((i, sol.x[v].clone()));
            }
        }
        let amounts: Vec<Rational> = ones.iter().map(|(_, x)| x.clone()).collect();
        let placed = interval_scheduling(&amounts, &t, &end)?;
        for ((i, _), ivs) in ones.iter().zip(placed) {
            per_job[*i].extend(ivs);
        }
    }
    let w = windows(instance)?;
    for (i, ivs) in per_job.iter_mut().enumerate() {
        let done: Rational = ivs.iter().map(Interval::length).sum();
        let mut rest = rat(instance.duration(i) as i64) - done;
        let (r, d) = (rat(w[i].0 as i64), rat(w[i].1 as i64));
        for g in gaps(ivs, &r, &d) {
            if rest.is_zero() {
                break;
            }
            let take = g.length().min(rest.clone());
            let piece = Interval::new(g.start.clone(), &g.start + &take);
            rest -= take;
            ivs.push(piece);
        }
        if !rest.is_zero() {
            return Err(Error::Invariant(format!("job {i} has work left after filling its window")));
        }
    }
    Ok(PmtnSolution {
        f: sol.value,
        schedule: PreemptiveSchedule::new(per_job.into_iter().map(normalize).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preemptive::{check_preemptive, evaluate_f_preemptive};

    fn windowed(p: Vec<u64>, c: Vec<u64>, level: u64, r: Vec<u64>, d: Vec<u64>) -> Instance {
        Instance::new(p, c, level).unwrap().with_windows(r, d).unwrap()
    }

    fn iv(a: i64, b: i64) -> Interval {
        Interval::new(rat(a), rat(b))
    }

    #[test]
    fn timeline_examples() {
        let one = windowed(vec![1], vec![1], 1, vec![0], vec![3]);
        let t = build_timeline(&one).unwrap();
        assert_eq!(t.breakpoints, vec![0, 3]);
        assert_eq!(t.kappa, vec![vec![0]]);
        let two = windowed(vec![1, 1], vec![1, 1], 1, vec![0, 1], vec![2, 3]);
        let t = build_timeline(&two).unwrap();
        assert_eq!(t.breakpoints, vec![0, 1, 2, 3]);
        assert_eq!(t.kappa, vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn wrap_rule() {
        let amounts: Vec<Rational> = [3, 4, 2, 4].iter().map(|&a| rat(a)).collect();
        let out = interval_scheduling(&amounts, &rat(0), &rat(5)).unwrap();
        assert_eq!(out[0], vec![iv(0, 3)]);
        assert_eq!(out[1], vec![iv(0, 2), iv(3, 5)]);
        assert_eq!(out[2], vec![iv(2, 4)]);
        assert_eq!(out[3], vec![iv(0, 3), iv(4, 5)]);
        let full = interval_scheduling(&[rat(5)], &rat(0), &rat(5)).unwrap();
        assert_eq!(full, vec![vec![iv(0, 5)]]);
        assert!(interval_scheduling(&[rat(6)], &rat(0), &rat(5)).is_err());
    }

    #[test]
    fn unit_pmtn_examples() {
        let one = windowed(vec![2], vec![1], 1, vec![0], vec![4]);
        assert_eq!(solve_unit_pmtn(&one).unwrap().f, rat(2));
        let three = windowed(vec![1, 1, 1], vec![1, 1, 1], 1, vec![0, 0, 0], vec![1, 1, 1]);
        let s = solve_unit_pmtn(&three).unwrap();
        assert_eq!(s.f, rat(1));
        assert_eq!(evaluate_f_preemptive(&three, &s.schedule).unwrap(), rat(1));
        assert!(check_preemptive(&three, &s.schedule).is_empty());
        let spread = windowed(vec![1, 1], vec![1, 1], 1, vec![0, 0], vec![2, 2]);
        assert_eq!(solve_unit_pmtn(&spread).unwrap().f, rat(2));
    }

    #[test]
    fn l2_pmtn_examples() {
        let one = windowed(vec![1], vec![2], 2, vec![0], vec![1]);
        assert_eq!(solve_l2_pmtn(&one).unwrap().f, rat(2));
        let mixed = windowed(vec![1, 1], vec![2, 1], 2, vec![0, 0], vec![1, 1]);
        let s = solve_l2_pmtn(&mixed).unwrap();
        assert_eq!(s.f, rat(2));
        assert_eq!(evaluate_f_preemptive(&mixed, &s.schedule).unwrap(), rat(2));
        assert!(check_preemptive(&mixed, &s.schedule).is_empty());
        let threes = windowed(vec![1, 1, 1], vec![2, 2, 2], 2, vec![0; 3], vec![2; 3]);
        let s = solve_l2_pmtn(&threes).unwrap();
        assert_eq!(s.f, rat(4));
        assert_eq!(evaluate_f_preemptive(&threes, &s.schedule).unwrap(), rat(4));
    }

    #[test]
    fn window_too_short_is_infeasible() {
        let inst = Instance::new(vec![3], vec![1], 1).unwrap().with_deadline(Some(2));
        assert!(inst.is_err() || matches!(solve_unit_pmtn(&inst.unwrap()), Err(Error::Infeasible(_))));
    }
}
