//! Exhaustive optimizers used as ground truth in tests. They share only the
//! data types with the solvers: time windows, orders and bounds are computed
//! here from scratch.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::SimpleGraph;
use crate::{Error, Instance, Result, Schedule};

/// Largest number of start-time combinations the oracles accept.
pub const SEARCH_LIMIT: u128 = 10_000_000;

fn kahn(instance: &Instance) -> Result<Vec<usize>> {
    let n = instance.job_count();
    let mut indeg = vec![0usize; n];
    for &(_, b) in instance.arcs() {
        indeg[b] += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    while order.len() < n {
        let Some(v) = (0..n).find(|&v| !done[v] && indeg[v] == 0) else {
            return Err(Error::Cycle { job: (0..n).find(|&v| !done[v]).unwrap_or(0) });
        };
        done[v] = true;
        order.push(v);
        for &(a, b) in instance.arcs() {
            if a == v {
                indeg[b] -= 1;
            }
        }
    }
    Ok(order)
}

struct Space {
    order: Vec<usize>,
    est: Vec<u64>,
    lst: Vec<u64>,
    preds: Vec<Vec<usize>>,
}

fn space(instance: &Instance, deadline: u64) -> Result<Space> {
    let n = instance.job_count();
    let order = kahn(instance)?;
    let mut preds = vec![Vec::new(); n];
    let mut succs = vec![Vec::new(); n];
    for &(a, b) in instance.arcs() {
        preds[b].push(a);
        succs[a].push(b);
    }
    let p = |i: usize| instance.duration(i);
    let mut est = vec![0u64; n];
    for &v in &order {
        est[v] = preds[v].iter().map(|&u| est[u] + p(u)).fold(instance.release_of(v), u64::max);
    }
    let mut finish_by = vec![0u64; n];
    for &v in order.iter().rev() {
        let own = instance.due_of(v).unwrap_or(deadline).min(deadline);
        finish_by[v] = succs[v].iter().map(|&w| finish_by[w].saturating_sub(p(w))).fold(own, u64::min);
    }
    let mut lst = vec![0u64; n];
    for v in 0..n {
        if finish_by[v] < p(v) || finish_by[v] - p(v) < est[v] {
            return Err(Error::Infeasible(format!("job {v} has no feasible start below M = {deadline}")));
        }
        lst[v] = finish_by[v] - p(v);
    }
    let size = (0..n).fold(1u128, |acc, v| acc.saturating_mul((lst[v] - est[v] + 1) as u128));
    if size > SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge { size, limit: SEARCH_LIMIT });
    }
    Ok(Space { order, est, lst, preds })
}

struct Search<'a> {
    inst: &'a Instance,
    sp: Space,
    usage: Vec<u64>,
    x: Vec<u64>,
    level: u64,
    rest_bound: Vec<u64>,
    best: Option<(u64, Vec<u64>)>,
    cap: u64,
}

impl Search<'_> {
    fn gain(&self, job: usize, start: u64) -> u64 {
        let c = self.inst.consumption(job);
        (start..start + self.inst.duration(job))
            .map(|t| {
                let u = self.usage[t as usize];
                (u + c).min(self.level) - u.min(self.level)
            })
            .sum()
    }

    fn apply(&mut self, job: usize, start: u64, sign: bool) {
        let c = self.inst.consumption(job);
        for t in start..start + self.inst.duration(job) {
            if sign {
                self.usage[t as usize] += c;
            } else {
                self.usage[t as usize] -= c;
            }
        }
    }

    fn dfs(&mut self, depth: usize, f: u64) {
        if let Some((b, _)) = &self.best {
            if (f + self.rest_bound[depth]).min(self.cap) <= *b {
                return;
            }
        }
        if depth == self.sp.order.len() {
            self.best = Some((f, self.x.clone()));
            return;
        }
        let v = self.sp.order[depth];
        let lo = self.sp.preds[v]
            .iter()
            .map(|&u| self.x[u] + self.inst.duration(u))
            .fold(self.sp.est[v], u64::max);
        for s in lo..=self.sp.lst[v] {
            let g = self.gain(v, s);
            self.apply(v, s, true);
            self.x[v] = s;
            self.dfs(depth + 1, f + g);
            self.apply(v, s, false);
        }
    }
}

/// Maximum `F` over all feasible integer schedules finishing by `M`, with
/// the first optimal schedule met in depth-first order.
pub fn brute_force_leveling(instance: &Instance, deadline: u64) -> Result<(u64, Schedule)> {
    let sp = space(instance, deadline)?;
    let n = instance.job_count();
    let level = instance.level();
    let mut rest_bound = vec![0u64; n + 1];
    for d in (0..n).rev() {
        let v = sp.order[d];
        rest_bound[d] = rest_bound[d + 1] + instance.consumption(v).min(level) * instance.duration(v);
    }
    let mut s = Search {
        inst: instance,
        sp,
        usage: vec![0; deadline as usize],
        x: vec![0; n],
        level,
        rest_bound,
        best: None,
        cap: level * deadline,
    };
    s.dfs(0, 0);
    let (f, x) = s.best.ok_or_else(|| Error::Infeasible("no feasible schedule".into()))?;
    Ok((f, Schedule::new(x)))
}

/// Calls `visit` on every feasible integer schedule finishing by `M`;
/// returns how many there were.
pub fn for_each_schedule(instance: &Instance, deadline: u64, mut visit: impl FnMut(&[u64])) -> Result<usize> {
    let sp = space(instance, deadline)?;
    let mut x = vec![0u64; instance.job_count()];
    let mut count = 0usize;
    fn rec(inst: &Instance, sp: &Space, d: usize, x: &mut Vec<u64>, count: &mut usize, visit: &mut dyn FnMut(&[u64])) {
        if d == sp.order.len() {
            *count += 1;
            visit(x);
            return;
        }
        let v = sp.order[d];
        let lo = sp.preds[v].iter().map(|&u| x[u] + inst.duration(u)).fold(sp.est[v], u64::max);
        for s in lo..=sp.lst[v] {
            x[v] = s;
            rec(inst, sp, d + 1, x, count, visit);
        }
    }
    rec(instance, &sp, 0, &mut x, &mut count, &mut visit);
    Ok(count)
}

/// Minimum makespan on `k` identical machines, honoring the instance's arcs
/// and release/due dates. Every topological order and machine assignment is
/// tried with jobs started as early as possible; `None` when due dates make
/// every assignment fail.
pub fn brute_force_pk_cmax(instance: &Instance, k: usize) -> Result<Option<u64>> {
    let n = instance.job_count();
    if n > 8 {
        return Err(Error::SearchSpaceTooLarge {
            size: n as u128,
            limit: 8,
        });
    }
    if k == 0 {
        return Err(Error::Precondition("need at least one machine".into()));
    }
    kahn(instance)?;
    let mut preds = vec![Vec::new(); n];
    for &(a, b) in instance.arcs() {
        preds[b].push(a);
    }
    struct St<'a> {
        inst: &'a Instance,
        preds: Vec<Vec<usize>>,
        k: usize,
        finish: Vec<Option<u64>>,
        free: Vec<u64>,
        best: Option<u64>,
    }
    fn rec(st: &mut St<'_>, placed: usize, span: u64) {
        if st.best.is_some_and(|b| span >= b) {
            return;
        }
        let n = st.inst.job_count();
        if placed == n {
            st.best = Some(span);
            return;
        }
        for v in 0..n {
            if st.finish[v].is_some() || st.preds[v].iter().any(|&u| st.finish[u].is_none()) {
                continue;
            }
            let ready = st.preds[v]
                .iter()
                .map(|&u| st.finish[u].unwrap_or(0))
                .fold(st.inst.release_of(v), u64::max);
            let mut tried_empty = false;
            for l in 0..st.k {
                // idle machines are interchangeable
                if st.free[l] == 0 {
                    if tried_empty {
                        continue;
                    }
                    tried_empty = true;
                }
                let s = ready.max(st.free[l]);
                let e = s + st.inst.duration(v);
                if st.inst.due_of(v).is_some_and(|d| e > d) {
                    continue;
                }
                let keep = st.free[l];
                st.free[l] = e;
                st.finish[v] = Some(e);
                rec(st, placed + 1, span.max(e));
                st.finish[v] = None;
                st.free[l] = keep;
            }
        }
    }
    let mut st = St {
        inst: instance,
        preds,
        k,
        finish: vec![None; n],
        free: vec![0; k],
        best: None,
    };
    rec(&mut st, 0, 0);
    Ok(st.best)
}

/// Maximum matching size by branching on the smallest vertex left.
pub fn brute_force_matching(graph: &SimpleGraph) -> Result<usize> {
    let n = graph.vertex_count();
    if n > 16 {
        return Err(Error::SearchSpaceTooLarge {
            size: n as u128,
            limit: 16,
        });
    }
    fn rec(g: &SimpleGraph, used: u32, v: usize) -> usize {
        let n = g.vertex_count();
        let mut v = v;
        while v < n && used >> v & 1 == 1 {
            v += 1;
        }
        if v >= n {
            return 0;
        }
        let mut best = rec(g, used | 1 << v, v + 1);
        for &u in g.neighbors(v) {
            if used >> u & 1 == 0 {
                best = best.max(1 + rec(g, used | 1 << v | 1 << u, v + 1));
            }
        }
        best
    }
    Ok(rec(graph, 0, 0))
}
