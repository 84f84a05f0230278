//! Optimal leveling at level 2 for unit jobs, unit consumption and
//! precedence constraints, for any makespan deadline `M`.
//!
//! The solver starts from the earliest schedule at `M = |P|`, raises `F` one
//! unit at a time with augmenting sequences in the bipartite independence
//! graph, then extends the makespan step by step with elongations and
//! generalized augmenting sequences until it reaches `M`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{
    critical_path, earliest_start_times, transitive_closure, BipartiteIndependenceGraph, CriticalPath,
    IndependenceGraph, Reachability,
};
use crate::matching::{augmenting_path, bipartite_augmenting_path, max_matching_bipartite, max_matching_general, Matching};
use crate::two_proc::coffman_graham;
use crate::{check_feasible_with_deadline, Error, Instance, Result, Schedule};

/// `F*` as a function of `M`, three linear pieces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FStarProfile {
    pub path_len: u64,
    pub m_star_p: u64,
    pub m_star: u64,
    pub job_count: u64,
}

impl FStarProfile {
    /// End of the slope-2 piece.
    pub fn first_breakpoint(&self) -> u64 {
        self.path_len + self.m_star - self.m_star_p
    }

    /// Start of the constant piece, `|J| - m*`.
    pub fn second_breakpoint(&self) -> u64 {
        self.job_count - self.m_star
    }

    pub fn breakpoints(&self) -> [u64; 3] {
        [self.path_len, self.first_breakpoint(), self.second_breakpoint()]
    }

    pub fn value(&self, deadline: u64) -> Result<u64> {
        if deadline < self.path_len {
            return Err(Error::InfeasibleDeadline {
                deadline,
                critical: self.path_len,
            });
        }
        Ok(if deadline <= self.first_breakpoint() {
            2 * (deadline - self.path_len) + self.path_len + self.m_star_p
        } else if deadline <= self.second_breakpoint() {
            deadline + self.m_star
        } else {
            self.job_count
        })
    }
}

pub fn fstar_profile(instance: &Instance) -> Result<FStarProfile> {
    Ok(L2PrecSolver::new(instance)?.profile())
}

/// Jobs `(i_0, j_1, i_1, ..., j_r, i_r, j_{r+1})`; `i_q` sits at even
/// positions, `j_q` at odd ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentingSequence {
    jobs: Vec<usize>,
}

impl AugmentingSequence {
    /// Needs an even number of at least two jobs.
    pub fn new(jobs: Vec<usize>) -> Result<Self> {
        if jobs.len() < 2 || !jobs.len().is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "an augmenting sequence has an even length of at least 2, got {}",
                jobs.len()
            )));
        }
        Ok(AugmentingSequence { jobs })
    }

    pub fn jobs(&self) -> &[usize] {
        &self.jobs
    }

    /// Number `r` of inner matched pairs.
    pub fn r(&self) -> usize {
        self.jobs.len() / 2 - 1
    }

    pub fn i(&self, q: usize) -> usize {
        self.jobs[2 * q]
    }

    pub fn j(&self, q: usize) -> usize {
        self.jobs[2 * q - 1]
    }

    pub fn first(&self) -> usize {
        self.jobs[0]
    }

    pub fn last(&self) -> usize {
        self.jobs[self.jobs.len() - 1]
    }
}

/// Decomposition of an elementary operation on `(a, b)`.
///
/// `anchors` runs from `x_a` to `x_b` (so it decreases in the mirrored case,
/// where `b` comes first and its successors are moved instead).
/// `alpha[k - 1]` and `beta[k - 1]` split the jobs at anchor `k`,
/// `gaps[k - 1]` holds the jobs strictly between anchors `k - 1` and `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryDecomposition {
    pub anchors: Vec<u64>,
    pub alpha: Vec<Vec<usize>>,
    pub beta: Vec<Vec<usize>>,
    pub gaps: Vec<Vec<usize>>,
    pub mirrored: bool,
}

impl ElementaryDecomposition {
    /// `b` and every job of a `beta` block.
    pub fn moved(&self, b: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.beta.iter().flatten().copied().collect();
        v.push(b);
        v.sort_unstable();
        v
    }
}

/// Transformation applied by [`L2PrecSolver::solve_with_trace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    CoffmanGraham,
    Earliest,
    AugmentingSequence,
    TwoJobElongation,
    GeneralizedAugmentingSequence,
    OneJobElongation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub kind: StepKind,
    pub schedule: Schedule,
    pub f: u64,
    pub makespan: u64,
}

/// Number of jobs per step of a unit-job schedule, over `[0, makespan)`.
pub fn step_counts(x: &Schedule) -> Vec<usize> {
    x.columns().iter().map(Vec::len).collect()
}

fn unit_makespan(x: &Schedule) -> u64 {
    x.starts().iter().max().map_or(0, |&m| m + 1)
}

/// `F` at level 2 for unit jobs and unit consumption.
pub fn unit_f(x: &Schedule) -> u64 {
    step_counts(x).iter().map(|&c| c.min(2) as u64).sum()
}

fn elongate(x: &Schedule, min_jobs: usize, moved: usize) -> Result<Schedule> {
    let cols = x.columns();
    let Some(tau) = cols.iter().position(|c| c.len() >= min_jobs) else {
        return Err(Error::Precondition(format!("no step holds {min_jobs} or more jobs")));
    };
    let tau = tau as u64;
    let to_move = &cols[tau as usize][cols[tau as usize].len() - moved..];
    let starts = x
        .starts()
        .iter()
        .enumerate()
        .map(|(i, &s)| if s > tau || (s == tau && to_move.contains(&i)) { s + 1 } else { s })
        .collect();
    Ok(Schedule::new(starts))
}

/// Moves the highest-index job of the first step holding at least three jobs
/// to the next step and postpones every later job by one.
pub fn one_job_elongation(x: &Schedule) -> Result<Schedule> {
    elongate(x, 3, 1)
}

/// Same as [`one_job_elongation`] with the two highest-index jobs of the
/// first step holding at least four.
pub fn two_job_elongation(x: &Schedule) -> Result<Schedule> {
    elongate(x, 4, 2)
}

/// Solver for one instance; the closure, critical path and both maximum
/// matchings are computed once.
#[derive(Debug, Clone)]
pub struct L2PrecSolver {
    instance: Instance,
    reach: Reachability,
    rev: Reachability,
    path: CriticalPath,
    on_path: Vec<bool>,
    bip: BipartiteIndependenceGraph,
    ind: IndependenceGraph,
    profile: FStarProfile,
}

impl L2PrecSolver {
    pub fn new(instance: &Instance) -> Result<Self> {
        if !instance.is_uet() || !instance.consumptions().iter().all(|&c| c == 1) || instance.level() != 2 {
            return Err(Error::WrongClass(
                "needs unit durations, unit consumptions and level 2".into(),
            ));
        }
        let reach = transitive_closure(instance)?;
        let path = critical_path(instance)?;
        let mut on_path = vec![false; instance.job_count()];
        for &j in path.jobs() {
            on_path[j] = true;
        }
        let bip = BipartiteIndependenceGraph::from_reachability(&reach, path.jobs())?;
        let ind = IndependenceGraph::from_reachability(&reach);
        let profile = FStarProfile {
            path_len: path.len() as u64,
            m_star_p: max_matching_bipartite(&bip).size() as u64,
            m_star: max_matching_general(ind.graph()).size() as u64,
            job_count: instance.job_count() as u64,
        };
        Ok(L2PrecSolver {
            instance: instance.clone(),
            rev: reach.reversed(),
            reach,
            path,
            on_path,
            bip,
            ind,
            profile,
        })
    }

    pub fn profile(&self) -> FStarProfile {
        self.profile
    }

    pub fn critical_path(&self) -> &CriticalPath {
        &self.path
    }

    pub fn reachability(&self) -> &Reachability {
        &self.reach
    }

    pub fn solve(&self, deadline: u64) -> Result<Schedule> {
        Ok(self.solve_with_trace(deadline)?.pop().map(|e| e.schedule).unwrap_or_default())
    }

    /// Every schedule built on the way to the answer; the last one is
    /// returned by [`solve`](Self::solve).
    pub fn solve_with_trace(&self, deadline: u64) -> Result<Vec<TraceEntry>> {
        let p = self.profile;
        if deadline < p.path_len {
            return Err(Error::InfeasibleDeadline {
                deadline,
                critical: p.path_len,
            });
        }
        let entry = |kind, schedule: Schedule| TraceEntry {
            kind,
            f: unit_f(&schedule),
            makespan: unit_makespan(&schedule),
            schedule,
        };
        if deadline >= p.second_breakpoint() {
            let all: Vec<usize> = (0..self.instance.job_count()).collect();
            let cg = Schedule::new(coffman_graham(&self.reach, &all));
            return Ok(vec![entry(StepKind::CoffmanGraham, cg)]);
        }
        let mut trace = vec![entry(StepKind::Earliest, self.earliest_schedule())];
        let mut x = self.earliest_schedule();
        while unit_f(&x) < p.path_len + p.m_star_p {
            x = self.improve_once_at_min_makespan(&x)?;
            trace.push(entry(StepKind::AugmentingSequence, x.clone()));
        }
        while unit_makespan(&x) < deadline {
            let c = unit_makespan(&x);
            let kind = if step_counts(&x).iter().any(|&n| n >= 4) {
                x = two_job_elongation(&x)?;
                StepKind::TwoJobElongation
            } else if c < p.first_breakpoint() {
                let seq = self.generalized_sequence(&x)?;
                x = self.apply_generalized_augmenting_sequence(&x, &seq)?;
                StepKind::GeneralizedAugmentingSequence
            } else {
                x = one_job_elongation(&x)?;
                StepKind::OneJobElongation
            };
            let e = entry(kind, x.clone());
            if e.f != p.value(e.makespan)? {
                return Err(Error::Invariant(format!(
                    "{kind:?} reached F = {} at makespan {}, expected {}",
                    e.f,
                    e.makespan,
                    p.value(e.makespan)?
                )));
            }
            trace.push(e);
        }
        Ok(trace)
    }

    /// Every job at its earliest precedence-feasible step.
    pub fn earliest_schedule(&self) -> Schedule {
        Schedule::new(earliest_start_times(&self.instance).expect("acyclic by construction"))
    }

    fn check_min_makespan(&self, x: &Schedule) -> Result<()> {
        self.check_schedule(x, self.profile.path_len)
    }

    fn check_schedule(&self, x: &Schedule, deadline: u64) -> Result<()> {
        let v = check_feasible_with_deadline(&self.instance, x, Some(deadline));
        if let Some(first) = v.first() {
            return Err(Error::Precondition(format!("schedule is not feasible: {first}")));
        }
        Ok(())
    }

    /// Decomposition of the elementary operation on `(a, b)` for a schedule
    /// of makespan `|P|`.
    pub fn decompose(&self, x: &Schedule, a: usize, b: usize) -> Result<ElementaryDecomposition> {
        self.check_elementary(x, a, b)?;
        Ok(self.elementary(x, a, b).1)
    }

    /// Elementary operation on `(a, b)`: the predecessors of `b` between the
    /// two jobs move one anchor earlier and `b` joins the last anchor. When
    /// `b` comes before `a`, successors of `b` are moved later instead.
    pub fn elementary_operation(&self, x: &Schedule, a: usize, b: usize) -> Result<Schedule> {
        self.check_elementary(x, a, b)?;
        Ok(self.elementary(x, a, b).0)
    }

    fn check_elementary(&self, x: &Schedule, a: usize, b: usize) -> Result<()> {
        self.check_min_makespan(x)?;
        if !self.reach.independent(a, b) {
            return Err(Error::Precondition(format!("jobs {a} and {b} are not independent")));
        }
        if x.starts().iter().filter(|&&s| s == x.start(a)).count() != 1 {
            return Err(Error::Precondition(format!("job {a} is not alone at its step")));
        }
        Ok(())
    }

    fn elementary(&self, x: &Schedule, a: usize, b: usize) -> (Schedule, ElementaryDecomposition) {
        if x.start(a) < x.start(b) {
            return elementary_forward(x.starts(), &self.reach, a, b);
        }
        // mirror: reverse time and precedence
        let c = unit_makespan(x);
        let flip = |s: u64| c - 1 - s;
        let xr: Vec<u64> = x.starts().iter().map(|&s| flip(s)).collect();
        let (yr, mut d) = elementary_forward(&xr, &self.rev, a, b);
        d.anchors.iter_mut().for_each(|t| *t = flip(*t));
        d.mirrored = true;
        (Schedule::new(yr.starts().iter().map(|&s| flip(s)).collect()), d)
    }

    /// Pairs the path job of every step with its smallest-index companion
    /// off the path.
    pub fn path_matching(&self, x: &Schedule) -> Matching {
        let mut pairs = Vec::new();
        for col in x.columns() {
            let on: Vec<usize> = col.iter().copied().filter(|&j| self.on_path[j]).collect();
            let off = col.iter().copied().find(|&j| !self.on_path[j]);
            if let (&[p], Some(o)) = (on.as_slice(), off) {
                pairs.push((p, o));
            }
        }
        Matching::from_pairs(self.instance.job_count(), &pairs).expect("steps are disjoint")
    }

    /// Pairs the two smallest-index jobs of every step holding two or more.
    pub fn schedule_matching(&self, x: &Schedule) -> Matching {
        let pairs: Vec<(usize, usize)> = x
            .columns()
            .iter()
            .filter(|c| c.len() >= 2)
            .map(|c| (c[0], c[1]))
            .collect();
        Matching::from_pairs(self.instance.job_count(), &pairs).expect("steps are disjoint")
    }

    fn check_bipartite_sequence(&self, x: &Schedule, seq: &AugmentingSequence) -> Result<()> {
        let counts = step_counts(x);
        let at = |j: usize| counts[x.start(j) as usize];
        let jobs = seq.jobs();
        let mut seen = vec![false; self.instance.job_count()];
        for &j in jobs {
            if j >= seen.len() || seen[j] {
                return Err(Error::Precondition(format!("job {j} repeats or is out of range")));
            }
            seen[j] = true;
        }
        for w in jobs.windows(2) {
            if !self.bip.graph().has_edge(w[0], w[1]) {
                return Err(Error::Precondition(format!(
                    "({}, {}) is not an edge of the bipartite independence graph",
                    w[0], w[1]
                )));
            }
        }
        if at(seq.first()) != 1 {
            return Err(Error::Precondition(format!("job {} is not alone at its step", seq.first())));
        }
        if at(seq.last()) < 3 {
            return Err(Error::Precondition(format!(
                "fewer than three jobs share the step of job {}",
                seq.last()
            )));
        }
        for q in 1..=seq.r() {
            if x.start(seq.i(q)) != x.start(seq.j(q)) {
                return Err(Error::Precondition(format!(
                    "jobs {} and {} are not on the same step",
                    seq.j(q),
                    seq.i(q)
                )));
            }
        }
        Ok(())
    }

    /// Raises `F` by one at makespan `|P|` along `seq`, truncating and
    /// shortcutting the sequence as elementary operations are applied.
    pub fn apply_augmenting_sequence_min_makespan(&self, x: &Schedule, seq: &AugmentingSequence) -> Result<Schedule> {
        self.check_min_makespan(x)?;
        self.check_bipartite_sequence(x, seq)?;
        let target = unit_f(x) + 1;
        let mut x = x.clone();
        let mut jobs = seq.jobs().to_vec();
        loop {
            let s = AugmentingSequence::new(jobs.clone())?;
            self.check_bipartite_sequence(&x, &s).map_err(invariant)?;
            let counts = step_counts(&x);
            if let Some(q) = (1..=s.r()).find(|&q| counts[x.start(s.i(q)) as usize] >= 3) {
                jobs.truncate(2 * q);
                continue;
            }
            let (a, b) = (s.first(), s.j(1));
            let (next, d) = self.elementary(&x, a, b);
            if s.r() == 0 {
                if unit_f(&next) != target {
                    return Err(Error::Invariant(format!("elementary operation on ({a}, {b}) missed F + 1")));
                }
                self.check_min_makespan(&next).map_err(invariant)?;
                return Ok(next);
            }
            let moved = d.moved(b);
            if moved.binary_search(&s.last()).is_ok() {
                jobs = vec![a, s.last()];
                continue;
            }
            if let Some(q) = (2..=s.r()).rev().find(|&q| moved.binary_search(&s.j(q)).is_ok()) {
                let mut cut = vec![a];
                cut.extend_from_slice(&jobs[2 * q - 1..]);
                jobs = cut;
                continue;
            }
            self.check_min_makespan(&next).map_err(invariant)?;
            x = next;
            jobs.drain(..2);
        }
    }

    fn improve_once_at_min_makespan(&self, x: &Schedule) -> Result<Schedule> {
        let m = self.path_matching(x);
        let path = bipartite_augmenting_path(&self.bip, &m)
            .ok_or_else(|| Error::Invariant("no augmenting path below the bipartite maximum".into()))?;
        self.apply_augmenting_sequence_min_makespan(x, &AugmentingSequence::new(path)?)
    }

    /// Applies augmenting sequences until `F = |P| + m*_P`.
    pub fn improve_at_min_makespan(&self, x: &Schedule) -> Result<Schedule> {
        self.check_min_makespan(x)?;
        let goal = self.profile.path_len + self.profile.m_star_p;
        let mut x = x.clone();
        while unit_f(&x) < goal {
            x = self.improve_once_at_min_makespan(&x)?;
        }
        Ok(x)
    }

    /// Augmenting path in the independence graph for the pairing of
    /// co-scheduled jobs.
    fn generalized_sequence(&self, x: &Schedule) -> Result<AugmentingSequence> {
        let m = self.schedule_matching(x);
        let path = augmenting_path(self.ind.graph(), &m)
            .ok_or_else(|| Error::Invariant("no augmenting path below the general maximum".into()))?;
        AugmentingSequence::new(path)
    }

    fn check_general_sequence(&self, x: &Schedule, jobs: &[usize]) -> Result<()> {
        let counts = step_counts(x);
        let at = |j: usize| counts[x.start(j) as usize];
        let s = AugmentingSequence::new(jobs.to_vec())?;
        let mut seen = vec![false; self.instance.job_count()];
        for &j in jobs {
            if j >= seen.len() || seen[j] {
                return Err(Error::Precondition(format!("job {j} repeats or is out of range")));
            }
            seen[j] = true;
        }
        for w in jobs.windows(2) {
            if !self.reach.independent(w[0], w[1]) {
                return Err(Error::Precondition(format!("jobs {} and {} are not independent", w[0], w[1])));
            }
        }
        if at(s.first()) == 2 || at(s.last()) == 2 {
            return Err(Error::Precondition("an end of the sequence sits on a step with two jobs".into()));
        }
        if x.start(s.first()) == x.start(s.last()) {
            return Err(Error::Precondition("both ends of the sequence share a step".into()));
        }
        for q in 1..=s.r() {
            if x.start(s.i(q)) != x.start(s.j(q)) {
                return Err(Error::Precondition(format!(
                    "jobs {} and {} are not on the same step",
                    s.j(q),
                    s.i(q)
                )));
            }
        }
        Ok(())
    }

    /// Normalizes `jobs` until inner steps hold two jobs and no arc passes
    /// over a three-job step other than those of the ends.
    fn normalize_general(&self, x: &Schedule, mut jobs: Vec<usize>) -> Result<Vec<usize>> {
        let counts = step_counts(x);
        let cols = x.columns();
        'outer: loop {
            self.check_general_sequence(x, &jobs).map_err(invariant)?;
            let s = AugmentingSequence::new(jobs.clone())?;
            for q in 1..=s.r() {
                let t = x.start(s.i(q));
                if counts[t as usize] >= 3 {
                    if x.start(s.first()) == t {
                        jobs.drain(..2 * q);
                    } else {
                        jobs.truncate(2 * q);
                    }
                    continue 'outer;
                }
            }
            let (t0, t1) = (x.start(s.first()), x.start(s.last()));
            for k in (0..jobs.len() - 1).step_by(2) {
                let (u, v) = (jobs[k], jobs[k + 1]);
                let (lo, hi) = (x.start(u).min(x.start(v)), x.start(u).max(x.start(v)));
                for tau in lo + 1..hi {
                    if counts[tau as usize] != 3 || tau == t0 || tau == t1 {
                        continue;
                    }
                    let col = &cols[tau as usize];
                    if let Some(&c) = col.iter().find(|&&c| self.reach.independent(u, c)) {
                        jobs.truncate(k + 1);
                        jobs.push(c);
                    } else if let Some(&c) = col.iter().find(|&&c| self.reach.independent(c, v)) {
                        let mut cut = vec![c];
                        cut.extend_from_slice(&jobs[k + 1..]);
                        jobs = cut;
                    } else {
                        return Err(Error::Invariant(format!(
                            "no job of step {tau} is independent from {u} or {v}"
                        )));
                    }
                    continue 'outer;
                }
            }
            return Ok(jobs);
        }
    }

    /// From an optimal schedule with one to three jobs per step, builds a
    /// schedule one step longer with `F + 2` by repacking the window spanned
    /// by the normalized sequence on two machines.
    pub fn apply_generalized_augmenting_sequence(&self, x: &Schedule, seq: &AugmentingSequence) -> Result<Schedule> {
        let c = unit_makespan(x);
        self.check_schedule(x, c)?;
        let counts = step_counts(x);
        if counts.iter().any(|&n| n == 0 || n > 3) {
            return Err(Error::Precondition("every step must hold one to three jobs".into()));
        }
        if c + 1 > self.profile.second_breakpoint() {
            return Err(Error::Precondition(format!(
                "makespan {c} leaves no room below |J| - m* = {}",
                self.profile.second_breakpoint()
            )));
        }
        let f = unit_f(x);
        if f != self.profile.value(c)? {
            return Err(Error::Precondition(format!("schedule is not optimal for M = {c}")));
        }
        self.check_general_sequence(x, seq.jobs())?;
        let jobs = self.normalize_general(x, seq.jobs().to_vec())?;
        let (first, last) = (jobs[0], jobs[jobs.len() - 1]);
        let (t0, t1) = (x.start(first), x.start(last));
        if counts[t0 as usize] != 3 || counts[t1 as usize] != 3 {
            return Err(Error::Invariant(format!(
                "sequence ends sit on steps with {} and {} jobs, which contradicts optimality",
                counts[t0 as usize], counts[t1 as usize]
            )));
        }
        let lo = jobs.iter().map(|&j| x.start(j)).min().unwrap_or(0);
        let hi = jobs.iter().map(|&j| x.start(j)).max().unwrap_or(0);
        let window: Vec<usize> = (0..x.len()).filter(|&j| (lo..=hi).contains(&x.start(j))).collect();
        let packed = coffman_graham(&self.reach, &window);
        let len = packed.iter().max().map_or(0, |m| m + 1);
        if len != hi - lo + 2 {
            return Err(Error::Invariant(format!(
                "window [{lo}, {hi}] repacked on {len} steps instead of {}",
                hi - lo + 2
            )));
        }
        let mut starts = x.starts().to_vec();
        for (&j, &s) in window.iter().zip(&packed) {
            starts[j] = lo + s;
        }
        for (j, s) in starts.iter_mut().enumerate() {
            if x.start(j) > hi {
                *s += 1;
            }
        }
        let out = Schedule::new(starts);
        self.check_schedule(&out, c + 1).map_err(invariant)?;
        if unit_f(&out) != f + 2 {
            return Err(Error::Invariant(format!("window repack reached F = {}, expected {}", unit_f(&out), f + 2)));
        }
        Ok(out)
    }
}

fn invariant(e: Error) -> Error {
    match e {
        Error::Precondition(m) => Error::Invariant(m),
        other => other,
    }
}

/// Elementary operation with `x_a < x_b`, in the time frame of `starts`.
fn elementary_forward(starts: &[u64], reach: &Reachability, a: usize, b: usize) -> (Schedule, ElementaryDecomposition) {
    let (xa, xb) = (starts[a], starts[b]);
    let preds_at = |t: u64| -> Vec<usize> { (0..starts.len()).filter(|&j| starts[j] == t && reach.reaches(j, b)).collect() };
    let mut anchors = vec![xa];
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for t in xa + 1..xb {
        let p = preds_at(t);
        if !p.is_empty() {
            anchors.push(t);
            alpha.push((0..starts.len()).filter(|&j| starts[j] == t && !p.contains(&j)).collect());
            beta.push(p);
        }
    }
    anchors.push(xb);
    let gaps = anchors
        .windows(2)
        .map(|w| (0..starts.len()).filter(|&j| w[0] < starts[j] && starts[j] < w[1]).collect())
        .collect();
    let mut out = starts.to_vec();
    for (k, block) in beta.iter().enumerate() {
        for &j in block {
            out[j] = anchors[k];
        }
    }
    out[b] = anchors[anchors.len() - 2];
    let d = ElementaryDecomposition {
        anchors,
        alpha,
        beta,
        gaps,
        mirrored: false,
    };
    (Schedule::new(out), d)
}

/// Readable one-line rendering of a unit schedule, step by step.
pub fn render_steps(x: &Schedule) -> String {
    let mut s = String::new();
    for (t, col) in x.columns().iter().enumerate() {
        if t > 0 {
            s.push_str(" | ");
        }
        s.push_str(&format!("{t}:{col:?}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluate_f;

    fn uet(n: usize, arcs: &[(usize, usize)]) -> Instance {
        Instance::uet(n, 2).unwrap().with_arcs(arcs.to_vec()).unwrap()
    }

    // a=0, c1=1, c2=2, q=3, b=4, w=5
    fn six() -> Instance {
        uet(6, &[(0, 1), (1, 2), (3, 4)])
    }

    #[test]
    fn profile_values() {
        let p = FStarProfile {
            path_len: 5,
            m_star_p: 4,
            m_star: 5,
            job_count: 12,
        };
        assert_eq!(p.value(5).unwrap(), 9);
        assert_eq!(p.value(6).unwrap(), 11);
        assert_eq!(p.value(7).unwrap(), 12);
        assert_eq!(p.value(40).unwrap(), 12);
        assert!(p.value(4).is_err());
    }

    #[test]
    fn anti_chain_profile() {
        let p = fstar_profile(&Instance::uet(4, 2).unwrap()).unwrap();
        assert_eq!((p.path_len, p.m_star_p, p.m_star), (1, 1, 2));
        assert_eq!(p.value(1).unwrap(), 2);
        assert_eq!(p.value(2).unwrap(), 4);
    }

    #[test]
    fn elementary_example() {
        let inst = six();
        let s = L2PrecSolver::new(&inst).unwrap();
        let x = Schedule::new(vec![0, 1, 2, 1, 2, 2]);
        assert_eq!(evaluate_f(&inst, &x).unwrap(), 5);
        let y = s.elementary_operation(&x, 0, 4).unwrap();
        assert_eq!(y.starts(), &[0, 1, 2, 0, 1, 2]);
        assert_eq!(evaluate_f(&inst, &y).unwrap(), 6);
        let d = s.decompose(&x, 0, 4).unwrap();
        assert_eq!(d.anchors, vec![0, 1, 2]);
        assert_eq!(d.beta, vec![vec![3]]);
        assert_eq!(d.alpha, vec![vec![1]]);
    }

    #[test]
    fn elementary_two_jobs_at_b_keeps_f() {
        let inst = uet(5, &[(0, 1), (1, 2), (3, 4)]);
        let s = L2PrecSolver::new(&inst).unwrap();
        let x = Schedule::new(vec![0, 1, 2, 1, 2]);
        let y = s.elementary_operation(&x, 0, 4).unwrap();
        assert_eq!(unit_f(&y), unit_f(&x));
    }

    #[test]
    fn elementary_without_anchor() {
        let inst = uet(3, &[(0, 1)]);
        let s = L2PrecSolver::new(&inst).unwrap();
        let x = Schedule::new(vec![0, 1, 1]);
        let y = s.elementary_operation(&x, 0, 2).unwrap();
        assert_eq!(y.starts(), &[0, 1, 0]);
    }

    #[test]
    fn elongations() {
        let tri = Schedule::new(vec![0, 0, 0]);
        let y = one_job_elongation(&tri).unwrap();
        assert_eq!(y.starts(), &[0, 0, 1]);
        assert_eq!((unit_f(&tri), unit_f(&y)), (2, 3));
        let quad = Schedule::new(vec![0, 0, 0, 0]);
        let y = two_job_elongation(&quad).unwrap();
        assert_eq!(y.starts(), &[0, 0, 1, 1]);
        assert_eq!(unit_f(&y), 4);
        assert!(two_job_elongation(&tri).is_err());

        let x = Schedule::new(vec![0, 1, 2, 1, 2, 2]);
        let y = one_job_elongation(&x).unwrap();
        assert_eq!(unit_f(&y), 6);
        assert_eq!(unit_makespan(&y), 4);
        assert!(check_feasible_with_deadline(&six(), &y, None).is_empty());
    }

    #[test]
    fn solve_examples() {
        let chain = uet(3, &[(0, 1), (1, 2)]);
        let s = L2PrecSolver::new(&chain).unwrap();
        assert_eq!(s.solve(3).unwrap().starts(), &[0, 1, 2]);
        let anti = Instance::uet(4, 2).unwrap();
        assert_eq!(unit_f(&L2PrecSolver::new(&anti).unwrap().solve(2).unwrap()), 4);
        assert!(matches!(s.solve(2), Err(Error::InfeasibleDeadline { .. })));
    }

    #[test]
    fn improvement_examples() {
        let chain = uet(4, &[(0, 1), (1, 2), (2, 3)]);
        let s = L2PrecSolver::new(&chain).unwrap();
        let x = s.earliest_schedule();
        assert_eq!(s.improve_at_min_makespan(&x).unwrap(), x);
        let pair = Instance::uet(2, 2).unwrap();
        let s = L2PrecSolver::new(&pair).unwrap();
        let x = s.earliest_schedule();
        assert_eq!(s.improve_at_min_makespan(&x).unwrap(), x);
    }

    #[test]
    fn base_case_sequence() {
        let inst = six();
        let s = L2PrecSolver::new(&inst).unwrap();
        let x = Schedule::new(vec![0, 1, 2, 1, 2, 2]);
        let seq = AugmentingSequence::new(vec![0, 4]).unwrap();
        let y = s.apply_augmenting_sequence_min_makespan(&x, &seq).unwrap();
        assert_eq!(unit_f(&y), 6);
    }

    #[test]
    fn wrong_class_rejected() {
        let inst = Instance::new(vec![2], vec![1], 2).unwrap();
        assert!(matches!(L2PrecSolver::new(&inst), Err(Error::WrongClass(_))));
    }
}
