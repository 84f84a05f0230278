//! Precedence-DAG utilities and the independence graphs between jobs.
//!
//! Ties are always broken by the smallest job index, so every routine here
//! is deterministic.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::bitset::BitRow;
use crate::{Error, Instance, Result};

/// Topological order of the jobs; among available jobs the smallest index
/// comes first.
pub fn topological_order(instance: &Instance) -> Result<Vec<usize>> {
    let n = instance.job_count();
    let succ = instance.successors();
    let mut indeg = vec![0usize; n];
    for &(_, b) in instance.arcs() {
        indeg[b] += 1;
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(Reverse(w));
            }
        }
    }
    if order.len() < n {
        let job = (0..n).find(|&i| indeg[i] > 0).unwrap_or(0);
        return Err(Error::Cycle { job });
    }
    Ok(order)
}

/// Reachability matrix of the precedence DAG: `reaches(i, j)` iff there is a
/// directed path of length at least one from `i` to `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reachability {
    rows: Vec<BitRow>,
}

impl Reachability {
    pub fn job_count(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn reaches(&self, from: usize, to: usize) -> bool {
        self.rows[from].get(to)
    }

    /// Neither job precedes the other (and they are distinct).
    #[inline]
    pub fn independent(&self, a: usize, b: usize) -> bool {
        a != b && !self.reaches(a, b) && !self.reaches(b, a)
    }

    /// Jobs reachable from `job`, ascending.
    pub fn descendants(&self, job: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[job].ones()
    }

    /// The same relation with every arc reversed.
    pub fn reversed(&self) -> Reachability {
        let n = self.rows.len();
        let mut rows = vec![BitRow::new(n); n];
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                rows[j].set(i);
            }
        }
        Reachability { rows }
    }

    /// Immediate successors in the transitive reduction of the relation
    /// restricted to `jobs`, as positions into `jobs`.
    pub fn reduced_successors(&self, jobs: &[usize]) -> Vec<Vec<usize>> {
        let k = jobs.len();
        let mut out = vec![Vec::new(); k];
        for a in 0..k {
            for b in 0..k {
                if !self.reaches(jobs[a], jobs[b]) {
                    continue;
                }
                let implied = (0..k).any(|c| self.reaches(jobs[a], jobs[c]) && self.reaches(jobs[c], jobs[b]));
                if !implied {
                    out[a].push(b);
                }
            }
        }
        out
    }
}

/// Transitive closure by one DFS-style bitset sweep per node, processed in
/// reverse topological order.
pub fn transitive_closure(instance: &Instance) -> Result<Reachability> {
    let n = instance.job_count();
    let order = topological_order(instance)?;
    let succ = instance.successors();
    let mut rows = vec![BitRow::new(n); n];
    for &v in order.iter().rev() {
        let mut row = BitRow::new(n);
        for &w in &succ[v] {
            row.set(w);
            row.union_with(&rows[w]);
        }
        rows[v] = row;
    }
    Ok(Reachability { rows })
}

/// A maximum-weight chain of the precedence DAG, weight = sum of durations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPath {
    jobs: Vec<usize>,
    weight: u64,
}

impl CriticalPath {
    pub fn jobs(&self) -> &[usize] {
        &self.jobs
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    /// Sum of durations along the path: the minimum feasible makespan.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn contains(&self, job: usize) -> bool {
        self.jobs.contains(&job)
    }
}

/// For each job, the heaviest path starting at it (its own duration
/// included).
fn tail_weights(instance: &Instance) -> Result<Vec<u64>> {
    let order = topological_order(instance)?;
    let succ = instance.successors();
    let mut tail = vec![0u64; instance.job_count()];
    for &v in order.iter().rev() {
        let best = succ[v].iter().map(|&w| tail[w]).max().unwrap_or(0);
        tail[v] = instance.duration(v) + best;
    }
    Ok(tail)
}

pub fn critical_path(instance: &Instance) -> Result<CriticalPath> {
    let tail = tail_weights(instance)?;
    let succ = instance.successors();
    let Some(&weight) = tail.iter().max() else {
        return Ok(CriticalPath { jobs: Vec::new(), weight: 0 });
    };
    let mut cur = (0..tail.len()).find(|&i| tail[i] == weight).unwrap_or(0);
    let mut jobs = vec![cur];
    loop {
        let rest = tail[cur] - instance.duration(cur);
        if rest == 0 {
            break;
        }
        let next = succ[cur]
            .iter()
            .copied()
            .filter(|&w| tail[w] == rest)
            .min()
            .ok_or_else(|| Error::Invariant(format!("no successor of {cur} continues the critical path")))?;
        jobs.push(next);
        cur = next;
    }
    Ok(CriticalPath { jobs, weight })
}

/// Latest start times `M - (heaviest path from i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatestStartTimes(Vec<u64>);

impl LatestStartTimes {
    pub fn get(&self, job: usize) -> u64 {
        self.0[job]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

pub fn latest_start_times(instance: &Instance, deadline: u64) -> Result<LatestStartTimes> {
    let tail = tail_weights(instance)?;
    let critical = tail.iter().copied().max().unwrap_or(0);
    if deadline < critical {
        return Err(Error::InfeasibleDeadline { deadline, critical });
    }
    Ok(LatestStartTimes(tail.iter().map(|t| deadline - t).collect()))
}

/// Earliest precedence-feasible start of every job (release dates ignored).
pub fn earliest_start_times(instance: &Instance) -> Result<Vec<u64>> {
    let order = topological_order(instance)?;
    let pred = instance.predecessors();
    let mut est = vec![0u64; instance.job_count()];
    for &v in &order {
        est[v] = pred[v].iter().map(|&u| est[u] + instance.duration(u)).max().unwrap_or(0);
    }
    Ok(est)
}

/// Every job has at most one direct successor.
pub fn is_in_tree(instance: &Instance) -> bool {
    let mut out = vec![0usize; instance.job_count()];
    let mut seen = alloc::collections::BTreeSet::new();
    for &(a, b) in instance.arcs() {
        if seen.insert((a, b)) {
            out[a] += 1;
        }
    }
    out.iter().all(|&d| d <= 1)
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(vertices: usize) -> Self {
        SimpleGraph { adj: vec![Vec::new(); vertices] }
    }

    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = SimpleGraph::new(vertices);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// Adds `{a, b}`; self-loops and duplicates are ignored.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a == b || self.has_edge(a, b) {
            return;
        }
        let ia = self.adj[a].partition_point(|&x| x < b);
        self.adj[a].insert(ia, b);
        let ib = self.adj[b].partition_point(|&x| x < a);
        self.adj[b].insert(ib, a);
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&b| b > a).map(|&b| (a, b)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// `{i, j}` is an edge iff the jobs are independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceGraph {
    graph: SimpleGraph,
}

impl IndependenceGraph {
    pub fn from_reachability(reach: &Reachability) -> Self {
        let n = reach.job_count();
        let mut graph = SimpleGraph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if reach.independent(a, b) {
                    graph.add_edge(a, b);
                }
            }
        }
        IndependenceGraph { graph }
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }
}

pub fn independence_graph(instance: &Instance) -> Result<IndependenceGraph> {
    Ok(IndependenceGraph::from_reachability(&transitive_closure(instance)?))
}

/// Independent pairs with one job on a chain `P` and the other off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteIndependenceGraph {
    left: Vec<usize>,
    right: Vec<usize>,
    on_left: Vec<bool>,
    graph: SimpleGraph,
}

impl BipartiteIndependenceGraph {
    /// Fails when `chain` is not a chain of the precedence order.
    pub fn from_reachability(reach: &Reachability, chain: &[usize]) -> Result<Self> {
        let n = reach.job_count();
        let mut on_left = vec![false; n];
        for (k, &j) in chain.iter().enumerate() {
            if j >= n || on_left[j] {
                return Err(Error::Precondition(format!("job {j} cannot appear on the chain")));
            }
            if k > 0 && !reach.reaches(chain[k - 1], j) {
                return Err(Error::Precondition(format!(
                    "jobs {} and {j} are not ordered along the chain",
                    chain[k - 1]
                )));
            }
            on_left[j] = true;
        }
        let left = chain.to_vec();
        let right: Vec<usize> = (0..n).filter(|&j| !on_left[j]).collect();
        let mut graph = SimpleGraph::new(n);
        for &a in &left {
            for &b in &right {
                if reach.independent(a, b) {
                    graph.add_edge(a, b);
                }
            }
        }
        Ok(BipartiteIndependenceGraph { left, right, on_left, graph })
    }

    /// Explicit bipartite graph over `0..vertices` with the given left side.
    pub fn from_parts(vertices: usize, left: &[usize], edges: &[(usize, usize)]) -> Result<Self> {
        let mut on_left = vec![false; vertices];
        for &l in left {
            on_left[l] = true;
        }
        let mut graph = SimpleGraph::new(vertices);
        for &(a, b) in edges {
            if on_left[a] == on_left[b] {
                return Err(Error::Precondition(format!("edge ({a}, {b}) does not cross the bipartition")));
            }
            graph.add_edge(a, b);
        }
        Ok(BipartiteIndependenceGraph {
            left: left.to_vec(),
            right: (0..vertices).filter(|&v| !on_left[v]).collect(),
            on_left,
            graph,
        })
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn is_left(&self, v: usize) -> bool {
        self.on_left[v]
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }
}

pub fn bipartite_independence_graph(instance: &Instance, chain: &[usize]) -> Result<BipartiteIndependenceGraph> {
    BipartiteIndependenceGraph::from_reachability(&transitive_closure(instance)?, chain)
}
