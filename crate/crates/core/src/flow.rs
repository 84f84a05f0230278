//! Min-cost flow by successive shortest paths with Dijkstra and node
//! potentials. Costs must be non-negative.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
    pub cost: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowNetwork {
    nodes: usize,
    arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { nodes, arcs: Vec::new() }
    }

    pub fn add_node(&mut self) -> usize {
        self.nodes += 1;
        self.nodes - 1
    }

    /// Adds an arc and returns its index.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: u64, cost: u64) -> usize {
        self.arcs.push(FlowArc { from, to, capacity, cost });
        self.arcs.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowSolution {
    /// Flow on each arc, in insertion order.
    pub flow: Vec<u64>,
    pub value: u64,
    pub cost: u64,
}

struct Residual {
    to: Vec<usize>,
    cap: Vec<u64>,
    cost: Vec<i64>,
    head: Vec<Vec<usize>>,
}

impl Residual {
    fn new(net: &FlowNetwork) -> Self {
        let mut r = Residual {
            to: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
            head: vec![Vec::new(); net.nodes],
        };
        for a in &net.arcs {
            // edge 2k forward, 2k + 1 backward
            r.head[a.from].push(r.to.len());
            r.to.push(a.to);
            r.cap.push(a.capacity);
            r.cost.push(a.cost as i64);
            r.head[a.to].push(r.to.len());
            r.to.push(a.from);
            r.cap.push(0);
            r.cost.push(-(a.cost as i64));
        }
        r
    }

    fn reachable_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.head[v] {
                if self.cap[e] > 0 && !seen[self.to[e]] {
                    seen[self.to[e]] = true;
                    stack.push(self.to[e]);
                }
            }
        }
        seen
    }
}

/// Sends `required` units from `source` to `sink` at minimum cost. When the
/// maximum flow is smaller, reports the nodes on the source side of the
/// residual cut.
pub fn min_cost_flow(net: &FlowNetwork, source: usize, sink: usize, required: u64) -> Result<FlowSolution> {
    if net.arcs.iter().any(|a| a.from >= net.nodes || a.to >= net.nodes) {
        return Err(Error::Precondition("arc endpoint out of range".into()));
    }
    let n = net.nodes;
    let mut r = Residual::new(net);
    let mut potential = vec![0i64; n];
    let mut value = 0u64;
    let mut cost = 0i64;
    while value < required {
        let mut dist = vec![i64::MAX; n];
        let mut via: Vec<Option<usize>> = vec![None; n];
        dist[source] = 0;
        let mut heap = BinaryHeap::from([Reverse((0i64, source))]);
        while let Some(Reverse((d, v))) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &e in &r.head[v] {
                if r.cap[e] == 0 {
                    continue;
                }
                let w = r.to[e];
                let nd = d + r.cost[e] + potential[v] - potential[w];
                if nd < dist[w] {
                    dist[w] = nd;
                    via[w] = Some(e);
                    heap.push(Reverse((nd, w)));
                }
            }
        }
        if dist[sink] == i64::MAX {
            let side = r.reachable_from(source);
            return Err(Error::FlowInfeasible {
                required,
                achieved: value,
                source_side: (0..n).filter(|&v| side[v]).collect(),
            });
        }
        for v in 0..n {
            if dist[v] != i64::MAX {
                potential[v] += dist[v];
            }
        }
        let mut push = required - value;
        let mut v = sink;
        while let Some(e) = via[v] {
            push = push.min(r.cap[e]);
            v = r.to[e ^ 1];
        }
        let mut v = sink;
        while let Some(e) = via[v] {
            r.cap[e] -= push;
            r.cap[e ^ 1] += push;
            cost += r.cost[e] * push as i64;
            v = r.to[e ^ 1];
        }
        value += push;
    }
    let flow = (0..net.arcs.len()).map(|k| r.cap[2 * k + 1]).collect();
    Ok(FlowSolution {
        flow,
        value,
        cost: cost as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_path() {
        let mut net = FlowNetwork::new(3);
        net.add_arc(0, 1, 3, 0);
        net.add_arc(1, 2, 3, 0);
        let s = min_cost_flow(&net, 0, 2, 3).unwrap();
        assert_eq!((s.value, s.cost), (3, 0));
        assert_eq!(s.flow, vec![3, 3]);
    }

    #[test]
    fn prefers_cheap_arc() {
        let mut net = FlowNetwork::new(2);
        net.add_arc(0, 1, 1, 0);
        net.add_arc(0, 1, 10, 1);
        let s = min_cost_flow(&net, 0, 1, 3).unwrap();
        assert_eq!(s.cost, 2);
        assert_eq!(s.flow, vec![1, 2]);
    }

    #[test]
    fn zero_capacity_is_infeasible() {
        let mut net = FlowNetwork::new(3);
        net.add_arc(0, 1, 2, 0);
        net.add_arc(1, 2, 0, 0);
        match min_cost_flow(&net, 0, 2, 2) {
            Err(Error::FlowInfeasible { achieved, source_side, .. }) => {
                assert_eq!(achieved, 0);
                assert_eq!(source_side, vec![0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
