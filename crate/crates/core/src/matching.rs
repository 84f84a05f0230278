//! Maximum-cardinality matchings.
//!
//! The bipartite routine repeats BFS augmentation; the general routine is
//! Edmonds' blossom algorithm in its O(V^3) form. Both scan vertices and
//! neighbors in ascending order, so results are reproducible.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{BipartiteIndependenceGraph, SimpleGraph};

/// A set of vertex-disjoint edges, stored as a mate array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(vertices: usize) -> Self {
        Matching { mate: vec![None; vertices] }
    }

    /// Builds a matching from explicit pairs; `None` if two pairs share a
    /// vertex or a pair is a loop.
    pub fn from_pairs(vertices: usize, pairs: &[(usize, usize)]) -> Option<Self> {
        let mut m = Matching::empty(vertices);
        for &(a, b) in pairs {
            if a == b || m.mate[a].is_some() || m.mate[b].is_some() {
                return None;
            }
            m.mate[a] = Some(b);
            m.mate[b] = Some(a);
        }
        Some(m)
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn is_matched(&self, v: usize) -> bool {
        self.mate[v].is_some()
    }

    pub fn size(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }

    /// Matched pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(a, m)| m.filter(|&b| b > a).map(|b| (a, b)))
            .collect()
    }

    /// Every matched pair is an edge of `graph` and the mate array is
    /// symmetric.
    pub fn is_valid_in(&self, graph: &SimpleGraph) -> bool {
        self.mate.len() == graph.vertex_count()
            && self.mate.iter().enumerate().all(|(a, m)| match *m {
                None => true,
                Some(b) => self.mate[b] == Some(a) && graph.has_edge(a, b),
            })
    }

    /// Checks that `path` is an augmenting path: distinct vertices, edges of
    /// `graph`, free endpoints, and alternating unmatched/matched edges
    /// starting with an unmatched one.
    pub fn is_augmenting_path(&self, graph: &SimpleGraph, path: &[usize]) -> bool {
        if path.len() < 2 || !path.len().is_multiple_of(2) {
            return false;
        }
        let mut seen = vec![false; graph.vertex_count()];
        for &v in path {
            if v >= seen.len() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        if self.is_matched(path[0]) || self.is_matched(path[path.len() - 1]) {
            return false;
        }
        path.windows(2).enumerate().all(|(k, w)| {
            graph.has_edge(w[0], w[1]) && (k % 2 == 1) == (self.mate[w[0]] == Some(w[1]))
        })
    }

    /// Flips the edges of an augmenting path, growing the matching by one.
    pub fn augment(&mut self, path: &[usize]) {
        for pair in path.chunks_exact(2) {
            self.mate[pair[0]] = Some(pair[1]);
            self.mate[pair[1]] = Some(pair[0]);
        }
    }
}

/// Shortest augmenting path from a free left vertex to a free right vertex,
/// found by one multi-source BFS.
pub fn bipartite_augmenting_path(graph: &BipartiteIndependenceGraph, matching: &Matching) -> Option<Vec<usize>> {
    let g = graph.graph();
    let n = g.vertex_count();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut queue = VecDeque::new();
    for &l in graph.left() {
        if !matching.is_matched(l) {
            visited[l] = true;
            queue.push_back(l);
        }
    }
    while let Some(l) = queue.pop_front() {
        for &r in g.neighbors(l) {
            if visited[r] || matching.mate(l) == Some(r) {
                continue;
            }
            visited[r] = true;
            parent[r] = Some(l);
            match matching.mate(r) {
                None => {
                    let mut path = vec![r];
                    let mut v = r;
                    while let Some(p) = parent[v] {
                        path.push(p);
                        v = p;
                    }
                    path.reverse();
                    return Some(path);
                }
                Some(next) => {
                    if !visited[next] {
                        visited[next] = true;
                        parent[next] = Some(r);
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    None
}

pub fn max_matching_bipartite(graph: &BipartiteIndependenceGraph) -> Matching {
    let mut m = Matching::empty(graph.graph().vertex_count());
    while let Some(path) = bipartite_augmenting_path(graph, &m) {
        m.augment(&path);
    }
    m
}

struct Blossom<'a> {
    graph: &'a SimpleGraph,
    mate: &'a [Option<usize>],
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.base.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                None => break,
                Some(m) => a = self.parent[m].expect("outer vertex without parent"),
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            let m = self.mate[b].expect("walked past the root");
            b = self.parent[m].expect("outer vertex without parent");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("blossom vertex is matched");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("outer vertex without parent");
        }
    }

    /// Grows an alternating tree from `root`; returns an augmenting path
    /// starting at `root`.
    fn search(&mut self, root: usize) -> Option<Vec<usize>> {
        let n = self.graph.vertex_count();
        self.parent.iter_mut().for_each(|p| *p = None);
        self.used.iter_mut().for_each(|u| *u = false);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in self.graph.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_is_outer = to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_outer {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(self.unwind(to)),
                        Some(m) => {
                            self.used[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn unwind(&self, end: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut v = end;
        loop {
            let p = self.parent[v].expect("inner vertex without parent");
            path.push(v);
            path.push(p);
            match self.mate[p] {
                None => break,
                Some(w) => v = w,
            }
        }
        path.reverse();
        path
    }
}

/// An augmenting path for `matching` in `graph`, or `None` iff the matching
/// is maximum. Free roots are tried in ascending order.
pub fn augmenting_path(graph: &SimpleGraph, matching: &Matching) -> Option<Vec<usize>> {
    let n = graph.vertex_count();
    let mut search = Blossom {
        graph,
        mate: &matching.mate,
        parent: vec![None; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
    };
    (0..n)
        .filter(|&r| !matching.is_matched(r) && !graph.neighbors(r).is_empty())
        .find_map(|r| search.search(r))
}

pub fn max_matching_general(graph: &SimpleGraph) -> Matching {
    let mut m = Matching::empty(graph.vertex_count());
    while let Some(path) = augmenting_path(graph, &m) {
        debug_assert!(m.is_augmenting_path(graph, &path));
        m.augment(&path);
    }
    m
}
