#![allow(dead_code)]

use leveling_core::Instance;
use proptest::prelude::*;

/// Arcs of a random DAG on `n` jobs: an upper-triangular mask over a
/// shuffled labeling.
pub fn dag_arcs(max_n: usize, density: f64) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        (
            Just(n),
            proptest::collection::vec(proptest::bool::weighted(density), pairs),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
            .prop_map(|(n, mask, perm)| {
                let mut arcs = Vec::new();
                let mut k = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if mask[k] {
                            arcs.push((perm[a], perm[b]));
                        }
                        k += 1;
                    }
                }
                (n, arcs)
            })
    })
}

pub fn uet_dag(max_n: usize, level: u64) -> impl Strategy<Value = Instance> {
    dag_arcs(max_n, 0.3).prop_map(move |(n, arcs)| Instance::uet(n, level).unwrap().with_arcs(arcs).unwrap())
}

/// UET in-forest: every job but the roots points at one later job.
pub fn in_tree(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec((any::<bool>(), any::<prop::sample::Index>()), n),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
            .prop_map(|(n, picks, perm)| {
                let mut arcs = Vec::new();
                for (v, (has, idx)) in picks.iter().enumerate().take(n.saturating_sub(1)) {
                    // the last job is always a root; most others get a parent
                    if *has || v % 3 != 0 {
                        let parent = v + 1 + idx.index(n - v - 1);
                        arcs.push((perm[v], perm[parent]));
                    }
                }
                (n, arcs)
            })
    })
}

pub fn windows(max_n: usize, max_p: u64, horizon: u64) -> impl Strategy<Value = (Vec<u64>, Vec<u64>, Vec<u64>)> {
    proptest::collection::vec((1..=max_p, 0..horizon, 0..horizon), 1..=max_n).prop_map(move |jobs| {
        let mut p = Vec::new();
        let mut r = Vec::new();
        let mut d = Vec::new();
        for (pi, a, slack) in jobs {
            let pi = pi.min(horizon);
            let ri = a.min(horizon - pi);
            let di = (ri + pi + slack).min(horizon);
            p.push(pi);
            r.push(ri);
            d.push(di);
        }
        (p, r, d)
    })
}
