//! Seeded random instances.

use std::fmt;
use std::str::FromStr;

use leveling_core::l2prec::fstar_profile;
use leveling_core::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// UET precedence DAG, unit consumption, `L = 2`, `M = n`.
    Dag,
    /// UET in-forest, unit consumption, `L` in 1..=3, `M = n`.
    InTree,
    /// Release/due windows, unit consumption, `L = 1`, `M` = horizon.
    Windows,
    /// No precedence or dates, mixed consumptions, `L = 2`.
    Free,
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dag" => Ok(Kind::Dag),
            "in-tree" => Ok(Kind::InTree),
            "windows" => Ok(Kind::Windows),
            "free" => Ok(Kind::Free),
            other => Err(format!("unknown kind `{other}` (expected dag, in-tree, windows or free)")),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Dag => "dag",
            Kind::InTree => "in-tree",
            Kind::Windows => "windows",
            Kind::Free => "free",
        })
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random DAG arcs over `0..n`: each forward pair with probability
/// `density`, under a random relabeling.
pub fn random_arcs(rng: &mut impl Rng, n: usize, density: f64) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut arcs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                arcs.push((perm[a], perm[b]));
            }
        }
    }
    arcs
}

/// Each job but the last points at a random later job with probability 0.8.
pub fn random_in_tree_arcs(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut arcs = Vec::new();
    for v in 0..n.saturating_sub(1) {
        if rng.gen_bool(0.8) {
            arcs.push((perm[v], perm[rng.gen_range(v + 1..n)]));
        }
    }
    arcs
}

/// Windows `[r_i, d_i]` inside `[0, horizon]` with `r_i + p_i <= d_i`.
pub fn random_windows(rng: &mut impl Rng, p: &[u64], horizon: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = Vec::with_capacity(p.len());
    let mut d = Vec::with_capacity(p.len());
    for &pi in p {
        let ri = rng.gen_range(0..=horizon - pi);
        let di = rng.gen_range(ri + pi..=horizon);
        r.push(ri);
        d.push(di);
    }
    (r, d)
}

pub fn generate(kind: Kind, n: usize, seed: u64) -> Instance {
    let mut rng = rng(seed);
    generate_with(kind, n, &mut rng)
}

pub fn generate_with(kind: Kind, n: usize, rng: &mut impl Rng) -> Instance {
    let m = (n as u64).max(1);
    match kind {
        Kind::Dag => {
            let density = rng.gen_range(0.1..0.5);
            let arcs = random_arcs(rng, n, density);
            Instance::uet(n, 2)
                .and_then(|i| i.with_arcs(arcs))
                .and_then(|i| i.with_deadline(Some(m)))
        }
        Kind::InTree => {
            let arcs = random_in_tree_arcs(rng, n);
            let level = rng.gen_range(1..=3);
            Instance::uet(n, level)
                .and_then(|i| i.with_arcs(arcs))
                .and_then(|i| i.with_deadline(Some(m)))
        }
        Kind::Windows => {
            let p: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
            let horizon = rng.gen_range(3..=(n as u64 + 3));
            let (r, d) = random_windows(rng, &p, horizon);
            Instance::new(p, vec![1; n], 1)
                .and_then(|i| i.with_windows(r, d))
                .and_then(|i| i.with_deadline(Some(horizon)))
        }
        Kind::Free => {
            let p: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
            let c: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
            let total: u64 = p.iter().sum();
            let longest = p.iter().copied().max().unwrap_or(1);
            let m = longest.max(total.div_ceil(2));
            Instance::new(p, c, 2).and_then(|i| i.with_deadline(Some(m)))
        }
    }
    .expect("generated instances satisfy the model invariants")
}

/// First seed in `0..max_seeds` whose `dag` instance on `n` jobs has the
/// given critical path length and matching sizes.
pub fn search_dag_profile(
    n: usize,
    path_len: u64,
    m_star_p: u64,
    m_star: u64,
    max_seeds: u64,
) -> Option<(u64, Instance)> {
    (0..max_seeds).find_map(|seed| {
        let inst = generate(Kind::Dag, n, seed);
        let prof = fstar_profile(&inst).ok()?;
        (prof.path_len == path_len && prof.m_star_p == m_star_p && prof.m_star == m_star).then_some((seed, inst))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::serialize_instance;

    #[test]
    fn deterministic() {
        let a = serialize_instance(&generate(Kind::InTree, 5, 42));
        let b = serialize_instance(&generate(Kind::InTree, 5, 42));
        assert_eq!(a, b);
    }

    #[test]
    fn single_dag_job() {
        for seed in 0..20 {
            let inst = generate(Kind::Dag, 1, seed);
            assert_eq!(inst.job_count(), 1);
            assert!(inst.arcs().is_empty());
        }
    }

    #[test]
    fn windows_hold() {
        let inst = generate(Kind::Windows, 3, 7);
        let (r, d) = (inst.release().unwrap(), inst.due().unwrap());
        for i in 0..3 {
            assert!(r[i] + inst.duration(i) <= d[i]);
        }
    }
}
