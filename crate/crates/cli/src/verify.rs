//! Randomized solver-versus-oracle sweeps.

use std::time::{Duration, Instant};

use leveling_core::flow::min_cost_flow;
use leveling_core::graph::{critical_path, independence_graph};
use leveling_core::l2prec::{unit_f, L2PrecSolver};
use leveling_core::matching::max_matching_general;
use leveling_core::oracle::{brute_force_leveling, brute_force_matching, brute_force_pk_cmax, for_each_schedule};
use leveling_core::pmtn::{build_flow_network, solve_l2_pmtn, solve_unit_pmtn};
use leveling_core::preemptive::{check_preemptive, evaluate_f_preemptive};
use leveling_core::reductions::{
    least_loaded_partition, lift_unit_window_to_l2, machine_to_leveling, windows_to_chains, MachineInstance,
};
use leveling_core::special::{dp_l2_cmax, in_tree_structure_holds, split_sets, unit_resource_leveling, uet_in_tree_leveling};
use leveling_core::two_proc::coffman_graham_schedule;
use leveling_core::{check_feasible_with_deadline, evaluate_f, Error, Instance, Rational, Schedule};
use rand::Rng;

use crate::generate::{random_arcs, random_in_tree_arcs, random_windows, rng};

/// Result of checking one instance: `Ok(true)` checked, `Ok(false)` skipped
/// because the oracle refused it, `Err` a mismatch.
pub type Check = Result<bool, String>;

fn oracle(inst: &Instance, m: u64) -> Result<Option<u64>, String> {
    match brute_force_leveling(inst, m) {
        Ok((f, _)) => Ok(Some(f)),
        Err(Error::SearchSpaceTooLarge { .. }) => Ok(None),
        Err(e) => Err(format!("oracle failed: {e}")),
    }
}

fn feasible(inst: &Instance, x: &Schedule, m: u64) -> Result<(), String> {
    match check_feasible_with_deadline(inst, x, Some(m)).first() {
        Some(v) => Err(format!("infeasible schedule {:?}: {v}", x.starts())),
        None => Ok(()),
    }
}

fn int(q: u64) -> Rational {
    Rational::from_integer(q.into())
}

/// The level-2 precedence solver and its profile against the oracle for
/// every `M` in `[|P|, n]`.
pub fn check_l2prec(inst: &Instance) -> Check {
    let solver = L2PrecSolver::new(inst).map_err(|e| e.to_string())?;
    let prof = solver.profile();
    for m in prof.path_len..=inst.job_count() as u64 {
        let x = solver.solve(m).map_err(|e| format!("M = {m}: {e}"))?;
        feasible(inst, &x, m)?;
        let f = evaluate_f(inst, &x).map_err(|e| e.to_string())?;
        let Some(best) = oracle(inst, m)? else { return Ok(false) };
        if f != best || prof.value(m) != Ok(best) {
            return Err(format!("M = {m}: solver {f}, profile {:?}, oracle {best}", prof.value(m)));
        }
    }
    Ok(true)
}

/// Coffman-Graham makespan against `n - m*`, and the blossom matching
/// against brute force on the independence graph.
pub fn check_fujii(inst: &Instance) -> Check {
    let ind = independence_graph(inst).map_err(|e| e.to_string())?;
    let m_star = max_matching_general(ind.graph()).size();
    let brute = brute_force_matching(ind.graph()).map_err(|e| e.to_string())?;
    if m_star != brute {
        return Err(format!("blossom {m_star}, brute force {brute}"));
    }
    let x = coffman_graham_schedule(inst).map_err(|e| e.to_string())?;
    let cmax = x.makespan(inst);
    feasible(inst, &x, cmax)?;
    if x.columns().iter().any(|c| c.len() > 2) || cmax != (inst.job_count() - m_star) as u64 {
        return Err(format!("Coffman-Graham makespan {cmax}, n - m* = {}", inst.job_count() - m_star));
    }
    Ok(true)
}

/// No feasible schedule exceeds the two upper bounds of the profile.
pub fn check_bounds(inst: &Instance) -> Result<usize, String> {
    let prof = L2PrecSolver::new(inst).map_err(|e| e.to_string())?.profile();
    let mut bad = None;
    let mut total = 0;
    for m in prof.path_len..=inst.job_count() as u64 {
        total += for_each_schedule(inst, m, |x| {
            let f = unit_f(&Schedule::new(x.to_vec()));
            if bad.is_none()
                && (f > 2 * (m - prof.path_len) + prof.path_len + prof.m_star_p || f > m + prof.m_star)
            {
                bad = Some(format!("M = {m}: {x:?} has F = {f}"));
            }
        })
        .map_err(|e| e.to_string())?;
    }
    match bad {
        Some(b) => Err(b),
        None => Ok(total),
    }
}

pub fn check_in_tree(inst: &Instance) -> Check {
    let depth = critical_path(inst).map_err(|e| e.to_string())?.weight();
    let mut checked = true;
    for m in depth..=inst.job_count() as u64 {
        let x = uet_in_tree_leveling(inst, m).map_err(|e| format!("M = {m}: {e}"))?;
        feasible(inst, &x, m)?;
        if !in_tree_structure_holds(inst, &x, m).map_err(|e| e.to_string())? {
            return Err(format!("M = {m}: structure fails for {:?}", x.starts()));
        }
        let f = evaluate_f(inst, &x).map_err(|e| e.to_string())?;
        let Some(best) = oracle(inst, m)? else {
            checked = false;
            continue;
        };
        if f != best {
            return Err(format!("M = {m}: solver {f}, oracle {best}"));
        }
    }
    Ok(checked)
}

pub fn check_l1_seq(inst: &Instance, m: u64) -> Check {
    let x = unit_resource_leveling(inst, m).map_err(|e| e.to_string())?;
    feasible(inst, &x, m)?;
    let f = evaluate_f(inst, &x).map_err(|e| e.to_string())?;
    let want = inst.total_work().min(m);
    if f != want {
        return Err(format!("M = {m}: F = {f}, expected {want}"));
    }
    Ok(true)
}

/// Best value of the closed form over all subsets of the unit jobs.
fn subset_form(inst: &Instance, m: u64) -> u64 {
    let sets = split_sets(inst);
    if sets.p_j2 >= m {
        return 2 * m;
    }
    let lane = m - sets.p_j2;
    let k = sets.j1.len();
    let best = (0u64..1 << k)
        .map(|mask| {
            let b: u64 = (0..k).filter(|&q| mask >> q & 1 == 1).map(|q| inst.duration(sets.j1[q])).sum();
            b.min(lane) + (sets.p_j1 - b).min(lane)
        })
        .max()
        .unwrap_or(0);
    2 * sets.p_j2 + best
}

pub fn check_dp(inst: &Instance, m: u64) -> Check {
    let (f, x) = dp_l2_cmax(inst, m).map_err(|e| e.to_string())?;
    feasible(inst, &x, m)?;
    let real = evaluate_f(inst, &x).map_err(|e| e.to_string())?;
    let Some(best) = oracle(inst, m)? else { return Ok(false) };
    let form = subset_form(inst, m);
    if f != real || f != best || best != form {
        return Err(format!("M = {m}: dp {f}, schedule {real}, oracle {best}, closed form {form}"));
    }
    Ok(true)
}

/// Horizon of a window instance: its `M`, else the largest due date.
fn horizon(inst: &Instance) -> u64 {
    inst.deadline()
        .or_else(|| inst.due().and_then(|d| d.iter().copied().max()))
        .unwrap_or(0)
}

pub fn check_unit_pmtn(inst: &Instance) -> Check {
    let net = build_flow_network(inst).map_err(|e| e.to_string())?;
    let flow = min_cost_flow(&net.network, net.source, net.sink, inst.total_work()).map_err(|e| e.to_string())?;
    let sol = solve_unit_pmtn(inst).map_err(|e| e.to_string())?;
    let want = int(inst.total_work() - flow.cost);
    let eval = evaluate_f_preemptive(inst, &sol.schedule).map_err(|e| e.to_string())?;
    if sol.f != want || eval != want {
        return Err(format!("F = {}, re-evaluated {eval}, sum p - cost = {want}", sol.f));
    }
    if let Some(v) = check_preemptive(inst, &sol.schedule).first() {
        return Err(format!("extracted schedule broken: {v:?}"));
    }
    let Some(best) = oracle(inst, horizon(inst))? else { return Ok(false) };
    if inst.is_uet() && sol.f != int(best) {
        return Err(format!("unit jobs: flow {}, integer oracle {best}", sol.f));
    }
    if sol.f < int(best) {
        return Err(format!("flow {} below integer oracle {best}", sol.f));
    }
    Ok(true)
}

pub fn check_l2_pmtn(inst: &Instance) -> Check {
    let sol = solve_l2_pmtn(inst).map_err(|e| e.to_string())?;
    let eval = evaluate_f_preemptive(inst, &sol.schedule).map_err(|e| e.to_string())?;
    if eval != sol.f {
        return Err(format!("LP value {}, extracted schedule {eval}", sol.f));
    }
    if let Some(v) = check_preemptive(inst, &sol.schedule).first() {
        return Err(format!("extracted schedule broken: {v:?}"));
    }
    let Some(best) = oracle(inst, horizon(inst))? else { return Ok(false) };
    if sol.f < int(best) {
        return Err(format!("LP value {} below integer oracle {best}", sol.f));
    }
    Ok(true)
}

/// `k` machines finish by `M` exactly when the leveling instance reaches
/// `F = sum p`; when it does, the least-loaded split is a valid machine
/// schedule.
pub fn check_machine_equivalence(machine: &MachineInstance, k: usize, m: u64) -> Check {
    let inst = machine_to_leveling(machine, k as u64, m).map_err(|e| e.to_string())?;
    let cmax = brute_force_pk_cmax(&inst, k).map_err(|e| e.to_string())?;
    let fits = cmax.is_some_and(|c| c <= m);
    let full = match brute_force_leveling(&inst, m) {
        Ok((f, x)) if f == inst.total_work() => Some(x),
        Ok(_) | Err(Error::Infeasible(_)) => None,
        Err(Error::SearchSpaceTooLarge { .. }) => return Ok(false),
        Err(e) => return Err(e.to_string()),
    };
    if fits != full.is_some() {
        return Err(format!("{machine:?}, k = {k}, M = {m}: makespan {cmax:?}, full leveling {}", full.is_some()));
    }
    if let Some(x) = full {
        let part = least_loaded_partition(&inst, &x, k).map_err(|e| e.to_string())?;
        for a in 0..part.len() {
            for b in a + 1..part.len() {
                let (sa, sb) = (x.start(a), x.start(b));
                if part[a] == part[b] && sa + inst.duration(a) > sb && sb + inst.duration(b) > sa {
                    return Err(format!("jobs {a} and {b} overlap on machine {}", part[a]));
                }
            }
        }
    }
    Ok(true)
}

pub fn check_lift(inst: &Instance) -> Check {
    let m = inst.deadline().ok_or("instance needs M")?;
    let lifted = lift_unit_window_to_l2(inst).map_err(|e| e.to_string())?;
    let (Some(a), Some(b)) = (oracle(inst, m)?, oracle(&lifted, m)?) else { return Ok(false) };
    if b != a + m {
        return Err(format!("lifted optimum {b}, expected {a} + {m}"));
    }
    Ok(true)
}

pub fn check_chains(inst: &Instance) -> Check {
    let m = inst.deadline().ok_or("instance needs M")?;
    let chained = windows_to_chains(inst).map_err(|e| e.to_string())?;
    let (Some(a), Some(b)) = (oracle(inst, m)?, oracle(&chained, m)?) else { return Ok(false) };
    if a != b {
        return Err(format!("windows optimum {a}, chains optimum {b}"));
    }
    Ok(true)
}

/// Random corpora, one instance per seed.
pub mod corpus {
    use super::*;

    /// Sizes lean towards `max_n`; small cases are covered by the unit tests.
    fn size(g: &mut impl Rng, max_n: usize) -> usize {
        g.gen_range((max_n / 2).max(1)..=max_n)
    }

    pub fn uet_dag(seed: u64, max_n: usize) -> Instance {
        let mut g = rng(seed);
        let n = size(&mut g, max_n);
        let density = g.gen_range(0.1..0.6);
        Instance::uet(n, 2).unwrap().with_arcs(random_arcs(&mut g, n, density)).unwrap()
    }

    pub fn in_tree(seed: u64, max_n: usize, level: u64) -> Instance {
        let mut g = rng(seed);
        let n = size(&mut g, max_n);
        Instance::uet(n, level).unwrap().with_arcs(random_in_tree_arcs(&mut g, n)).unwrap()
    }

    /// General durations up to `max_p`, positive consumptions, `L = 1`, and
    /// a deadline between the critical path and the total work.
    pub fn l1_dag(seed: u64, max_n: usize, max_p: u64) -> (Instance, u64) {
        let mut g = rng(seed);
        let n = size(&mut g, max_n);
        let p: Vec<u64> = (0..n).map(|_| g.gen_range(1..=max_p)).collect();
        let c: Vec<u64> = (0..n).map(|_| g.gen_range(1..=3)).collect();
        let density = g.gen_range(0.0..0.5);
        let inst = Instance::new(p, c, 1).unwrap().with_arcs(random_arcs(&mut g, n, density)).unwrap();
        let lo = critical_path(&inst).unwrap().weight();
        let m = g.gen_range(lo..=inst.total_work() + 2);
        (inst, m)
    }

    pub fn free_l2(seed: u64, max_n: usize, max_p: u64, max_m: u64) -> (Instance, u64) {
        let mut g = rng(seed);
        let n = size(&mut g, max_n);
        let p: Vec<u64> = (0..n).map(|_| g.gen_range(1..=max_p)).collect();
        let c: Vec<u64> = (0..n).map(|_| g.gen_range(0..=4)).collect();
        let lo = *p.iter().max().unwrap();
        let m = g.gen_range(lo..=max_m.max(lo));
        (Instance::new(p, c, 2).unwrap(), m)
    }

    /// Windows inside `[0, M]` with the given consumption range.
    pub fn windows(seed: u64, max_n: usize, max_p: u64, max_m: u64, c: (u64, u64), level: u64) -> Instance {
        let mut g = rng(seed);
        let n = size(&mut g, max_n);
        let m = g.gen_range(max_p..=max_m);
        let p: Vec<u64> = (0..n).map(|_| g.gen_range(1..=max_p)).collect();
        let cs: Vec<u64> = (0..n).map(|_| g.gen_range(c.0..=c.1)).collect();
        let (r, d) = random_windows(&mut g, &p, m);
        Instance::new(p, cs, level)
            .unwrap()
            .with_windows(r, d)
            .unwrap()
            .with_deadline(Some(m))
            .unwrap()
    }

    pub fn machine(seed: u64, max_n: usize, max_p: u64) -> MachineInstance {
        let mut g = rng(seed);
        let n = size(&mut g, max_n);
        let mut mi = MachineInstance::new((0..n).map(|_| g.gen_range(1..=max_p)).collect());
        mi.arcs = random_arcs(&mut g, n, 0.3);
        mi
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const SUITES: [&str; 6] = ["l2prec", "intree", "l1", "dp", "pmtn", "reductions"];

fn run_checks(suite: &'static str, until: Instant, target: usize, mut check: impl FnMut(u64) -> Check) -> SuiteReport {
    let mut report = SuiteReport {
        suite,
        checked: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    let mut seed = 0u64;
    while report.checked < target && Instant::now() < until {
        match check(seed) {
            Ok(true) => report.checked += 1,
            Ok(false) => report.skipped += 1,
            Err(e) => {
                report.checked += 1;
                report.failures.push(format!("seed {seed}: {e}"));
            }
        }
        seed += 1;
    }
    report
}

fn both(a: Check, b: Check) -> Check {
    Ok(a? & b?)
}

/// Runs one suite for at most `budget`, stopping early after `target` checked
/// instances.
pub fn run_suite(suite: &str, budget: Duration, target: usize) -> Option<SuiteReport> {
    let until = Instant::now() + budget;
    Some(match suite {
        "l2prec" => run_checks("l2prec", until, target, |s| {
            let inst = corpus::uet_dag(s, 8);
            both(check_l2prec(&inst), check_fujii(&inst))
        }),
        "intree" => run_checks("intree", until, target, |s| check_in_tree(&corpus::in_tree(s, 8, 1 + s % 3))),
        "l1" => run_checks("l1", until, target, |s| {
            let (inst, m) = corpus::l1_dag(s, 8, 5);
            check_l1_seq(&inst, m)
        }),
        "dp" => run_checks("dp", until, target, |s| {
            let (inst, m) = corpus::free_l2(s, 7, 4, 12);
            check_dp(&inst, m)
        }),
        "pmtn" => run_checks("pmtn", until, target, |s| {
            let unit = corpus::windows(s, 6, 1 + s % 3, 7, (1, 1), 1 + s % 3);
            let two = corpus::windows(s, 5, 3, 6, (0, 3), 2);
            both(check_unit_pmtn(&unit), check_l2_pmtn(&two))
        }),
        "reductions" => run_checks("reductions", until, target, |s| {
            let machine = corpus::machine(s, 5, 3);
            let m = 1 + s % 8;
            let win = corpus::windows(s, 4, 3, 5, (1, 1), 1);
            both(
                both(check_machine_equivalence(&machine, 1 + (s % 2) as usize, m), check_lift(&win)),
                check_chains(&win),
            )
        }),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_briefly() {
        for s in SUITES {
            let r = run_suite(s, Duration::from_secs(20), 15).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failures);
            assert!(r.checked > 0, "{s} checked nothing");
        }
        assert!(run_suite("nope", Duration::from_secs(1), 1).is_none());
    }
}
