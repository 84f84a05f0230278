mod common;

use leveling_core::l2prec::{fstar_profile, unit_f, AugmentingSequence, L2PrecSolver, StepKind};
use leveling_core::oracle::{brute_force_leveling, for_each_schedule};
use leveling_core::{check_feasible_with_deadline, evaluate_f, Error, Instance, Schedule};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solver_matches_oracle(inst in common::uet_dag(8, 2)) {
        let solver = L2PrecSolver::new(&inst).unwrap();
        let prof = solver.profile();
        for m in prof.path_len..=inst.job_count() as u64 {
            let x = solver.solve(m).unwrap();
            prop_assert!(check_feasible_with_deadline(&inst, &x, Some(m)).is_empty());
            let (best, _) = brute_force_leveling(&inst, m).unwrap();
            prop_assert_eq!(evaluate_f(&inst, &x).unwrap(), best, "M = {}", m);
            prop_assert_eq!(prof.value(m).unwrap(), best);
        }
    }

    #[test]
    fn trace_steps_keep_their_gains(inst in common::uet_dag(9, 2)) {
        let solver = L2PrecSolver::new(&inst).unwrap();
        let prof = solver.profile();
        let trace = solver.solve_with_trace(prof.second_breakpoint().saturating_sub(1).max(prof.path_len)).unwrap();
        for pair in trace.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            match b.kind {
                StepKind::AugmentingSequence => {
                    prop_assert_eq!(b.f, a.f + 1);
                    prop_assert_eq!(b.makespan, a.makespan);
                }
                StepKind::TwoJobElongation | StepKind::GeneralizedAugmentingSequence => {
                    prop_assert_eq!(b.f, a.f + 2);
                    prop_assert_eq!(b.makespan, a.makespan + 1);
                }
                StepKind::OneJobElongation => {
                    prop_assert_eq!(b.f, a.f + 1);
                    prop_assert_eq!(b.makespan, a.makespan + 1);
                }
                _ => prop_assert!(false, "unexpected step {:?}", b.kind),
            }
            prop_assert!(check_feasible_with_deadline(&inst, &b.schedule, Some(b.makespan)).is_empty());
            prop_assert!(b.schedule.columns().iter().all(|c| !c.is_empty()));
        }
    }

    #[test]
    fn no_schedule_beats_the_bounds(inst in common::uet_dag(7, 2)) {
        let prof = fstar_profile(&inst).unwrap();
        for m in prof.path_len..=inst.job_count() as u64 {
            for_each_schedule(&inst, m, |x| {
                let f = unit_f(&Schedule::new(x.to_vec()));
                assert!(f <= 2 * (m - prof.path_len) + prof.path_len + prof.m_star_p);
                assert!(f <= m + prof.m_star);
            })
            .unwrap();
        }
    }

    #[test]
    fn oracle_ignores_labels(inst in common::uet_dag(7, 2), perm in Just((0..7).collect::<Vec<usize>>()).prop_shuffle()) {
        let n = inst.job_count();
        let perm: Vec<usize> = perm.into_iter().filter(|&v| v < n).collect();
        let arcs = inst.arcs().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let renamed = Instance::uet(n, 2).unwrap().with_arcs(arcs).unwrap();
        let prof = fstar_profile(&inst).unwrap();
        for m in prof.path_len..=n as u64 {
            prop_assert_eq!(brute_force_leveling(&inst, m).unwrap().0, brute_force_leveling(&renamed, m).unwrap().0);
        }
        prop_assert_eq!(prof, fstar_profile(&renamed).unwrap());
    }

    #[test]
    fn oracle_is_monotone_in_m(inst in common::uet_dag(7, 2)) {
        let prof = fstar_profile(&inst).unwrap();
        let mut last = 0;
        for m in prof.path_len..=inst.job_count() as u64 + 1 {
            let f = brute_force_leveling(&inst, m).unwrap().0;
            prop_assert!(f >= last);
            prop_assert!(f <= (2 * m).min(inst.job_count() as u64));
            last = f;
        }
    }
}

/// Two chains of three feed a common sink; plus two free jobs.
fn braided() -> Instance {
    Instance::uet(8, 2)
        .unwrap()
        .with_arcs(vec![(0, 1), (1, 2), (3, 4), (4, 5), (2, 6), (5, 6)])
        .unwrap()
}

#[test]
fn generalized_sequence_steps_appear() {
    // search small DAGs for one whose trajectory uses the generalized step
    let mut seen = 0;
    for seed in 0u64..400 {
        let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
        let mut next = || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        let n = 6 + (next() % 4) as usize;
        let mut arcs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if next() % 4 == 0 {
                    arcs.push((a, b));
                }
            }
        }
        let inst = Instance::uet(n, 2).unwrap().with_arcs(arcs).unwrap();
        let solver = L2PrecSolver::new(&inst).unwrap();
        let prof = solver.profile();
        let target = prof.second_breakpoint().saturating_sub(1);
        if target <= prof.path_len {
            continue;
        }
        let trace = solver.solve_with_trace(target).unwrap();
        for pair in trace.windows(2) {
            if pair[1].kind == StepKind::GeneralizedAugmentingSequence {
                seen += 1;
                assert_eq!(pair[1].f, pair[0].f + 2);
            }
        }
    }
    assert!(seen > 0, "no generalized augmenting sequence met");
}

#[test]
fn braided_profile_matches_oracle() {
    let inst = braided();
    let prof = fstar_profile(&inst).unwrap();
    assert_eq!(prof.path_len, 4);
    for m in 4..=9 {
        assert_eq!(prof.value(m).unwrap(), brute_force_leveling(&inst, m).unwrap().0, "M = {m}");
    }
}

#[test]
fn augmenting_sequence_shape() {
    assert!(AugmentingSequence::new(vec![1]).is_err());
    let s = AugmentingSequence::new(vec![0, 1, 2, 3]).unwrap();
    assert_eq!((s.r(), s.i(1), s.j(1), s.last()), (1, 2, 1, 3));
}

#[test]
fn deadline_below_path_is_rejected() {
    let solver = L2PrecSolver::new(&braided()).unwrap();
    assert!(matches!(solver.solve(3), Err(Error::InfeasibleDeadline { deadline: 3, critical: 4 })));
}
