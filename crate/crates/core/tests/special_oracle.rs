mod common;

use leveling_core::graph::critical_path;
use leveling_core::oracle::brute_force_leveling;
use leveling_core::special::{
    dp_l2_cmax, in_tree_structure_holds, split_sets, trivial_l1_cmax, trivial_unit_unit, unit_resource_leveling,
    uet_in_tree_leveling,
};
use leveling_core::{check_feasible_with_deadline, evaluate_f, Error, Instance};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn in_tree_matches_oracle((n, arcs) in common::in_tree(8), level in 1u64..=3) {
        let inst = Instance::uet(n, level).unwrap().with_arcs(arcs).unwrap();
        let depth = critical_path(&inst).unwrap().weight();
        for m in depth..=n as u64 {
            let x = uet_in_tree_leveling(&inst, m).unwrap();
            prop_assert!(check_feasible_with_deadline(&inst, &x, Some(m)).is_empty());
            prop_assert!(in_tree_structure_holds(&inst, &x, m).unwrap());
            prop_assert_eq!(evaluate_f(&inst, &x).unwrap(), brute_force_leveling(&inst, m).unwrap().0, "M = {}", m);
        }
        prop_assert!(uet_in_tree_leveling(&inst, depth - 1).is_err());
    }

    #[test]
    fn sequencing_covers_min_of_work_and_m(
        (n, arcs) in common::dag_arcs(8, 0.3),
        p in proptest::collection::vec(1u64..=5, 8),
        c in proptest::collection::vec(1u64..=3, 8),
        extra in 0u64..12,
    ) {
        let inst = Instance::new(p[..n].to_vec(), c[..n].to_vec(), 1).unwrap().with_arcs(arcs).unwrap();
        let m = critical_path(&inst).unwrap().weight() + extra;
        let x = unit_resource_leveling(&inst, m).unwrap();
        prop_assert!(check_feasible_with_deadline(&inst, &x, Some(m)).is_empty());
        prop_assert_eq!(evaluate_f(&inst, &x).unwrap(), inst.total_work().min(m));
    }

    #[test]
    fn dp_matches_oracle(
        jobs in proptest::collection::vec((1u64..=4, 0u64..=4), 1..=7),
        m in 1u64..=12,
    ) {
        let (p, c): (Vec<u64>, Vec<u64>) = jobs.into_iter().unzip();
        let m = m.max(*p.iter().max().unwrap());
        let inst = Instance::new(p, c, 2).unwrap();
        let (f, x) = dp_l2_cmax(&inst, m).unwrap();
        prop_assert!(check_feasible_with_deadline(&inst, &x, Some(m)).is_empty());
        prop_assert_eq!(evaluate_f(&inst, &x).unwrap(), f);
        let best = match brute_force_leveling(&inst, m) {
            Err(Error::SearchSpaceTooLarge { .. }) => {
                prop_assume!(false);
                unreachable!()
            }
            other => other.unwrap().0,
        };
        prop_assert_eq!(f, best);

        // closed form over subsets of the unit-consumption jobs
        let sets = split_sets(&inst);
        let expected = if sets.p_j2 >= m {
            2 * m
        } else {
            let lane = m - sets.p_j2;
            let k = sets.j1.len();
            let subset_best = (0u32..1 << k)
                .map(|mask| {
                    let b: u64 = (0..k).filter(|&q| mask >> q & 1 == 1).map(|q| inst.duration(sets.j1[q])).sum();
                    b.min(lane) + (sets.p_j1 - b).min(lane)
                })
                .max()
                .unwrap();
            2 * sets.p_j2 + subset_best
        };
        prop_assert_eq!(best, expected);
    }

    #[test]
    fn trivial_cases_are_optimal(
        jobs in proptest::collection::vec((1u64..=3, 0u64..=2), 1..=6),
        m in 1u64..=6,
        level in 1u64..=3,
    ) {
        let (p, c): (Vec<u64>, Vec<u64>) = jobs.into_iter().unzip();
        let m = m.max(*p.iter().max().unwrap());
        let l1 = Instance::new(p.clone(), c.clone(), 1).unwrap();
        let x = trivial_l1_cmax(&l1, m).unwrap();
        prop_assert!(check_feasible_with_deadline(&l1, &x, Some(m)).is_empty());
        let consuming: u64 = p.iter().zip(&c).filter(|(_, &c)| c > 0).map(|(&p, _)| p).sum();
        prop_assert_eq!(evaluate_f(&l1, &x).unwrap(), consuming.min(m));
        prop_assert_eq!(evaluate_f(&l1, &x).unwrap(), brute_force_leveling(&l1, m).unwrap().0);

        let unit = Instance::uet(p.len(), level).unwrap();
        let x = trivial_unit_unit(&unit, m).unwrap();
        prop_assert!(check_feasible_with_deadline(&unit, &x, Some(m)).is_empty());
        prop_assert_eq!(evaluate_f(&unit, &x).unwrap(), (p.len() as u64).min(level * m));
    }
}
