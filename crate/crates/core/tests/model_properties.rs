use leveling_core::preemptive::evaluate_f_preemptive;
use leveling_core::{evaluate_f, Instance, PreemptiveSchedule, Rational, Schedule};
use proptest::prelude::*;

fn jobs() -> impl Strategy<Value = (Vec<u64>, Vec<u64>, u64, Vec<u64>)> {
    (1usize..7).prop_flat_map(|n| {
        (
            proptest::collection::vec(1u64..5, n),
            proptest::collection::vec(0u64..5, n),
            1u64..4,
            proptest::collection::vec(0u64..8, n),
        )
    })
}

proptest! {
    #[test]
    fn f_is_bounded((p, c, level, x) in jobs()) {
        let inst = Instance::new(p.clone(), c.clone(), level).unwrap();
        let x = Schedule::new(x);
        let f = evaluate_f(&inst, &x).unwrap();
        let span = x.makespan(&inst);
        let work: u64 = p.iter().zip(&c).map(|(&p, &c)| c.min(level) * p).sum();
        prop_assert!(f <= (level * span).min(work));
    }

    #[test]
    fn clamping_preserves_f((p, c, level, x) in jobs()) {
        let inst = Instance::new(p, c, level).unwrap();
        let x = Schedule::new(x);
        prop_assert_eq!(evaluate_f(&inst, &x).unwrap(), evaluate_f(&inst.clamped(), &x).unwrap());
    }

    #[test]
    fn shifting_preserves_f((p, c, level, x) in jobs(), shift in 0u64..6) {
        let inst = Instance::new(p, c, level).unwrap();
        let moved = Schedule::new(x.iter().map(|&t| t + shift).collect());
        prop_assert_eq!(evaluate_f(&inst, &Schedule::new(x)).unwrap(), evaluate_f(&inst, &moved).unwrap());
    }

    #[test]
    fn preemptive_form_agrees((p, c, level, x) in jobs()) {
        let inst = Instance::new(p, c, level).unwrap();
        let x = Schedule::new(x);
        let single = PreemptiveSchedule::from_schedule(&inst, &x);
        let f = evaluate_f(&inst, &x).unwrap();
        prop_assert_eq!(evaluate_f_preemptive(&inst, &single).unwrap(), Rational::from_integer(f.into()));
        prop_assert_eq!(single.as_integer_schedule(), Some(x));
    }
}
