//! Problem classes and solver dispatch.

use std::fmt;
use std::str::FromStr;

use leveling_core::graph::is_in_tree;
use leveling_core::l2prec::L2PrecSolver;
use leveling_core::oracle::brute_force_leveling;
use leveling_core::pmtn::{solve_l2_pmtn, solve_unit_pmtn};
use leveling_core::special::{dp_l2_cmax, trivial_l1_cmax, trivial_unit_unit, unit_resource_leveling, uet_in_tree_leveling};
use leveling_core::{check_feasible_with_deadline, evaluate_f, Error, Instance, PreemptiveSchedule, Rational, Schedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemClass {
    L2PrecUet,
    InTree,
    L1Seq,
    L2Dp,
    UnitPmtn,
    L2Pmtn,
    TrivialL1,
    TrivialUnit,
    Brute,
}

/// Non-preemptive classes, most specific first.
const INTEGER_ORDER: [ProblemClass; 7] = [
    ProblemClass::TrivialUnit,
    ProblemClass::TrivialL1,
    ProblemClass::L2Dp,
    ProblemClass::L2PrecUet,
    ProblemClass::InTree,
    ProblemClass::L1Seq,
    ProblemClass::Brute,
];

const PMTN_ORDER: [ProblemClass; 2] = [ProblemClass::UnitPmtn, ProblemClass::L2Pmtn];

impl ProblemClass {
    pub const ALL: [ProblemClass; 9] = [
        ProblemClass::L2PrecUet,
        ProblemClass::InTree,
        ProblemClass::L1Seq,
        ProblemClass::L2Dp,
        ProblemClass::UnitPmtn,
        ProblemClass::L2Pmtn,
        ProblemClass::TrivialL1,
        ProblemClass::TrivialUnit,
        ProblemClass::Brute,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ProblemClass::L2PrecUet => "l2-prec-uet",
            ProblemClass::InTree => "in-tree",
            ProblemClass::L1Seq => "l1-seq",
            ProblemClass::L2Dp => "l2-dp",
            ProblemClass::UnitPmtn => "unit-pmtn",
            ProblemClass::L2Pmtn => "l2-pmtn",
            ProblemClass::TrivialL1 => "trivial-l1",
            ProblemClass::TrivialUnit => "trivial-unit",
            ProblemClass::Brute => "brute",
        }
    }

    pub fn is_preemptive(self) -> bool {
        matches!(self, ProblemClass::UnitPmtn | ProblemClass::L2Pmtn)
    }

    /// Why `instance` is outside this class, if it is.
    pub fn check(self, instance: &Instance) -> Result<(), String> {
        let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(format!("{} needs {what}", self.tag())) };
        let unit_c = instance.has_unit_consumption();
        let plain = !instance.has_precedence() && !instance.has_dates();
        match self {
            ProblemClass::TrivialUnit => need(instance.is_uet() && unit_c && plain, "unit jobs without precedence or dates"),
            ProblemClass::TrivialL1 => need(instance.level() == 1 && plain, "L = 1 without precedence or dates"),
            ProblemClass::L2Dp => need(instance.level() == 2 && plain, "L = 2 without precedence or dates"),
            ProblemClass::L2PrecUet => need(
                instance.level() == 2 && instance.is_uet() && unit_c && !instance.has_dates(),
                "L = 2, unit jobs and no dates",
            ),
            ProblemClass::InTree => need(
                instance.is_uet() && unit_c && !instance.has_dates() && is_in_tree(instance),
                "unit jobs on an in-tree without dates",
            ),
            ProblemClass::L1Seq => need(
                instance.level() == 1 && instance.consumptions().iter().all(|&c| c > 0) && !instance.has_dates(),
                "L = 1, positive consumptions and no dates",
            ),
            ProblemClass::UnitPmtn => need(unit_c && !instance.has_precedence(), "unit consumptions without precedence"),
            ProblemClass::L2Pmtn => need(instance.level() == 2 && !instance.has_precedence(), "L = 2 without precedence"),
            ProblemClass::Brute => Ok(()),
        }
    }

    /// Most specific class accepting `instance`.
    pub fn detect(instance: &Instance, preemptive: bool) -> Option<ProblemClass> {
        let order: &[ProblemClass] = if preemptive { &PMTN_ORDER } else { &INTEGER_ORDER };
        order.iter().copied().find(|c| c.check(instance).is_ok())
    }
}

impl FromStr for ProblemClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ProblemClass::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| format!("unknown class `{s}`"))
    }
}

impl fmt::Display for ProblemClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Integer { x: Schedule, f: u64 },
    Preemptive { schedule: PreemptiveSchedule, f: Rational },
}

#[derive(Debug)]
pub enum SolveError {
    /// The instance does not belong to the requested class.
    Class(String),
    /// No usable makespan deadline.
    NoDeadline,
    Solver(Error),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Class(m) => write!(f, "{m}"),
            SolveError::NoDeadline => write!(f, "no makespan deadline: pass --deadline or set M or d in the instance"),
            SolveError::Solver(e) => write!(f, "{e}"),
        }
    }
}

impl SolveError {
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            SolveError::Solver(Error::InfeasibleDeadline { .. } | Error::Infeasible(_) | Error::FlowInfeasible { .. })
        )
    }
}

impl From<Error> for SolveError {
    fn from(e: Error) -> Self {
        SolveError::Solver(e)
    }
}

/// `--deadline` if given, else the instance's `M`, else the largest due date.
pub fn effective_deadline(instance: &Instance, flag: Option<u64>) -> Option<u64> {
    flag.or(instance.deadline())
        .or_else(|| instance.due().and_then(|d| d.iter().copied().max()))
}

pub fn solve(instance: &Instance, class: ProblemClass, deadline: Option<u64>) -> Result<Solution, SolveError> {
    class.check(instance).map_err(SolveError::Class)?;
    let m = effective_deadline(instance, deadline).ok_or(SolveError::NoDeadline)?;
    if class.is_preemptive() {
        let inst = instance.clone().with_deadline(Some(m)).map_err(Error::from)?;
        let sol = match class {
            ProblemClass::UnitPmtn => solve_unit_pmtn(&inst)?,
            _ => solve_l2_pmtn(&inst)?,
        };
        return Ok(Solution::Preemptive {
            schedule: sol.schedule,
            f: sol.f,
        });
    }
    let x = match class {
        ProblemClass::TrivialUnit => trivial_unit_unit(instance, m)?,
        ProblemClass::TrivialL1 => trivial_l1_cmax(instance, m)?,
        ProblemClass::L2Dp => dp_l2_cmax(instance, m)?.1,
        ProblemClass::L2PrecUet => L2PrecSolver::new(instance)?.solve(m)?,
        ProblemClass::InTree => uet_in_tree_leveling(instance, m)?,
        ProblemClass::L1Seq => unit_resource_leveling(instance, m)?,
        _ => brute_force_leveling(instance, m)?.1,
    };
    if let Some(v) = check_feasible_with_deadline(instance, &x, Some(m)).first() {
        return Err(Error::Invariant(format!("{class} produced an infeasible schedule: {v}")).into());
    }
    let f = evaluate_f(instance, &x)?;
    Ok(Solution::Integer { x, f })
}
