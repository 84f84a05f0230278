//! Preemptive schedules with exact rational interval endpoints.

use alloc::vec::Vec;

use num_traits::{ToPrimitive, Zero};

use crate::{Error, Instance, Result, Schedule};

/// Exact rational number used for preemptive time and LP values.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Half-open execution interval `[start, end)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub start: Rational,
    pub end: Rational,
}

impl Interval {
    pub fn new(start: Rational, end: Rational) -> Self {
        Interval { start, end }
    }

    pub fn length(&self) -> Rational {
        &self.end - &self.start
    }
}

/// For each job, the disjoint intervals on which it runs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PreemptiveSchedule {
    intervals: Vec<Vec<Interval>>,
}

impl PreemptiveSchedule {
    pub fn new(intervals: Vec<Vec<Interval>>) -> Self {
        PreemptiveSchedule { intervals }
    }

    /// Each job as one interval `[x_i, x_i + p_i)`.
    pub fn from_schedule(instance: &Instance, schedule: &Schedule) -> Self {
        PreemptiveSchedule {
            intervals: (0..schedule.len())
                .map(|i| {
                    let s = schedule.start(i) as i64;
                    alloc::vec![Interval::new(rat(s), rat(s + instance.duration(i) as i64))]
                })
                .collect(),
        }
    }

    pub fn intervals(&self) -> &[Vec<Interval>] {
        &self.intervals
    }

    pub fn job(&self, job: usize) -> &[Interval] {
        &self.intervals[job]
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn processed(&self, job: usize) -> Rational {
        self.intervals[job].iter().map(Interval::length).sum()
    }

    /// Integer starts, when every job runs on a single integral interval.
    pub fn as_integer_schedule(&self) -> Option<Schedule> {
        self.intervals
            .iter()
            .map(|iv| match iv.as_slice() {
                [one] if one.start.is_integer() => one.start.to_integer().to_u64(),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Schedule::new)
    }
}

/// Intervals of one job sorted by start, or an error when one is empty or
/// two overlap.
fn sorted_disjoint(job: usize, intervals: &[Interval]) -> Result<Vec<&Interval>> {
    let mut v: Vec<&Interval> = intervals.iter().collect();
    v.sort_by(|a, b| a.start.cmp(&b.start));
    for w in v.windows(2) {
        if w[1].start < w[0].end {
            return Err(Error::MalformedIntervals { job });
        }
    }
    if v.iter().any(|iv| iv.end <= iv.start) {
        return Err(Error::MalformedIntervals { job });
    }
    Ok(v)
}

/// `F` of a preemptive schedule: the integral of `min(L, r(t))`, computed
/// exactly by sweeping the sorted interval endpoints.
pub fn evaluate_f_preemptive(instance: &Instance, schedule: &PreemptiveSchedule) -> Result<Rational> {
    if schedule.len() != instance.job_count() {
        return Err(Error::LengthMismatch {
            expected: instance.job_count(),
            got: schedule.len(),
        });
    }
    let mut events: Vec<(Rational, i128)> = Vec::new();
    for (job, ivs) in schedule.intervals().iter().enumerate() {
        let c = instance.consumption(job) as i128;
        for iv in sorted_disjoint(job, ivs)? {
            events.push((iv.start.clone(), c));
            events.push((iv.end.clone(), -c));
        }
    }
    events.sort_by(|a, b| a.0.cmp(&b.0));
    let level = instance.level() as i128;
    let mut total = Rational::zero();
    let mut usage: i128 = 0;
    let mut k = 0;
    while k < events.len() {
        let t = events[k].0.clone();
        while k < events.len() && events[k].0 == t {
            usage += events[k].1;
            k += 1;
        }
        if k < events.len() && usage > 0 {
            let width = &events[k].0 - &t;
            total += width * Rational::from_integer(usage.min(level).into());
        }
    }
    Ok(total)
}

/// A broken constraint of a preemptive schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreemptiveViolation {
    LengthMismatch { expected: usize, got: usize },
    Malformed { job: usize },
    Processing { job: usize },
    OutsideWindow { job: usize },
}

/// Checks interval well-formedness, total processing `p_i` per job and
/// containment in `[r_i, d_i]` (or `[0, M]` when only `M` is set).
pub fn check_preemptive(instance: &Instance, schedule: &PreemptiveSchedule) -> Vec<PreemptiveViolation> {
    if schedule.len() != instance.job_count() {
        return alloc::vec![PreemptiveViolation::LengthMismatch {
            expected: instance.job_count(),
            got: schedule.len(),
        }];
    }
    let mut out = Vec::new();
    for job in 0..instance.job_count() {
        let ivs = schedule.job(job);
        if sorted_disjoint(job, ivs).is_err() {
            out.push(PreemptiveViolation::Malformed { job });
            continue;
        }
        if schedule.processed(job) != rat(instance.duration(job) as i64) {
            out.push(PreemptiveViolation::Processing { job });
        }
        let lo = rat(instance.release_of(job) as i64);
        let hi = instance.due_of(job).or(instance.deadline()).map(|d| rat(d as i64));
        let outside = ivs
            .iter()
            .any(|iv| iv.start < lo || hi.as_ref().is_some_and(|h| &iv.end > h));
        if outside {
            out.push(PreemptiveViolation::OutsideWindow { job });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::new(ratio(a.0, a.1), ratio(b.0, b.1))
    }

    #[test]
    fn single_interval() {
        let inst = Instance::new(vec![1], vec![2], 2).unwrap();
        let s = PreemptiveSchedule::new(vec![vec![iv((0, 1), (1, 1))]]);
        assert_eq!(evaluate_f_preemptive(&inst, &s).unwrap(), rat(2));
    }

    #[test]
    fn split_job_counts_its_length() {
        let inst = Instance::new(vec![1], vec![1], 2).unwrap();
        let s = PreemptiveSchedule::new(vec![vec![iv((0, 1), (1, 2)), iv((1, 1), (3, 2))]]);
        assert_eq!(evaluate_f_preemptive(&inst, &s).unwrap(), rat(1));
        assert!(check_preemptive(&inst, &s).is_empty());
    }

    #[test]
    fn capped_at_level() {
        let inst = Instance::new(vec![1, 1], vec![2, 2], 2).unwrap();
        let s = PreemptiveSchedule::new(vec![vec![iv((0, 1), (1, 1))], vec![iv((0, 1), (1, 1))]]);
        assert_eq!(evaluate_f_preemptive(&inst, &s).unwrap(), rat(2));
    }

    #[test]
    fn overlapping_intervals_rejected() {
        let inst = Instance::new(vec![1], vec![1], 2).unwrap();
        let s = PreemptiveSchedule::new(vec![vec![iv((0, 1), (2, 3)), iv((1, 2), (1, 1))]]);
        assert_eq!(
            evaluate_f_preemptive(&inst, &s),
            Err(Error::MalformedIntervals { job: 0 })
        );
    }

    #[test]
    fn integer_round_trip() {
        let inst = Instance::new(vec![2, 1], vec![1, 1], 1).unwrap();
        let x = Schedule::new(vec![3, 0]);
        let p = PreemptiveSchedule::from_schedule(&inst, &x);
        assert_eq!(p.as_integer_schedule(), Some(x));
    }
}
