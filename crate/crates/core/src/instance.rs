//! Problem instances: jobs with durations and resource consumptions, an
//! optional precedence DAG, optional release/due dates, the resource level
//! `L` and an optional makespan deadline `M`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

/// Reasons an instance is rejected at construction time.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("field `{field}` has {got} entries, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("job {job} has zero duration")]
    ZeroDuration { job: usize },
    #[error("resource level L must be at least 1")]
    ZeroLevel,
    #[error("makespan deadline M must be at least 1")]
    ZeroDeadline,
    #[error("arc ({0}, {1}) refers to a job that does not exist")]
    ArcOutOfRange(usize, usize),
    #[error("precedence arcs contain a cycle through job {job}")]
    Cycle { job: usize },
    #[error("job {job}: release + duration exceeds the due date")]
    WindowTooShort { job: usize },
}

/// A leveling instance. Jobs are indexed `0..job_count()`.
///
/// All fields are validated by the constructors, so every `Instance` value
/// has an acyclic precedence relation, positive durations, `L >= 1`, and
/// `r_i + p_i <= d_i` whenever dates are present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    durations: Vec<u64>,
    consumptions: Vec<u64>,
    arcs: Vec<(usize, usize)>,
    release: Option<Vec<u64>>,
    due: Option<Vec<u64>>,
    level: u64,
    deadline: Option<u64>,
}

impl Instance {
    pub fn new(durations: Vec<u64>, consumptions: Vec<u64>, level: u64) -> Result<Self, InstanceError> {
        let inst = Instance {
            durations,
            consumptions,
            arcs: Vec::new(),
            release: None,
            due: None,
            level,
            deadline: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// `n` unit jobs with unit consumption.
    pub fn uet(n: usize, level: u64) -> Result<Self, InstanceError> {
        Self::new(vec![1; n], vec![1; n], level)
    }

    pub fn with_arcs(mut self, arcs: Vec<(usize, usize)>) -> Result<Self, InstanceError> {
        self.arcs = arcs;
        self.validate()?;
        Ok(self)
    }

    pub fn with_release(mut self, release: Option<Vec<u64>>) -> Result<Self, InstanceError> {
        self.release = release;
        self.validate()?;
        Ok(self)
    }

    pub fn with_due(mut self, due: Option<Vec<u64>>) -> Result<Self, InstanceError> {
        self.due = due;
        self.validate()?;
        Ok(self)
    }

    pub fn with_windows(self, release: Vec<u64>, due: Vec<u64>) -> Result<Self, InstanceError> {
        self.with_release(Some(release))?.with_due(Some(due))
    }

    pub fn with_deadline(mut self, deadline: Option<u64>) -> Result<Self, InstanceError> {
        self.deadline = deadline;
        self.validate()?;
        Ok(self)
    }

    pub fn with_level(mut self, level: u64) -> Result<Self, InstanceError> {
        self.level = level;
        self.validate()?;
        Ok(self)
    }

    pub fn with_consumptions(mut self, consumptions: Vec<u64>) -> Result<Self, InstanceError> {
        self.consumptions = consumptions;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<(), InstanceError> {
        let n = self.durations.len();
        let check_len = |field, got| {
            if got == n {
                Ok(())
            } else {
                Err(InstanceError::LengthMismatch { field, expected: n, got })
            }
        };
        check_len("c", self.consumptions.len())?;
        if let Some(r) = &self.release {
            check_len("r", r.len())?;
        }
        if let Some(d) = &self.due {
            check_len("d", d.len())?;
        }
        if let Some(job) = self.durations.iter().position(|&p| p == 0) {
            return Err(InstanceError::ZeroDuration { job });
        }
        if self.level == 0 {
            return Err(InstanceError::ZeroLevel);
        }
        if self.deadline == Some(0) {
            return Err(InstanceError::ZeroDeadline);
        }
        for &(a, b) in &self.arcs {
            if a >= n || b >= n {
                return Err(InstanceError::ArcOutOfRange(a, b));
            }
        }
        if let Some(d) = &self.due {
            for job in 0..n {
                let r = self.release.as_ref().map_or(0, |r| r[job]);
                if r + self.durations[job] > d[job] {
                    return Err(InstanceError::WindowTooShort { job });
                }
            }
        }
        self.check_acyclic()
    }

    fn check_acyclic(&self) -> Result<(), InstanceError> {
        let n = self.durations.len();
        let mut indeg = vec![0usize; n];
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in &self.arcs {
            succ[a].push(b);
            indeg[b] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if seen == n {
            Ok(())
        } else {
            let job = (0..n).find(|&i| indeg[i] > 0).unwrap_or(0);
            Err(InstanceError::Cycle { job })
        }
    }

    #[inline]
    pub fn job_count(&self) -> usize {
        self.durations.len()
    }

    #[inline]
    pub fn duration(&self, job: usize) -> u64 {
        self.durations[job]
    }

    pub fn durations(&self) -> &[u64] {
        &self.durations
    }

    #[inline]
    pub fn consumption(&self, job: usize) -> u64 {
        self.consumptions[job]
    }

    pub fn consumptions(&self) -> &[u64] {
        &self.consumptions
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn release(&self) -> Option<&[u64]> {
        self.release.as_deref()
    }

    pub fn due(&self) -> Option<&[u64]> {
        self.due.as_deref()
    }

    /// Release date of `job`, 0 when the instance has none.
    pub fn release_of(&self, job: usize) -> u64 {
        self.release.as_ref().map_or(0, |r| r[job])
    }

    pub fn due_of(&self, job: usize) -> Option<u64> {
        self.due.as_ref().map(|d| d[job])
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn deadline(&self) -> Option<u64> {
        self.deadline
    }

    pub fn total_work(&self) -> u64 {
        self.durations.iter().sum()
    }

    pub fn is_uet(&self) -> bool {
        self.durations.iter().all(|&p| p == 1)
    }

    pub fn has_unit_consumption(&self) -> bool {
        self.consumptions.iter().all(|&c| c == 1)
    }

    pub fn has_precedence(&self) -> bool {
        !self.arcs.is_empty()
    }

    pub fn has_dates(&self) -> bool {
        self.release.is_some() || self.due.is_some()
    }

    /// Direct successors of every job, in arc order.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.job_count()];
        for &(a, b) in &self.arcs {
            succ[a].push(b);
        }
        succ
    }

    /// Direct predecessors of every job, in arc order.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.job_count()];
        for &(a, b) in &self.arcs {
            pred[b].push(a);
        }
        pred
    }

    /// Same jobs, every consumption replaced by `min(c_i, L)`.
    pub fn clamped(&self) -> Instance {
        let mut out = self.clone();
        for c in &mut out.consumptions {
            *c = (*c).min(self.level);
        }
        out
    }

    /// The sub-instance induced by `jobs`, re-indexed in the given order.
    /// Arcs between kept jobs are preserved; arcs through dropped jobs are not.
    pub fn restricted(&self, jobs: &[usize]) -> Instance {
        let mut index = vec![usize::MAX; self.job_count()];
        for (k, &j) in jobs.iter().enumerate() {
            index[j] = k;
        }
        let pick = |v: &Vec<u64>| jobs.iter().map(|&j| v[j]).collect::<Vec<_>>();
        Instance {
            durations: pick(&self.durations),
            consumptions: pick(&self.consumptions),
            arcs: self
                .arcs
                .iter()
                .filter(|&&(a, b)| index[a] != usize::MAX && index[b] != usize::MAX)
                .map(|&(a, b)| (index[a], index[b]))
                .collect(),
            release: self.release.as_ref().map(pick),
            due: self.due.as_ref().map(pick),
            level: self.level,
            deadline: self.deadline,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loop_as_cycle() {
        let err = Instance::uet(1, 1).unwrap().with_arcs(vec![(0, 0)]).unwrap_err();
        assert_eq!(err, InstanceError::Cycle { job: 0 });
    }

    #[test]
    fn rejects_longer_cycle() {
        let err = Instance::uet(3, 1)
            .unwrap()
            .with_arcs(vec![(0, 1), (1, 2), (2, 1)])
            .unwrap_err();
        assert!(matches!(err, InstanceError::Cycle { .. }));
    }

    #[test]
    fn rejects_bad_fields() {
        assert_eq!(
            Instance::new(vec![1, 0], vec![1, 1], 1).unwrap_err(),
            InstanceError::ZeroDuration { job: 1 }
        );
        assert_eq!(Instance::new(vec![1], vec![1], 0).unwrap_err(), InstanceError::ZeroLevel);
        assert!(matches!(
            Instance::new(vec![1], vec![1, 2], 1).unwrap_err(),
            InstanceError::LengthMismatch { field: "c", .. }
        ));
        assert_eq!(
            Instance::new(vec![3], vec![1], 1)
                .unwrap()
                .with_windows(vec![1], vec![3])
                .unwrap_err(),
            InstanceError::WindowTooShort { job: 0 }
        );
        assert_eq!(
            Instance::uet(2, 1).unwrap().with_arcs(vec![(0, 2)]).unwrap_err(),
            InstanceError::ArcOutOfRange(0, 2)
        );
    }

    #[test]
    fn restriction_keeps_internal_arcs() {
        let inst = Instance::uet(4, 2)
            .unwrap()
            .with_arcs(vec![(0, 1), (1, 2), (2, 3)])
            .unwrap();
        let sub = inst.restricted(&[3, 1, 2]);
        assert_eq!(sub.job_count(), 3);
        assert_eq!(sub.arcs(), &[(1, 2), (2, 0)]);
    }
}
