//! λ-labels on jobs: the minimum cost of a promotion path out of a job.

use crate::instance::{ApplicantId, Instance, JobId};

/// Cost of a promotion path, in units of weight.
pub type Cost = u64;

/// Stands for the minimum over an empty set of jobs; larger than any weight sum.
pub const INFINITY: Cost = Cost::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    values: Vec<Option<Cost>>,
}

impl Labels {
    pub fn new(num_jobs: usize) -> Self {
        Labels {
            values: vec![None; num_jobs],
        }
    }

    pub fn get(&self, job: JobId) -> Option<Cost> {
        self.values[job]
    }

    pub fn set(&mut self, job: JobId, value: Cost) {
        debug_assert!(value != INFINITY);
        self.values[job] = Some(value);
    }

    pub fn is_labeled(&self, job: JobId) -> bool {
        self.values[job].is_some()
    }

    /// Labeled jobs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (JobId, Cost)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(j, v)| v.map(|v| (j, v)))
    }

    fn of(&self, job: JobId) -> Cost {
        self.values[job].unwrap_or_else(|| panic!("job {job} has no label yet"))
    }

    /// λ_min: the minimum label over jobs `a` ranks strictly above `rank`,
    /// or [`INFINITY`] if there are none. Every such job must be labeled.
    pub fn min_above(&self, instance: &Instance, a: ApplicantId, rank: usize) -> Cost {
        instance.groups(a)[..rank]
            .iter()
            .flatten()
            .map(|&q| self.of(q))
            .min()
            .unwrap_or(INFINITY)
    }

    /// Minimum label over `candidates`, or [`INFINITY`] if empty.
    pub fn min_over(&self, candidates: impl IntoIterator<Item = JobId>) -> Cost {
        candidates
            .into_iter()
            .map(|q| self.of(q))
            .min()
            .unwrap_or(INFINITY)
    }
}
