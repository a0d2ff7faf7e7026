//! Instance model: applicants with weights and ranked preference lists
//! over jobs, the weight categories, matchings, and the weighted
//! more-popular-than comparison.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Neg;

use crate::error::{Error, Result};

pub type ApplicantId = usize;
pub type JobId = usize;
pub type Weight = u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Applicant {
    name: String,
    weight: Weight,
    /// Tie groups in rank order; group index is the rank (0 = first choice).
    groups: Vec<Vec<JobId>>,
}

impl Applicant {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn groups(&self) -> &[Vec<JobId>] {
        &self.groups
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    name: String,
    last_resort_of: Option<ApplicantId>,
}

impl Job {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The applicant this job is the last resort of, if it is a synthetic
    /// last-resort job.
    pub fn last_resort_of(&self) -> Option<ApplicantId> {
        self.last_resort_of
    }
}

/// A one-sided preference instance.
///
/// Applicant and job ids are dense indices in insertion order. Last-resort
/// jobs, once added by [`augment_with_last_resorts`], are appended after all
/// real jobs, so real job ids are stable under augmentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    applicants: Vec<Applicant>,
    jobs: Vec<Job>,
    real_jobs: usize,
    applicant_index: HashMap<String, ApplicantId>,
    // real jobs only
    job_index: HashMap<String, JobId>,
}

impl Instance {
    pub fn builder() -> InstanceBuilder {
        InstanceBuilder::default()
    }

    pub fn num_applicants(&self) -> usize {
        self.applicants.len()
    }

    /// Number of jobs including any last-resort jobs.
    pub fn num_jobs(&self) -> usize {
        self.jobs.len()
    }

    /// Number of jobs that are not last-resort jobs.
    pub fn num_real_jobs(&self) -> usize {
        self.real_jobs
    }

    pub fn applicants(&self) -> &[Applicant] {
        &self.applicants
    }

    pub fn applicant(&self, a: ApplicantId) -> &Applicant {
        &self.applicants[a]
    }

    pub fn job(&self, j: JobId) -> &Job {
        &self.jobs[j]
    }

    pub fn weight(&self, a: ApplicantId) -> Weight {
        self.applicants[a].weight
    }

    pub fn groups(&self, a: ApplicantId) -> &[Vec<JobId>] {
        &self.applicants[a].groups
    }

    pub fn applicant_id(&self, name: &str) -> Option<ApplicantId> {
        self.applicant_index.get(name).copied()
    }

    /// Looks up a real job by name; last-resort jobs are reached through
    /// [`Instance::last_resort`].
    pub fn job_id(&self, name: &str) -> Option<JobId> {
        self.job_index.get(name).copied()
    }

    pub fn is_last_resort(&self, j: JobId) -> bool {
        self.jobs[j].last_resort_of.is_some()
    }

    /// The last-resort job of `a`, if the instance has been augmented.
    pub fn last_resort(&self, a: ApplicantId) -> Option<JobId> {
        match self.applicants[a].groups.last() {
            Some(g) if g.len() == 1 && self.jobs[g[0]].last_resort_of == Some(a) => Some(g[0]),
            _ => None,
        }
    }

    /// True iff every applicant's list ends with its own last-resort job.
    pub fn is_augmented(&self) -> bool {
        (0..self.applicants.len()).all(|a| self.last_resort(a).is_some())
    }

    /// True iff every tie group is a singleton.
    pub fn is_strict(&self) -> bool {
        self.applicants
            .iter()
            .all(|a| a.groups.iter().all(|g| g.len() == 1))
    }

    /// Number of preference edges, excluding last-resort edges.
    pub fn num_edges(&self) -> usize {
        self.applicants
            .iter()
            .flat_map(|a| a.groups.iter().flatten())
            .filter(|&&j| self.jobs[j].last_resort_of.is_none())
            .count()
    }

    /// Rank (tie-group index) of `job` on `a`'s list.
    pub fn rank_of(&self, a: ApplicantId, job: JobId) -> Option<usize> {
        self.applicants[a]
            .groups
            .iter()
            .position(|g| g.contains(&job))
    }

    /// Rank held by `a`'s last resort: one past its last real group.
    pub fn last_resort_rank(&self, a: ApplicantId) -> usize {
        let groups = &self.applicants[a].groups;
        if self.last_resort(a).is_some() {
            groups.len() - 1
        } else {
            groups.len()
        }
    }

    /// Rank of an assignment slot, where `None` and the applicant's own
    /// last-resort job both mean "last resort".
    pub fn slot_rank(&self, a: ApplicantId, job: Option<JobId>) -> Result<usize> {
        match job {
            None => Ok(self.last_resort_rank(a)),
            Some(j) if self.jobs.get(j).and_then(|jb| jb.last_resort_of) == Some(a) => {
                Ok(self.last_resort_rank(a))
            }
            Some(j) => self.rank_of(a, j).ok_or_else(|| Error::JobNotOnList {
                applicant: self.applicants[a].name.clone(),
                job: self
                    .jobs
                    .get(j)
                    .map_or_else(|| format!("#{j}"), |jb| jb.name.clone()),
            }),
        }
    }
}

#[derive(Debug, Default)]
pub struct InstanceBuilder {
    applicants: Vec<(String, Weight, Vec<Vec<String>>)>,
}

impl InstanceBuilder {
    /// Adds an applicant with a strict list.
    pub fn strict<S: AsRef<str>>(self, name: &str, weight: Weight, list: &[S]) -> Self {
        let groups = list.iter().map(|j| vec![j.as_ref().to_string()]).collect();
        self.applicant(name, weight, groups)
    }

    /// Adds an applicant with a list of tie groups.
    pub fn ties<S: AsRef<str>>(self, name: &str, weight: Weight, groups: &[&[S]]) -> Self {
        let groups = groups
            .iter()
            .map(|g| g.iter().map(|j| j.as_ref().to_string()).collect())
            .collect();
        self.applicant(name, weight, groups)
    }

    pub fn applicant(mut self, name: &str, weight: Weight, groups: Vec<Vec<String>>) -> Self {
        self.applicants.push((name.to_string(), weight, groups));
        self
    }

    /// Validates and builds the (non-augmented) instance. Jobs are declared
    /// implicitly, in order of first use.
    pub fn build(self) -> Result<Instance> {
        let mut job_index: HashMap<String, JobId> = HashMap::new();
        let mut jobs = Vec::new();
        let mut applicant_index: HashMap<String, ApplicantId> = HashMap::new();
        let mut applicants = Vec::with_capacity(self.applicants.len());
        for (name, weight, groups) in self.applicants {
            if weight == 0 {
                return Err(Error::InvalidInstance(format!(
                    "applicant `{name}` has weight 0; weights must be at least 1"
                )));
            }
            if applicant_index
                .insert(name.clone(), applicants.len())
                .is_some()
            {
                return Err(Error::InvalidInstance(format!(
                    "duplicate applicant `{name}`"
                )));
            }
            let mut on_list: HashSet<JobId> = HashSet::new();
            let mut id_groups = Vec::with_capacity(groups.len());
            for group in groups {
                if group.is_empty() {
                    return Err(Error::InvalidInstance(format!(
                        "applicant `{name}` has an empty tie group"
                    )));
                }
                let mut ids = Vec::with_capacity(group.len());
                for job in group {
                    let next = jobs.len();
                    let id = *job_index.entry(job.clone()).or_insert_with(|| {
                        jobs.push(Job {
                            name: job.clone(),
                            last_resort_of: None,
                        });
                        next
                    });
                    if !on_list.insert(id) {
                        return Err(Error::InvalidInstance(format!(
                            "job `{job}` appears twice on the list of `{name}`"
                        )));
                    }
                    ids.push(id);
                }
                id_groups.push(ids);
            }
            applicants.push(Applicant {
                name,
                weight,
                groups: id_groups,
            });
        }
        let real_jobs = jobs.len();
        Ok(Instance {
            applicants,
            jobs,
            real_jobs,
            applicant_index,
            job_index,
        })
    }
}

/// Appends a fresh singleton last-resort group to every applicant's list.
/// Applicants that already end with their own last resort are left alone.
pub fn augment_with_last_resorts(instance: &Instance) -> Instance {
    let mut out = instance.clone();
    for a in 0..out.applicants.len() {
        if out.last_resort(a).is_some() {
            continue;
        }
        let id = out.jobs.len();
        out.jobs.push(Job {
            name: format!("l({})", out.applicants[a].name),
            last_resort_of: Some(a),
        });
        out.applicants[a].groups.push(vec![id]);
    }
    out
}

/// Applicants grouped by distinct weight, heaviest category first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryPartition {
    categories: Vec<Vec<ApplicantId>>,
    weights: Vec<Weight>,
    category_of: Vec<usize>,
}

impl CategoryPartition {
    /// Number of categories `k`.
    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    /// Applicants of category `i` (0-based), in index order.
    pub fn category(&self, i: usize) -> &[ApplicantId] {
        &self.categories[i]
    }

    pub fn categories(&self) -> &[Vec<ApplicantId>] {
        &self.categories
    }

    pub fn weight(&self, i: usize) -> Weight {
        self.weights[i]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// 0-based category of applicant `a`.
    pub fn category_of(&self, a: ApplicantId) -> usize {
        self.category_of[a]
    }
}

pub fn categorize(instance: &Instance) -> CategoryPartition {
    let mut weights: Vec<Weight> = instance.applicants.iter().map(|a| a.weight).collect();
    weights.sort_unstable_by(|a, b| b.cmp(a));
    weights.dedup();
    let mut categories = vec![Vec::new(); weights.len()];
    let mut category_of = Vec::with_capacity(instance.applicants.len());
    for (a, applicant) in instance.applicants.iter().enumerate() {
        let c = weights
            .binary_search_by(|w| applicant.weight.cmp(w))
            .expect("weight present");
        categories[c].push(a);
        category_of.push(c);
    }
    CategoryPartition {
        categories,
        weights,
        category_of,
    }
}

/// A matching as an applicant-indexed assignment. `None` means the applicant
/// holds its last resort; unmatched and last-resort are the same state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    assignment: Vec<Option<JobId>>,
}

impl Matching {
    /// Every applicant on its last resort.
    pub fn empty(num_applicants: usize) -> Self {
        Matching {
            assignment: vec![None; num_applicants],
        }
    }

    pub fn from_assignment(assignment: Vec<Option<JobId>>) -> Self {
        Matching { assignment }
    }

    /// Builds a matching from `(applicant, job)` name pairs; unnamed
    /// applicants hold their last resort.
    pub fn from_names(instance: &Instance, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut m = Matching::empty(instance.num_applicants());
        for &(a, j) in pairs {
            let a_id = instance
                .applicant_id(a)
                .ok_or_else(|| Error::InvalidMatching(format!("unknown applicant `{a}`")))?;
            let j_id = instance
                .job_id(j)
                .ok_or_else(|| Error::InvalidMatching(format!("unknown job `{j}`")))?;
            m.assignment[a_id] = Some(j_id);
        }
        m.normalize(instance);
        m.validate(instance)?;
        Ok(m)
    }

    pub fn num_applicants(&self) -> usize {
        self.assignment.len()
    }

    pub fn get(&self, a: ApplicantId) -> Option<JobId> {
        self.assignment[a]
    }

    pub fn set(&mut self, a: ApplicantId, job: Option<JobId>) {
        self.assignment[a] = job;
    }

    pub fn assignment(&self) -> &[Option<JobId>] {
        &self.assignment
    }

    /// Pairs of applicants matched to real jobs.
    pub fn pairs(&self) -> impl Iterator<Item = (ApplicantId, JobId)> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(a, j)| j.map(|j| (a, j)))
    }

    /// Number of applicants holding a real job.
    pub fn size(&self) -> usize {
        self.assignment.iter().filter(|j| j.is_some()).count()
    }

    pub fn last_resort_count(&self) -> usize {
        self.assignment.len() - self.size()
    }

    /// Replaces explicit last-resort jobs with `None`.
    pub fn normalize(&mut self, instance: &Instance) {
        for slot in &mut self.assignment {
            if let Some(j) = *slot {
                if j < instance.num_jobs() && instance.is_last_resort(j) {
                    *slot = None;
                }
            }
        }
    }

    /// Checks that every matched job is on its applicant's list (or is that
    /// applicant's last resort) and that no job is matched twice.
    pub fn validate(&self, instance: &Instance) -> Result<()> {
        if self.assignment.len() != instance.num_applicants() {
            return Err(Error::InvalidMatching(format!(
                "matching covers {} applicants, instance has {}",
                self.assignment.len(),
                instance.num_applicants()
            )));
        }
        let mut taken = vec![false; instance.num_jobs()];
        for (a, slot) in self.assignment.iter().enumerate() {
            let Some(j) = *slot else { continue };
            if j >= instance.num_jobs() {
                return Err(Error::InvalidMatching(format!("job #{j} does not exist")));
            }
            instance.slot_rank(a, Some(j))?;
            if taken[j] {
                return Err(Error::InvalidMatching(format!(
                    "job `{}` matched twice",
                    instance.job(j).name()
                )));
            }
            taken[j] = true;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    PrefersFirst,
    PrefersSecond,
    Indifferent,
}

/// How applicant `a` compares two assignment slots (`None` = last resort).
pub fn preference(
    instance: &Instance,
    a: ApplicantId,
    first: Option<JobId>,
    second: Option<JobId>,
) -> Result<Preference> {
    let r1 = instance.slot_rank(a, first)?;
    let r2 = instance.slot_rank(a, second)?;
    Ok(match r1.cmp(&r2) {
        Ordering::Less => Preference::PrefersFirst,
        Ordering::Greater => Preference::PrefersSecond,
        Ordering::Equal => Preference::Indifferent,
    })
}

/// Weight of applicants preferring one matching minus weight preferring the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Satisfaction(pub i128);

impl Satisfaction {
    pub fn value(self) -> i128 {
        self.0
    }
}

impl Neg for Satisfaction {
    type Output = Satisfaction;

    fn neg(self) -> Satisfaction {
        Satisfaction(-self.0)
    }
}

impl fmt::Display for Satisfaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.0)
    }
}

pub fn satisfaction(m1: &Matching, m2: &Matching, instance: &Instance) -> Result<Satisfaction> {
    m1.validate(instance)?;
    m2.validate(instance)?;
    let mut total: i128 = 0;
    for a in 0..instance.num_applicants() {
        let w = i128::from(instance.weight(a));
        match preference(instance, a, m1.get(a), m2.get(a))? {
            Preference::PrefersFirst => total += w,
            Preference::PrefersSecond => total -= w,
            Preference::Indifferent => {}
        }
    }
    Ok(Satisfaction(total))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    FirstMorePopular,
    SecondMorePopular,
    Tie,
}

pub fn more_popular(m1: &Matching, m2: &Matching, instance: &Instance) -> Result<Comparison> {
    let s = satisfaction(m1, m2, instance)?;
    Ok(match s.0.cmp(&0) {
        Ordering::Greater => Comparison::FirstMorePopular,
        Ordering::Less => Comparison::SecondMorePopular,
        Ordering::Equal => Comparison::Tie,
    })
}
