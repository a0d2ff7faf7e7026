//! Popular matchings for strict preference lists: first and second jobs,
//! label-driven pruning, and a linear well-formed matching search.

use crate::error::{Error, Result};
use crate::graphkit::{max_matching, BipartiteGraph};
use crate::instance::{
    augment_with_last_resorts, categorize, ApplicantId, CategoryPartition, Instance, JobId,
    Matching,
};
use crate::labels::{Cost, Labels};
use crate::Solution;

/// First and second jobs of every applicant in a strict, augmented instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsAssignment {
    first: Vec<JobId>,
    first_rank: Vec<usize>,
    second: Vec<Option<JobId>>,
    second_rank: Vec<Option<usize>>,
    /// Category whose first job this is, if any.
    first_level: Vec<Option<usize>>,
    /// f_i-jobs of each category, in job-index order.
    level_jobs: Vec<Vec<JobId>>,
    /// Applicants whose first job this is, in index order.
    contenders: Vec<Vec<ApplicantId>>,
    last_resort: Vec<JobId>,
}

impl FsAssignment {
    pub fn first(&self, x: ApplicantId) -> JobId {
        self.first[x]
    }

    pub fn first_rank(&self, x: ApplicantId) -> usize {
        self.first_rank[x]
    }

    /// `None` when the first job is the applicant's last resort.
    pub fn second(&self, x: ApplicantId) -> Option<JobId> {
        self.second[x]
    }

    pub fn second_rank(&self, x: ApplicantId) -> Option<usize> {
        self.second_rank[x]
    }

    /// The `i` (0-based) such that `job` is an f_i-job.
    pub fn first_level(&self, job: JobId) -> Option<usize> {
        self.first_level[job]
    }

    pub fn is_first_job(&self, job: JobId) -> bool {
        self.first_level[job].is_some()
    }

    pub fn level_jobs(&self, i: usize) -> &[JobId] {
        &self.level_jobs[i]
    }

    pub fn contenders(&self, job: JobId) -> &[ApplicantId] {
        &self.contenders[job]
    }

    pub fn last_resort(&self, x: ApplicantId) -> JobId {
        self.last_resort[x]
    }

    pub fn num_applicants(&self) -> usize {
        self.first.len()
    }
}

fn check_strict_augmented(instance: &Instance) -> Result<()> {
    if !instance.is_augmented() {
        return Err(Error::Precondition(
            "instance must be augmented with last resorts".into(),
        ));
    }
    if !instance.is_strict() {
        return Err(Error::Precondition("instance has ties".into()));
    }
    Ok(())
}

/// Computes f(x) and s(x) category by category: f(x) for `x` in C_i is the
/// first job on its list that is not an f_j-job for `j < i`; s(x) is the
/// first job that is not an f_j-job for `j <= i`.
pub fn compute_fs_strict(
    instance: &Instance,
    partition: &CategoryPartition,
) -> Result<FsAssignment> {
    check_strict_augmented(instance)?;
    let n = instance.num_applicants();
    let num_jobs = instance.num_jobs();
    let mut first = vec![0; n];
    let mut first_rank = vec![0; n];
    let mut first_level: Vec<Option<usize>> = vec![None; num_jobs];
    let mut contenders = vec![Vec::new(); num_jobs];

    for (i, category) in partition.categories().iter().enumerate() {
        for &x in category {
            let (rank, job) = instance
                .groups(x)
                .iter()
                .map(|g| g[0])
                .enumerate()
                .find(|&(_, q)| first_level[q].is_none_or(|l| l == i))
                .expect("last resort is never an earlier first job");
            first[x] = job;
            first_rank[x] = rank;
            first_level[job] = Some(i);
        }
    }
    for x in 0..n {
        contenders[first[x]].push(x);
    }

    let mut second = vec![None; n];
    let mut second_rank = vec![None; n];
    let last_resort: Vec<JobId> = (0..n)
        .map(|x| instance.last_resort(x).expect("augmented"))
        .collect();
    for x in 0..n {
        if first[x] == last_resort[x] {
            continue;
        }
        let i = partition.category_of(x);
        let groups = instance.groups(x);
        let (rank, job) = (first_rank[x] + 1..groups.len())
            .map(|r| (r, groups[r][0]))
            .find(|&(_, q)| first_level[q].is_none_or(|l| l > i))
            .expect("last resort bounds the search");
        second[x] = Some(job);
        second_rank[x] = Some(rank);
    }

    let mut level_jobs = vec![Vec::new(); partition.len()];
    for (job, level) in first_level.iter().enumerate() {
        if let Some(l) = level {
            level_jobs[*l].push(job);
        }
    }

    Ok(FsAssignment {
        first,
        first_rank,
        second,
        second_rank,
        first_level,
        level_jobs,
        contenders,
        last_resort,
    })
}

/// λ_min(x, bound): minimum label over jobs `x` strictly prefers to `bound`.
pub fn lambda_min(
    instance: &Instance,
    x: ApplicantId,
    bound: JobId,
    labels: &Labels,
) -> Result<Cost> {
    let rank = instance.slot_rank(x, Some(bound))?;
    Ok(labels.min_above(instance, x, rank))
}

/// The first/second-job graph after pruning, with labels on every f-job.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGraph {
    labels: Labels,
    first: Vec<Option<JobId>>,
    second: Vec<Option<JobId>>,
    pruned: Vec<(ApplicantId, JobId)>,
}

impl ReducedGraph {
    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn lambda(&self, job: JobId) -> Option<Cost> {
        self.labels.get(job)
    }

    /// Surviving first edge of `x`.
    pub fn first(&self, x: ApplicantId) -> Option<JobId> {
        self.first[x]
    }

    /// Surviving second edge of `x`.
    pub fn second(&self, x: ApplicantId) -> Option<JobId> {
        self.second[x]
    }

    /// Pruned edges in the order they were removed.
    pub fn pruned_edges(&self) -> &[(ApplicantId, JobId)] {
        &self.pruned
    }

    /// Whether the slot (`None` = last resort) is a surviving edge of `x`.
    pub fn contains(&self, fs: &FsAssignment, x: ApplicantId, job: Option<JobId>) -> bool {
        let job = job.unwrap_or(fs.last_resort(x));
        self.first[x] == Some(job) || self.second[x] == Some(job)
    }
}

/// Labels f-jobs and prunes edges that no popular matching uses. Returns
/// `None` when some applicant proves no popular matching exists.
pub fn prune_strict(
    instance: &Instance,
    partition: &CategoryPartition,
    fs: &FsAssignment,
) -> Option<ReducedGraph> {
    let n = instance.num_applicants();
    let mut labels = Labels::new(instance.num_jobs());
    let mut first: Vec<Option<JobId>> = (0..n).map(|x| Some(fs.first(x))).collect();
    let mut second: Vec<Option<JobId>> = (0..n).map(|x| fs.second(x)).collect();
    let mut pruned = Vec::new();

    if partition.is_empty() {
        return Some(ReducedGraph {
            labels,
            first,
            second,
            pruned,
        });
    }
    for &p in fs.level_jobs(0) {
        labels.set(p, partition.weight(0));
    }

    for i in 1..partition.len() {
        let wi = partition.weight(i);
        for &x in partition.category(i) {
            if labels.min_above(instance, x, fs.first_rank(x)) < wi {
                return None;
            }
        }
        for &p in fs.level_jobs(i) {
            match fs.contenders(p) {
                &[x] => {
                    let above = labels.min_above(instance, x, fs.first_rank(x));
                    labels.set(p, wi.min(above.saturating_sub(wi)));
                }
                many => {
                    labels.set(p, wi);
                    for &x in many {
                        if labels.min_above(instance, x, fs.first_rank(x)) < wi.saturating_mul(2) {
                            first[x] = None;
                            pruned.push((x, p));
                        }
                    }
                }
            }
        }
    }

    for x in 0..n {
        if let (Some(s), Some(rank)) = (fs.second(x), fs.second_rank(x)) {
            let between = instance.groups(x)[fs.first_rank(x) + 1..rank]
                .iter()
                .flatten();
            if labels.min_over(between.copied()) < instance.weight(x) {
                second[x] = None;
                pruned.push((x, s));
            }
        }
    }
    Some(ReducedGraph {
        labels,
        first,
        second,
        pruned,
    })
}

/// Finds a well-formed matching inside the reduced graph, or `None` if the
/// reduced graph has none.
///
/// Second edges into f-jobs are dropped first, then degree-one applicants
/// are assigned until every remaining applicant has both its edges. On that
/// residual graph a maximum matching is repaired so that every f-job is
/// held by one of its contenders.
pub fn find_well_formed_strict(
    instance: &Instance,
    fs: &FsAssignment,
    reduced: &ReducedGraph,
) -> Option<Matching> {
    let n = instance.num_applicants();
    let num_jobs = instance.num_jobs();

    let edges: Vec<[Option<JobId>; 2]> = (0..n)
        .map(|x| {
            let s = reduced.second(x).filter(|&s| !fs.is_first_job(s));
            [reduced.first(x), s]
        })
        .collect();
    let mut job_adj: Vec<Vec<ApplicantId>> = vec![Vec::new(); num_jobs];
    let mut degree = vec![0u8; n];
    for (x, e) in edges.iter().enumerate() {
        for &j in e.iter().flatten() {
            job_adj[j].push(x);
            degree[x] += 1;
        }
    }

    let mut assigned: Vec<Option<JobId>> = vec![None; n];
    let mut taken = vec![false; num_jobs];
    let mut queue: Vec<ApplicantId> = (0..n).filter(|&x| degree[x] <= 1).collect();
    while let Some(x) = queue.pop() {
        if assigned[x].is_some() {
            continue;
        }
        let job = edges[x].iter().flatten().copied().find(|&j| !taken[j])?;
        assigned[x] = Some(job);
        taken[job] = true;
        for &y in &job_adj[job] {
            if y != x && assigned[y].is_none() {
                degree[y] -= 1;
                if degree[y] == 1 {
                    queue.push(y);
                } else if degree[y] == 0 {
                    return None;
                }
            }
        }
    }

    let residual: Vec<ApplicantId> = (0..n).filter(|&x| assigned[x].is_none()).collect();
    if !residual.is_empty() {
        let mut graph = BipartiteGraph::new(residual.len(), num_jobs);
        for (i, &x) in residual.iter().enumerate() {
            let [f, s] = edges[x];
            graph.set_neighbors(i, vec![f.expect("degree two"), s.expect("degree two")]);
        }
        let mut m = max_matching(&graph, None);
        if m.size() < residual.len() {
            return None;
        }
        for (i, &x) in residual.iter().enumerate() {
            let p = edges[x][0].expect("degree two");
            if m.right[p].is_none() {
                let s = m.left[i].take().expect("applicant-complete");
                m.right[s] = None;
                m.left[i] = Some(p);
                m.right[p] = Some(i);
            }
        }
        for (i, &x) in residual.iter().enumerate() {
            assigned[x] = m.left[i];
        }
    }

    let mut holder: Vec<Option<ApplicantId>> = vec![None; num_jobs];
    for (x, job) in assigned.iter().enumerate() {
        holder[job.expect("every applicant assigned")] = Some(x);
    }
    let every_first_job_held = (0..num_jobs)
        .filter(|&p| fs.is_first_job(p))
        .all(|p| holder[p].is_some_and(|y| fs.first(y) == p));
    if !every_first_job_held {
        return None;
    }

    let mut matching = Matching::from_assignment(assigned);
    matching.normalize(instance);
    debug_assert!(crate::oracle::is_well_formed(
        &matching,
        instance,
        crate::oracle::Structure::Strict(fs)
    ));
    Some(matching)
}

/// Everything the strict pipeline computed, kept for inspection.
#[derive(Debug, Clone)]
pub struct StrictRun {
    /// The last-resort-augmented instance all ids refer to.
    pub instance: Instance,
    pub partition: CategoryPartition,
    pub fs: FsAssignment,
    /// `None` if pruning already ruled out a popular matching.
    pub reduced: Option<ReducedGraph>,
    pub solution: Solution,
}

pub fn run_strict(instance: &Instance) -> Result<StrictRun> {
    if !instance.is_strict() {
        return Err(Error::Precondition(
            "the strict solver needs strict preference lists".into(),
        ));
    }
    let instance = augment_with_last_resorts(instance);
    let partition = categorize(&instance);
    let fs = compute_fs_strict(&instance, &partition)?;
    let reduced = prune_strict(&instance, &partition, &fs);
    let solution = reduced
        .as_ref()
        .and_then(|r| find_well_formed_strict(&instance, &fs, r))
        .map_or(Solution::NoPopularMatching, Solution::Popular);
    Ok(StrictRun {
        instance,
        partition,
        fs,
        reduced,
        solution,
    })
}

/// Finds a popular matching of a strict instance in `O(n + m)`-style passes.
pub fn solve_strict(instance: &Instance) -> Result<Solution> {
    Ok(run_strict(instance)?.solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Matching;

    fn four_applicants() -> Instance {
        Instance::builder()
            .strict("x1", 7, &["A", "B", "C"])
            .strict("x2", 4, &["A", "C", "D"])
            .strict("x3", 2, &["C", "A", "D", "E"])
            .strict("x4", 2, &["A", "D", "E"])
            .build()
            .unwrap()
    }

    fn names(inst: &Instance, jobs: impl Iterator<Item = JobId>) -> Vec<String> {
        jobs.map(|j| inst.job(j).name().to_string()).collect()
    }

    #[test]
    fn first_and_second_jobs_of_four_applicants() {
        let run = run_strict(&four_applicants()).unwrap();
        let inst = &run.instance;
        assert_eq!(
            names(inst, (0..4).map(|x| run.fs.first(x))),
            ["A", "C", "D", "D"]
        );
        assert_eq!(
            names(inst, (0..4).map(|x| run.fs.second(x).unwrap())),
            ["B", "D", "E", "E"]
        );
    }

    #[test]
    fn degenerate_lists() {
        let inst = augment_with_last_resorts(
            &Instance::builder()
                .strict("a", 1, &["A"])
                .applicant("b", 1, vec![])
                .build()
                .unwrap(),
        );
        let fs = compute_fs_strict(&inst, &categorize(&inst)).unwrap();
        assert_eq!(fs.first(0), inst.job_id("A").unwrap());
        assert_eq!(fs.second(0), inst.last_resort(0));
        assert_eq!(fs.first(1), inst.last_resort(1).unwrap());
        assert_eq!(fs.second(1), None);
    }

    #[test]
    fn lambda_min_on_four_applicants() {
        let run = run_strict(&four_applicants()).unwrap();
        let inst = &run.instance;
        let labels = run.reduced.as_ref().unwrap().labels();
        let job = |n| inst.job_id(n).unwrap();
        assert_eq!(lambda_min(inst, 2, job("D"), labels).unwrap(), 3);
        assert_eq!(
            lambda_min(inst, 0, job("A"), labels).unwrap(),
            crate::labels::INFINITY
        );
        assert_eq!(lambda_min(inst, 3, job("D"), labels).unwrap(), 7);
        assert!(lambda_min(inst, 0, job("D"), labels).is_err());
    }

    #[test]
    fn prune_four_applicants() {
        let run = run_strict(&four_applicants()).unwrap();
        let inst = &run.instance;
        let reduced = run.reduced.unwrap();
        let job = |n| inst.job_id(n).unwrap();
        assert_eq!(reduced.lambda(job("A")), Some(7));
        assert_eq!(reduced.lambda(job("C")), Some(3));
        assert_eq!(reduced.lambda(job("D")), Some(2));
        assert_eq!(reduced.pruned_edges(), &[(2, job("D"))]);
    }

    #[test]
    fn single_category_labels_with_top_weight() {
        let inst = Instance::builder()
            .strict("a", 3, &["A", "B"])
            .strict("b", 3, &["A", "C"])
            .strict("c", 3, &["B"])
            .build()
            .unwrap();
        let run = run_strict(&inst).unwrap();
        let reduced = run.reduced.unwrap();
        assert!(reduced.pruned_edges().is_empty());
        assert!(reduced.labels().iter().all(|(_, v)| v == 3));
    }

    #[test]
    fn four_applicants_solution() {
        let inst = four_applicants();
        let expected =
            Matching::from_names(&inst, &[("x1", "A"), ("x2", "C"), ("x3", "E"), ("x4", "D")])
                .unwrap();
        assert_eq!(solve_strict(&inst).unwrap(), Solution::Popular(expected));
    }

    #[test]
    fn trivial_and_infeasible_instances() {
        let one = Instance::builder().strict("x", 1, &["A"]).build().unwrap();
        let expected = Matching::from_names(&one, &[("x", "A")]).unwrap();
        assert_eq!(solve_strict(&one).unwrap(), Solution::Popular(expected));

        let three = Instance::builder()
            .strict("a", 1, &["A", "B"])
            .strict("b", 1, &["A", "B"])
            .strict("c", 1, &["A", "B"])
            .build()
            .unwrap();
        let run = run_strict(&three).unwrap();
        assert!(run.reduced.as_ref().unwrap().pruned_edges().is_empty());
        assert_eq!(run.solution, Solution::NoPopularMatching);
    }

    #[test]
    fn two_applicants_one_job() {
        let inst = Instance::builder()
            .strict("a", 1, &["A"])
            .strict("b", 1, &["A"])
            .build()
            .unwrap();
        let Solution::Popular(m) = solve_strict(&inst).unwrap() else {
            panic!("expected a popular matching");
        };
        assert_eq!(m.size(), 1);
        assert_eq!(m.last_resort_count(), 1);
    }

    #[test]
    fn rejects_ties() {
        let inst = Instance::builder()
            .ties("a", 1, &[&["A", "B"]])
            .build()
            .unwrap();
        assert!(matches!(solve_strict(&inst), Err(Error::Precondition(_))));
    }
}
