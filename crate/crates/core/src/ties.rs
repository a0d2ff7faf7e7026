//! Popular matchings for preference lists with ties.
//!
//! Categories are processed heaviest first. Layer `i` is the graph `G_i`
//! joining the applicants of categories `0..=i` to their first-job sets; a
//! maximum matching of each layer, grown from the previous one, decides
//! which jobs are critical and hence what later categories may claim.

use crate::error::{Error, Result};
use crate::graphkit::{
    critical_with, max_matching, rank_maximal, BipartiteGraph, BipartiteMatching, RankedGraph,
};
use crate::instance::{
    augment_with_last_resorts, categorize, ApplicantId, CategoryPartition, Instance, JobId,
    Matching,
};
use crate::labels::{Cost, Labels, INFINITY};
use crate::Solution;

/// One layer `G_i`: its maximum matching and critical vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub matching: BipartiteMatching,
    pub critical_jobs: Vec<bool>,
    pub critical_applicants: Vec<bool>,
}

impl Layer {
    /// Size of a maximum matching of this layer.
    pub fn size(&self) -> usize {
        self.matching.size()
    }
}

/// First/second job sets together with every layer's matching and critical sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredState {
    first: Vec<Vec<JobId>>,
    first_rank: Vec<usize>,
    second: Vec<Vec<JobId>>,
    second_rank: Vec<Option<usize>>,
    layers: Vec<Layer>,
    first_critical: Vec<Option<usize>>,
    category_of: Vec<usize>,
    last_resort: Vec<JobId>,
}

impl LayeredState {
    pub fn first(&self, x: ApplicantId) -> &[JobId] {
        &self.first[x]
    }

    pub fn first_rank(&self, x: ApplicantId) -> usize {
        self.first_rank[x]
    }

    /// Empty when `x` is critical in its own layer.
    pub fn second(&self, x: ApplicantId) -> &[JobId] {
        &self.second[x]
    }

    pub fn second_rank(&self, x: ApplicantId) -> Option<usize> {
        self.second_rank[x]
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn layer(&self, i: usize) -> &Layer {
        &self.layers[i]
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// First layer in which `job` is critical.
    pub fn first_critical_layer(&self, job: JobId) -> Option<usize> {
        self.first_critical[job]
    }

    pub fn category_of(&self, x: ApplicantId) -> usize {
        self.category_of[x]
    }

    pub fn last_resort(&self, x: ApplicantId) -> JobId {
        self.last_resort[x]
    }

    pub fn num_applicants(&self) -> usize {
        self.first.len()
    }

    pub fn in_first(&self, x: ApplicantId, job: JobId) -> bool {
        self.first[x].contains(&job)
    }

    pub fn in_second(&self, x: ApplicantId, job: JobId) -> bool {
        self.second[x].contains(&job)
    }
}

/// Highest-ranked group of `x` with at least one job passing `allowed`,
/// restricted to those jobs.
fn best_group(
    instance: &Instance,
    x: ApplicantId,
    from_rank: usize,
    allowed: impl Fn(JobId) -> bool,
) -> Option<(usize, Vec<JobId>)> {
    instance.groups(x)[from_rank..]
        .iter()
        .enumerate()
        .find_map(|(offset, group)| {
            let jobs: Vec<JobId> = group.iter().copied().filter(|&q| allowed(q)).collect();
            (!jobs.is_empty()).then(|| (from_rank + offset, jobs))
        })
}

/// Builds `G_1..G_k` incrementally. For `x` in C_i, f(x) is the best group
/// of jobs non-critical in every earlier layer; s(x) is the best group of
/// jobs non-critical in every layer up to `i`, or empty if `x` is critical
/// in `G_i`.
pub fn build_layers(instance: &Instance, partition: &CategoryPartition) -> Result<LayeredState> {
    if !instance.is_augmented() {
        return Err(Error::Precondition(
            "instance must be augmented with last resorts".into(),
        ));
    }
    let n = instance.num_applicants();
    let num_jobs = instance.num_jobs();
    let mut first = vec![Vec::new(); n];
    let mut first_rank = vec![0; n];
    let mut second = vec![Vec::new(); n];
    let mut second_rank = vec![None; n];
    let mut first_critical: Vec<Option<usize>> = vec![None; num_jobs];
    let mut graph = BipartiteGraph::new(n, num_jobs);
    let mut right_adj: Vec<Vec<ApplicantId>> = vec![Vec::new(); num_jobs];
    let mut matching = BipartiteMatching::empty(n, num_jobs);
    let mut layers = Vec::with_capacity(partition.len());

    for (i, category) in partition.categories().iter().enumerate() {
        for &x in category {
            let (rank, jobs) = best_group(instance, x, 0, |q| first_critical[q].is_none())
                .expect("last resort is critical in no earlier layer");
            for &q in &jobs {
                right_adj[q].push(x);
            }
            graph.set_neighbors(x, jobs.clone());
            first[x] = jobs;
            first_rank[x] = rank;
        }
        matching = max_matching(&graph, Some(&matching));
        let critical = critical_with(&graph, &right_adj, &matching);
        for (q, &c) in critical.jobs.iter().enumerate() {
            if c && first_critical[q].is_none() {
                first_critical[q] = Some(i);
            }
        }
        for &x in category {
            if critical.applicants[x] {
                continue;
            }
            let (rank, jobs) =
                best_group(instance, x, first_rank[x], |q| first_critical[q].is_none())
                    .expect("a non-critical applicant's last resort is never critical");
            second[x] = jobs;
            second_rank[x] = Some(rank);
        }
        layers.push(Layer {
            matching: matching.clone(),
            critical_jobs: critical.jobs,
            critical_applicants: critical.applicants,
        });
    }

    let category_of = (0..n).map(|x| partition.category_of(x)).collect();
    let last_resort = (0..n)
        .map(|x| instance.last_resort(x).expect("augmented"))
        .collect();
    Ok(LayeredState {
        first,
        first_rank,
        second,
        second_rank,
        layers,
        first_critical,
        category_of,
        last_resort,
    })
}

/// λ_equiv(x): minimum label over jobs tied with f(x) on `x`'s list but
/// outside f(x); [`INFINITY`] if f(x) is the whole group.
pub fn lambda_equiv(
    instance: &Instance,
    layers: &LayeredState,
    x: ApplicantId,
    labels: &Labels,
) -> Cost {
    let group = &instance.groups(x)[layers.first_rank(x)];
    labels.min_over(group.iter().copied().filter(|&q| !layers.in_first(x, q)))
}

/// Labels and pruned edges produced by [`prune_ties`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TiesLabels {
    labels: Labels,
    first_pruned: Vec<bool>,
    second_pruned: Vec<bool>,
}

impl TiesLabels {
    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn lambda(&self, job: JobId) -> Option<Cost> {
        self.labels.get(job)
    }

    /// Whether all edges between `x` and f(x) were pruned.
    pub fn is_first_pruned(&self, x: ApplicantId) -> bool {
        self.first_pruned[x]
    }

    pub fn is_second_pruned(&self, x: ApplicantId) -> bool {
        self.second_pruned[x]
    }

    /// Whether the slot (`None` = last resort) is a surviving edge of `x`.
    pub fn contains(&self, layers: &LayeredState, x: ApplicantId, job: Option<JobId>) -> bool {
        let job = job.unwrap_or(layers.last_resort(x));
        (!self.first_pruned[x] && layers.in_first(x, job))
            || (!self.second_pruned[x] && layers.in_second(x, job))
    }

    pub fn pruned_edges(&self, layers: &LayeredState) -> Vec<(ApplicantId, JobId)> {
        let mut out = Vec::new();
        for x in 0..layers.num_applicants() {
            if self.first_pruned[x] {
                out.extend(layers.first(x).iter().map(|&q| (x, q)));
            }
            if self.second_pruned[x] {
                out.extend(layers.second(x).iter().map(|&q| (x, q)));
            }
        }
        out
    }
}

/// Labels every job at the first layer where it is critical and prunes edges
/// no popular matching uses. Returns `None` when no popular matching exists.
pub fn prune_ties(
    instance: &Instance,
    partition: &CategoryPartition,
    layers: &LayeredState,
) -> Option<TiesLabels> {
    let n = instance.num_applicants();
    let num_jobs = instance.num_jobs();
    let mut labels = Labels::new(num_jobs);
    let mut first_pruned = vec![false; n];
    let mut second_pruned = vec![false; n];
    // λ_min(x, f(x)) and λ_equiv(x) only read labels of jobs critical before
    // x's own layer, so they are fixed once that layer is reached.
    let mut above_first = vec![INFINITY; n];
    let mut equiv = vec![INFINITY; n];

    for i in 0..partition.len() {
        let wi = partition.weight(i);
        for &x in partition.category(i) {
            above_first[x] = labels.min_above(instance, x, layers.first_rank(x));
            equiv[x] = lambda_equiv(instance, layers, x, &labels);
        }
        let targets: Vec<JobId> = (0..num_jobs)
            .filter(|&q| layers.first_critical_layer(q) == Some(i))
            .collect();
        if i == 0 {
            for &q in &targets {
                labels.set(q, wi);
            }
            continue;
        }

        if partition.category(i).iter().any(|&x| above_first[x] < wi) {
            return None;
        }

        let layer = layers.layer(i);
        for j in 0..=i {
            let wj = partition.weight(j);
            for &x in partition.category(j) {
                if layer.critical_applicants[x] || first_pruned[x] {
                    continue;
                }
                if above_first[x] < wj.saturating_add(wi) || equiv[x] < wi {
                    first_pruned[x] = true;
                }
            }
        }

        if targets.is_empty() {
            continue;
        }
        // Grow alternating trees backwards from matched applicants in
        // non-decreasing key order; the first tree to reach a job fixes its
        // label. A job reached from x has an alternating path to x that
        // starts and ends with a matched edge.
        let matching = &layer.matching;
        let mut right_adj: Vec<Vec<ApplicantId>> = vec![Vec::new(); num_jobs];
        let mut order: Vec<(Cost, ApplicantId)> = Vec::new();
        for j in 0..=i {
            for &x in partition.category(j) {
                for &q in layers.first(x) {
                    right_adj[q].push(x);
                }
                if matching.left[x].is_none() {
                    continue;
                }
                let key = if layer.critical_applicants[x] {
                    wi.min(above_first[x].saturating_sub(instance.weight(x)))
                        .min(equiv[x])
                } else {
                    wi
                };
                order.push((key, x));
            }
        }
        order.sort_unstable();

        let mut seen_applicant = vec![false; n];
        let mut seen_job = vec![false; num_jobs];
        let mut stack = Vec::new();
        for &(key, root) in &order {
            if seen_applicant[root] {
                continue;
            }
            seen_applicant[root] = true;
            stack.push(root);
            while let Some(a) = stack.pop() {
                let q = matching.left[a].expect("only matched applicants are explored");
                if seen_job[q] {
                    continue;
                }
                seen_job[q] = true;
                if layers.first_critical_layer(q) == Some(i) {
                    labels.set(q, key);
                }
                for &y in &right_adj[q] {
                    if y != a && !seen_applicant[y] && matching.left[y].is_some() {
                        seen_applicant[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        for &q in &targets {
            if !labels.is_labeled(q) {
                labels.set(q, wi);
            }
        }
    }

    for x in 0..n {
        if let Some(rank) = layers.second_rank(x) {
            if labels.min_above(instance, x, rank) < instance.weight(x) {
                second_pruned[x] = true;
            }
        }
    }
    Some(TiesLabels {
        labels,
        first_pruned,
        second_pruned,
    })
}

/// What the final rank-maximal step optimizes among popular matchings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Objective {
    /// Any popular matching.
    #[default]
    AnyPopular,
    /// A popular matching with the fewest applicants on their last resort.
    MaxCardinality,
}

/// Searches the pruned graph for a well-formed matching by a rank-maximal
/// matching: f-edges of category `i` get rank `i + 1`, second-job edges rank
/// `k + 1` (or `k + 2` for a lone last-resort second job when maximizing
/// cardinality). The result is accepted iff it is applicant-complete and
/// maximum in every layer.
pub fn find_well_formed_ties(
    instance: &Instance,
    partition: &CategoryPartition,
    layers: &LayeredState,
    labels: &TiesLabels,
    objective: Objective,
) -> Option<Matching> {
    let n = instance.num_applicants();
    let k = partition.len() as u32;
    let mut graph = RankedGraph::new(n, instance.num_jobs());
    for x in 0..n {
        if !labels.is_first_pruned(x) {
            let rank = layers.category_of(x) as u32 + 1;
            for &q in layers.first(x) {
                graph.add_edge(x, q, rank);
            }
        }
        if !labels.is_second_pruned(x) {
            let second = layers.second(x);
            let rank = match objective {
                Objective::MaxCardinality if second == [layers.last_resort(x)] => k + 2,
                _ => k + 1,
            };
            for &q in second {
                graph.add_edge(x, q, rank);
            }
        }
    }
    let max_rank = match objective {
        Objective::AnyPopular => k + 1,
        Objective::MaxCardinality => k + 2,
    };
    let result = rank_maximal(&graph, max_rank);
    if result.size() < n {
        return None;
    }

    let mut in_layer = vec![0usize; partition.len()];
    for (x, q) in result.pairs() {
        if layers.in_first(x, q) {
            in_layer[layers.category_of(x)] += 1;
        }
    }
    let mut prefix = 0;
    for (i, count) in in_layer.iter().enumerate() {
        prefix += count;
        if prefix != layers.layer(i).size() {
            return None;
        }
    }

    let mut matching = Matching::from_assignment(result.left);
    matching.normalize(instance);
    Some(matching)
}

/// Everything the ties pipeline computed, kept for inspection.
#[derive(Debug, Clone)]
pub struct TiesRun {
    /// The last-resort-augmented instance all ids refer to.
    pub instance: Instance,
    pub partition: CategoryPartition,
    pub layers: LayeredState,
    /// `None` if pruning already ruled out a popular matching.
    pub labels: Option<TiesLabels>,
    pub solution: Solution,
}

pub fn run_ties(instance: &Instance, objective: Objective) -> Result<TiesRun> {
    let instance = augment_with_last_resorts(instance);
    let partition = categorize(&instance);
    let layers = build_layers(&instance, &partition)?;
    let labels = prune_ties(&instance, &partition, &layers);
    let solution = labels
        .as_ref()
        .and_then(|l| find_well_formed_ties(&instance, &partition, &layers, l, objective))
        .map_or(Solution::NoPopularMatching, Solution::Popular);
    Ok(TiesRun {
        instance,
        partition,
        layers,
        labels,
        solution,
    })
}

/// Finds a popular matching of any instance, ties allowed.
pub fn solve_ties(instance: &Instance) -> Result<Solution> {
    Ok(run_ties(instance, Objective::AnyPopular)?.solution)
}

/// Finds a popular matching that leaves the fewest applicants on their last resort.
pub fn solve_ties_max_cardinality(instance: &Instance) -> Result<Solution> {
    Ok(run_ties(instance, Objective::MaxCardinality)?.solution)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_applicants() -> Instance {
        Instance::builder()
            .strict("x1", 7, &["A", "B", "C"])
            .strict("x2", 4, &["A", "C", "D"])
            .strict("x3", 2, &["C", "A", "D", "E"])
            .strict("x4", 2, &["A", "D", "E"])
            .build()
            .unwrap()
    }

    fn names(inst: &Instance, jobs: &[JobId]) -> Vec<String> {
        jobs.iter()
            .map(|&j| inst.job(j).name().to_string())
            .collect()
    }

    #[test]
    fn four_applicants_matches_strict_definitions() {
        let run = run_ties(&four_applicants(), Objective::AnyPopular).unwrap();
        let inst = &run.instance;
        let firsts: Vec<_> = (0..4).map(|x| names(inst, run.layers.first(x))).collect();
        assert_eq!(firsts, [["A"], ["C"], ["D"], ["D"]]);
        let seconds: Vec<_> = (0..4).map(|x| names(inst, run.layers.second(x))).collect();
        // x1 and x2 are critical in their own layers, so they get no second job.
        assert_eq!(seconds, [vec![], vec![], vec!["E"], vec!["E"]]);
        assert!(run.layers.layer(0).critical_applicants[0]);
        assert!(run.layers.layer(1).critical_applicants[1]);
    }

    #[test]
    fn four_applicants_labels_and_solution() {
        let run = run_ties(&four_applicants(), Objective::AnyPopular).unwrap();
        let inst = &run.instance;
        let labels = run.labels.as_ref().unwrap();
        let job = |n| inst.job_id(n).unwrap();
        assert_eq!(labels.lambda(job("A")), Some(7));
        assert_eq!(labels.lambda(job("C")), Some(3));
        assert_eq!(labels.lambda(job("D")), Some(2));
        assert_eq!(labels.pruned_edges(&run.layers), vec![(2, job("D"))]);
        let expected = Matching::from_names(
            &four_applicants(),
            &[("x1", "A"), ("x2", "C"), ("x3", "E"), ("x4", "D")],
        )
        .unwrap();
        assert_eq!(run.solution, Solution::Popular(expected));
    }

    #[test]
    fn tie_group_claimed_by_heavier_applicant() {
        let inst = Instance::builder()
            .ties("x1", 5, &[&["A", "B"]])
            .strict("x2", 3, &["A", "B"])
            .build()
            .unwrap();
        let run = run_ties(&inst, Objective::AnyPopular).unwrap();
        let a = run.instance.job_id("A").unwrap();
        let b = run.instance.job_id("B").unwrap();
        assert_eq!(run.layers.first(0), &[a, b]);
        assert!(run.layers.layer(0).critical_applicants[0]);
        assert!(run.layers.second(0).is_empty());
        assert_eq!(run.layers.first(1), &[a]);
    }

    #[test]
    fn equal_weights_single_job_group() {
        let inst = Instance::builder()
            .ties("x1", 1, &[&["A"]])
            .ties("x2", 1, &[&["A"]])
            .build()
            .unwrap();
        let run = run_ties(&inst, Objective::AnyPopular).unwrap();
        for x in 0..2 {
            assert_eq!(run.layers.first(x), &[run.instance.job_id("A").unwrap()]);
            assert_eq!(run.layers.second(x), &[run.layers.last_resort(x)]);
        }
    }

    #[test]
    fn lambda_equiv_cases() {
        // x1 (w=4) takes A; x2 (w=1) ties A and B, so f(x2) = {B} and the
        // equivalent job A carries λ(A) = 4.
        let inst = Instance::builder()
            .strict("x1", 4, &["A"])
            .ties("x2", 1, &[&["A", "B"]])
            .build()
            .unwrap();
        let run = run_ties(&inst, Objective::AnyPopular).unwrap();
        let labels = run.labels.as_ref().unwrap().labels();
        let b = run.instance.job_id("B").unwrap();
        assert_eq!(run.layers.first(1), &[b]);
        assert_eq!(lambda_equiv(&run.instance, &run.layers, 1, labels), 4);
        assert_eq!(
            lambda_equiv(&run.instance, &run.layers, 0, labels),
            INFINITY
        );

        let strict = run_ties(&four_applicants(), Objective::AnyPopular).unwrap();
        let labels = strict.labels.as_ref().unwrap().labels();
        for x in 0..4 {
            assert_eq!(
                lambda_equiv(&strict.instance, &strict.layers, x, labels),
                INFINITY
            );
        }
    }

    #[test]
    fn single_category_prunes_nothing() {
        let inst = Instance::builder()
            .ties("a", 2, &[&["A", "B"], &["C"]])
            .ties("b", 2, &[&["A"], &["C"]])
            .strict("c", 2, &["B", "C"])
            .build()
            .unwrap();
        let run = run_ties(&inst, Objective::AnyPopular).unwrap();
        let labels = run.labels.as_ref().unwrap();
        assert!(labels.pruned_edges(&run.layers).is_empty());
        assert!(labels.labels().iter().all(|(_, v)| v == 2));
    }

    #[test]
    fn two_tied_applicants_two_jobs() {
        let inst = Instance::builder()
            .ties("a", 1, &[&["A", "B"]])
            .ties("b", 1, &[&["A", "B"]])
            .build()
            .unwrap();
        let Solution::Popular(m) = solve_ties(&inst).unwrap() else {
            panic!("expected a popular matching");
        };
        assert_eq!(m.size(), 2);

        let three = Instance::builder()
            .ties("a", 1, &[&["A", "B"]])
            .ties("b", 1, &[&["A", "B"]])
            .ties("c", 1, &[&["A", "B"]])
            .build()
            .unwrap();
        // Both jobs share one rank, so no matching beats one that fills them.
        let Solution::Popular(m) = solve_ties(&three).unwrap() else {
            panic!("expected a popular matching");
        };
        assert_eq!(m.size(), 2);
        assert!(crate::oracle::is_popular(&m, &three).unwrap().is_popular());
        assert!(!crate::oracle::all_popular(&three).unwrap().is_empty());
    }

    #[test]
    fn max_cardinality_prefers_real_jobs() {
        let inst = Instance::builder()
            .strict("a", 1, &["A"])
            .strict("b", 1, &["A"])
            .build()
            .unwrap();
        let Solution::Popular(m) = solve_ties_max_cardinality(&inst).unwrap() else {
            panic!("expected a popular matching");
        };
        assert_eq!(m.last_resort_count(), 1);

        // b's first job is its last resort; it stays there.
        let forced = Instance::builder()
            .strict("a", 2, &["A"])
            .strict("b", 1, &["A"])
            .build()
            .unwrap();
        let run = run_ties(&forced, Objective::MaxCardinality).unwrap();
        assert_eq!(run.layers.first(1), &[run.layers.last_resort(1)]);
        let Solution::Popular(m) = run.solution else {
            panic!("expected a popular matching");
        };
        assert_eq!(m.get(1), None);
        assert_eq!(m.get(0), run.instance.job_id("A"));
    }
}
