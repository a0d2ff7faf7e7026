//! Exhaustive ground truth for popularity on small instances.
//!
//! Nothing here is used by the solvers. Every routine refuses instances
//! whose assignment space `(#jobs + 1)^#applicants` exceeds the guard.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::instance::{ApplicantId, Instance, JobId, Matching, Satisfaction, Weight};
use crate::strict::FsAssignment;
use crate::ties::LayeredState;

/// Default bound on `(#jobs + 1)^#applicants`.
pub const DEFAULT_LIMIT: u128 = 10_000_000;

/// Real jobs are tracked in a `u128` availability mask.
const MAX_JOBS: usize = 128;

/// Dense memo tables are used up to this many jobs.
const DENSE_JOBS: usize = 16;

fn check_size(instance: &Instance, limit: u128) -> Result<()> {
    let base = instance.num_real_jobs() as u128 + 1;
    let mut size: u128 = 1;
    for _ in 0..instance.num_applicants() {
        size = size.saturating_mul(base);
        if size > limit {
            return Err(Error::TooLarge { size, limit });
        }
    }
    if instance.num_real_jobs() > MAX_JOBS {
        return Err(Error::TooLarge {
            size,
            limit: MAX_JOBS as u128,
        });
    }
    Ok(())
}

/// Per-applicant choices in enumeration order: listed real jobs by rank,
/// then the last resort (`None`), each with its rank.
struct Choices {
    options: Vec<Vec<(Option<JobId>, usize)>>,
    weights: Vec<Weight>,
    num_jobs: usize,
}

impl Choices {
    fn new(instance: &Instance, limit: u128) -> Result<Self> {
        check_size(instance, limit)?;
        let options = (0..instance.num_applicants())
            .map(|a| {
                let mut opts: Vec<_> = instance
                    .groups(a)
                    .iter()
                    .enumerate()
                    .flat_map(|(rank, g)| g.iter().map(move |&q| (q, rank)))
                    .filter(|&(q, _)| !instance.is_last_resort(q))
                    .map(|(q, rank)| (Some(q), rank))
                    .collect();
                opts.push((None, instance.last_resort_rank(a)));
                opts
            })
            .collect();
        Ok(Choices {
            options,
            weights: instance.applicants().iter().map(|a| a.weight()).collect(),
            num_jobs: instance.num_real_jobs(),
        })
    }

    fn for_each(&self, f: &mut impl FnMut(&Matching)) {
        let mut current = Matching::empty(self.options.len());
        self.walk(0, 0, &mut current, f);
    }

    fn walk(&self, a: usize, used: u128, current: &mut Matching, f: &mut impl FnMut(&Matching)) {
        if a == self.options.len() {
            f(current);
            return;
        }
        for &(job, _) in &self.options[a] {
            let bit = job.map_or(0, |q| 1u128 << q);
            if used & bit != 0 {
                continue;
            }
            current.set(a, job);
            self.walk(a + 1, used | bit, current, f);
        }
        current.set(a, None);
    }

    /// Maximum of satisfaction(M', M) over all M', where `held[a]` is the
    /// rank `a` holds in M, together with the first maximizer.
    fn best_response(&self, held: &[usize]) -> (i128, Matching) {
        let n = self.options.len();
        let mut memo = Memo::new(n, self.num_jobs);
        let best = self.best_from(0, 0, held, &mut memo);
        let mut witness = Matching::empty(n);
        let mut used = 0u128;
        for a in 0..n {
            let target = memo.get(a, used).expect("visited");
            for &(job, rank) in &self.options[a] {
                let bit = job.map_or(0, |q| 1u128 << q);
                if used & bit != 0 {
                    continue;
                }
                let value =
                    self.gain(a, rank, held) + self.best_from(a + 1, used | bit, held, &mut memo);
                if value == target {
                    witness.set(a, job);
                    used |= bit;
                    break;
                }
            }
        }
        (best, witness)
    }

    fn gain(&self, a: ApplicantId, rank: usize, held: &[usize]) -> i128 {
        let w = i128::from(self.weights[a]);
        match rank.cmp(&held[a]) {
            std::cmp::Ordering::Less => w,
            std::cmp::Ordering::Greater => -w,
            std::cmp::Ordering::Equal => 0,
        }
    }

    fn best_from(&self, a: usize, used: u128, held: &[usize], memo: &mut Memo) -> i128 {
        if a == self.options.len() {
            return 0;
        }
        if let Some(v) = memo.get(a, used) {
            return v;
        }
        let mut best = i128::MIN;
        for &(job, rank) in &self.options[a] {
            let bit = job.map_or(0, |q| 1u128 << q);
            if used & bit != 0 {
                continue;
            }
            let value = self.gain(a, rank, held) + self.best_from(a + 1, used | bit, held, memo);
            best = best.max(value);
        }
        memo.set(a, used, best);
        best
    }
}

enum Memo {
    Dense {
        table: Vec<Option<i128>>,
        shift: usize,
    },
    Sparse(HashMap<(usize, u128), i128>),
}

impl Memo {
    fn new(n: usize, num_jobs: usize) -> Self {
        if num_jobs <= DENSE_JOBS {
            Memo::Dense {
                table: vec![None; (n + 1) << num_jobs],
                shift: num_jobs,
            }
        } else {
            Memo::Sparse(HashMap::new())
        }
    }

    fn get(&self, a: usize, used: u128) -> Option<i128> {
        match self {
            Memo::Dense { table, shift } => table[(a << shift) | used as usize],
            Memo::Sparse(map) => map.get(&(a, used)).copied(),
        }
    }

    fn set(&mut self, a: usize, used: u128, value: i128) {
        match self {
            Memo::Dense { table, shift } => table[(a << *shift) | used as usize] = Some(value),
            Memo::Sparse(map) => {
                map.insert((a, used), value);
            }
        }
    }
}

/// Calls `f` on every matching in depth-first order: applicant 0 first,
/// each applicant trying its listed jobs by rank and then its last resort.
pub fn for_each_matching(
    instance: &Instance,
    limit: u128,
    mut f: impl FnMut(&Matching),
) -> Result<()> {
    Choices::new(instance, limit)?.for_each(&mut f);
    Ok(())
}

/// Every matching of `instance`, in enumeration order.
pub fn enumerate_matchings(instance: &Instance, limit: u128) -> Result<Vec<Matching>> {
    let mut out = Vec::new();
    for_each_matching(instance, limit, |m| out.push(m.clone()))?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Popularity {
    Popular,
    /// `witness` is more popular than the matching under test by `satisfaction`.
    Beaten {
        witness: Matching,
        satisfaction: Satisfaction,
    },
}

impl Popularity {
    pub fn is_popular(&self) -> bool {
        matches!(self, Popularity::Popular)
    }
}

fn held_ranks(matching: &Matching, instance: &Instance) -> Result<Vec<usize>> {
    matching.validate(instance)?;
    (0..instance.num_applicants())
        .map(|a| instance.slot_rank(a, matching.get(a)))
        .collect()
}

/// Checks `matching` against every other matching of the instance. A beaten
/// matching comes with the first maximizer of satisfaction in enumeration order.
pub fn is_popular(matching: &Matching, instance: &Instance) -> Result<Popularity> {
    is_popular_with_limit(matching, instance, DEFAULT_LIMIT)
}

pub fn is_popular_with_limit(
    matching: &Matching,
    instance: &Instance,
    limit: u128,
) -> Result<Popularity> {
    let choices = Choices::new(instance, limit)?;
    let held = held_ranks(matching, instance)?;
    let (best, witness) = choices.best_response(&held);
    Ok(if best > 0 {
        Popularity::Beaten {
            witness,
            satisfaction: Satisfaction(best),
        }
    } else {
        Popularity::Popular
    })
}

/// Every popular matching, in enumeration order.
pub fn all_popular(instance: &Instance) -> Result<Vec<Matching>> {
    all_popular_with_limit(instance, DEFAULT_LIMIT)
}

pub fn all_popular_with_limit(instance: &Instance, limit: u128) -> Result<Vec<Matching>> {
    let choices = Choices::new(instance, limit)?;
    let mut out = Vec::new();
    let mut failure = None;
    choices.for_each(&mut |m| {
        if failure.is_some() {
            return;
        }
        match held_ranks(m, instance) {
            Ok(held) => {
                if choices.best_response(&held).0 <= 0 {
                    out.push(m.clone());
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// The f/s data a well-formedness check is measured against.
#[derive(Debug, Clone, Copy)]
pub enum Structure<'a> {
    Strict(&'a FsAssignment),
    Ties(&'a LayeredState),
}

/// The structural condition every popular matching meets.
///
/// Strict: every applicant holds f(x) or s(x), and every f-job is held by an
/// applicant whose f-job it is. Ties: every applicant holds a job of f(x) or
/// s(x), and for each layer `i` the edges of `G_i` in the matching form a
/// maximum matching of `G_i`. `instance` must be the augmented instance the
/// structure was computed on.
pub fn is_well_formed(matching: &Matching, instance: &Instance, structure: Structure<'_>) -> bool {
    if matching.validate(instance).is_err() {
        return false;
    }
    match structure {
        Structure::Strict(fs) => well_formed_strict(matching, instance, fs),
        Structure::Ties(layers) => well_formed_ties(matching, layers),
    }
}

fn well_formed_strict(matching: &Matching, instance: &Instance, fs: &FsAssignment) -> bool {
    let n = fs.num_applicants();
    let mut holder = vec![None; instance.num_jobs()];
    for x in 0..n {
        let slot = matching.get(x).unwrap_or(fs.last_resort(x));
        if slot != fs.first(x) && Some(slot) != fs.second(x) {
            return false;
        }
        holder[slot] = Some(x);
    }
    (0..instance.num_jobs())
        .filter(|&q| fs.is_first_job(q))
        .all(|q| holder[q].is_some_and(|y| fs.first(y) == q))
}

fn well_formed_ties(matching: &Matching, layers: &LayeredState) -> bool {
    let mut in_layer = vec![0usize; layers.num_layers()];
    for x in 0..layers.num_applicants() {
        let slot = matching.get(x).unwrap_or(layers.last_resort(x));
        if layers.in_first(x, slot) {
            in_layer[layers.category_of(x)] += 1;
        } else if !layers.in_second(x, slot) {
            return false;
        }
    }
    let mut prefix = 0;
    in_layer.iter().enumerate().all(|(i, &c)| {
        prefix += c;
        prefix == layers.layer(i).size()
    })
}
