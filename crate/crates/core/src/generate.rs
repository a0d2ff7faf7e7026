//! Seeded random instances.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, Weight};

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParams {
    pub applicants: usize,
    pub jobs: usize,
    /// Preference list length, capped at `jobs`.
    pub list_len: usize,
    /// When set, each list length is drawn uniformly from `0..=list_len`.
    pub vary_list_len: bool,
    /// Probability that two consecutive jobs on a list are tied.
    pub tie_prob: f64,
    pub categories: usize,
    pub seed: u64,
    /// One weight per category; defaults to `2^0..2^(K-1)`.
    pub weights: Option<Vec<Weight>>,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            applicants: 10,
            jobs: 10,
            list_len: 3,
            vary_list_len: false,
            tie_prob: 0.0,
            categories: 1,
            seed: 0,
            weights: None,
        }
    }
}

impl GeneratorParams {
    pub fn weights(&self) -> Vec<Weight> {
        match &self.weights {
            Some(w) => w.clone(),
            None => (0..self.categories).map(|i| 1 << i).collect(),
        }
    }
}

/// Generates an instance; the same parameters always give the same instance.
///
/// Applicants `x1..` pick a category uniformly, then sample their list
/// without replacement from jobs `j1..`. Jobs nobody lists do not appear.
pub fn generate(params: &GeneratorParams) -> Result<Instance> {
    if params.categories == 0 {
        return Err(Error::InvalidInstance(
            "at least one category is required".into(),
        ));
    }
    if !(0.0..=1.0).contains(&params.tie_prob) {
        return Err(Error::InvalidInstance(format!(
            "tie probability {} is outside [0, 1]",
            params.tie_prob
        )));
    }
    let weights = params.weights();
    if weights.len() != params.categories {
        return Err(Error::InvalidInstance(format!(
            "{} weights given for {} categories",
            weights.len(),
            params.categories
        )));
    }
    let mut sorted = weights.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != weights.len() || sorted[0] == 0 {
        return Err(Error::InvalidInstance(
            "weights must be distinct and positive".into(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let max_len = params.list_len.min(params.jobs);
    let mut builder = Instance::builder();
    for a in 0..params.applicants {
        let weight = weights[rng.gen_range(0..params.categories)];
        let len = if params.vary_list_len {
            rng.gen_range(0..=max_len)
        } else {
            max_len
        };
        let mut groups: Vec<Vec<String>> = Vec::new();
        for (i, j) in sample(&mut rng, params.jobs, len).into_iter().enumerate() {
            let name = format!("j{}", j + 1);
            match groups.last_mut() {
                Some(group) if i > 0 && rng.gen_bool(params.tie_prob) => group.push(name),
                _ => groups.push(vec![name]),
            }
        }
        builder = builder.applicant(&format!("x{}", a + 1), weight, groups);
    }
    builder.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_under_seed() {
        let params = GeneratorParams {
            applicants: 20,
            jobs: 15,
            list_len: 4,
            tie_prob: 0.4,
            categories: 3,
            seed: 42,
            ..Default::default()
        };
        assert_eq!(generate(&params).unwrap(), generate(&params).unwrap());
        let other = GeneratorParams {
            seed: 43,
            ..params.clone()
        };
        assert_ne!(generate(&params).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn zero_tie_probability_is_strict() {
        let params = GeneratorParams {
            applicants: 30,
            jobs: 10,
            list_len: 6,
            categories: 2,
            ..Default::default()
        };
        let inst = generate(&params).unwrap();
        assert!(inst.is_strict());
        assert_eq!(inst.num_edges(), 30 * 6);
    }

    #[test]
    fn default_weights_halve() {
        let params = GeneratorParams {
            applicants: 200,
            categories: 3,
            ..Default::default()
        };
        assert_eq!(params.weights(), vec![1, 2, 4]);
        let inst = generate(&params).unwrap();
        let mut seen: Vec<_> = inst.applicants().iter().map(|a| a.weight()).collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen, vec![1, 2, 4]);
    }

    #[test]
    fn full_ties_give_one_group() {
        let params = GeneratorParams {
            applicants: 5,
            jobs: 5,
            list_len: 5,
            tie_prob: 1.0,
            ..Default::default()
        };
        let inst = generate(&params).unwrap();
        assert!((0..5).all(|a| inst.groups(a).len() == 1));
    }

    #[test]
    fn rejects_bad_weights() {
        let bad = |weights: Vec<Weight>| GeneratorParams {
            categories: weights.len().max(1),
            weights: Some(weights),
            ..Default::default()
        };
        assert!(generate(&bad(vec![2, 2])).is_err());
        assert!(generate(&bad(vec![0, 1])).is_err());
        let mismatch = GeneratorParams {
            categories: 3,
            weights: Some(vec![1, 2]),
            ..Default::default()
        };
        assert!(generate(&mismatch).is_err());
    }
}
