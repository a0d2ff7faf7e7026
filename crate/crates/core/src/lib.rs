//! Weighted popular matchings for one-sided preference lists.
//!
//! Applicants carry positive weights and rank jobs, possibly with ties. A
//! matching is popular when no other matching is preferred by a strictly
//! larger total weight of applicants. [`solve_strict`] handles strict lists;
//! [`solve_ties`] handles the general case. The [`oracle`] module checks
//! either against exhaustive search on small instances.
//!
//! ```
//! use popmatch::{Instance, Solution, solve_strict};
//!
//! let inst = Instance::builder()
//!     .strict("x1", 7, &["A", "B", "C"])
//!     .strict("x2", 4, &["A", "C", "D"])
//!     .strict("x3", 2, &["C", "A", "D", "E"])
//!     .strict("x4", 2, &["A", "D", "E"])
//!     .build()?;
//! let Solution::Popular(m) = solve_strict(&inst)? else { unreachable!() };
//! assert_eq!(m.get(0), inst.job_id("A"));
//! # Ok::<(), popmatch::Error>(())
//! ```
#![allow(clippy::needless_range_loop)]

pub mod bench;
pub mod error;
pub mod format;
pub mod generate;
pub mod graphkit;
pub mod instance;
pub mod labels;
pub mod oracle;
pub mod strict;
pub mod ties;

pub use error::{Error, Result};
pub use instance::{
    augment_with_last_resorts, categorize, more_popular, preference, satisfaction, Applicant,
    ApplicantId, CategoryPartition, Comparison, Instance, InstanceBuilder, Job, JobId, Matching,
    Preference, Satisfaction, Weight,
};
pub use strict::solve_strict;
pub use ties::{solve_ties, solve_ties_max_cardinality};

/// Outcome of a solver.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Solution {
    Popular(Matching),
    NoPopularMatching,
}

impl Solution {
    pub fn matching(&self) -> Option<&Matching> {
        match self {
            Solution::Popular(m) => Some(m),
            Solution::NoPopularMatching => None,
        }
    }

    pub fn into_matching(self) -> Option<Matching> {
        match self {
            Solution::Popular(m) => Some(m),
            Solution::NoPopularMatching => None,
        }
    }

    pub fn is_popular(&self) -> bool {
        matches!(self, Solution::Popular(_))
    }
}

/// Picks the strict pipeline for strict instances and the ties pipeline otherwise.
pub fn solve(instance: &Instance) -> Result<Solution> {
    if instance.is_strict() {
        solve_strict(instance)
    } else {
        solve_ties(instance)
    }
}
