// SPDX-License-Identifier: Apache-2.0

//! Baseline centrality measures: shortest-path betweenness (Freeman double
//! loop, Brandes and length-scaled accumulation), PageRank and Markov
//! centrality.

mod betweenness;
mod markov;
mod pagerank;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub use betweenness::{
    betweenness_brandes, betweenness_brandes_from, betweenness_freeman, betweenness_freeman_from,
    betweenness_geisberger, betweenness_geisberger_from, dependency_brandes, dependency_geisberger,
};
pub use markov::markov_centrality;
pub use pagerank::{pagerank, PageRankConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    Freeman,
    Brandes,
    Geisberger,
    PageRank,
    Markov,
    Reliance,
    GroupReliance,
}

impl Measure {
    pub const ALL: [Measure; 7] = [
        Measure::Freeman,
        Measure::Brandes,
        Measure::Geisberger,
        Measure::PageRank,
        Measure::Markov,
        Measure::Reliance,
        Measure::GroupReliance,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Freeman => "freeman",
            Measure::Brandes => "brandes",
            Measure::Geisberger => "geisberger",
            Measure::PageRank => "pagerank",
            Measure::Markov => "markov",
            Measure::Reliance => "reliance",
            Measure::GroupReliance => "group_reliance",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown measure `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    #[default]
    Raw,
    Max,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::Raw => "raw",
            Normalization::Max => "max",
        }
    }
}

/// One nonnegative score per node for a given measure.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMap {
    pub measure: Measure,
    pub values: Vec<f64>,
    pub normalization: Normalization,
}

impl ScoreMap {
    pub fn raw(measure: Measure, values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite() && *v >= 0.0));
        Self {
            measure,
            values,
            normalization: Normalization::Raw,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// Sums per-source vectors in ascending source order. Sources are evaluated
/// in parallel a chunk at a time, so the floating-point result does not
/// depend on the thread count.
pub(crate) fn ordered_source_sum<F>(n: usize, sources: &[usize], per_source: F) -> Result<Vec<f64>>
where
    F: Fn(usize) -> Result<Vec<f64>> + Sync,
{
    let mut total = vec![0.0; n];
    let chunk = (rayon::current_num_threads() * 4).max(1);
    for batch in sources.chunks(chunk) {
        let parts: Vec<Vec<f64>> = batch
            .par_iter()
            .map(|&s| per_source(s))
            .collect::<Result<_>>()?;
        for part in parts {
            for (acc, x) in total.iter_mut().zip(part) {
                *acc += x;
            }
        }
    }
    Ok(total)
}
