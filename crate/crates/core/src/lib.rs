// SPDX-License-Identifier: Apache-2.0

//! Source-intermediate reliance ranking on undirected graphs.
//!
//! Given one or more suspect nodes, [`reliance`] ranks the intermediaries
//! each suspect depends on to reach the rest of the network, weighting every
//! shortest-path dependency by how far down the path the intermediary sits.
//! [`centrality`] provides the betweenness, PageRank and Markov baselines the
//! ranking is compared against, and [`subnet`] carves suspect-centred
//! sub-networks out of large graphs.

pub mod centrality;
pub mod cli;
pub mod error;
pub mod graph;
pub mod reliance;
pub mod sssp;
pub mod subnet;

pub use centrality::{Measure, Normalization, ScoreMap};
pub use error::{Error, Result};
pub use graph::{load_edge_list, resolve_suspects, Graph, GraphBuilder, LoadOptions, SuspectSet};
pub use reliance::{total_reliance, Aggregate, RelianceResult};
