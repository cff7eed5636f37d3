//! Existence decisions for hamiltonian paths and cycles.
//!
//! [`dfs_ham_path`] and [`dfs_ham_cycle`] work for any generating set.
//! [`structured_ham_path_2gen`] is a complete procedure for two generators
//! that enumerates travel patterns instead of walks.

mod cover;
mod dfs;
mod milnor;
mod structured;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cayley::Certificate;

pub use dfs::{dfs_ham_cycle, dfs_ham_path, enumerate_ham_paths};
pub use milnor::{milnor_test, MilnorVerdict};
pub use structured::{structured_ham_path_2gen, PatternSpace, TravelPattern, MAX_PATTERNS};

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "CAYHAM_WORKERS";

pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Exists,
    NotExists,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Exists => "exists",
            Verdict::NotExists => "not_exists",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Dfs,
    Structured,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// DFS expansions.
    pub nodes: u64,
    /// Travel patterns decided, counting pruned ones.
    pub patterns: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub stats: SearchStats,
    pub method: Method,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub node_cap: u64,
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { node_cap: DEFAULT_NODE_CAP, workers: 1 }
    }
}

impl SearchOptions {
    /// Defaults, with the worker count taken from `CAYHAM_WORKERS` if set.
    pub fn from_env() -> SearchOptions {
        let workers = std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok()).filter(|&w| w >= 1).unwrap_or(1);
        SearchOptions { workers, ..SearchOptions::default() }
    }

    pub fn with_workers(self, workers: usize) -> SearchOptions {
        SearchOptions { workers: workers.max(1), ..self }
    }

    pub fn with_node_cap(self, node_cap: u64) -> SearchOptions {
        SearchOptions { node_cap, ..self }
    }

    pub(crate) fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new().num_threads(self.workers).build().expect("thread pool")
    }
}
