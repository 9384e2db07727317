//! Exact and heuristic computation of the independence number, the
//! `k`-partite-hole number and the monochromatic-component number.
//!
//! Every engine returns a [`ParamResult`]. When `exact` is set the search
//! space was exhausted; otherwise the value is the best bound found before the
//! [`SearchBudget`] ran out (a lower bound for `alpha` and `alpha*_k`, an upper
//! bound for `mc_r`). Certificates always verify against the input system.
//!
//! Exact engines work on vertex bitmasks and need `n <= 128`.

mod holes;
mod independence;
mod mc;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use holes::{alpha_star, alpha_star_with, hole_exists, HoleOutcome, HoleSearchOptions};
pub use independence::{independence_number, is_independent};
pub use mc::{mc_exact, mc_exact_with_hints, mc_upper_from_coloring};

use crate::coloring::EdgeColoring;
use crate::hole::HoleCertificate;

pub(crate) type Mask = u128;
pub const MAX_EXACT_VERTICES: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("k = {0}: a partite hole needs at least two parts")]
    BadK(usize),
    #[error("r = {0}: a coloring needs at least one color")]
    BadR(usize),
}

/// Limits for one search call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    pub parallelism: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 100_000_000,
            max_seconds: 60.0,
            parallelism: 1,
        }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes,
            ..Self::default()
        }
    }

    pub fn with_parallelism(mut self, workers: usize) -> Self {
        self.parallelism = workers.max(1);
        self
    }
}

/// What backs a reported value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    IndependentSet { vertices: Vec<usize> },
    Hole(HoleCertificate),
    Coloring(EdgeColoring),
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamResult {
    pub value: usize,
    pub exact: bool,
    pub certificate: Certificate,
    pub nodes: u64,
    pub seconds: f64,
}

/// Shared node/time accounting. Workers count locally and flush every
/// [`Meter::BATCH`] nodes, so single-worker runs stop at a deterministic node.
pub(crate) struct Meter {
    max_nodes: u64,
    max_seconds: f64,
    start: Instant,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl Meter {
    const BATCH: u64 = 1024;

    pub(crate) fn new(budget: &SearchBudget) -> Self {
        Meter {
            max_nodes: budget.max_nodes,
            max_seconds: budget.max_seconds,
            start: Instant::now(),
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    pub(crate) fn ticker(&self) -> Ticker<'_> {
        Ticker {
            meter: self,
            local: 0,
        }
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub(crate) fn seconds(&self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }

    fn flush(&self, count: u64) -> bool {
        let total = self.nodes.fetch_add(count, Ordering::Relaxed) + count;
        if total > self.max_nodes || self.seconds() > self.max_seconds {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted()
    }
}

pub(crate) struct Ticker<'a> {
    meter: &'a Meter,
    local: u64,
}

impl Ticker<'_> {
    /// Counts one node; `false` once the budget is gone.
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local == Meter::BATCH {
            self.local = 0;
            return self.meter.flush(Meter::BATCH);
        }
        true
    }

    /// Whether the search should stop, without counting a node.
    #[inline]
    pub(crate) fn stopped(&self) -> bool {
        self.meter.exhausted()
    }
}

impl Drop for Ticker<'_> {
    fn drop(&mut self) {
        if self.local > 0 {
            self.meter.nodes.fetch_add(self.local, Ordering::Relaxed);
        }
    }
}

#[inline]
pub(crate) fn bit(v: usize) -> Mask {
    1u128 << v
}

#[inline]
pub(crate) fn ones(mask: Mask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

pub(crate) fn mask_of(vertices: &[usize]) -> Mask {
    vertices.iter().fold(0, |m, &v| m | bit(v))
}
