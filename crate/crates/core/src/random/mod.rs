//! Random triple systems and seeded experiments.
//!
//! All randomness flows from a 64-bit master seed. Independent streams are
//! derived with [`derive_seed`], which mixes `(master, stream, index)` through
//! the SplitMix64 finalizer; each derived seed initializes its own ChaCha8
//! generator, so any single sample can be reproduced in isolation.

mod experiment;
mod process;

use thiserror::Error;

pub use experiment::{
    experiment_discrepancy, half_process_length, summarize, trend_table, write_csv, ExperimentRow,
    ExperimentSummary, CSV_HEADER, MODEL_FULL, MODEL_PARTIAL, SAMPLING_CAVEAT,
};
pub use process::{
    binomial_3graph, linearize, random_sts, triangle_removal, OrderedPartialSystem, ProcessOutcome,
};

use crate::system::SystemError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RandomError {
    #[error("cannot remove {m} edge-disjoint triangles from K_{n}")]
    BadM { n: usize, m: usize },
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("no Steiner triple system has {0} vertices (need n = 1, 3 mod 6)")]
    BadOrder(usize),
    #[error("triangle removal never completed on {n} vertices in {attempts} attempts")]
    RestartsExhausted { n: usize, attempts: usize },
    #[error("triples are not pairwise edge-disjoint")]
    NotLinear,
    #[error(transparent)]
    System(#[from] SystemError),
}

pub const STREAM_RESTART: u64 = 1;
pub const STREAM_PARTIAL: u64 = 2;
pub const STREAM_FULL: u64 = 3;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for item `index` of stream `stream` under `master`.
pub fn derive_seed(master: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index)
}
