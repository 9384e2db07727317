//! Triple systems and Steiner triple systems.
//!
//! Vertices are dense indices `0..n`. A [`TripleSystem`] is an arbitrary
//! 3-uniform hypergraph without repeated edges; a [`SteinerSystem`] is one
//! that has been checked to cover every vertex pair exactly once.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("triple {index} uses vertex {vertex}, but the system has only {n} vertices")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        n: usize,
    },
    #[error("triple {index} repeats a vertex: {triple:?}")]
    RepeatedVertex { index: usize, triple: [usize; 3] },
    #[error("triple {index} duplicates triple {first}: {triple}")]
    DuplicateTriple {
        index: usize,
        first: usize,
        triple: Triple,
    },
    #[error("pair ({0}, {1}) is not covered by any triple")]
    PairUncovered(usize, usize),
    #[error("pair ({0}, {1}) is covered by more than one triple")]
    PairMulticovered(usize, usize),
    #[error("no Steiner triple system has {0} vertices (need n = 1, 3 mod 6)")]
    BadOrder(usize),
    #[error("malformed hole certificate: {0}")]
    MalformedCertificate(String),
    #[error("coloring has {got} entries but the system has {expected} triples")]
    ColoringLength { expected: usize, got: usize },
    #[error("triple {index} has color {color}, outside 0..{r}")]
    ColorOutOfRange {
        index: usize,
        color: usize,
        r: usize,
    },
    #[error("a coloring needs at least one color")]
    NoColors,
}

/// A 3-element vertex set, stored sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple([usize; 3]);

impl Triple {
    /// Sorts the three vertices; `None` if any two coincide.
    pub fn new(a: usize, b: usize, c: usize) -> Option<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            None
        } else {
            Some(Triple(v))
        }
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }

    pub fn a(&self) -> usize {
        self.0[0]
    }

    pub fn b(&self) -> usize {
        self.0[1]
    }

    pub fn c(&self) -> usize {
        self.0[2]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    /// The three pairs `(a,b), (a,c), (b,c)`.
    pub fn pairs(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.0;
        [(a, b), (a, c), (b, c)]
    }

    /// Number of shared vertices with another triple.
    pub fn overlap(&self, other: &Triple) -> usize {
        self.0.iter().filter(|v| other.contains(**v)).count()
    }

    /// The vertex that is neither `u` nor `v`, if both belong to the triple.
    pub fn third(&self, u: usize, v: usize) -> Option<usize> {
        if !self.contains(u) || !self.contains(v) || u == v {
            return None;
        }
        self.0.iter().copied().find(|&w| w != u && w != v)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}, {}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// Index of the unordered pair `{u, v}` in the upper triangle of an `n x n`
/// matrix, row-major.
#[inline]
pub fn pair_id(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    debug_assert!(v < n && u != v);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A 3-uniform hypergraph on `0..n` with no repeated triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSystem {
    n: usize,
    triples: Vec<Triple>,
    pair_index: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

impl TripleSystem {
    /// Builds a system from raw vertex triples, keeping their order.
    pub fn new(n: usize, raw: &[[usize; 3]]) -> Result<Self, SystemError> {
        let mut triples = Vec::with_capacity(raw.len());
        for (index, t) in raw.iter().enumerate() {
            if let Some(&vertex) = t.iter().find(|&&v| v >= n) {
                return Err(SystemError::VertexOutOfRange { index, vertex, n });
            }
            let triple = Triple::new(t[0], t[1], t[2])
                .ok_or(SystemError::RepeatedVertex { index, triple: *t })?;
            triples.push(triple);
        }
        Self::from_triples(n, triples)
    }

    /// Builds a system from already-normalized triples.
    pub fn from_triples(n: usize, triples: Vec<Triple>) -> Result<Self, SystemError> {
        let mut seen = std::collections::HashMap::with_capacity(triples.len());
        for (index, t) in triples.iter().enumerate() {
            if let Some(&vertex) = t.0.iter().find(|&&v| v >= n) {
                return Err(SystemError::VertexOutOfRange { index, vertex, n });
            }
            if let Some(&first) = seen.get(t) {
                return Err(SystemError::DuplicateTriple {
                    index,
                    first,
                    triple: *t,
                });
            }
            seen.insert(*t, index);
        }
        let pair_index = build_pair_index(n, &triples);
        let mut incidence = vec![Vec::new(); n];
        for (i, t) in triples.iter().enumerate() {
            for v in t.0 {
                incidence[v].push(i);
            }
        }
        Ok(TripleSystem {
            n,
            triples,
            pair_index,
            incidence,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of triples.
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn triple(&self, i: usize) -> Triple {
        self.triples[i]
    }

    /// Triple indices containing the pair `{u, v}`.
    pub fn triples_on_pair(&self, u: usize, v: usize) -> &[usize] {
        &self.pair_index[pair_id(self.n, u, v)]
    }

    /// Triple indices containing vertex `v`.
    pub fn triples_on_vertex(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// The raw pair index, one entry per pair in [`pair_id`] order.
    pub fn pair_index(&self) -> &[Vec<usize>] {
        &self.pair_index
    }

    pub fn pair_degree(&self, u: usize, v: usize) -> usize {
        self.triples_on_pair(u, v).len()
    }

    /// Minimum number of triples over all vertex pairs (0 when `n < 2`).
    pub fn pair_degree_min(&self) -> usize {
        self.pair_index.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// The first pair (lexicographically) covered by no triple.
    pub fn first_uncovered_pair(&self) -> Option<(usize, usize)> {
        self.pairs().find(|&(u, v)| self.pair_degree(u, v) == 0)
    }

    /// Whether every pair lies in at most one triple.
    pub fn is_linear(&self) -> bool {
        self.pair_index.iter().all(|p| p.len() <= 1)
    }

    /// All pairs `u < v` in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
    }

    /// Third vertex of the unique triple through `{u, v}`, if exactly one exists.
    pub fn third_vertex(&self, u: usize, v: usize) -> Option<usize> {
        match self.triples_on_pair(u, v) {
            [t] => self.triples[*t].third(u, v),
            _ => None,
        }
    }

    /// Applies a vertex relabeling `v -> perm[v]` and an optional reordering of
    /// the triples.
    pub fn relabeled(&self, perm: &[usize]) -> TripleSystem {
        assert_eq!(perm.len(), self.n);
        let triples = self
            .triples
            .iter()
            .map(|t| {
                let [a, b, c] = t.0;
                Triple::new(perm[a], perm[b], perm[c]).expect("permutation keeps vertices distinct")
            })
            .collect();
        TripleSystem::from_triples(self.n, triples).expect("relabeling preserves validity")
    }

    /// The same triples in a different order: entry `i` of the result is
    /// triple `order[i]` of `self`.
    pub fn reordered(&self, order: &[usize]) -> TripleSystem {
        let triples = order.iter().map(|&i| self.triples[i]).collect();
        TripleSystem::from_triples(self.n, triples).expect("reordering preserves validity")
    }
}

/// Rebuilds the pair index from scratch.
pub fn build_pair_index(n: usize, triples: &[Triple]) -> Vec<Vec<usize>> {
    let mut index = vec![Vec::new(); pair_count(n)];
    for (i, t) in triples.iter().enumerate() {
        for (u, v) in t.pairs() {
            index[pair_id(n, u, v)].push(i);
        }
    }
    index
}

/// Where a Steiner system came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Fano,
    AffinePlane,
    Bose,
    Skolem,
    Random,
    Unknown,
}

impl Construction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Construction::Fano => "fano",
            Construction::AffinePlane => "s9",
            Construction::Bose => "bose",
            Construction::Skolem => "skolem",
            Construction::Random => "random",
            Construction::Unknown => "unknown",
        }
    }
}

/// Per-triple construction tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TripleType {
    Type1,
    Type2,
    Type3,
    Untyped,
}

/// A validated Steiner triple system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerSystem {
    base: TripleSystem,
    construction: Construction,
    labels: Option<Vec<TripleType>>,
}

/// Checks that every pair is covered exactly once and the order is admissible.
///
/// `n = 3` (a single triple) is accepted as a degenerate system.
pub fn validate_steiner(system: TripleSystem) -> Result<SteinerSystem, SystemError> {
    let n = system.n();
    if !(n % 6 == 1 || n % 6 == 3) {
        return Err(SystemError::BadOrder(n));
    }
    for (u, v) in system.pairs() {
        match system.pair_degree(u, v) {
            0 => return Err(SystemError::PairUncovered(u, v)),
            1 => {}
            _ => return Err(SystemError::PairMulticovered(u, v)),
        }
    }
    debug_assert_eq!(system.len(), n * (n - 1) / 6);
    Ok(SteinerSystem {
        base: system,
        construction: Construction::Unknown,
        labels: None,
    })
}

impl SteinerSystem {
    /// Attaches provenance. Labels, when given, must have one entry per triple.
    pub fn with_provenance(
        mut self,
        construction: Construction,
        labels: Option<Vec<TripleType>>,
    ) -> Self {
        if let Some(l) = &labels {
            assert_eq!(l.len(), self.base.len(), "one label per triple");
        }
        self.construction = construction;
        self.labels = labels;
        self
    }

    pub fn system(&self) -> &TripleSystem {
        &self.base
    }

    pub fn into_system(self) -> TripleSystem {
        self.base
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn labels(&self) -> Option<&[TripleType]> {
        self.labels.as_deref()
    }

    /// The single-triple system on three vertices.
    pub fn is_degenerate(&self) -> bool {
        self.base.n() == 3
    }
}

impl Deref for SteinerSystem {
    type Target = TripleSystem;

    fn deref(&self) -> &TripleSystem {
        &self.base
    }
}

impl AsRef<TripleSystem> for SteinerSystem {
    fn as_ref(&self) -> &TripleSystem {
        &self.base
    }
}
