//! Triangle removal, the binomial random 3-graph, and linearization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{derive_seed, RandomError, STREAM_RESTART};
use crate::system::{validate_steiner, Construction, SteinerSystem, Triple, TripleSystem};

/// A linear 3-graph whose triple order is meaningful.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPartialSystem {
    n: usize,
    triples: Vec<Triple>,
}

impl OrderedPartialSystem {
    /// Fails with [`RandomError::NotLinear`] if some pair lies in two triples.
    pub fn new(n: usize, triples: Vec<Triple>) -> Result<Self, RandomError> {
        let system = TripleSystem::from_triples(n, triples.clone())?;
        if !system.is_linear() {
            return Err(RandomError::NotLinear);
        }
        Ok(OrderedPartialSystem { n, triples })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// The first `i` triples.
    pub fn prefix(&self, i: usize) -> OrderedPartialSystem {
        OrderedPartialSystem {
            n: self.n,
            triples: self.triples[..i.min(self.len())].to_vec(),
        }
    }

    pub fn to_system(&self) -> TripleSystem {
        TripleSystem::from_triples(self.n, self.triples.clone()).expect("partial systems are valid")
    }
}

/// Result of running the triangle removal process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProcessOutcome {
    Complete(OrderedPartialSystem),
    /// No triangle was left before the requested number of steps.
    Stuck {
        removed: usize,
    },
}

impl ProcessOutcome {
    pub fn complete(self) -> Option<OrderedPartialSystem> {
        match self {
            ProcessOutcome::Complete(s) => Some(s),
            ProcessOutcome::Stuck { .. } => None,
        }
    }
}

fn binom3(x: usize) -> usize {
    if x < 3 {
        0
    } else {
        x * (x - 1) * (x - 2) / 6
    }
}

fn binom2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// Colex rank of `a < b < c` among all 3-subsets.
fn triangle_rank(a: usize, b: usize, c: usize) -> usize {
    binom3(c) + binom2(b) + a
}

/// The live triangles of a shrinking graph, kept as a swap-remove list so a
/// uniform choice is one random index.
struct TriangleBag {
    n: usize,
    adjacent: Vec<bool>,
    position: Vec<u32>,
    live: Vec<[u32; 3]>,
}

const ABSENT: u32 = u32::MAX;

impl TriangleBag {
    fn complete_graph(n: usize) -> Self {
        let total = binom3(n);
        let mut live = Vec::with_capacity(total);
        let mut position = vec![ABSENT; total];
        for c in 0..n {
            for b in 0..c {
                for a in 0..b {
                    position[triangle_rank(a, b, c)] = live.len() as u32;
                    live.push([a as u32, b as u32, c as u32]);
                }
            }
        }
        let mut adjacent = vec![true; n * n];
        for v in 0..n {
            adjacent[v * n + v] = false;
        }
        TriangleBag {
            n,
            adjacent,
            position,
            live,
        }
    }

    fn remove_triangle(&mut self, a: usize, b: usize, c: usize) {
        let rank = triangle_rank(a, b, c);
        let pos = self.position[rank];
        if pos == ABSENT {
            return;
        }
        self.position[rank] = ABSENT;
        self.live.swap_remove(pos as usize);
        if let Some(&[x, y, z]) = self.live.get(pos as usize) {
            self.position[triangle_rank(x as usize, y as usize, z as usize)] = pos;
        }
    }

    fn delete_edge(&mut self, u: usize, v: usize) {
        let n = self.n;
        self.adjacent[u * n + v] = false;
        self.adjacent[v * n + u] = false;
        for w in 0..n {
            if self.adjacent[u * n + w] && self.adjacent[v * n + w] {
                let mut t = [u, v, w];
                t.sort_unstable();
                self.remove_triangle(t[0], t[1], t[2]);
            }
        }
    }

    fn take(&mut self, index: usize) -> [usize; 3] {
        let [a, b, c] = self.live[index].map(|x| x as usize);
        self.remove_triangle(a, b, c);
        self.delete_edge(a, b);
        self.delete_edge(a, c);
        self.delete_edge(b, c);
        [a, b, c]
    }
}

/// Starting from `K_n`, removes `m` uniformly random triangles one at a time.
pub fn triangle_removal(n: usize, m: usize, seed: u64) -> Result<ProcessOutcome, RandomError> {
    if m > binom2(n) / 3 {
        return Err(RandomError::BadM { n, m });
    }
    if m == 0 {
        return Ok(ProcessOutcome::Complete(OrderedPartialSystem {
            n,
            triples: Vec::new(),
        }));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bag = TriangleBag::complete_graph(n);
    let mut triples = Vec::with_capacity(m);
    for removed in 0..m {
        if bag.live.is_empty() {
            return Ok(ProcessOutcome::Stuck { removed });
        }
        let [a, b, c] = bag.take(rng.gen_range(0..bag.live.len()));
        triples.push(Triple::new(a, b, c).expect("triangle vertices are distinct"));
    }
    Ok(ProcessOutcome::Complete(OrderedPartialSystem {
        n,
        triples,
    }))
}

/// Includes each of the `C(n,3)` triples independently with probability `p`.
pub fn binomial_3graph(n: usize, p: f64, seed: u64) -> Result<TripleSystem, RandomError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(RandomError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if rng.gen::<f64>() < p {
                    triples.push(Triple::new(a, b, c).expect("distinct"));
                }
            }
        }
    }
    Ok(TripleSystem::from_triples(n, triples)?)
}

/// Drops every triple that shares two vertices with another triple.
pub fn linearize(graph: &TripleSystem) -> OrderedPartialSystem {
    let mut conflicted = vec![false; graph.len()];
    for on_pair in graph.pair_index() {
        if on_pair.len() > 1 {
            for &t in on_pair {
                conflicted[t] = true;
            }
        }
    }
    let triples = graph
        .triples()
        .iter()
        .zip(&conflicted)
        .filter(|(_, &bad)| !bad)
        .map(|(t, _)| *t)
        .collect();
    OrderedPartialSystem {
        n: graph.n(),
        triples,
    }
}

/// A Steiner system grown from the triangle removal process.
///
/// Attempt `j` runs the process with seed `derive_seed(seed, STREAM_RESTART, j)`.
/// If it gets stuck, the partial system is completed by hill-climbing
/// ([`complete_by_hill_climbing`]) with the same generator. Neither step
/// samples uniformly from labeled Steiner systems.
pub fn random_sts(n: usize, seed: u64, max_restarts: usize) -> Result<SteinerSystem, RandomError> {
    if !(n % 6 == 1 || n % 6 == 3) {
        return Err(RandomError::BadOrder(n));
    }
    let m = n * (n - 1) / 6;
    let attempts = max_restarts.max(1);
    for attempt in 0..attempts {
        let s = derive_seed(seed, STREAM_RESTART, attempt as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let (triples, stuck) = removal_run(n, m, &mut rng);
        let triples = if stuck {
            match complete_by_hill_climbing(n, &triples, &mut rng, 200 * n * n + 1000) {
                Some(t) => t,
                None => continue,
            }
        } else {
            triples
        };
        let steiner = validate_steiner(TripleSystem::from_triples(n, triples)?)?;
        return Ok(steiner.with_provenance(Construction::Random, None));
    }
    Err(RandomError::RestartsExhausted { n, attempts })
}

/// Runs the removal process with a caller-owned generator; returns the
/// triples taken and whether it ran out of triangles before `m` steps.
fn removal_run(n: usize, m: usize, rng: &mut ChaCha8Rng) -> (Vec<Triple>, bool) {
    let mut bag = TriangleBag::complete_graph(n);
    let mut triples = Vec::with_capacity(m);
    while triples.len() < m {
        if bag.live.is_empty() {
            return (triples, true);
        }
        let [a, b, c] = bag.take(rng.gen_range(0..bag.live.len()));
        triples.push(Triple::new(a, b, c).expect("distinct"));
    }
    (triples, false)
}

const NO_MATE: usize = usize::MAX;

/// Completes a linear partial system to a Steiner system with Stinson's
/// hill-climbing: pick a live point `x` and two uncovered pairs `xy`, `xz`;
/// add `{x, y, z}`, first evicting the triple on `yz` if there is one.
///
/// Returns the triples in lexicographic order, or `None` after `max_steps`
/// moves without completing.
pub fn complete_by_hill_climbing<R: Rng>(
    n: usize,
    partial: &[Triple],
    rng: &mut R,
    max_steps: usize,
) -> Option<Vec<Triple>> {
    let mut mate = vec![NO_MATE; n * n];
    let mut missing = vec![n.saturating_sub(1); n];
    let mut uncovered = n * n.saturating_sub(1) / 2;
    let set = |mate: &mut Vec<usize>, t: [usize; 3], on: bool| {
        let [a, b, c] = t;
        for (u, v, w) in [(a, b, c), (a, c, b), (b, c, a)] {
            let val = if on { w } else { NO_MATE };
            mate[u * n + v] = val;
            mate[v * n + u] = val;
        }
    };
    for t in partial {
        let v = t.vertices();
        debug_assert!(v.iter().all(|&x| x < n));
        set(&mut mate, v, true);
        for x in v {
            missing[x] -= 2;
        }
        uncovered -= 3;
    }
    let mut steps = 0;
    let mut partners = Vec::with_capacity(n);
    while uncovered > 0 {
        if steps == max_steps {
            return None;
        }
        steps += 1;
        let live: Vec<usize> = (0..n).filter(|&x| missing[x] > 0).collect();
        let x = live[rng.gen_range(0..live.len())];
        partners.clear();
        partners.extend((0..n).filter(|&y| y != x && mate[x * n + y] == NO_MATE));
        let i = rng.gen_range(0..partners.len());
        let mut j = rng.gen_range(0..partners.len() - 1);
        if j >= i {
            j += 1;
        }
        let (y, z) = (partners[i], partners[j]);
        let w = mate[y * n + z];
        if w == NO_MATE {
            uncovered -= 3;
            missing[x] -= 2;
            missing[y] -= 2;
            missing[z] -= 2;
        } else {
            // Swap {y, z, w} for {x, y, z}: xy and xz close, yw and zw open.
            set(&mut mate, [y, z, w], false);
            missing[x] -= 2;
            missing[w] += 2;
        }
        set(&mut mate, [x, y, z], true);
    }
    let mut triples = Vec::with_capacity(n * n.saturating_sub(1) / 6);
    for u in 0..n {
        for v in u + 1..n {
            let w = mate[u * n + v];
            if w != NO_MATE && w > v {
                triples.push(Triple::new(u, v, w).expect("distinct"));
            }
        }
    }
    Some(triples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_are_dense() {
        let n = 8;
        let mut seen = vec![false; binom3(n)];
        for c in 0..n {
            for b in 0..c {
                for a in 0..b {
                    let r = triangle_rank(a, b, c);
                    assert!(!seen[r]);
                    seen[r] = true;
                }
            }
        }
        assert!(seen.into_iter().all(|x| x));
    }

    #[test]
    fn zero_steps_is_empty() {
        let out = triangle_removal(9, 0, 3).unwrap().complete().unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn too_many_steps() {
        assert!(matches!(
            triangle_removal(7, 8, 0),
            Err(RandomError::BadM { n: 7, m: 8 })
        ));
    }

    #[test]
    fn outputs_are_linear() {
        for seed in 0..50 {
            match triangle_removal(13, 26, seed).unwrap() {
                ProcessOutcome::Complete(s) => {
                    assert_eq!(s.len(), 26);
                    assert!(s.to_system().is_linear());
                }
                ProcessOutcome::Stuck { removed } => assert!(removed < 26),
            }
        }
    }

    #[test]
    fn binomial_extremes() {
        assert!(binomial_3graph(10, 0.0, 1).unwrap().is_empty());
        assert_eq!(binomial_3graph(5, 1.0, 1).unwrap().len(), 10);
        assert!(binomial_3graph(5, 1.5, 1).is_err());
    }

    #[test]
    fn linearize_small() {
        let g = TripleSystem::new(4, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        assert!(linearize(&g).is_empty());
        let g = TripleSystem::new(6, &[[0, 1, 2], [3, 4, 5]]).unwrap();
        assert_eq!(linearize(&g).len(), 2);
    }

    #[test]
    fn random_sts_small() {
        let s = random_sts(7, 11, 1000).unwrap();
        assert_eq!(s.len(), 7);
        let s = random_sts(9, 11, 1000).unwrap();
        assert_eq!(s.len(), 12);
        assert!(matches!(
            random_sts(8, 0, 10),
            Err(RandomError::BadOrder(8))
        ));
    }

    #[test]
    fn non_linear_rejected() {
        let t = vec![Triple::new(0, 1, 2).unwrap(), Triple::new(0, 1, 3).unwrap()];
        assert!(matches!(
            OrderedPartialSystem::new(4, t),
            Err(RandomError::NotLinear)
        ));
    }
}
