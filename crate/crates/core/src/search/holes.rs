use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    bit, ones, Certificate, Mask, Meter, ParamResult, SearchBudget, SearchError, Ticker,
    MAX_EXACT_VERTICES,
};
use crate::hole::HoleCertificate;
use crate::system::TripleSystem;

/// Tuning for [`alpha_star_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HoleSearchOptions {
    /// Start the descent at `⌊n/3⌋ - 1` for Steiner systems with `n > 3`
    /// and `k = 3`. Turning this off makes the search refute `⌊n/3⌋` itself,
    /// which is how the bound is checked rather than assumed.
    pub use_steiner_bound: bool,
}

impl Default for HoleSearchOptions {
    fn default() -> Self {
        HoleSearchOptions {
            use_steiner_bound: true,
        }
    }
}

/// Result of asking whether a hole of one particular size exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HoleOutcome {
    Found(HoleCertificate),
    Refuted,
    Unknown,
}

/// The largest `a` such that `system` has a `k`-partite hole with parts of size `a`.
pub fn alpha_star(
    system: &TripleSystem,
    k: usize,
    budget: SearchBudget,
) -> Result<ParamResult, SearchError> {
    alpha_star_with(system, k, budget, HoleSearchOptions::default())
}

pub fn alpha_star_with(
    system: &TripleSystem,
    k: usize,
    budget: SearchBudget,
    options: HoleSearchOptions,
) -> Result<ParamResult, SearchError> {
    if k < 2 {
        return Err(SearchError::BadK(k));
    }
    let n = system.n();
    let meter = Meter::new(&budget);
    let finish = |value: usize, exact: bool, hole: HoleCertificate, nodes: u64| ParamResult {
        value,
        exact,
        certificate: Certificate::Hole(hole),
        nodes,
        seconds: meter.seconds(),
    };
    if k > 3 {
        // No triple can meet four parts, so any k disjoint blocks will do.
        let a = n / k;
        let parts = (0..k).map(|p| (p * a..(p + 1) * a).collect()).collect();
        return Ok(finish(a, true, HoleCertificate::from_parts(parts), 0));
    }

    let steiner = n > 3 && system.is_linear() && 6 * system.len() == n * (n - 1);
    let upper = if k == 3 && steiner && options.use_steiner_bound {
        n / 3 - 1
    } else {
        n / k
    };
    let (lower, mut best) = greedy_lower_bound(system, k, upper);
    if lower == upper {
        return Ok(finish(lower, true, best, 0));
    }
    if n > MAX_EXACT_VERTICES {
        return Ok(finish(lower, false, best, 0));
    }

    let mut nodes = 0;
    for a in (lower + 1..=upper).rev() {
        let (outcome, spent) = search(system, k, a, &budget, &meter);
        nodes += spent;
        match outcome {
            HoleOutcome::Found(hole) => return Ok(finish(a, true, hole, nodes)),
            HoleOutcome::Refuted => {}
            HoleOutcome::Unknown => return Ok(finish(lower, false, best, nodes)),
        }
    }
    if best.parts.len() != k {
        best = HoleCertificate {
            k,
            a: 0,
            parts: vec![Vec::new(); k],
        };
    }
    Ok(finish(lower, true, best, nodes))
}

/// Decides whether a `k`-partite hole with parts of size `a` exists.
pub fn hole_exists(
    system: &TripleSystem,
    k: usize,
    a: usize,
    budget: SearchBudget,
) -> Result<HoleOutcome, SearchError> {
    if k < 2 {
        return Err(SearchError::BadK(k));
    }
    let n = system.n();
    if k * a > n {
        return Ok(HoleOutcome::Refuted);
    }
    if k > 3 || a == 0 {
        let parts = (0..k).map(|p| (p * a..(p + 1) * a).collect()).collect();
        return Ok(HoleOutcome::Found(HoleCertificate::from_parts(parts)));
    }
    if n > MAX_EXACT_VERTICES {
        return Ok(HoleOutcome::Unknown);
    }
    let meter = Meter::new(&budget);
    Ok(search(system, k, a, &budget, &meter).0)
}

/// Randomized greedy with restarts: vertices in random order join the
/// smallest part they can enter without letting a triple meet all parts.
fn greedy_lower_bound(system: &TripleSystem, k: usize, upper: usize) -> (usize, HoleCertificate) {
    const TRIES: usize = 64;
    let n = system.n();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a09_e667 ^ (n as u64) << 8 ^ k as u64);
    let mut best = HoleCertificate {
        k,
        a: 0,
        parts: vec![Vec::new(); k],
    };
    let mut order: Vec<usize> = (0..n).collect();
    let mut owner = vec![usize::MAX; n];
    'sizes: for a in 1..=upper {
        for _ in 0..TRIES {
            order.shuffle(&mut rng);
            owner.fill(usize::MAX);
            let mut parts = vec![Vec::new(); k];
            for &v in &order {
                let choice = (0..k)
                    .filter(|&p| parts[p].len() < a)
                    .filter(|&p| {
                        system.triples_on_vertex(v).iter().all(|&t| {
                            let mut seen = 1u8 << p;
                            for u in system.triple(t).vertices() {
                                if u != v && owner[u] != usize::MAX {
                                    seen |= 1 << owner[u];
                                }
                            }
                            (seen.count_ones() as usize) < k
                        })
                    })
                    .min_by_key(|&p| parts[p].len());
                if let Some(p) = choice {
                    owner[v] = p;
                    parts[p].push(v);
                    if parts.iter().all(|q| q.len() == a) {
                        best = HoleCertificate::from_parts(parts);
                        continue 'sizes;
                    }
                }
            }
        }
        break;
    }
    (best.a, best)
}

#[derive(Clone, Copy)]
struct State {
    part: [Mask; 3],
    forbid: [Mask; 3],
    count: [usize; 3],
    opened: usize,
    out: usize,
}

enum Step {
    Found(State),
    Refuted,
    Stopped,
}

struct Problem {
    n: usize,
    k: usize,
    a: usize,
    max_out: usize,
    /// For each vertex, the other two vertices of every triple through it.
    others: Vec<Vec<(usize, usize)>>,
}

impl Problem {
    fn new(system: &TripleSystem, k: usize, a: usize) -> Self {
        let n = system.n();
        let others = (0..n)
            .map(|v| {
                system
                    .triples_on_vertex(v)
                    .iter()
                    .map(|&t| {
                        let t = system.triple(t);
                        let mut it = t.vertices().into_iter().filter(|&u| u != v);
                        (it.next().unwrap(), it.next().unwrap())
                    })
                    .collect()
            })
            .collect();
        Problem {
            n,
            k,
            a,
            max_out: n - k * a,
            others,
        }
    }

    fn owner(&self, st: &State, v: usize) -> Option<usize> {
        (0..self.k).find(|&p| st.part[p] & bit(v) != 0)
    }

    fn done(&self, st: &State) -> bool {
        st.count[..self.k].iter().all(|&c| c == self.a)
    }

    /// Vertices not yet decided once `v` has been decided.
    fn rest(&self, v: usize) -> Mask {
        let all: Mask = if self.n == 128 {
            Mask::MAX
        } else {
            bit(self.n) - 1
        };
        all & !((bit(v) << 1).wrapping_sub(1))
    }

    fn feasible(&self, v: usize, st: &State) -> bool {
        let rest = self.rest(v);
        let k = self.k;
        let need: [usize; 3] =
            std::array::from_fn(|p| if p < k { self.a - st.count[p] } else { 0 });
        if need.iter().sum::<usize>() > rest.count_ones() as usize {
            return false;
        }
        for p in 0..k {
            if need[p] > (rest & !st.forbid[p]).count_ones() as usize {
                return false;
            }
            for q in p + 1..k {
                if need[p] + need[q] > (rest & !(st.forbid[p] & st.forbid[q])).count_ones() as usize
                {
                    return false;
                }
            }
        }
        true
    }

    fn assign(&self, v: usize, p: usize, st: &State) -> Option<State> {
        if st.forbid[p] & bit(v) != 0 || st.count[p] == self.a {
            return None;
        }
        let mut next = *st;
        next.part[p] |= bit(v);
        next.count[p] += 1;
        next.opened = next.opened.max(p + 1);
        for &(x, y) in &self.others[v] {
            if self.k == 2 {
                next.forbid[1 - p] |= bit(x) | bit(y);
                continue;
            }
            match (self.owner(st, x), self.owner(st, y)) {
                (Some(q), None) if q != p => next.forbid[3 - p - q] |= bit(y),
                (None, Some(q)) if q != p => next.forbid[3 - p - q] |= bit(x),
                _ => {}
            }
        }
        (self.done(&next) || self.feasible(v, &next)).then_some(next)
    }

    fn skip(&self, v: usize, st: &State) -> Option<State> {
        if st.out == self.max_out {
            return None;
        }
        let mut next = *st;
        next.out += 1;
        self.feasible(v, &next).then_some(next)
    }

    /// Children of deciding vertex `v`, in search order: parts already
    /// opened, one fresh part, then leaving `v` out.
    fn children(&self, v: usize, st: &State) -> impl Iterator<Item = State> + '_ {
        let st = *st;
        let fresh = (st.opened + 1).min(self.k);
        (0..fresh)
            .filter_map(move |p| self.assign(v, p, &st))
            .chain(self.skip(v, &st))
    }

    fn dfs(&self, v: usize, st: &State, ticker: &mut Ticker<'_>, abort: &dyn Fn() -> bool) -> Step {
        if self.done(st) {
            return Step::Found(*st);
        }
        if v == self.n {
            return Step::Refuted;
        }
        if !ticker.tick() || abort() {
            return Step::Stopped;
        }
        for child in self.children(v, st) {
            match self.dfs(v + 1, &child, ticker, abort) {
                Step::Refuted => {}
                other => return other,
            }
        }
        Step::Refuted
    }

    fn certificate(&self, st: &State) -> HoleCertificate {
        HoleCertificate::from_parts((0..self.k).map(|p| ones(st.part[p]).collect()).collect())
    }

    /// Partial states after deciding the first `depth` vertices, in DFS order.
    fn frontier(&self, depth: usize) -> Result<Vec<(usize, State)>, State> {
        let root = State {
            part: [0; 3],
            forbid: [0; 3],
            count: [0; 3],
            opened: 0,
            out: 0,
        };
        let mut level = vec![root];
        for v in 0..depth.min(self.n) {
            let mut next = Vec::new();
            for st in &level {
                for child in self.children(v, st) {
                    if self.done(&child) {
                        return Err(child);
                    }
                    next.push(child);
                }
            }
            level = next;
        }
        let start = depth.min(self.n);
        Ok(level.into_iter().map(|st| (start, st)).collect())
    }
}

fn search(
    system: &TripleSystem,
    k: usize,
    a: usize,
    budget: &SearchBudget,
    meter: &Meter,
) -> (HoleOutcome, u64) {
    let before = meter.nodes();
    let problem = Problem::new(system, k, a);
    let workers = budget.parallelism.max(1);
    let depth = if workers > 1 { 8 } else { 0 };
    let frontier = match problem.frontier(depth) {
        Ok(f) => f,
        Err(st) => return (HoleOutcome::Found(problem.certificate(&st)), 0),
    };

    // Subtrees are searched in parallel; the earliest subtree (in DFS order)
    // holding a hole wins, so the witness matches a sequential run.
    let first_found = AtomicUsize::new(usize::MAX);
    let run = |index: usize, v: usize, st: &State| {
        let mut ticker = meter.ticker();
        let abort = || first_found.load(Ordering::Relaxed) < index;
        let step = problem.dfs(v, st, &mut ticker, &abort);
        if let Step::Found(_) = step {
            first_found.fetch_min(index, Ordering::Relaxed);
        }
        step
    };
    let steps: Vec<Step> = if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build();
        match pool {
            Ok(pool) => pool.install(|| {
                frontier
                    .par_iter()
                    .enumerate()
                    .map(|(i, (v, st))| run(i, *v, st))
                    .collect()
            }),
            Err(_) => frontier
                .iter()
                .enumerate()
                .map(|(i, (v, st))| run(i, *v, st))
                .collect(),
        }
    } else {
        frontier
            .iter()
            .enumerate()
            .map(|(i, (v, st))| run(i, *v, st))
            .collect()
    };
    let spent = meter.nodes() - before;
    if let Some(st) = steps.iter().find_map(|s| match s {
        Step::Found(st) => Some(st),
        _ => None,
    }) {
        return (HoleOutcome::Found(problem.certificate(st)), spent);
    }
    if steps.iter().any(|s| matches!(s, Step::Stopped)) {
        return (HoleOutcome::Unknown, spent);
    }
    (HoleOutcome::Refuted, spent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{bose, fano, s9};
    use crate::hole::verify_hole;

    /// Tries every map from vertices to {out, part 0, .., part k-1}.
    fn brute_force(system: &TripleSystem, k: usize) -> usize {
        let n = system.n();
        let total = (k as u64 + 1).pow(n as u32);
        let mut best = 0;
        for code in 0..total {
            let mut c = code;
            let mut parts = vec![Vec::new(); k];
            for v in 0..n {
                let d = (c % (k as u64 + 1)) as usize;
                c /= k as u64 + 1;
                if d > 0 {
                    parts[d - 1].push(v);
                }
            }
            let a = parts[0].len();
            if a <= best || parts.iter().any(|p| p.len() != a) {
                continue;
            }
            if verify_hole(system, &HoleCertificate::from_parts(parts)).unwrap() {
                best = a;
            }
        }
        best
    }

    fn check(system: &TripleSystem, k: usize, expected: usize) {
        for options in [
            HoleSearchOptions {
                use_steiner_bound: true,
            },
            HoleSearchOptions {
                use_steiner_bound: false,
            },
        ] {
            let r = alpha_star_with(system, k, SearchBudget::default(), options).unwrap();
            assert_eq!((r.value, r.exact), (expected, true), "k = {k}, {options:?}");
            match r.certificate {
                Certificate::Hole(h) => {
                    assert_eq!((h.k, h.a), (k, expected));
                    assert!(verify_hole(system, &h).unwrap());
                }
                other => panic!("unexpected certificate {other:?}"),
            }
        }
    }

    #[test]
    fn small_systems_match_brute_force() {
        let f = fano();
        assert_eq!(brute_force(&f, 3), 1);
        check(&f, 3, 1);
        // Any two points lie on a common line.
        assert_eq!(brute_force(&f, 2), 0);
        check(&f, 2, 0);
        let s = s9();
        assert_eq!(brute_force(&s, 3), 2);
        check(&s, 3, 2);
    }

    #[test]
    fn single_triple() {
        let s = TripleSystem::new(3, &[[0, 1, 2]]).unwrap();
        check(&s, 3, 0);
        check(&s, 2, 0);
    }

    #[test]
    fn many_parts_are_trivial() {
        let r = alpha_star(&fano(), 4, SearchBudget::default()).unwrap();
        assert_eq!((r.value, r.exact), (1, true));
        assert!(matches!(
            alpha_star(&fano(), 1, SearchBudget::default()),
            Err(SearchError::BadK(1))
        ));
    }

    #[test]
    fn bose_27_has_a_hole_of_six() {
        let s = bose(27).unwrap();
        let r = alpha_star(&s, 3, SearchBudget::nodes(100_000)).unwrap();
        assert!(r.value >= 6, "{}", r.value);
        let Certificate::Hole(h) = r.certificate else {
            panic!("no hole")
        };
        assert_eq!(verify_hole(&s, &h), Ok(true));
    }

    #[test]
    fn parallel_matches_sequential() {
        let s = bose(15).unwrap();
        for a in 1..=4 {
            let seq = hole_exists(&s, 3, a, SearchBudget::default()).unwrap();
            let par = hole_exists(&s, 3, a, SearchBudget::default().with_parallelism(4)).unwrap();
            assert_eq!(seq, par, "a = {a}");
        }
    }

    #[test]
    fn oversized_holes_are_refuted() {
        assert_eq!(
            hole_exists(&fano(), 3, 3, SearchBudget::default()).unwrap(),
            HoleOutcome::Refuted
        );
    }
}
