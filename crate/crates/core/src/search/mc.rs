use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use super::{
    bit, ones, Certificate, Mask, Meter, ParamResult, SearchBudget, SearchError, Ticker,
    MAX_EXACT_VERTICES,
};
use crate::coloring::{largest_mono_component, EdgeColoring};
use crate::system::TripleSystem;
use crate::union_find::UnionFind;

const NONE: u8 = u8::MAX;

/// Size of the largest monochromatic component of `coloring`; an upper bound
/// on `mc_r` for every `r >= coloring.r()`.
pub fn mc_upper_from_coloring(system: &TripleSystem, coloring: &EdgeColoring) -> usize {
    largest_mono_component(system, coloring).size
}

/// Minimum over `r`-colorings of the triples of the largest monochromatic component.
pub fn mc_exact(
    system: &TripleSystem,
    r: usize,
    budget: SearchBudget,
) -> Result<ParamResult, SearchError> {
    mc_exact_with_hints(system, r, budget, &[])
}

/// As [`mc_exact`], seeding the incumbent with known colorings. Hints that do
/// not fit the system or use more than `r` colors are ignored.
///
/// Triples are colored depth first. The next triple is the one with the fewest
/// colors that keep every component below the incumbent, and a triple may only
/// open the lowest unused color. A branch dies as soon as some uncolored
/// triple has no admissible color left.
pub fn mc_exact_with_hints(
    system: &TripleSystem,
    r: usize,
    budget: SearchBudget,
    hints: &[EdgeColoring],
) -> Result<ParamResult, SearchError> {
    if r == 0 {
        return Err(SearchError::BadR(r));
    }
    let n = system.n();
    let m = system.len();
    let meter = Meter::new(&budget);
    let r_eff = r.min(m.max(1)).min(NONE as usize);

    let mut incumbent = greedy(system, r_eff);
    let mut incumbent_size = mc_upper_from_coloring(system, &incumbent);
    for hint in hints {
        if hint.fits(system) && hint.colors().iter().all(|&c| c < r) {
            let size = mc_upper_from_coloring(system, hint);
            if size < incumbent_size {
                incumbent = hint.clone();
                incumbent_size = size;
            }
        }
    }
    let result = |value: usize, exact: bool, colors: Vec<usize>| ParamResult {
        value,
        exact,
        certificate: Certificate::Coloring(
            EdgeColoring::new(system, r, colors).expect("search colorings fit the system"),
        ),
        nodes: meter.nodes(),
        seconds: meter.seconds(),
    };
    let floor = lower_bound(system, r);
    if incumbent_size <= floor {
        return Ok(result(incumbent_size, true, incumbent.colors().to_vec()));
    }
    if n > MAX_EXACT_VERTICES {
        return Ok(result(incumbent_size, false, incumbent.colors().to_vec()));
    }

    let problem = Problem::new(system, r_eff, floor);
    let shared = Shared {
        bound: AtomicUsize::new(incumbent_size),
        best: Mutex::new(None),
    };
    let workers = budget.parallelism.max(1);
    if workers > 1 {
        let mut engine = Engine::new(&problem, &shared, meter.ticker());
        engine.collect = Some(FRONTIER_DEPTH);
        engine.expand(0, 0, 0);
        let frontier = std::mem::take(&mut engine.frontier);
        drop(engine);
        let run = |item: &Partial| {
            let mut engine = Engine::new(&problem, &shared, meter.ticker());
            engine.replay(&item.colors);
            engine.expand(item.depth, item.max, item.used);
        };
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(|| frontier.par_iter().for_each(run)),
            Err(_) => frontier.iter().for_each(run),
        }
    } else {
        let mut engine = Engine::new(&problem, &shared, meter.ticker());
        engine.expand(0, 0, 0);
    }
    let exact = !meter.exhausted();
    let value = shared.bound.load(Ordering::Relaxed);
    let found = shared.best.into_inner().unwrap_or_else(|e| e.into_inner());
    let Some(found) = found else {
        return Ok(result(incumbent_size, exact, incumbent.colors().to_vec()));
    };
    if workers == 1 {
        return Ok(result(value, exact, widen(&found)));
    }

    // Parallel runs may finish on any optimal coloring; report the one a
    // single worker reaches first.
    let canonical = Shared {
        bound: AtomicUsize::new(value + 1),
        best: Mutex::new(None),
    };
    let rerun = Meter::new(&budget);
    let mut engine = Engine::new(&problem, &canonical, rerun.ticker());
    engine.first_only = true;
    engine.expand(0, 0, 0);
    drop(engine);
    let colors = canonical
        .best
        .into_inner()
        .unwrap_or_else(|e| e.into_inner())
        .unwrap_or(found);
    Ok(result(value, exact, widen(&colors)))
}

const FRONTIER_DEPTH: usize = 6;

fn widen(colors: &[u8]) -> Vec<usize> {
    colors.iter().map(|&c| c as usize).collect()
}

/// Each triple takes the color whose component it enlarges least.
fn greedy(system: &TripleSystem, r: usize) -> EdgeColoring {
    let n = system.n();
    let mut uf: Vec<UnionFind> = (0..r).map(|_| UnionFind::new(n)).collect();
    let mut colors = Vec::with_capacity(system.len());
    for t in system.triples() {
        let vs = t.vertices();
        let size = |c: usize, uf: &mut Vec<UnionFind>| {
            let mut roots: Vec<usize> = vs.iter().map(|&v| uf[c].find(v)).collect();
            roots.sort_unstable();
            roots.dedup();
            roots
                .iter()
                .map(|&root| uf[c].set_size(root))
                .sum::<usize>()
        };
        let c = (0..r).min_by_key(|&c| size(c, &mut uf)).unwrap_or(0);
        uf[c].union(vs[0], vs[1]);
        uf[c].union(vs[0], vs[2]);
        colors.push(c);
    }
    EdgeColoring::new(system, r.max(1), colors).expect("greedy coloring fits")
}

/// In a linear system the triples through a vertex meet only there, so the
/// busiest color at the busiest vertex already spans `1 + 2⌈deg/r⌉` vertices.
fn lower_bound(system: &TripleSystem, r: usize) -> usize {
    if system.is_empty() {
        return 0;
    }
    if !system.is_linear() {
        return 3;
    }
    let deg = (0..system.n())
        .map(|v| system.triples_on_vertex(v).len())
        .max()
        .unwrap_or(0);
    1 + 2 * deg.div_ceil(r)
}

struct Problem {
    n: usize,
    r: usize,
    floor: usize,
    triples: Vec<[usize; 3]>,
}

impl Problem {
    fn new(system: &TripleSystem, r: usize, floor: usize) -> Self {
        Problem {
            n: system.n(),
            r,
            floor,
            triples: system.triples().iter().map(|t| t.vertices()).collect(),
        }
    }
}

struct Shared {
    /// Every coloring still wanted has all components strictly below this.
    bound: AtomicUsize,
    best: Mutex<Option<Vec<u8>>>,
}

struct Partial {
    colors: Vec<u8>,
    depth: usize,
    max: usize,
    used: usize,
}

struct Engine<'a> {
    p: &'a Problem,
    shared: &'a Shared,
    ticker: Ticker<'a>,
    colors: Vec<u8>,
    /// `comp[c * n + v]`: vertices joined to `v` by color `c`.
    comp: Vec<Mask>,
    undo: Vec<Mask>,
    options: Vec<(usize, u8)>,
    halt: bool,
    first_only: bool,
    collect: Option<usize>,
    frontier: Vec<Partial>,
}

impl<'a> Engine<'a> {
    fn new(p: &'a Problem, shared: &'a Shared, ticker: Ticker<'a>) -> Self {
        let n = p.n;
        let mut comp = vec![0; p.r * n];
        for c in 0..p.r {
            for v in 0..n {
                comp[c * n + v] = bit(v);
            }
        }
        Engine {
            p,
            shared,
            ticker,
            colors: vec![NONE; p.triples.len()],
            comp,
            undo: vec![0; p.triples.len() * n],
            options: vec![(0, 0); p.triples.len() * p.r],
            halt: false,
            first_only: false,
            collect: None,
            frontier: Vec::new(),
        }
    }

    fn merged(&self, t: usize, c: usize) -> Mask {
        let [x, y, z] = self.p.triples[t];
        let row = c * self.p.n;
        self.comp[row + x] | self.comp[row + y] | self.comp[row + z]
    }

    fn apply(&mut self, t: usize, c: usize) -> Mask {
        let merged = self.merged(t, c);
        for v in ones(merged) {
            self.comp[c * self.p.n + v] = merged;
        }
        self.colors[t] = c as u8;
        merged
    }

    fn replay(&mut self, colors: &[u8]) {
        for (t, &c) in colors.iter().enumerate() {
            if c != NONE {
                self.apply(t, c as usize);
            }
        }
    }

    fn record(&mut self, size: usize) {
        let mut best = self.shared.best.lock().unwrap_or_else(|e| e.into_inner());
        if size < self.shared.bound.load(Ordering::Relaxed) {
            self.shared.bound.store(size, Ordering::Relaxed);
            *best = Some(self.colors.clone());
        }
        if self.first_only {
            self.halt = true;
        }
    }

    fn expand(&mut self, depth: usize, max: usize, used: usize) {
        if self.halt || !self.ticker.tick() {
            self.halt = true;
            return;
        }
        let bound = self.shared.bound.load(Ordering::Relaxed);
        if max >= bound || bound <= self.p.floor {
            return;
        }
        let m = self.p.triples.len();
        if depth == m {
            self.record(max);
            return;
        }
        if self.collect == Some(depth) {
            self.frontier.push(Partial {
                colors: self.colors.clone(),
                depth,
                max,
                used,
            });
            return;
        }

        let limit = (used + 1).min(self.p.r);
        let mut pick = usize::MAX;
        let mut pick_count = usize::MAX;
        for t in 0..m {
            if self.colors[t] != NONE {
                continue;
            }
            let count = (0..limit)
                .filter(|&c| (self.merged(t, c).count_ones() as usize) < bound)
                .count();
            if count == 0 {
                return;
            }
            if count < pick_count {
                pick = t;
                pick_count = count;
            }
        }

        let base = depth * self.p.r;
        let mut k = 0;
        for c in 0..limit {
            let size = self.merged(pick, c).count_ones() as usize;
            if size < bound {
                self.options[base + k] = (size, c as u8);
                k += 1;
            }
        }
        self.options[base..base + k].sort_unstable();

        let n = self.p.n;
        for i in 0..k {
            let (size, c) = self.options[base + i];
            let c = c as usize;
            if size >= self.shared.bound.load(Ordering::Relaxed) {
                break;
            }
            let row = c * n;
            self.undo[depth * n..(depth + 1) * n].copy_from_slice(&self.comp[row..row + n]);
            self.apply(pick, c);
            self.expand(depth + 1, max.max(size), used.max(c + 1));
            self.comp[row..row + n].copy_from_slice(&self.undo[depth * n..(depth + 1) * n]);
            self.colors[pick] = NONE;
            if self.halt {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::EdgeColoring;
    use crate::constructions::{fano, s9};

    /// Largest component over all `r^m` colorings, minimized.
    fn brute_force(system: &TripleSystem, r: usize) -> usize {
        let m = system.len();
        let mut best = usize::MAX;
        let mut colors = vec![0; m];
        loop {
            let c = EdgeColoring::new(system, r, colors.clone()).unwrap();
            best = best.min(mc_upper_from_coloring(system, &c));
            let mut i = 0;
            while i < m && colors[i] == r - 1 {
                colors[i] = 0;
                i += 1;
            }
            if i == m {
                return best;
            }
            colors[i] += 1;
        }
    }

    fn check(system: &TripleSystem, r: usize, expected: usize) {
        for workers in [1, 3] {
            let res =
                mc_exact(system, r, SearchBudget::default().with_parallelism(workers)).unwrap();
            assert_eq!(
                (res.value, res.exact),
                (expected, true),
                "r = {r}, workers = {workers}"
            );
            match res.certificate {
                Certificate::Coloring(c) => {
                    assert_eq!(mc_upper_from_coloring(system, &c), expected)
                }
                other => panic!("unexpected certificate {other:?}"),
            }
        }
    }

    #[test]
    fn fano_matches_brute_force() {
        let f = fano();
        assert_eq!(brute_force(&f, 3), 6);
        check(&f, 3, 6);
        assert_eq!(brute_force(&f, 2), 7);
        check(&f, 2, 7);
        check(&f, 1, 7);
    }

    #[test]
    fn s9_value() {
        check(&s9(), 3, 7);
    }

    #[test]
    fn single_triple() {
        let s = TripleSystem::new(3, &[[0, 1, 2]]).unwrap();
        check(&s, 3, 3);
    }

    #[test]
    fn zero_colors_rejected() {
        assert!(matches!(
            mc_exact(&fano(), 0, SearchBudget::default()),
            Err(SearchError::BadR(0))
        ));
    }

    #[test]
    fn upper_from_single_color() {
        let f = fano();
        assert_eq!(
            mc_upper_from_coloring(&f, &EdgeColoring::monochromatic(&f, 1)),
            7
        );
    }

    #[test]
    fn tiny_budget_keeps_a_valid_upper_bound() {
        let s = crate::constructions::bose(15).unwrap();
        let res = mc_exact(&s, 3, SearchBudget::nodes(50)).unwrap();
        assert!(!res.exact);
        match res.certificate {
            Certificate::Coloring(c) => assert_eq!(mc_upper_from_coloring(&s, &c), res.value),
            other => panic!("unexpected certificate {other:?}"),
        }
    }
}
