use super::{
    bit, mask_of, ones, Certificate, Mask, Meter, ParamResult, SearchBudget, Ticker,
    MAX_EXACT_VERTICES,
};
use crate::system::TripleSystem;

/// Whether no triple lies entirely inside `vertices`.
pub fn is_independent(system: &TripleSystem, vertices: &[usize]) -> bool {
    let mut inside = vec![false; system.n()];
    for &v in vertices {
        inside[v] = true;
    }
    !system
        .triples()
        .iter()
        .any(|t| t.vertices().iter().all(|&v| inside[v]))
}

fn greedy(system: &TripleSystem, order: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut inside = vec![false; system.n()];
    let mut set = Vec::new();
    for v in order {
        let blocked = system.triples_on_vertex(v).iter().any(|&t| {
            system
                .triple(t)
                .vertices()
                .iter()
                .all(|&u| u == v || inside[u])
        });
        if !blocked {
            inside[v] = true;
            set.push(v);
        }
    }
    set
}

/// Maximum independent set by branch and bound on vertex inclusion.
///
/// The bound subtracts from `|chosen| + |candidates|` one vertex per disjoint
/// obstruction among the candidates: a pair that would complete a triple with
/// a chosen vertex, or a triple lying entirely among the candidates.
pub fn independence_number(system: &TripleSystem, budget: SearchBudget) -> ParamResult {
    let n = system.n();
    let meter = Meter::new(&budget);
    let a = greedy(system, 0..n);
    let b = greedy(system, (0..n).rev());
    let mut best = if b.len() > a.len() { b } else { a };
    best.sort_unstable();
    if n > MAX_EXACT_VERTICES {
        return ParamResult {
            value: best.len(),
            exact: false,
            certificate: Certificate::IndependentSet { vertices: best },
            nodes: 0,
            seconds: meter.seconds(),
        };
    }

    let mut thirds = vec![0 as Mask; n * n];
    for t in system.triples() {
        let [x, y, z] = t.vertices();
        thirds[x * n + y] |= bit(z);
        thirds[y * n + x] |= bit(z);
        thirds[x * n + z] |= bit(y);
        thirds[z * n + x] |= bit(y);
        thirds[y * n + z] |= bit(x);
        thirds[z * n + y] |= bit(x);
    }
    let all: Mask = if n == 128 { Mask::MAX } else { bit(n) - 1 };
    let mut engine = Engine {
        n,
        thirds: &thirds,
        best: mask_of(&best),
        best_size: best.len(),
        ticker: meter.ticker(),
    };
    engine.expand(0, all);
    let best = engine.best;
    drop(engine);
    let vertices: Vec<usize> = ones(best).collect();
    ParamResult {
        value: vertices.len(),
        exact: !meter.exhausted(),
        certificate: Certificate::IndependentSet { vertices },
        nodes: meter.nodes(),
        seconds: meter.seconds(),
    }
}

struct Engine<'a> {
    n: usize,
    thirds: &'a [Mask],
    best: Mask,
    best_size: usize,
    ticker: Ticker<'a>,
}

impl Engine<'_> {
    fn closing(&self, chosen: Mask, v: usize) -> Mask {
        ones(chosen).fold(0, |m, u| m | self.thirds[u * self.n + v])
    }

    fn bound(&self, chosen: Mask, cand: Mask) -> usize {
        let mut avail = cand;
        let mut reduction = 0;
        for u in ones(cand) {
            if avail & bit(u) == 0 {
                continue;
            }
            let partner = self.closing(chosen, u) & avail & !bit(u);
            if partner != 0 {
                avail &= !(bit(u) | bit(partner.trailing_zeros() as usize));
                reduction += 1;
            }
        }
        let mut rest = avail;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if avail & bit(u) == 0 {
                continue;
            }
            for w in ones(avail & rest) {
                let t = self.thirds[u * self.n + w] & avail & !(bit(u) | bit(w));
                if t != 0 {
                    avail &= !(bit(u) | bit(w) | bit(t.trailing_zeros() as usize));
                    reduction += 1;
                    break;
                }
            }
        }
        cand.count_ones() as usize - reduction
    }

    fn expand(&mut self, chosen: Mask, cand: Mask) {
        if !self.ticker.tick() {
            return;
        }
        let size = chosen.count_ones() as usize;
        if size > self.best_size {
            self.best = chosen;
            self.best_size = size;
        }
        if cand == 0 || size + (cand.count_ones() as usize) <= self.best_size {
            return;
        }
        if size + self.bound(chosen, cand) <= self.best_size {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !bit(v);
        self.expand(chosen | bit(v), rest & !self.closing(chosen, v));
        if self.ticker.stopped() {
            return;
        }
        self.expand(chosen, rest);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fano, s9};

    fn brute_force(system: &TripleSystem) -> usize {
        let n = system.n();
        (0u32..1 << n)
            .filter(|&set| {
                !system
                    .triples()
                    .iter()
                    .any(|t| t.vertices().iter().all(|&v| set >> v & 1 == 1))
            })
            .map(|set| set.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn small_systems_match_brute_force() {
        let f = fano();
        assert_eq!(brute_force(&f), 4);
        let r = independence_number(&f, SearchBudget::default());
        assert_eq!((r.value, r.exact), (4, true));

        let s = s9();
        assert_eq!(brute_force(&s), 4);
        let r = independence_number(&s, SearchBudget::default());
        assert_eq!((r.value, r.exact), (4, true));
        match r.certificate {
            Certificate::IndependentSet { vertices } => assert!(is_independent(&s, &vertices)),
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn single_triple() {
        let s = TripleSystem::new(3, &[[0, 1, 2]]).unwrap();
        let r = independence_number(&s, SearchBudget::default());
        assert_eq!((r.value, r.exact), (2, true));
    }

    #[test]
    fn tiny_budget_is_inexact() {
        let s = crate::constructions::bose(27).unwrap();
        let r = independence_number(&s, SearchBudget::nodes(10));
        assert!(!r.exact);
        match r.certificate {
            Certificate::IndependentSet { vertices } => {
                assert!(is_independent(&s, &vertices));
                assert_eq!(vertices.len(), r.value);
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }
}
