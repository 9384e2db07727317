//! Plain exhaustive oracles, independent of the library's search engines.
#![allow(dead_code)]

use sts_core::TripleSystem;

pub fn triples(system: &TripleSystem) -> Vec<[usize; 3]> {
    system.triples().iter().map(|t| t.vertices()).collect()
}

/// Largest independent set by enumerating all `2^n` vertex subsets.
pub fn brute_alpha(system: &TripleSystem) -> usize {
    let n = system.n();
    let masks: Vec<u32> = triples(system)
        .iter()
        .map(|t| t.iter().map(|&v| 1u32 << v).sum())
        .collect();
    (0u32..1 << n)
        .filter(|&s| masks.iter().all(|&t| s & t != t))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Largest `a` such that some assignment of vertices to three parts (or to
/// none) has all parts of size `a` and no triple meeting all three parts.
/// Enumerates all `4^n` assignments.
pub fn brute_alpha_star3(system: &TripleSystem) -> usize {
    let n = system.n();
    let ts = triples(system);
    let mut best = 0;
    let mut part = vec![0u8; n];
    for code in 0u64..4u64.pow(n as u32) {
        let mut c = code;
        let mut sizes = [0usize; 4];
        for p in part.iter_mut() {
            *p = (c % 4) as u8;
            c /= 4;
            sizes[*p as usize] += 1;
        }
        let a = sizes[1];
        if a <= best || sizes[2] != a || sizes[3] != a {
            continue;
        }
        let hole = ts.iter().all(|t| {
            let mut seen = [false; 4];
            for &v in t {
                seen[part[v] as usize] = true;
            }
            !(seen[1] && seen[2] && seen[3])
        });
        if hole {
            best = a;
        }
    }
    best
}

/// Whether the triple system has no triple meeting all three parts, checked
/// triple by triple.
pub fn brute_is_hole(system: &TripleSystem, parts: &[Vec<usize>]) -> bool {
    triples(system)
        .iter()
        .all(|t| !parts.iter().all(|p| t.iter().any(|v| p.contains(v))))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Size of the largest monochromatic component: for each color, vertices
/// joined through triples of that color, counting only touched vertices.
pub fn brute_largest_component(n: usize, ts: &[[usize; 3]], colors: &[usize], r: usize) -> usize {
    let mut best = 0;
    for c in 0..r {
        let mut parent: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for (t, &col) in ts.iter().zip(colors) {
            if col != c {
                continue;
            }
            for &v in t {
                touched[v] = true;
            }
            let a = find(&mut parent, t[0]);
            for &v in &t[1..] {
                let b = find(&mut parent, v);
                parent[b] = a;
            }
        }
        let mut size = vec![0; n];
        for v in 0..n {
            if touched[v] {
                let root = find(&mut parent, v);
                size[root] += 1;
            }
        }
        best = best.max(size.into_iter().max().unwrap_or(0));
    }
    best
}

/// `mc_r` by trying all `r^m` colorings.
pub fn brute_mc(system: &TripleSystem, r: usize) -> usize {
    let n = system.n();
    let ts = triples(system);
    let m = ts.len();
    let mut colors = vec![0usize; m];
    let mut best = usize::MAX;
    loop {
        best = best.min(brute_largest_component(n, &ts, &colors, r));
        let mut i = 0;
        while i < m && colors[i] == r - 1 {
            colors[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
        colors[i] += 1;
    }
    best
}

/// Whether every pair of vertices lies in exactly one triple.
pub fn brute_is_steiner(system: &TripleSystem) -> bool {
    let n = system.n();
    let mut count = vec![vec![0; n]; n];
    for [a, b, c] in triples(system) {
        for (u, v) in [(a, b), (a, c), (b, c)] {
            count[u][v] += 1;
            count[v][u] += 1;
        }
    }
    (0..n).all(|u| (0..n).all(|v| u == v || count[u][v] == 1))
}
