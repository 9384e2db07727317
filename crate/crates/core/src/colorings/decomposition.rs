//! Structure of a 3-coloring of a system in which every pair is covered.
//!
//! Coloring the shadow pair `uv` with every color of a triple through `u` and
//! `v` gives a 3-multicolored complete graph. Either one color has a spanning
//! component, or the vertices split into four parts `W, X, Y, Z` whose
//! cross pairs are colored in one of two rigid patterns.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::ColoringError;
use crate::coloring::{mono_components, EdgeColoring};
use crate::system::TripleSystem;

/// Which actual color plays each role of the pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorRoles {
    pub blue: usize,
    pub red: usize,
    pub green: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourParts {
    pub w: Vec<usize>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
}

impl FourParts {
    fn sets(&self) -> [&[usize]; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }
}

/// Four vertex sets, largest first, such that no triple touches three of
/// them and the triples touching two of them are colored by the perfect
/// matching of the pair: `matching_colors[0]` for `V1V2` and `V3V4`,
/// `[1]` for `V1V3` and `V2V4`, `[2]` for `V1V4` and `V2V3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct T2Partition {
    pub sets: [Vec<usize>; 4],
    pub matching_colors: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum DecompositionResult {
    /// One color has a component containing every vertex.
    L1 { color: usize, component: Vec<usize> },
    /// `[W,X]`, `[Y,Z]` only blue; `[W,Y]`, `[X,Z]` only red; `[W,Z]`, `[X,Y]` only green.
    L2 {
        roles: ColorRoles,
        parts: FourParts,
        partition: T2Partition,
    },
    /// `W∪X∪Y` connected in blue, `W∪X∪Z` in red, `W∪Y∪Z` in green;
    /// `[X,Y]` only blue, `[X,Z]` only red, `[Y,Z]` only green; no green in
    /// `[W,X]`, no red in `[W,Y]`, no blue in `[W,Z]`.
    L3 { roles: ColorRoles, parts: FourParts },
}

impl DecompositionResult {
    pub fn case(&self) -> &'static str {
        match self {
            DecompositionResult::L1 { .. } => "L1",
            DecompositionResult::L2 { .. } => "L2",
            DecompositionResult::L3 { .. } => "L3",
        }
    }

    /// Size of a monochromatic component the structure guarantees.
    pub fn implied_lower_bound(&self) -> usize {
        match self {
            DecompositionResult::L1 { component, .. } => component.len(),
            DecompositionResult::L2 { partition, .. } => {
                partition.sets[0].len() + partition.sets[1].len()
            }
            DecompositionResult::L3 { parts, .. } => {
                let [w, x, y, z] = parts.sets().map(<[usize]>::len);
                (w + x + y).max(w + x + z).max(w + y + z)
            }
        }
    }
}

/// The first clause a claimed decomposition fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseViolation(pub String);

impl fmt::Display for ClauseViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ClauseViolation {}

/// `colors[u * n + v]`: bitmask of the colors on shadow pair `uv`.
struct Shadow {
    n: usize,
    colors: Vec<u8>,
}

impl Shadow {
    fn new(system: &TripleSystem, coloring: &EdgeColoring) -> Self {
        let n = system.n();
        let mut colors = vec![0u8; n * n];
        for (t, triple) in system.triples().iter().enumerate() {
            let c = 1u8 << coloring.color(t);
            for (u, v) in triple.pairs() {
                colors[u * n + v] |= c;
                colors[v * n + u] |= c;
            }
        }
        Shadow { n, colors }
    }

    fn at(&self, u: usize, v: usize) -> u8 {
        self.colors[u * self.n + v]
    }

    fn connected(&self, set: &[usize], color: usize) -> bool {
        let Some(&start) = set.first() else {
            return false;
        };
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for v in 0..self.n {
                if inside[v] && !seen[v] && self.at(u, v) & (1 << color) != 0 {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached == set.len()
    }
}

fn minus(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| !b.contains(v)).collect()
}

fn meet(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.contains(v)).collect()
}

/// Follows the case analysis on the shadow of `coloring`.
///
/// `B` is the largest monochromatic component (lowest color, then
/// lexicographically first, on ties), `U` its complement, and `R` the largest
/// component of another color meeting both.
pub fn decompose_3coloring(
    system: &TripleSystem,
    coloring: &EdgeColoring,
) -> Result<DecompositionResult, ColoringError> {
    if !coloring.fits(system) {
        return Err(ColoringError::ColoringMismatch);
    }
    if coloring.r() > 3 {
        return Err(ColoringError::TooManyColors(coloring.r()));
    }
    if let Some((u, v)) = system.first_uncovered_pair() {
        return Err(ColoringError::PairUncovered(u, v));
    }
    let n = system.n();
    let set = mono_components(system, coloring);
    let comps = |c: usize| set.components.get(c).map(Vec::as_slice).unwrap_or(&[]);

    let pick = |colors: &[usize], keep: &dyn Fn(&[usize]) -> bool| -> Option<(usize, Vec<usize>)> {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for &c in colors {
            for comp in comps(c) {
                if !keep(comp) {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, b)| comp.len() > b.len()) {
                    best = Some((c, comp.clone()));
                }
            }
        }
        best
    };

    let (blue, b) = pick(&[0, 1, 2], &|_| true).expect("a covered pair lies in a triple");
    if b.len() == n {
        return Ok(DecompositionResult::L1 {
            color: blue,
            component: b,
        });
    }
    let all: Vec<usize> = (0..n).collect();
    let u = minus(&all, &b);
    let others: Vec<usize> = (0..3).filter(|&c| c != blue).collect();
    let meets_both =
        |comp: &[usize]| comp.iter().any(|v| b.contains(v)) && comp.iter().any(|v| u.contains(v));
    let (red, r) =
        pick(&others, &meets_both).expect("a pair between B and U carries another color");
    let green = 3 - blue - red;
    let roles = ColorRoles { blue, red, green };

    let u_minus_r = minus(&u, &r);
    if !u_minus_r.is_empty() {
        let parts = FourParts {
            w: meet(&b, &r),
            x: minus(&b, &r),
            y: meet(&u, &r),
            z: u_minus_r,
        };
        let partition = t2_partition(&parts, roles);
        return Ok(DecompositionResult::L2 {
            roles,
            parts,
            partition,
        });
    }
    let b_minus_r = minus(&b, &r);
    let anchor = u[0];
    let g = comps(green)
        .iter()
        .find(|comp| comp.contains(&anchor))
        .cloned()
        .unwrap_or_default();
    let parts = FourParts {
        w: meet(&meet(&b, &r), &g),
        x: minus(&b, &g),
        y: b_minus_r,
        z: u,
    };
    Ok(DecompositionResult::L3 { roles, parts })
}

/// Sorts `W, X, Y, Z` by size (stable, descending) and carries the matching colors along.
fn t2_partition(parts: &FourParts, roles: ColorRoles) -> T2Partition {
    // Matching of {W,X,Y,Z} index pairs: 0 for WX/YZ, 1 for WY/XZ, 2 for WZ/XY.
    let matching = |p: usize, q: usize| match (p.min(q), p.max(q)) {
        (0, 1) | (2, 3) => 0,
        (0, 2) | (1, 3) => 1,
        _ => 2,
    };
    let role_colors = [roles.blue, roles.red, roles.green];
    let sets = parts.sets();
    let mut order = [0, 1, 2, 3];
    order.sort_by_key(|&i| std::cmp::Reverse(sets[i].len()));
    T2Partition {
        sets: order.map(|i| sets[i].to_vec()),
        matching_colors: [
            role_colors[matching(order[0], order[1])],
            role_colors[matching(order[0], order[2])],
            role_colors[matching(order[0], order[3])],
        ],
    }
}

/// Checks every clause of the claimed case against the shadow of `coloring`,
/// and for `L2` the triple conditions of the attached partition.
pub fn verify_decomposition(
    system: &TripleSystem,
    coloring: &EdgeColoring,
    result: &DecompositionResult,
) -> Result<(), ClauseViolation> {
    let fail = |msg: String| Err(ClauseViolation(msg));
    if !coloring.fits(system) {
        return fail("coloring does not match the system".into());
    }
    let n = system.n();
    let shadow = Shadow::new(system, coloring);
    match result {
        DecompositionResult::L1 { color, component } => {
            let mut sorted = component.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != n || sorted.iter().any(|&v| v >= n) {
                return fail(format!(
                    "L1: component has {} of {n} vertices",
                    sorted.len()
                ));
            }
            if !shadow.connected(&sorted, *color) {
                return fail(format!("L1: not connected in color {color}"));
            }
            Ok(())
        }
        DecompositionResult::L2 {
            roles,
            parts,
            partition,
        } => {
            check_partition(n, parts, true)?;
            check_roles(roles)?;
            let ColorRoles { blue, red, green } = *roles;
            let FourParts { w, x, y, z } = parts;
            let only = [
                ("[W,X]", w, x, blue),
                ("[Y,Z]", y, z, blue),
                ("[W,Y]", w, y, red),
                ("[X,Z]", x, z, red),
                ("[W,Z]", w, z, green),
                ("[X,Y]", x, y, green),
            ];
            for (name, p, q, c) in only {
                check_only(&shadow, name, p, q, c)?;
            }
            check_t2(system, coloring, parts, partition)
        }
        DecompositionResult::L3 { roles, parts } => {
            check_partition(n, parts, false)?;
            check_roles(roles)?;
            let ColorRoles { blue, red, green } = *roles;
            let FourParts { w, x, y, z } = parts;
            let unions = [
                ("W∪X∪Y", [w, x, y], blue),
                ("W∪X∪Z", [w, x, z], red),
                ("W∪Y∪Z", [w, y, z], green),
            ];
            for (name, sets, c) in unions {
                let joined: Vec<usize> = sets.iter().flat_map(|s| s.iter().copied()).collect();
                if !shadow.connected(&joined, c) {
                    return fail(format!("L3: {name} not connected in color {c}"));
                }
            }
            for (name, p, q, c) in [
                ("[X,Y]", x, y, blue),
                ("[X,Z]", x, z, red),
                ("[Y,Z]", y, z, green),
            ] {
                check_only(&shadow, name, p, q, c)?;
            }
            for (name, p, q, c) in [
                ("[W,X]", w, x, green),
                ("[W,Y]", w, y, red),
                ("[W,Z]", w, z, blue),
            ] {
                for &u in p.iter() {
                    for &v in q.iter() {
                        if shadow.at(u, v) & (1 << c) != 0 {
                            return fail(format!("L3: pair {u}-{v} in {name} has color {c}"));
                        }
                    }
                }
            }
            Ok(())
        }
    }
}

fn check_roles(roles: &ColorRoles) -> Result<(), ClauseViolation> {
    let r = [roles.blue, roles.red, roles.green];
    if r.iter().any(|&c| c > 2) || r[0] == r[1] || r[0] == r[2] || r[1] == r[2] {
        return Err(ClauseViolation(format!(
            "roles {r:?} are not three distinct colors"
        )));
    }
    Ok(())
}

fn check_partition(n: usize, parts: &FourParts, all_nonempty: bool) -> Result<(), ClauseViolation> {
    let names = ["W", "X", "Y", "Z"];
    let mut owner = vec![None; n];
    for (i, part) in parts.sets().iter().enumerate() {
        if part.is_empty() && (all_nonempty || i > 0) {
            return Err(ClauseViolation(format!("part {} is empty", names[i])));
        }
        for &v in part.iter() {
            if v >= n {
                return Err(ClauseViolation(format!("vertex {v} out of range")));
            }
            if let Some(j) = owner[v] {
                return Err(ClauseViolation(format!(
                    "vertex {v} in both {} and {}",
                    names[j], names[i]
                )));
            }
            owner[v] = Some(i);
        }
    }
    if let Some(v) = owner.iter().position(Option::is_none) {
        return Err(ClauseViolation(format!("vertex {v} in no part")));
    }
    Ok(())
}

fn check_only(
    shadow: &Shadow,
    name: &str,
    p: &[usize],
    q: &[usize],
    color: usize,
) -> Result<(), ClauseViolation> {
    for &u in p {
        for &v in q {
            let c = shadow.at(u, v);
            if c != 1 << color {
                return Err(ClauseViolation(format!(
                    "pair {u}-{v} in {name} has colors {c:03b}, expected only {color}"
                )));
            }
        }
    }
    Ok(())
}

fn check_t2(
    system: &TripleSystem,
    coloring: &EdgeColoring,
    parts: &FourParts,
    partition: &T2Partition,
) -> Result<(), ClauseViolation> {
    let fail = |msg: String| Err(ClauseViolation(msg));
    let mut expected: Vec<Vec<usize>> = parts.sets().iter().map(|s| s.to_vec()).collect();
    let mut got: Vec<Vec<usize>> = partition.sets.to_vec();
    for s in expected.iter_mut().chain(got.iter_mut()) {
        s.sort_unstable();
    }
    expected.sort();
    got.sort();
    if expected != got {
        return fail("T2: sets are not the parts W, X, Y, Z".into());
    }
    if partition.sets.windows(2).any(|w| w[0].len() < w[1].len()) {
        return fail("T2: sets not in descending size".into());
    }
    let mut owner = vec![usize::MAX; system.n()];
    for (i, set) in partition.sets.iter().enumerate() {
        for &v in set {
            owner[v] = i;
        }
    }
    let matching = |p: usize, q: usize| match (p.min(q), p.max(q)) {
        (0, 1) | (2, 3) => 0,
        (0, 2) | (1, 3) => 1,
        _ => 2,
    };
    for (t, triple) in system.triples().iter().enumerate() {
        let mut touched: Vec<usize> = triple.vertices().iter().map(|&v| owner[v]).collect();
        touched.sort_unstable();
        touched.dedup();
        match touched.as_slice() {
            [_] => {}
            [p, q] => {
                let want = partition.matching_colors[matching(*p, *q)];
                if coloring.color(t) != want {
                    return fail(format!(
                        "T2: triple {t} touches V{} and V{} but has color {}, expected {want}",
                        p + 1,
                        q + 1,
                        coloring.color(t)
                    ));
                }
            }
            _ => return fail(format!("T2: triple {t} touches three sets")),
        }
    }
    Ok(())
}
