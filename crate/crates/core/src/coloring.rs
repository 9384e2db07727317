//! Edge colorings of triple systems and their monochromatic components.
//!
//! A monochromatic component of color `i` is a connected component of the
//! shadow graph of the color-`i` triples. Only vertices touched by at least
//! one color-`i` triple belong to a component of that color.

use serde::{Deserialize, Serialize};

use crate::system::{SystemError, TripleSystem};
use crate::union_find::UnionFind;

/// An `r`-coloring of a system's triples; entry `i` colors triple `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    r: usize,
    colors: Vec<usize>,
}

impl EdgeColoring {
    pub fn new(system: &TripleSystem, r: usize, colors: Vec<usize>) -> Result<Self, SystemError> {
        if r == 0 {
            return Err(SystemError::NoColors);
        }
        if colors.len() != system.len() {
            return Err(SystemError::ColoringLength {
                expected: system.len(),
                got: colors.len(),
            });
        }
        if let Some((index, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= r) {
            return Err(SystemError::ColorOutOfRange { index, color, r });
        }
        Ok(EdgeColoring { r, colors })
    }

    /// Every triple gets color 0.
    pub fn monochromatic(system: &TripleSystem, r: usize) -> Self {
        EdgeColoring::new(system, r.max(1), vec![0; system.len()]).expect("valid by construction")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, triple: usize) -> usize {
        self.colors[triple]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Triple indices of each color class.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.r];
        for (t, &c) in self.colors.iter().enumerate() {
            classes[c].push(t);
        }
        classes
    }

    /// Whether this coloring is meant for `system`.
    pub fn fits(&self, system: &TripleSystem) -> bool {
        self.colors.len() == system.len()
    }
}

/// Per-color component structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSet {
    /// `components[c]` lists color `c`'s components, each sorted ascending,
    /// ordered by smallest vertex.
    pub components: Vec<Vec<Vec<usize>>>,
    /// `spanned[c]` is the sorted set of vertices touched by color `c`.
    pub spanned: Vec<Vec<usize>>,
}

impl ComponentSet {
    pub fn span_sizes(&self) -> Vec<usize> {
        self.spanned.iter().map(Vec::len).collect()
    }

    pub fn largest_per_color(&self) -> Vec<usize> {
        self.components
            .iter()
            .map(|cs| cs.iter().map(Vec::len).max().unwrap_or(0))
            .collect()
    }
}

pub fn mono_components(system: &TripleSystem, coloring: &EdgeColoring) -> ComponentSet {
    assert!(coloring.fits(system), "coloring does not match the system");
    let n = system.n();
    let mut components = Vec::with_capacity(coloring.r());
    let mut spanned = Vec::with_capacity(coloring.r());
    for class in coloring.classes() {
        let mut uf = UnionFind::new(n);
        let mut touched = vec![false; n];
        for &t in &class {
            let [a, b, c] = system.triple(t).vertices();
            uf.union(a, b);
            uf.union(a, c);
            touched[a] = true;
            touched[b] = true;
            touched[c] = true;
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in (0..n).filter(|&v| touched[v]) {
            let r = uf.find(v);
            by_root[r].push(v);
        }
        let mut comps: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        comps.sort();
        components.push(comps);
        spanned.push((0..n).filter(|&v| touched[v]).collect());
    }
    ComponentSet {
        components,
        spanned,
    }
}

/// The largest monochromatic component with its color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LargestComponent {
    pub size: usize,
    pub color: usize,
    pub vertices: Vec<usize>,
}

/// Ties go to the lowest color, then the lexicographically smallest vertex set.
/// A coloring of an empty system yields size 0.
pub fn largest_mono_component(system: &TripleSystem, coloring: &EdgeColoring) -> LargestComponent {
    let set = mono_components(system, coloring);
    let mut best = LargestComponent {
        size: 0,
        color: 0,
        vertices: Vec::new(),
    };
    for (color, comps) in set.components.into_iter().enumerate() {
        for comp in comps {
            let better = comp.len() > best.size
                || (comp.len() == best.size && color == best.color && comp < best.vertices);
            if better {
                best = LargestComponent {
                    size: comp.len(),
                    color,
                    vertices: comp,
                };
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> TripleSystem {
        let lines: Vec<[usize; 3]> = (0..7).map(|i| [i, (i + 1) % 7, (i + 3) % 7]).collect();
        TripleSystem::new(7, &lines).unwrap()
    }

    #[test]
    fn single_color_spans() {
        let s = fano();
        let c = EdgeColoring::monochromatic(&s, 3);
        let set = mono_components(&s, &c);
        assert_eq!(set.components[0], vec![(0..7).collect::<Vec<_>>()]);
        assert!(set.components[1].is_empty() && set.components[2].is_empty());
        let big = largest_mono_component(&s, &c);
        assert_eq!((big.size, big.color), (7, 0));
        assert_eq!(big.vertices, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn each_triple_own_color() {
        let s = fano();
        let c = EdgeColoring::new(&s, 7, (0..7).collect()).unwrap();
        let set = mono_components(&s, &c);
        for (i, comps) in set.components.iter().enumerate() {
            assert_eq!(comps.len(), 1);
            assert_eq!(comps[0], s.triple(i).vertices().to_vec());
        }
        let big = largest_mono_component(&s, &c);
        assert_eq!((big.size, big.color), (3, 0));
    }

    #[test]
    fn rejects_bad_colorings() {
        let s = fano();
        assert!(matches!(
            EdgeColoring::new(&s, 0, vec![]),
            Err(SystemError::NoColors)
        ));
        assert!(matches!(
            EdgeColoring::new(&s, 2, vec![0; 6]),
            Err(SystemError::ColoringLength {
                expected: 7,
                got: 6
            })
        ));
        assert!(matches!(
            EdgeColoring::new(&s, 2, vec![0, 0, 0, 2, 0, 0, 0]),
            Err(SystemError::ColorOutOfRange {
                index: 3,
                color: 2,
                r: 2
            })
        ));
    }

    #[test]
    fn tie_break_prefers_lowest_color() {
        // Two disjoint triples, one per color; both components have size 3.
        let s = TripleSystem::new(6, &[[3, 4, 5], [0, 1, 2]]).unwrap();
        let c = EdgeColoring::new(&s, 2, vec![0, 1]).unwrap();
        let big = largest_mono_component(&s, &c);
        assert_eq!((big.color, big.vertices), (0, vec![3, 4, 5]));
        let c = EdgeColoring::new(&s, 2, vec![0, 0]).unwrap();
        let big = largest_mono_component(&s, &c);
        assert_eq!((big.color, big.vertices), (0, vec![0, 1, 2]));
    }
}
