use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ColoringError;
use crate::hole::HoleCertificate;
use crate::system::TripleSystem;

/// A vertex coloring with colors `1..=3` under which every triple sees
/// exactly two colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bicoloring {
    /// `classes[v]` is the color of vertex `v`.
    pub classes: Vec<u8>,
    /// Class sizes, ascending.
    pub sizes: [usize; 3],
}

impl Bicoloring {
    /// Vertices of color `c`, ascending.
    pub fn class(&self, c: u8) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&v| self.classes[v] == c)
            .collect()
    }
}

pub fn verify_bicoloring(
    system: &TripleSystem,
    classes: &[u8],
) -> Result<Bicoloring, ColoringError> {
    if classes.len() != system.n() {
        return Err(ColoringError::BadVertexColors(format!(
            "{} colors for {} vertices",
            classes.len(),
            system.n()
        )));
    }
    if let Some(v) = classes.iter().position(|c| !(1..=3).contains(c)) {
        return Err(ColoringError::BadVertexColors(format!(
            "vertex {v} has color {}",
            classes[v]
        )));
    }
    for (i, t) in system.triples().iter().enumerate() {
        let [x, y, z] = t.vertices().map(|v| classes[v]);
        if x == y && y == z {
            return Err(ColoringError::MonochromaticTriple(i));
        }
        if x != y && y != z && x != z {
            return Err(ColoringError::RainbowTriple(i));
        }
    }
    let mut sizes = [0; 3];
    for &c in classes {
        sizes[c as usize - 1] += 1;
    }
    sizes.sort_unstable();
    Ok(Bicoloring {
        classes: classes.to_vec(),
        sizes,
    })
}

/// First bicoloring in lexicographic order with vertex 0 colored 1.
///
/// All three classes must be used unless `n <= 3`. The three choices for
/// vertex 1 are searched in parallel and the lowest successful one wins.
pub fn bicoloring_search(system: &TripleSystem) -> Option<Bicoloring> {
    let n = system.n();
    if n == 0 {
        return None;
    }
    // Triples checked when their largest vertex gets colored.
    let mut closing: Vec<Vec<[usize; 2]>> = vec![Vec::new(); n];
    for t in system.triples() {
        let [a, b, c] = t.vertices();
        closing[c].push([a, b]);
    }
    let need_all = n > 3;
    let search = |first: u8| {
        let mut classes = vec![0u8; n];
        classes[0] = 1;
        if n == 1 {
            return (!need_all).then_some(classes);
        }
        classes[1] = first;
        if !fits(&closing, &classes, 1) {
            return None;
        }
        extend(&closing, &mut classes, 2, need_all).then_some(classes)
    };
    let starts: &[u8] = if n == 1 { &[1] } else { &[1, 2, 3] };
    let found: Vec<Option<Vec<u8>>> = starts.par_iter().map(|&c| search(c)).collect();
    let classes = found.into_iter().flatten().next()?;
    Some(verify_bicoloring(system, &classes).expect("search output is a bicoloring"))
}

fn fits(closing: &[Vec<[usize; 2]>], classes: &[u8], v: usize) -> bool {
    let c = classes[v];
    closing[v].iter().all(|&[a, b]| {
        let (x, y) = (classes[a], classes[b]);
        let mono = x == y && y == c;
        let rainbow = x != y && x != c && y != c;
        !mono && !rainbow
    })
}

fn extend(closing: &[Vec<[usize; 2]>], classes: &mut [u8], v: usize, need_all: bool) -> bool {
    let n = classes.len();
    if v == n {
        return !need_all || (1..=3).all(|c| classes.contains(&c));
    }
    if need_all {
        let missing = (1..=3u8).filter(|c| !classes[..v].contains(c)).count();
        if missing > n - v {
            return false;
        }
    }
    for c in 1..=3 {
        classes[v] = c;
        if fits(closing, classes, v) && extend(closing, classes, v + 1, need_all) {
            return true;
        }
    }
    classes[v] = 0;
    false
}

/// Turns a bicoloring with smallest class `a` into a 3-partite hole of size
/// `a` and the bound `n - a` on `mc_3`.
///
/// Each class keeps its `a` lowest vertices. A triple meeting all three parts
/// would be rainbow.
pub fn bicoloring_to_bound(
    bicoloring: &Bicoloring,
) -> Result<(HoleCertificate, usize), ColoringError> {
    let bound = bicoloring_bound_from_sizes(bicoloring.sizes)?;
    let a = bicoloring.sizes[0];
    let parts = (1..=3)
        .map(|c| bicoloring.class(c).into_iter().take(a).collect())
        .collect();
    Ok((HoleCertificate::from_parts(parts), bound))
}

/// `b + c` for class sizes `a <= b <= c`, given in any order.
pub fn bicoloring_bound_from_sizes(sizes: [usize; 3]) -> Result<usize, ColoringError> {
    let mut s = sizes;
    s.sort_unstable();
    if s[0] == 0 {
        return Err(ColoringError::EmptyClass);
    }
    Ok(s[1] + s[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fano, s9};

    /// Every vertex coloring with vertex 0 colored 1, in lexicographic order.
    fn brute_force(system: &TripleSystem) -> Option<Vec<u8>> {
        let n = system.n();
        let total = 3u32.pow(n as u32 - 1);
        (0..total).find_map(|code| {
            let mut classes = vec![1u8; n];
            let mut c = code;
            for v in (1..n).rev() {
                classes[v] = (c % 3) as u8 + 1;
                c /= 3;
            }
            let ok = verify_bicoloring(system, &classes).is_ok();
            let all = n <= 3 || (1..=3).all(|x| classes.contains(&x));
            (ok && all).then_some(classes)
        })
    }

    #[test]
    fn fano_matches_enumeration() {
        // The complement of a line contains no line, and the line itself is
        // split 2 + 1, so the plane is (1, 2, 4)-bicolorable.
        let f = fano();
        let expected = brute_force(&f).unwrap();
        assert_eq!(expected, vec![1, 1, 1, 2, 2, 1, 3]);
        let found = bicoloring_search(&f).unwrap();
        assert_eq!(found.classes, expected);
        assert_eq!(found.sizes, [1, 2, 4]);
    }

    #[test]
    fn s9_is_one_four_four() {
        let s = s9();
        let found = bicoloring_search(&s).unwrap();
        assert_eq!(found.sizes, [1, 4, 4]);
        assert_eq!(Some(found.classes.clone()), brute_force(&s));
        let (hole, bound) = bicoloring_to_bound(&found).unwrap();
        assert_eq!((hole.a, bound), (1, 8));
        assert_eq!(crate::hole::verify_hole(&s, &hole), Ok(true));
    }

    #[test]
    fn single_triple() {
        let s = TripleSystem::new(3, &[[0, 1, 2]]).unwrap();
        let found = bicoloring_search(&s).unwrap();
        assert_eq!(found.classes, vec![1, 1, 2]);
        assert_eq!(found.sizes, [0, 1, 2]);
        assert_eq!(bicoloring_to_bound(&found), Err(ColoringError::EmptyClass));
        assert_eq!(
            verify_bicoloring(&s, &[1, 2, 3]),
            Err(ColoringError::RainbowTriple(0))
        );
    }

    #[test]
    fn rejections() {
        let s = s9();
        assert_eq!(
            verify_bicoloring(&s, &[1; 9]),
            Err(ColoringError::MonochromaticTriple(0))
        );
        assert!(matches!(
            verify_bicoloring(&s, &[1; 8]),
            Err(ColoringError::BadVertexColors(_))
        ));
        assert!(matches!(
            verify_bicoloring(&s, &[0; 9]),
            Err(ColoringError::BadVertexColors(_))
        ));
    }

    #[test]
    fn size_arithmetic() {
        assert_eq!(bicoloring_bound_from_sizes([24, 24, 33]), Ok(57));
        assert_eq!(
            bicoloring_bound_from_sizes([4, 0, 5]),
            Err(ColoringError::EmptyClass)
        );
    }
}
