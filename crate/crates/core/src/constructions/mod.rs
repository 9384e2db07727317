//! Explicit Steiner triple systems: the Fano plane, the affine plane of
//! order 3, and the Bose and Skolem quasigroup constructions.
//!
//! Vertex encodings are fixed so certificates and colorings stay portable:
//!
//! * Bose (`n = 6k+3`): `(a, i) -> 3a + i` for `a < 2k+1`, `i < 3`.
//! * Skolem (`n = 6k+1`): `∞ -> 0`, `(a, i) -> 1 + 3a + i` for `a < 2k`, `i < 3`.

mod quasigroup;

use std::collections::HashMap;

use thiserror::Error;

pub use quasigroup::{
    half_idempotent_quasigroup, idempotent_quasigroup, random_idempotent_quasigroup, Quasigroup,
};

use crate::system::{
    validate_steiner, Construction, SteinerSystem, SystemError, Triple, TripleSystem, TripleType,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("order {0} is even; an odd order is required")]
    EvenOrder(usize),
    #[error("order {0} is odd; an even order is required")]
    OddOrder(usize),
    #[error("not a latin square: {0}")]
    NotLatin(String),
    #[error("no {construction} system on {n} vertices")]
    BadOrder {
        construction: &'static str,
        n: usize,
    },
    #[error("quasigroup has order {got}, expected {expected}")]
    QuasigroupOrder { expected: usize, got: usize },
    #[error("the Bose construction needs a commutative idempotent quasigroup")]
    NonIdempotentQuasigroup,
    #[error("the Skolem construction needs a commutative half-idempotent quasigroup")]
    NonHalfIdempotentQuasigroup,
    #[error("construction produced an invalid system: {0}")]
    Invalid(#[from] SystemError),
}

pub fn bose_vertex(a: usize, i: usize) -> usize {
    3 * a + i
}

pub fn bose_coords(v: usize) -> (usize, usize) {
    (v / 3, v % 3)
}

pub const SKOLEM_INFINITY: usize = 0;

pub fn skolem_vertex(a: usize, i: usize) -> usize {
    1 + 3 * a + i
}

/// `None` for the point at infinity.
pub fn skolem_coords(v: usize) -> Option<(usize, usize)> {
    (v != SKOLEM_INFINITY).then(|| ((v - 1) / 3, (v - 1) % 3))
}

fn finish(
    n: usize,
    triples: Vec<Triple>,
    labels: Vec<TripleType>,
    construction: Construction,
) -> Result<SteinerSystem, ConstructionError> {
    let system = TripleSystem::from_triples(n, triples)?;
    Ok(validate_steiner(system)?.with_provenance(construction, Some(labels)))
}

/// Bose system on `n = 6k+3 >= 9` vertices over `(a+b)/2` in `Z_{2k+1}`.
pub fn bose(n: usize) -> Result<SteinerSystem, ConstructionError> {
    if n % 6 != 3 || n < 9 {
        return Err(ConstructionError::BadOrder {
            construction: "Bose",
            n,
        });
    }
    bose_with(n, &idempotent_quasigroup(n / 3)?)
}

pub fn bose_with(n: usize, quasigroup: &Quasigroup) -> Result<SteinerSystem, ConstructionError> {
    if n % 6 != 3 || n < 9 {
        return Err(ConstructionError::BadOrder {
            construction: "Bose",
            n,
        });
    }
    let q = n / 3;
    if quasigroup.order() != q {
        return Err(ConstructionError::QuasigroupOrder {
            expected: q,
            got: quasigroup.order(),
        });
    }
    if !(quasigroup.is_commutative() && quasigroup.is_idempotent()) {
        return Err(ConstructionError::NonIdempotentQuasigroup);
    }
    let mut triples = Vec::with_capacity(n * (n - 1) / 6);
    let mut labels = Vec::with_capacity(triples.capacity());
    for a in 0..q {
        triples.push(tri(bose_vertex(a, 0), bose_vertex(a, 1), bose_vertex(a, 2)));
        labels.push(TripleType::Type1);
    }
    for i in 0..3 {
        for a in 0..q {
            for b in a + 1..q {
                let c = quasigroup.op(a, b);
                triples.push(tri(
                    bose_vertex(a, i),
                    bose_vertex(b, i),
                    bose_vertex(c, (i + 1) % 3),
                ));
                labels.push(TripleType::Type2);
            }
        }
    }
    finish(n, triples, labels, Construction::Bose)
}

/// Skolem system on `n = 6k+1 >= 7` vertices over the cyclic half-idempotent
/// quasigroup of order `2k`.
pub fn skolem(n: usize) -> Result<SteinerSystem, ConstructionError> {
    if n % 6 != 1 || n < 7 {
        return Err(ConstructionError::BadOrder {
            construction: "Skolem",
            n,
        });
    }
    skolem_with(n, &half_idempotent_quasigroup(2 * (n / 6))?)
}

pub fn skolem_with(n: usize, quasigroup: &Quasigroup) -> Result<SteinerSystem, ConstructionError> {
    if n % 6 != 1 || n < 7 {
        return Err(ConstructionError::BadOrder {
            construction: "Skolem",
            n,
        });
    }
    let k = n / 6;
    let q = 2 * k;
    if quasigroup.order() != q {
        return Err(ConstructionError::QuasigroupOrder {
            expected: q,
            got: quasigroup.order(),
        });
    }
    if !(quasigroup.is_commutative() && quasigroup.is_half_idempotent()) {
        return Err(ConstructionError::NonHalfIdempotentQuasigroup);
    }
    let mut triples = Vec::with_capacity(n * (n - 1) / 6);
    let mut labels = Vec::with_capacity(triples.capacity());
    for a in 0..k {
        triples.push(tri(
            skolem_vertex(a, 0),
            skolem_vertex(a, 1),
            skolem_vertex(a, 2),
        ));
        labels.push(TripleType::Type1);
    }
    for a in 0..k {
        for i in 0..3 {
            triples.push(tri(
                SKOLEM_INFINITY,
                skolem_vertex(k + a, i),
                skolem_vertex(a, (i + 1) % 3),
            ));
            labels.push(TripleType::Type2);
        }
    }
    for i in 0..3 {
        for a in 0..q {
            for b in a + 1..q {
                let c = quasigroup.op(a, b);
                triples.push(tri(
                    skolem_vertex(a, i),
                    skolem_vertex(b, i),
                    skolem_vertex(c, (i + 1) % 3),
                ));
                labels.push(TripleType::Type3);
            }
        }
    }
    finish(n, triples, labels, Construction::Skolem)
}

fn tri(a: usize, b: usize, c: usize) -> Triple {
    Triple::new(a, b, c).expect("construction triples have distinct vertices")
}

/// The Fano plane: lines `{i, i+1, i+3} mod 7`.
pub fn fano() -> SteinerSystem {
    let triples = (0..7).map(|i| tri(i, (i + 1) % 7, (i + 3) % 7)).collect();
    let system = TripleSystem::from_triples(7, triples).expect("Fano lines are distinct");
    validate_steiner(system)
        .expect("Fano plane is Steiner")
        .with_provenance(Construction::Fano, None)
}

/// The affine plane AG(2,3); point `(x, y)` is vertex `3x + y`.
pub fn s9() -> SteinerSystem {
    let mut triples: Vec<Triple> = Vec::with_capacity(12);
    for (dx, dy) in [(0, 1), (1, 0), (1, 1), (1, 2)] {
        for p in 0..9 {
            let (x, y) = (p / 3, p % 3);
            let pt = |s: usize| 3 * ((x + s * dx) % 3) + (y + s * dy) % 3;
            let line = tri(pt(0), pt(1), pt(2));
            if !triples.contains(&line) {
                triples.push(line);
            }
        }
    }
    let system = TripleSystem::from_triples(9, triples).expect("affine lines are distinct");
    validate_steiner(system)
        .expect("AG(2,3) is Steiner")
        .with_provenance(Construction::AffinePlane, None)
}

/// Recovers construction labels for a system read back from a file.
///
/// A system is recognized as Bose (resp. Skolem) when its triples are exactly
/// the output of that construction, in the fixed vertex encoding, for the
/// quasigroup read off its own triples. Systems that already carry labels are
/// returned unchanged.
pub fn recognize(system: SteinerSystem) -> SteinerSystem {
    if system.labels().is_some() {
        return system;
    }
    let n = system.n();
    if let Some(labels) = recognize_bose(&system) {
        return system.with_provenance(Construction::Bose, Some(labels));
    }
    if let Some(labels) = recognize_skolem(&system) {
        return system.with_provenance(Construction::Skolem, Some(labels));
    }
    let same_as = |other: &SteinerSystem| {
        let mut x = other.triples().to_vec();
        let mut y = system.triples().to_vec();
        x.sort_unstable();
        y.sort_unstable();
        x == y
    };
    if n == 7 && same_as(&fano()) {
        return system.with_provenance(Construction::Fano, None);
    }
    if n == 9 && same_as(&s9()) {
        return system.with_provenance(Construction::AffinePlane, None);
    }
    system
}

fn match_labels(system: &TripleSystem, rebuilt: &SteinerSystem) -> Option<Vec<TripleType>> {
    let labels = rebuilt.labels()?;
    let lookup: HashMap<Triple, TripleType> = rebuilt
        .triples()
        .iter()
        .copied()
        .zip(labels.iter().copied())
        .collect();
    system
        .triples()
        .iter()
        .map(|t| lookup.get(t).copied())
        .collect()
}

fn recognize_bose(system: &SteinerSystem) -> Option<Vec<TripleType>> {
    let n = system.n();
    if n % 6 != 3 || n < 9 {
        return None;
    }
    let q = n / 3;
    let mut table = vec![usize::MAX; q * q];
    for a in 0..q {
        table[a * q + a] = a;
        for b in a + 1..q {
            let c = system.third_vertex(bose_vertex(a, 0), bose_vertex(b, 0))?;
            let (c, layer) = bose_coords(c);
            if layer != 1 {
                return None;
            }
            table[a * q + b] = c;
            table[b * q + a] = c;
        }
    }
    let quasigroup = Quasigroup::from_table(q, table).ok()?;
    let rebuilt = bose_with(n, &quasigroup).ok()?;
    match_labels(system, &rebuilt)
}

fn recognize_skolem(system: &SteinerSystem) -> Option<Vec<TripleType>> {
    let n = system.n();
    if n % 6 != 1 || n < 7 {
        return None;
    }
    let k = n / 6;
    let q = 2 * k;
    let mut table = vec![usize::MAX; q * q];
    for a in 0..q {
        table[a * q + a] = a % k;
        for b in a + 1..q {
            let c = system.third_vertex(skolem_vertex(a, 0), skolem_vertex(b, 0))?;
            let (c, layer) = skolem_coords(c)?;
            if layer != 1 {
                return None;
            }
            table[a * q + b] = c;
            table[b * q + a] = c;
        }
    }
    let quasigroup = Quasigroup::from_table(q, table).ok()?;
    let rebuilt = skolem_with(n, &quasigroup).ok()?;
    match_labels(system, &rebuilt)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(labels: &[TripleType], ty: TripleType) -> usize {
        labels.iter().filter(|&&l| l == ty).count()
    }

    #[test]
    fn bose_small_orders() {
        let s = bose(9).unwrap();
        assert_eq!((s.n(), s.len()), (9, 12));
        let s = bose(15).unwrap();
        assert_eq!(s.len(), 35);
        let labels = s.labels().unwrap();
        assert_eq!(count(labels, TripleType::Type1), 5);
        assert_eq!(count(labels, TripleType::Type2), 30);
        assert!(matches!(
            bose(13),
            Err(ConstructionError::BadOrder { n: 13, .. })
        ));
        assert!(matches!(
            bose(3),
            Err(ConstructionError::BadOrder { n: 3, .. })
        ));
    }

    #[test]
    fn skolem_small_orders() {
        let s = skolem(7).unwrap();
        assert_eq!(s.len(), 7);
        let s = skolem(19).unwrap();
        assert_eq!(s.len(), 57);
        let labels = s.labels().unwrap();
        assert_eq!(count(labels, TripleType::Type1), 3);
        assert_eq!(count(labels, TripleType::Type2), 9);
        assert_eq!(count(labels, TripleType::Type3), 45);
        assert!(matches!(
            skolem(9),
            Err(ConstructionError::BadOrder { n: 9, .. })
        ));
    }

    #[test]
    fn bose_rejects_wrong_quasigroups() {
        let even = half_idempotent_quasigroup(4).unwrap();
        assert!(matches!(
            bose_with(15, &even),
            Err(ConstructionError::QuasigroupOrder { .. })
        ));
        // Z_5 addition is commutative but not idempotent.
        let add =
            Quasigroup::from_table(5, (0..25).map(|i| (i / 5 + i % 5) % 5).collect()).unwrap();
        assert_eq!(
            bose_with(15, &add),
            Err(ConstructionError::NonIdempotentQuasigroup)
        );
        let idem = idempotent_quasigroup(3).unwrap();
        assert!(matches!(
            skolem_with(13, &idem),
            Err(ConstructionError::QuasigroupOrder { .. })
        ));
        let add4 =
            Quasigroup::from_table(4, (0..16).map(|i| (i / 4 + i % 4) % 4).collect()).unwrap();
        assert_eq!(
            skolem_with(13, &add4),
            Err(ConstructionError::NonHalfIdempotentQuasigroup)
        );
    }

    #[test]
    fn fixed_systems() {
        let f = fano();
        assert_eq!((f.n(), f.len(), f.pair_degree_min()), (7, 7, 1));
        let s = s9();
        assert_eq!((s.n(), s.len(), s.pair_degree_min()), (9, 12, 1));
    }

    #[test]
    fn recognition_round_trip() {
        for n in [9, 15, 27] {
            let s = bose(n).unwrap();
            let stripped = validate_steiner(s.system().clone()).unwrap();
            let back = recognize(stripped);
            assert_eq!(back.construction(), Construction::Bose);
            assert_eq!(back.labels(), s.labels());
        }
        for n in [7, 13, 19] {
            let s = skolem(n).unwrap();
            let back = recognize(validate_steiner(s.system().clone()).unwrap());
            assert_eq!(back.construction(), Construction::Skolem);
            assert_eq!(back.labels(), s.labels());
        }
        let f = recognize(validate_steiner(fano().system().clone()).unwrap());
        assert_eq!((f.construction(), f.labels()), (Construction::Fano, None));
        let a = recognize(validate_steiner(s9().system().clone()).unwrap());
        assert_eq!(a.construction(), Construction::AffinePlane);
    }

    #[test]
    fn relabeled_bose_is_not_recognized() {
        let s = bose(9).unwrap();
        let mut perm: Vec<usize> = (0..9).collect();
        perm.swap(0, 4);
        let moved = validate_steiner(s.relabeled(&perm)).unwrap();
        assert_eq!(recognize(moved).labels(), None);
    }
}
