//! Finite quasigroups given by their multiplication tables.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ConstructionError;

/// A quasigroup of order `q`; `table[a * q + b] = a ∘ b`.
///
/// The flags are computed from the table, never taken on trust.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quasigroup {
    order: usize,
    table: Vec<usize>,
    commutative: bool,
    idempotent: bool,
    half_idempotent: bool,
}

impl Quasigroup {
    /// Checks that `table` is a latin square and derives the flags.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self, ConstructionError> {
        if table.len() != order * order {
            return Err(ConstructionError::NotLatin(format!(
                "table has {} cells, expected {}",
                table.len(),
                order * order
            )));
        }
        let q = order;
        for line in 0..q {
            let mut row_seen = vec![false; q];
            let mut col_seen = vec![false; q];
            for j in 0..q {
                let r = table[line * q + j];
                let c = table[j * q + line];
                if r >= q || c >= q {
                    return Err(ConstructionError::NotLatin(format!(
                        "symbol out of range in line {line}"
                    )));
                }
                if std::mem::replace(&mut row_seen[r], true) {
                    return Err(ConstructionError::NotLatin(format!(
                        "row {line} repeats {r}"
                    )));
                }
                if std::mem::replace(&mut col_seen[c], true) {
                    return Err(ConstructionError::NotLatin(format!(
                        "column {line} repeats {c}"
                    )));
                }
            }
        }
        let at = |a: usize, b: usize| table[a * q + b];
        let commutative = (0..q).all(|a| (a + 1..q).all(|b| at(a, b) == at(b, a)));
        let idempotent = (0..q).all(|a| at(a, a) == a);
        let half = q / 2;
        let half_idempotent = q.is_multiple_of(2)
            && q > 0
            && (0..half).all(|i| at(i, i) == i && at(half + i, half + i) == i);
        Ok(Quasigroup {
            order,
            table,
            commutative,
            idempotent,
            half_idempotent,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotent
    }

    pub fn is_half_idempotent(&self) -> bool {
        self.half_idempotent
    }
}

/// `a ∘ b = (a + b) / 2` in `Z_q`, i.e. `((q+1)/2 · (a+b)) mod q`.
pub fn idempotent_quasigroup(q: usize) -> Result<Quasigroup, ConstructionError> {
    if q.is_multiple_of(2) {
        return Err(ConstructionError::EvenOrder(q));
    }
    let half = q.div_ceil(2);
    let table = (0..q * q).map(|i| (half * (i / q + i % q)) % q).collect();
    Quasigroup::from_table(q, table)
}

/// `a ∘ b = δ((a + b) mod 2k)` with `δ(2j) = j` and `δ(2j+1) = k + j`.
pub fn half_idempotent_quasigroup(q: usize) -> Result<Quasigroup, ConstructionError> {
    if q % 2 == 1 || q == 0 {
        return Err(ConstructionError::OddOrder(q));
    }
    let k = q / 2;
    let delta = |s: usize| {
        if s.is_multiple_of(2) {
            s / 2
        } else {
            k + s / 2
        }
    };
    let table = (0..q * q).map(|i| delta((i / q + i % q) % q)).collect();
    Quasigroup::from_table(q, table)
}

/// A commutative idempotent quasigroup from a randomly relabeled
/// near-one-factorization of `K_q`.
///
/// The canonical factorization uses matchings `M_x = {{x+t, x-t} : 1 <= t <= (q-1)/2}`,
/// which miss exactly `x`. Vertices and symbols are shuffled with a
/// seed-derived permutation, every pair of `M_x` receives symbol `x`, the
/// diagonal receives the missed symbol, and finally symbols are renamed so
/// that the diagonal reads `0, 1, ..., q-1`.
pub fn random_idempotent_quasigroup(q: usize, seed: u64) -> Result<Quasigroup, ConstructionError> {
    if q.is_multiple_of(2) {
        return Err(ConstructionError::EvenOrder(q));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vertex: Vec<usize> = (0..q).collect();
    let mut symbol: Vec<usize> = (0..q).collect();
    vertex.shuffle(&mut rng);
    symbol.shuffle(&mut rng);

    let mut table = vec![usize::MAX; q * q];
    for x in 0..q {
        let s = symbol[x];
        let vx = vertex[x];
        table[vx * q + vx] = s;
        for t in 1..=(q - 1) / 2 {
            let i = vertex[(x + t) % q];
            let j = vertex[(x + q - t) % q];
            table[i * q + j] = s;
            table[j * q + i] = s;
        }
    }
    // The diagonal is a permutation of the symbols; rename each diagonal
    // symbol to its row index.
    let mut rename = vec![usize::MAX; q];
    for v in 0..q {
        rename[table[v * q + v]] = v;
    }
    debug_assert!(rename.iter().all(|&r| r != usize::MAX));
    for cell in &mut table {
        *cell = rename[*cell];
    }
    Quasigroup::from_table(q, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_three() {
        let g = idempotent_quasigroup(3).unwrap();
        assert_eq!(g.op(0, 1), 2);
        assert_eq!(
            (0..3).map(|a| g.op(a, a)).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        assert!(g.is_commutative() && g.is_idempotent() && !g.is_half_idempotent());
    }

    #[test]
    fn order_five_formula() {
        let g = idempotent_quasigroup(5).unwrap();
        assert_eq!(g.op(1, 2), 4);
        assert_eq!(g.row(0), &[0, 3, 1, 4, 2]);
        // Oracle: (a + b) / 2 is the unique x with 2x = a + b mod 5.
        for a in 0..5 {
            for b in 0..5 {
                let x = (0..5).find(|x| (2 * x) % 5 == (a + b) % 5).unwrap();
                assert_eq!(g.op(a, b), x);
            }
        }
    }

    #[test]
    fn parity_errors() {
        assert!(matches!(
            idempotent_quasigroup(4),
            Err(ConstructionError::EvenOrder(4))
        ));
        assert!(matches!(
            half_idempotent_quasigroup(3),
            Err(ConstructionError::OddOrder(3))
        ));
        assert!(matches!(
            random_idempotent_quasigroup(6, 1),
            Err(ConstructionError::EvenOrder(6))
        ));
    }

    #[test]
    fn half_idempotent_small() {
        let g = half_idempotent_quasigroup(2).unwrap();
        assert_eq!(g.table(), &[0, 1, 1, 0]);
        assert!(g.is_half_idempotent() && g.is_commutative());
        let g = half_idempotent_quasigroup(4).unwrap();
        assert_eq!(
            (0..4).map(|a| g.op(a, a)).collect::<Vec<_>>(),
            vec![0, 1, 0, 1]
        );
        assert!(g.is_half_idempotent() && g.is_commutative() && !g.is_idempotent());
    }

    #[test]
    fn random_order_three_is_forced() {
        let canonical = idempotent_quasigroup(3).unwrap();
        for seed in 0..10 {
            assert_eq!(random_idempotent_quasigroup(3, seed).unwrap(), canonical);
        }
    }

    #[test]
    fn random_is_deterministic_and_flagged() {
        let a = random_idempotent_quasigroup(7, 42).unwrap();
        let b = random_idempotent_quasigroup(7, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.is_commutative() && a.is_idempotent());
    }

    #[test]
    fn rejects_non_latin() {
        assert!(Quasigroup::from_table(2, vec![0, 0, 1, 1]).is_err());
        assert!(Quasigroup::from_table(2, vec![0, 1, 1]).is_err());
        assert!(Quasigroup::from_table(2, vec![0, 2, 1, 0]).is_err());
    }
}
