//! Partite holes: `k` disjoint equal-size vertex sets such that no triple
//! meets all `k` of them.

use serde::{Deserialize, Serialize};

use crate::system::{SystemError, TripleSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoleCertificate {
    pub k: usize,
    pub a: usize,
    pub parts: Vec<Vec<usize>>,
}

impl HoleCertificate {
    /// Takes `k` and `a` from the parts themselves; each part is sorted.
    pub fn from_parts(mut parts: Vec<Vec<usize>>) -> Self {
        for p in &mut parts {
            p.sort_unstable();
        }
        let a = parts.first().map_or(0, Vec::len);
        HoleCertificate {
            k: parts.len(),
            a,
            parts,
        }
    }

    /// Which part a vertex belongs to, if any.
    pub fn part_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; n];
        for (i, p) in self.parts.iter().enumerate() {
            for &v in p {
                if v < n {
                    owner[v] = Some(i);
                }
            }
        }
        owner
    }
}

/// True iff no triple of `system` meets all parts of `hole`.
///
/// Overlapping parts, parts of the wrong size and out-of-range vertices are
/// reported as [`SystemError::MalformedCertificate`].
pub fn verify_hole(system: &TripleSystem, hole: &HoleCertificate) -> Result<bool, SystemError> {
    let n = system.n();
    if hole.k == 0 || hole.parts.len() != hole.k {
        return Err(SystemError::MalformedCertificate(format!(
            "expected {} parts, found {}",
            hole.k,
            hole.parts.len()
        )));
    }
    let mut owner = vec![usize::MAX; n];
    for (i, part) in hole.parts.iter().enumerate() {
        if part.len() != hole.a {
            return Err(SystemError::MalformedCertificate(format!(
                "part {i} has {} vertices, expected {}",
                part.len(),
                hole.a
            )));
        }
        for &v in part {
            if v >= n {
                return Err(SystemError::MalformedCertificate(format!(
                    "vertex {v} out of range for n = {n}"
                )));
            }
            if owner[v] != usize::MAX {
                return Err(SystemError::MalformedCertificate(format!(
                    "vertex {v} lies in parts {} and {i}",
                    owner[v]
                )));
            }
            owner[v] = i;
        }
    }
    // A triple can meet at most three parts.
    if hole.k > 3 || hole.a == 0 {
        return Ok(true);
    }
    let hits_all = system.triples().iter().any(|t| {
        let mut seen = 0u8;
        for v in t.vertices() {
            if owner[v] != usize::MAX {
                seen |= 1 << owner[v];
            }
        }
        seen.count_ones() as usize == hole.k
    });
    Ok(!hits_all)
}
