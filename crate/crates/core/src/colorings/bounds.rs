use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::ColoringError;

/// Closed-form bounds on `mc_3` and `α*_3` for a Steiner system of order `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormBounds {
    pub n: usize,
    /// `⌈2n/3⌉ + 1`, a lower bound on `mc_3`.
    pub gyarfas: usize,
    /// `⌊n/3⌋ - 1`, an upper bound on `α*_3`.
    pub alpha_upper: usize,
    /// `n - a`, an upper bound on `mc_3` given a hole of size `a`.
    pub hole_upper: Option<usize>,
    /// `n - 2a`, a lower bound on `mc_3` when `a = α*_3`.
    pub hole_lower: Option<usize>,
    /// `n/2 + (n/6)·sqrt(1 + 8/n)`.
    pub z2: f64,
    /// Whether `z2 > (2n+1)/3`, decided in integers: it reduces to
    /// `n² + 8n > (n + 2)²`.
    pub z2_exceeds: bool,
}

pub fn closed_form_bounds(n: usize, alpha_star3: Option<usize>) -> ClosedFormBounds {
    let nf = n as f64;
    let wide = n as u128;
    ClosedFormBounds {
        n,
        gyarfas: (2 * n).div_ceil(3) + 1,
        alpha_upper: (n / 3).saturating_sub(1),
        hole_upper: alpha_star3.map(|a| n.saturating_sub(a)),
        hole_lower: alpha_star3.map(|a| n.saturating_sub(2 * a)),
        z2: nf / 2.0 + nf / 6.0 * (1.0 + 8.0 / nf).sqrt(),
        z2_exceeds: wide * wide + 8 * wide > (wide + 2) * (wide + 2),
    }
}

/// Class sizes of the product of an `(a,b,c)`- and an `(x,y,z)`-bicolorable
/// system: `(ay+bz+cx, az+bx+cy, ax+by+cz)`. The first triple must have its
/// largest class last with `c <= a + b`.
pub fn cdr_product(first: [u64; 3], second: [u64; 3]) -> Result<[u64; 3], ColoringError> {
    let [a, b, c] = first;
    if c < a || c < b || c > a + b {
        return Err(ColoringError::ProductShape(first));
    }
    let [x, y, z] = second;
    Ok([
        a * y + b * z + c * x,
        a * z + b * x + c * y,
        a * x + b * y + c * z,
    ])
}

/// One step of the `(M, M, N)` sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdrTerm {
    pub k: usize,
    pub m: BigUint,
    pub n: BigUint,
    /// `m / n`, exact.
    pub ratio: BigRational,
}

/// `M_0 = 24`, `N_0 = 33`, `M_k = M² + 2MN`, `N_k = 2M² + N²`.
pub fn cdr_sequence(k_max: usize) -> Vec<CdrTerm> {
    let mut m = BigUint::from(24u32);
    let mut n = BigUint::from(33u32);
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        if k > 0 {
            let next_m = &m * &m + BigUint::from(2u32) * &m * &n;
            let next_n = BigUint::from(2u32) * &m * &m + &n * &n;
            m = next_m;
            n = next_n;
        }
        let ratio = BigRational::new(m.clone().into(), n.clone().into());
        out.push(CdrTerm {
            k,
            m: m.clone(),
            n: n.clone(),
            ratio,
        });
    }
    out
}
