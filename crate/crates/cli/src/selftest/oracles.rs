//! Deliberately naive reference computations. Nothing here shares code paths
//! with the library beyond instance accessors.

use num_bigint::BigInt;
use num_rational::BigRational;
use xorsat::{BitVec, XorSatInstance};

/// Satisfied clauses, entry by entry.
pub fn g(inst: &XorSatInstance, z: u64) -> usize {
    let b = inst.b();
    (0..inst.m())
        .filter(|&a| {
            let lhs = (0..inst.n())
                .filter(|&j| b.get(a, j) && z >> j & 1 == 1)
                .count()
                % 2
                == 1;
            lhs == inst.v().get(a)
        })
        .count()
}

/// Codes of all `z` with `g(z) ≥ μm`.
pub fn mu_good(inst: &XorSatInstance, mu: f64) -> Vec<u64> {
    let need = mu * inst.m() as f64 - 1e-9;
    (0u64..1 << inst.n())
        .filter(|&z| g(inst, z) as f64 >= need)
        .collect()
}

pub fn dk(x: u64, y: u64, n: usize, k: usize) -> usize {
    let b = n / k;
    (0..k)
        .map(|i| {
            let w = (i * b..(i + 1) * b)
                .filter(|&j| (x ^ y) >> j & 1 == 1)
                .count();
            w.min(b - w)
        })
        .sum()
}

/// Normalized `P(f(x))` amplitudes.
pub fn dqi_amplitudes(inst: &XorSatInstance, poly: &[f64]) -> Option<Vec<f64>> {
    let m = inst.m() as f64;
    let raw: Vec<f64> = (0u64..1 << inst.n())
        .map(|z| {
            let f = 2.0 * g(inst, z) as f64 - m;
            poly.iter().rev().fold(0.0, |acc, &a| acc * f + a)
        })
        .collect();
    let norm = raw.iter().map(|a| a * a).sum::<f64>().sqrt();
    (norm > 0.0).then(|| raw.iter().map(|a| a / norm).collect())
}

/// `Σ_{|y|=w} (−1)^{x·y}` with `x = 1^x 0^{m−x}`.
pub fn character_sum(m: usize, w: usize, x: usize) -> BigInt {
    let xv = (1u64 << x) - 1;
    let s: i64 = (0u64..1 << m)
        .filter(|y| y.count_ones() as usize == w)
        .map(|y| {
            if (y & xv).count_ones() % 2 == 1 {
                -1
            } else {
                1
            }
        })
        .sum();
    s.into()
}

/// `P[y_1 ⊕ ⋯ ⊕ y_r = 0]` by convolving uniform weight-`w_i` layers over all
/// of `F₂^m`.
pub fn xor_zero(m: usize, weights: &[usize]) -> BigRational {
    let mut dist = vec![0u128; 1 << m];
    dist[0] = 1;
    let mut total = 1u128;
    for &w in weights {
        let layer: Vec<usize> = (0usize..1 << m)
            .filter(|c| c.count_ones() as usize == w)
            .collect();
        let mut next = vec![0u128; 1 << m];
        for (code, &count) in dist.iter().enumerate() {
            if count == 0 {
                continue;
            }
            for &y in &layer {
                next[code ^ y] += count;
            }
        }
        dist = next;
        total *= layer.len() as u128;
    }
    BigRational::new(BigInt::from(dist[0]), BigInt::from(total))
}

/// `H·e` for a code given by rows.
pub fn syndrome(rows: &[BitVec], e: u64) -> BitVec {
    let bits: Vec<u8> = rows
        .iter()
        .map(|r| (r.ones_iter().filter(|&j| e >> j & 1 == 1).count() % 2) as u8)
        .collect();
    BitVec::from_bits(&bits)
}
