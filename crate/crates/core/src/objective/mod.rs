//! Objective values, exhaustive maximization, solution counting and the
//! k-minimum Hamming semimetric.

pub(crate) mod sweep;

use crate::caps;
use crate::ensembles::XorSatInstance;
use crate::error::{invalid, Error, Result};
use crate::f2::BitVec;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use sweep::lex_key;

pub(crate) use sweep::violation_table;

/// Slack for comparing an integer count with a real threshold such as `μm`.
pub(crate) const COUNT_SLACK: f64 = 1e-9;

/// `|Bz ⊕ v|`.
pub fn violated(inst: &XorSatInstance, z: &BitVec) -> Result<usize> {
    if z.len() != inst.n() {
        return Err(Error::DimensionMismatch {
            context: "assignment",
            expected: inst.n(),
            got: z.len(),
        });
    }
    let bz = inst.b().mat_vec_mul(z)?;
    Ok(bz.hamming(inst.v()))
}

/// `g(z) = m − |Bz ⊕ v|`.
pub fn g_value(inst: &XorSatInstance, z: &BitVec) -> Result<usize> {
    Ok(inst.m() - violated(inst, z)?)
}

/// `f(z) = m − 2|Bz ⊕ v| = 2g(z) − m`.
pub fn f_value(inst: &XorSatInstance, z: &BitVec) -> Result<i64> {
    Ok(inst.m() as i64 - 2 * violated(inst, z)? as i64)
}

/// Largest integer `j` with `j ≤ (1−θ)m`.
pub(crate) fn max_violations(theta: f64, m: usize) -> Option<usize> {
    let bound = (1.0 - theta) * m as f64 + COUNT_SLACK;
    (bound >= 0.0).then(|| (bound.floor() as usize).min(m))
}

/// Smallest integer `g` with `g ≥ μm`.
pub(crate) fn min_satisfied(mu: f64, m: usize) -> usize {
    (mu * m as f64 - COUNT_SLACK).ceil().max(0.0) as usize
}

fn check_theta(theta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&theta) {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            context: "theta",
            value: theta,
        })
    }
}

/// Exhaustive maximum of `g` and the lexicographically smallest maximizer
/// (entry 0 most significant).
pub fn brute_force_max(inst: &XorSatInstance) -> Result<(BitVec, usize)> {
    caps::check_n(
        "variables for brute force",
        inst.n(),
        caps::BRUTE_FORCE_MAX_N,
    )?;
    let n = inst.n();
    let better =
        |a: (u32, u64, u64), b: (u32, u64, u64)| if (b.0, b.1) < (a.0, a.1) { b } else { a };
    let (viol, _, z) = sweep::fold(
        inst,
        || (u32::MAX, u64::MAX, 0u64),
        |acc, z, viol| {
            if viol <= acc.0 {
                *acc = better(*acc, (viol, lex_key(z, n), z));
            }
        },
        better,
    )?;
    Ok((BitVec::from_u64(n, z), inst.m() - viol as usize))
}

/// `N_θ = |{z : |Bz ⊕ v| ≤ (1−θ)m}|`.
pub fn count_above(inst: &XorSatInstance, theta: f64) -> Result<u64> {
    check_theta(theta)?;
    caps::check_n("variables for counting", inst.n(), caps::BRUTE_FORCE_MAX_N)?;
    let Some(limit) = max_violations(theta, inst.m()) else {
        return Ok(0);
    };
    let limit = limit as u32;
    sweep::fold(
        inst,
        || 0u64,
        |acc, _, viol| {
            if viol <= limit {
                *acc += 1;
            }
        },
        |a, b| a + b,
    )
}

/// Histogram of `|Bz ⊕ v|` over all `z`.
pub fn violation_spectrum(inst: &XorSatInstance) -> Result<Vec<u64>> {
    caps::check_n("variables for counting", inst.n(), caps::BRUTE_FORCE_MAX_N)?;
    let m = inst.m();
    sweep::fold(
        inst,
        || vec![0u64; m + 1],
        |acc, _, viol| acc[viol as usize] += 1,
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    )
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    c
}

/// `E N_θ = 2ⁿ · P[Bin(m, 1/2) ≤ (1−θ)m]` as an exact rational.
pub fn expected_count_exact(n: usize, m: usize, theta: f64) -> Result<BigRational> {
    check_theta(theta)?;
    let Some(limit) = max_violations(theta, m) else {
        return Ok(BigRational::zero());
    };
    let tail: BigUint = (0..=limit).map(|j| binomial(m, j)).sum();
    let num = tail << n;
    let den = BigUint::one() << m;
    Ok(BigRational::new(num.into(), den.into()))
}

/// Floating value of [`expected_count_exact`].
pub fn expected_count_formula(n: usize, m: usize, theta: f64) -> Result<f64> {
    Ok(expected_count_exact(n, m, theta)?
        .to_f64()
        .unwrap_or(f64::INFINITY))
}

fn block_len(n: usize, k: usize) -> Result<usize> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(invalid(format!("d_k needs k | n, got n = {n}, k = {k}")));
    }
    Ok(n / k)
}

/// `d_k(z, z′) = Σ_i min(w_i, n/k − w_i)` over the `k` consecutive blocks of `z ⊕ z′`.
pub fn dk_semimetric(z: &BitVec, zp: &BitVec, k: usize) -> Result<usize> {
    if z.len() != zp.len() {
        return Err(Error::DimensionMismatch {
            context: "d_k operands",
            expected: z.len(),
            got: zp.len(),
        });
    }
    let b = block_len(z.len(), k)?;
    let x = z ^ zp;
    Ok((0..k)
        .map(|i| {
            let w = x.range_weight(i * b, (i + 1) * b);
            w.min(b - w)
        })
        .sum())
}

/// `d_k(z, z′) ≤ d_k(z, z″) + d_H(z′, z″)`.
pub fn dk_relaxed_triangle_check(z: &BitVec, zp: &BitVec, zpp: &BitVec, k: usize) -> Result<bool> {
    let lhs = dk_semimetric(z, zp, k)?;
    let rhs = dk_semimetric(z, zpp, k)? + zp.hamming(zpp);
    Ok(lhs <= rhs)
}

/// `d_k` on packed codes; `block` is `n/k`.
#[inline]
pub(crate) fn dk_codes(x: u64, y: u64, k: usize, block: usize) -> usize {
    let diff = x ^ y;
    let mask = if block >= 64 { !0 } else { (1u64 << block) - 1 };
    (0..k)
        .map(|i| {
            let w = ((diff >> (i * block)) & mask).count_ones() as usize;
            w.min(block - w)
        })
        .sum()
}

/// All `z` with `g(z) ≥ μm`, sorted by code.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    pub mu: f64,
    pub m: usize,
    pub n: usize,
    /// Integer form of the threshold: members have `g ≥ min_satisfied`.
    pub min_satisfied: usize,
    codes: Vec<u64>,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Members packed as codes, bit `i` is entry `i`.
    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    pub fn members(&self) -> Vec<BitVec> {
        self.codes
            .iter()
            .map(|&c| BitVec::from_u64(self.n, c))
            .collect()
    }

    pub fn contains(&self, z: &BitVec) -> bool {
        z.len() == self.n && self.codes.binary_search(&z.to_u64()).is_ok()
    }
}

pub fn enumerate_solutions(inst: &XorSatInstance, mu: f64) -> Result<SolutionSet> {
    caps::check_n(
        "variables for solution enumeration",
        inst.n(),
        caps::ENUMERATE_MAX_N,
    )?;
    if !(mu >= 0.0) {
        return Err(Error::OutOfDomain {
            context: "mu",
            value: mu,
        });
    }
    let m = inst.m();
    let need = min_satisfied(mu, m);
    let mut codes = if need > m {
        Vec::new()
    } else {
        let limit = (m - need) as u32;
        sweep::fold(
            inst,
            Vec::new,
            |acc, z, viol| {
                if viol <= limit {
                    acc.push(z);
                }
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        )?
    };
    codes.sort_unstable();
    Ok(SolutionSet {
        mu,
        m,
        n: inst.n(),
        min_satisfied: need,
        codes,
    })
}
