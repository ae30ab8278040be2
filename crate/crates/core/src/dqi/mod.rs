//! Exact desk-scale DQI states.
//!
//! A state over `n` qubits is a real vector indexed by the code of `x`
//! (bit `i` is entry `i`). Three constructions are provided and must agree:
//! the direct amplitude `P(f(x))`, the Hadamard transform of the syndrome-side
//! superposition, and a step-by-step simulation of the two-register pipeline.

mod optimal;
mod pipeline;

pub use crate::thresholds::semicircle_value;
pub use optimal::{dqi_optimal_coefficients, DqiOptimum};
pub use pipeline::dqi_pipeline_trace;

use crate::caps;
use crate::ensembles::XorSatInstance;
use crate::error::{invalid, Error, Result};
use crate::f2::{ball_size, for_each_subset, BitVec};
use crate::kravchuk::eval_poly;
use crate::kravchuk::{symmetric_expansion, KravchukContext};
use crate::objective::violation_table;
use crate::rng::Stream;
use crate::scalar::Real;
use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;

/// A degree-`ell` polynomial `P` with its Kravchuk expansion.
///
/// Invariants: `P(m − 2w) = Σ_k c_k K_k(w)` for all `w`, and
/// `w_coeffs[k] = c_k √C(m, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DqiPolynomial<T> {
    pub ell: usize,
    pub m: usize,
    /// `P(s) = Σ_j p_coeffs[j] s^j`
    pub p_coeffs: Vec<T>,
    pub c_coeffs: Vec<T>,
    pub w_coeffs: Vec<T>,
}

impl<T: Real> DqiPolynomial<T> {
    /// Expands `P` given by monomial coefficients in `s`.
    pub fn from_poly(p_coeffs: Vec<T>, m: usize, ell: usize) -> Result<Self> {
        let c_coeffs = symmetric_expansion(&p_coeffs, m, ell)?;
        let w_coeffs = weights_from_c(&c_coeffs, m);
        Ok(Self {
            ell,
            m,
            p_coeffs,
            c_coeffs,
            w_coeffs,
        })
    }

    /// Builds `P` from its expansion coefficients by interpolating at
    /// `s = m − 2w`, `w = 0..=ell`.
    pub fn from_c(c_coeffs: Vec<T>, m: usize) -> Result<Self> {
        if c_coeffs.is_empty() || c_coeffs.len() > m + 1 {
            return Err(invalid(format!(
                "need 1..={} expansion coefficients, got {}",
                m + 1,
                c_coeffs.len()
            )));
        }
        let ell = c_coeffs.len() - 1;
        let ctx = KravchukContext::new(m);
        let nodes: Vec<T> = (0..=ell)
            .map(|w| T::count(m) - T::lit(2.0) * T::count(w))
            .collect();
        let values = (0..=ell)
            .map(|w| {
                (0..=ell).try_fold(T::zero(), |acc, k| {
                    Ok::<T, Error>(acc + c_coeffs[k] * ctx.value::<T>(k, w)?)
                })
            })
            .collect::<Result<Vec<T>>>()?;
        let p_coeffs = newton_to_monomial(&nodes, &values);
        let w_coeffs = weights_from_c(&c_coeffs, m);
        Ok(Self {
            ell,
            m,
            p_coeffs,
            c_coeffs,
            w_coeffs,
        })
    }

    /// The preset with every `w_k` equal to one.
    pub fn uniform_w(m: usize, ell: usize) -> Result<Self> {
        if ell > m {
            return Err(invalid(format!("ell = {ell} exceeds m = {m}")));
        }
        let ctx = KravchukContext::new(m);
        let c = (0..=ell)
            .map(|k| {
                T::lit(ctx.binomial(k).to_f64().unwrap_or(f64::INFINITY))
                    .sqrt()
                    .recip()
            })
            .collect();
        Self::from_c(c, m)
    }

    /// `P(s)`.
    pub fn eval(&self, s: T) -> T {
        eval_poly(&self.p_coeffs, s)
    }
}

fn weights_from_c<T: Real>(c: &[T], m: usize) -> Vec<T> {
    let ctx = KravchukContext::new(m);
    c.iter()
        .enumerate()
        .map(|(k, &ck)| ck * T::lit(ctx.binomial(k).to_f64().unwrap_or(f64::INFINITY)).sqrt())
        .collect()
}

/// Monomial coefficients of the interpolant through `(nodes[i], values[i])`.
fn newton_to_monomial<T: Real>(nodes: &[T], values: &[T]) -> Vec<T> {
    let n = nodes.len();
    let mut dd = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - j]);
        }
    }
    // Horner on the Newton form, in monomial coefficients.
    let mut poly = vec![T::zero(); n];
    for i in (0..n).rev() {
        // poly = poly * (s − nodes[i]) + dd[i]
        let mut next = vec![T::zero(); n];
        for j in 0..n {
            if j + 1 < n {
                next[j + 1] += poly[j];
            }
            next[j] -= poly[j] * nodes[i];
        }
        next[0] += dd[i];
        poly = next;
    }
    poly
}

/// Normalized real amplitudes over `F₂ⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DqiState<T> {
    pub n: usize,
    pub amplitudes: Vec<T>,
}

impl<T: Real> DqiState<T> {
    /// Normalizes `amplitudes`; an all-zero vector is degenerate.
    pub fn from_unnormalized(n: usize, mut amplitudes: Vec<T>) -> Result<Self> {
        let norm = amplitudes.iter().map(|&a| a * a).sum::<T>().sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::Degenerate("all amplitudes vanish"));
        }
        amplitudes.par_iter_mut().for_each(|a| *a /= norm);
        Ok(Self { n, amplitudes })
    }

    pub fn norm_sq(&self) -> T {
        self.amplitudes.iter().map(|&a| a * a).sum()
    }

    pub fn probability(&self, x: u64) -> T {
        let a = self.amplitudes[x as usize];
        a * a
    }

    /// `max_x |a(x) − s·b(x)|` with the global sign `s` chosen so the
    /// largest-magnitude amplitude of `self` has the same sign in both.
    pub fn aligned_deviation(&self, other: &Self) -> Result<T> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                context: "state comparison",
                expected: self.n,
                got: other.n,
            });
        }
        let pivot = self
            .amplitudes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).expect("finite"))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let flip = (self.amplitudes[pivot] >= T::zero()) != (other.amplitudes[pivot] >= T::zero());
        let sign = if flip { -T::one() } else { T::one() };
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - sign * b).abs())))
    }
}

fn check_poly<T>(inst: &XorSatInstance, poly: &DqiPolynomial<T>) -> Result<()> {
    if poly.m != inst.m() {
        return Err(Error::DimensionMismatch {
            context: "polynomial length",
            expected: inst.m(),
            got: poly.m,
        });
    }
    Ok(())
}

/// Amplitude `P(f(x))/𝒩`.
pub fn dqi_state_direct<T: Real>(
    inst: &XorSatInstance,
    poly: &DqiPolynomial<T>,
) -> Result<DqiState<T>> {
    check_poly(inst, poly)?;
    caps::check_dense(
        "DQI register",
        inst.n(),
        caps::DQI_MAX_N,
        std::mem::size_of::<T>() as u128,
    )?;
    let m = inst.m();
    let by_violation: Vec<T> = (0..=m)
        .map(|w| poly.eval(T::count(m) - T::lit(2.0) * T::count(w)))
        .collect();
    let amps = violation_table(inst)?
        .par_iter()
        .map(|&w| by_violation[w as usize])
        .collect();
    DqiState::from_unnormalized(inst.n(), amps)
}

/// Hadamard transform of `Σ_{|y|≤ℓ} c_{|y|} (−1)^{v·y} |Bᵀy⟩`, normalized.
pub fn dqi_state_syndrome<T: Real>(
    inst: &XorSatInstance,
    poly: &DqiPolynomial<T>,
) -> Result<DqiState<T>> {
    check_poly(inst, poly)?;
    let n = inst.n();
    caps::check_dense(
        "DQI register",
        n,
        caps::DQI_MAX_N,
        std::mem::size_of::<T>() as u128,
    )?;
    let terms = ball_size(inst.m(), poly.ell);
    if terms > caps::decode_table_entries() {
        return Err(Error::CapExceeded {
            what: "syndrome-side terms",
            requested: terms,
            cap: caps::decode_table_entries(),
        });
    }
    let rows: Vec<u64> = inst.b().row_vecs().iter().map(BitVec::to_u64).collect();
    let v = inst.v();
    let mut amps = vec![T::zero(); 1usize << n];
    for (k, &ck) in poly.c_coeffs.iter().enumerate() {
        for_each_subset(inst.m(), k, |y| {
            let mut target = 0u64;
            let mut parity = false;
            for &i in y {
                target ^= rows[i];
                parity ^= v.get(i);
            }
            let slot = &mut amps[target as usize];
            if parity {
                *slot -= ck;
            } else {
                *slot += ck;
            }
            true
        });
    }
    walsh_hadamard(&mut amps);
    DqiState::from_unnormalized(n, amps)
}

/// `Σ_x a(x)² g(x)/m`.
pub fn dqi_expected_fraction<T: Real>(state: &DqiState<T>, inst: &XorSatInstance) -> Result<T> {
    if state.n != inst.n() {
        return Err(Error::DimensionMismatch {
            context: "state register",
            expected: inst.n(),
            got: state.n,
        });
    }
    let m = inst.m();
    let table = violation_table(inst)?;
    // Terms are gathered in index order and summed serially so the result
    // does not depend on how rayon splits the range.
    let total: T = state
        .amplitudes
        .par_iter()
        .zip(table.par_iter())
        .map(|(&a, &w)| a * a * T::count(m - w as usize))
        .collect::<Vec<T>>()
        .into_iter()
        .sum();
    Ok(total / T::count(m))
}

/// `shots` independent computational-basis samples.
pub fn sample_measurement<T: Real>(
    state: &DqiState<T>,
    shots: usize,
    rng: &mut Stream,
) -> Result<Vec<BitVec>> {
    if shots == 0 {
        return Err(invalid("need at least one shot"));
    }
    let mut cdf = Vec::with_capacity(state.amplitudes.len());
    let mut acc = 0.0f64;
    for &a in &state.amplitudes {
        acc += (a * a).as_f64();
        cdf.push(acc);
    }
    Ok((0..shots)
        .map(|_| {
            let u = rng.gen::<f64>() * acc;
            let x = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
            BitVec::from_u64(state.n, x as u64)
        })
        .collect())
}

/// Unnormalized in-place Walsh–Hadamard transform.
pub fn walsh_hadamard<T: Real>(a: &mut [T]) {
    let len = a.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, w) = (*x, *y);
                *x = u + w;
                *y = u - w;
            }
        }
        h *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{sample_gallager, sample_instance};
    use crate::f2::BitMatrix;
    use crate::rng::stream;

    fn gallager(seed: u64) -> XorSatInstance {
        let h = sample_gallager(12, 3, 6, &mut stream(seed)).unwrap();
        sample_instance(&h, &mut stream(seed ^ 0xff))
    }

    #[test]
    fn constant_polynomial_is_uniform() {
        let inst = gallager(1);
        let poly = DqiPolynomial::from_poly(vec![1.0f64], 12, 0).unwrap();
        let st = dqi_state_direct(&inst, &poly).unwrap();
        let want = 2f64.powf(-(inst.n() as f64) / 2.0);
        assert!(st.amplitudes.iter().all(|&a| (a - want).abs() < 1e-15));
        let syn = dqi_state_syndrome(&inst, &poly).unwrap();
        assert!(st.aligned_deviation(&syn).unwrap() < 1e-12);
    }

    #[test]
    fn linear_polynomial_routes_agree() {
        let inst = gallager(2);
        let poly = DqiPolynomial::from_poly(vec![0.3f64, 1.0], 12, 1).unwrap();
        let a = dqi_state_direct(&inst, &poly).unwrap();
        let b = dqi_state_syndrome(&inst, &poly).unwrap();
        assert!(a.aligned_deviation(&b).unwrap() < 1e-12);
        assert!((a.norm_sq() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn from_c_round_trips() {
        let p = DqiPolynomial::from_c(vec![0.5f64, -0.2, 0.1], 9).unwrap();
        let q = DqiPolynomial::from_poly(p.p_coeffs.clone(), 9, 2).unwrap();
        for (x, y) in p.c_coeffs.iter().zip(&q.c_coeffs) {
            assert!((x - y).abs() < 1e-12);
        }
        let u = DqiPolynomial::<f64>::uniform_w(6, 2).unwrap();
        assert!(u.w_coeffs.iter().all(|&w| (w - 1.0).abs() < 1e-12));
    }

    #[test]
    fn uniform_state_balances_every_clause() {
        let inst = gallager(3);
        let poly = DqiPolynomial::from_poly(vec![1.0f64], 12, 0).unwrap();
        let st = dqi_state_direct(&inst, &poly).unwrap();
        assert!((dqi_expected_fraction(&st, &inst).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_polynomial_is_an_error() {
        // P(s) = s − 2 vanishes at the only attained value f = 2.
        let inst =
            XorSatInstance::new(BitMatrix::from_dense(&[&[1, 0], &[0, 1]]), BitVec::zeros(2))
                .unwrap();
        let zero_b = XorSatInstance::new(BitMatrix::zeros(2, 2), BitVec::zeros(2)).unwrap();
        let poly = DqiPolynomial::from_poly(vec![-2.0f64, 1.0], 2, 1).unwrap();
        assert_eq!(
            dqi_state_direct(&zero_b, &poly),
            Err(Error::Degenerate("all amplitudes vanish"))
        );
        assert!(dqi_state_direct(&inst, &poly).is_ok());
    }

    #[test]
    fn deterministic_state_samples_constantly() {
        let st = DqiState::from_unnormalized(3, vec![0.0f64, 0.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0])
            .unwrap();
        let xs = sample_measurement(&st, 50, &mut stream(1)).unwrap();
        assert!(xs.iter().all(|x| x.to_u64() == 5));
    }

    #[test]
    fn hadamard_twice_scales_by_length() {
        let mut a = vec![1.0f64, 2.0, -1.0, 0.5];
        walsh_hadamard(&mut a);
        walsh_hadamard(&mut a);
        assert_eq!(a, vec![4.0, 8.0, -4.0, 2.0]);
    }
}
