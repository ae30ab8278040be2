//! Exact QAOA expectations: a dense statevector simulator and a
//! Heisenberg-picture expansion for depth one.
//!
//! The phase separator is `exp(−iγ g)` and the mixer `exp(−iβ Σ_j X_j)`.

mod steiner;

pub use steiner::{has_four_cycle, steiner_2_4_25};

use crate::caps;
use crate::ensembles::XorSatInstance;
use crate::error::{invalid, Error, Result};
use crate::f2::{BitMatrix, BitVec};
use crate::objective::violation_table;
use crate::scalar::Real;
use num_complex::Complex;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Statevector after the layers `(γ_1, β_1), …` applied to `|+⟩ⁿ`.
pub fn qaoa_statevector<T: Real>(
    inst: &XorSatInstance,
    layers: &[(T, T)],
) -> Result<Vec<Complex<T>>> {
    let n = inst.n();
    caps::check_dense(
        "QAOA statevector",
        n,
        caps::STATEVECTOR_MAX_N,
        2 * std::mem::size_of::<T>() as u128 + 2,
    )?;
    let m = inst.m();
    let viol = violation_table(inst)?;
    let amp0 = T::lit(2f64.powf(-(n as f64) / 2.0));
    let mut psi = vec![Complex::new(amp0, T::zero()); 1usize << n];
    for &(gamma, beta) in layers {
        let phases: Vec<Complex<T>> = (0..=m)
            .map(|g| Complex::from_polar(T::one(), -gamma * T::count(g)))
            .collect();
        psi.par_iter_mut()
            .zip(viol.par_iter())
            .for_each(|(a, &w)| *a *= phases[m - w as usize]);
        let (cb, sb) = (beta.cos(), beta.sin());
        let off = Complex::new(T::zero(), -sb);
        for j in 0..n {
            let half = 1usize << j;
            psi.par_chunks_mut(2 * half).for_each(|block| {
                let (lo, hi) = block.split_at_mut(half);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = x * cb + y * off;
                    *b = x * off + y * cb;
                }
            });
        }
    }
    Ok(psi)
}

/// `⟨g⟩` of the QAOA state with the given layers.
pub fn qaoa_expectation<T: Real>(inst: &XorSatInstance, layers: &[(T, T)]) -> Result<T> {
    let psi = qaoa_statevector(inst, layers)?;
    let m = inst.m();
    let viol = violation_table(inst)?;
    // Serial sum in index order keeps the value independent of thread count.
    Ok(psi
        .par_iter()
        .zip(viol.par_iter())
        .map(|(a, &w)| a.norm_sqr() * T::count(m - w as usize))
        .collect::<Vec<T>>()
        .into_iter()
        .sum())
}

/// Largest coset of solutions enumerated per `(clause, T)` pair.
const COSET_MAX_DIM: usize = 24;

/// `⟨g⟩` at depth one as a function of the parities:
/// `⟨g⟩(v) = constant + Σ_terms coeff · (−1)^{v·mask}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Qaoa1Expansion<T> {
    pub m: usize,
    pub constant: T,
    pub terms: Vec<(BitVec, T)>,
}

impl<T: Real> Qaoa1Expansion<T> {
    /// `⟨g⟩` for parity vector `v`.
    pub fn expectation(&self, v: &BitVec) -> Result<T> {
        if v.len() != self.m {
            return Err(Error::DimensionMismatch {
                context: "parity vector",
                expected: self.m,
                got: v.len(),
            });
        }
        Ok(self.terms.iter().fold(
            self.constant,
            |acc, (mask, c)| {
                if mask.dot(v) {
                    acc - *c
                } else {
                    acc + *c
                }
            },
        ))
    }

    /// `E_v ⟨g⟩` for uniform `v`; only the empty mask survives.
    pub fn mean_over_parities(&self) -> T {
        self.constant
    }
}

/// Exact depth-one expansion for the constraint matrix `b`.
///
/// Conjugating `Z_S` by the mixer gives `Σ_{T⊆S} p^{k−t} q^t i^t Z_{S∖T} X_T Z_T`
/// with `p = cos 2β`, `q = sin 2β`. The phase separator turns `X_T` into
/// `X_T Π_{b∈N(T)} (c − is J_b Z_b)` where `N(T)` are the clauses meeting `T`
/// oddly. In `|+⟩ⁿ` only subsets `W ⊆ N(T)` whose supports XOR to `S` survive;
/// they form a coset of the kernel of the support matrix.
pub fn qaoa1_heisenberg<T: Real>(b: &BitMatrix, gamma: T, beta: T) -> Result<Qaoa1Expansion<T>> {
    let (m, n) = (b.rows(), b.cols());
    if m == 0 {
        return Err(invalid("no clauses"));
    }
    let (s, c) = (gamma.sin(), gamma.cos());
    let (p, q) = ((T::lit(2.0) * beta).cos(), (T::lit(2.0) * beta).sin());
    let i_pow = |e: usize| -> Complex<T> {
        match e % 4 {
            0 => Complex::new(T::one(), T::zero()),
            1 => Complex::new(T::zero(), T::one()),
            2 => Complex::new(-T::one(), T::zero()),
            _ => Complex::new(T::zero(), -T::one()),
        }
    };
    let rows = b.row_vecs();
    let mut acc: BTreeMap<BitVec, Complex<T>> = BTreeMap::new();
    for (a, row) in rows.iter().enumerate() {
        let support = row.support();
        let k = support.len();
        if k > 20 {
            return Err(invalid(format!("clause {a} has {k} variables")));
        }
        for t_code in 0u64..1 << k {
            let t_set = BitVec::from_support(n, &subset(&support, t_code))?;
            let t = t_set.weight();
            let lead = i_pow(t) * p.powi((k - t) as i32) * q.powi(t as i32);
            if lead == Complex::new(T::zero(), T::zero()) {
                continue;
            }
            let nbrs: Vec<usize> = (0..m)
                .filter(|&j| rows[j].and_weight(&t_set) % 2 == 1)
                .collect();
            // Columns are the supports of the neighbouring clauses.
            let sub = b.select_rows(&nbrs)?.transpose();
            let base = match sub.solve(row)? {
                Some(w) => w,
                None => continue,
            };
            let kernel = sub.kernel_basis();
            if kernel.len() > COSET_MAX_DIM {
                return Err(Error::CapExceeded {
                    what: "depth-one coset dimension",
                    requested: kernel.len() as u128,
                    cap: COSET_MAX_DIM as u128,
                });
            }
            let mut w = base;
            for step in 0u64..1 << kernel.len() {
                if step > 0 {
                    w ^= &kernel[step.trailing_zeros() as usize];
                }
                let size = w.weight();
                let coeff = lead
                    * Complex::new(c.powi((nbrs.len() - size) as i32), T::zero())
                    * Complex::new(T::zero(), -s).powi(size as i32);
                // J_a Π_{b∈W} J_b = (−1)^{v·mask}
                let mut mask = BitVec::zeros(m);
                mask.set(a, true);
                for j in w.ones_iter() {
                    mask.flip(nbrs[j]);
                }
                *acc.entry(mask)
                    .or_insert_with(|| Complex::new(T::zero(), T::zero())) += coeff;
            }
        }
    }

    let half = T::lit(0.5);
    let tol = T::lit(1e-9).max(T::epsilon() * T::lit(1e3)) * T::count(m);
    let mut constant = T::count(m) * half;
    let mut terms = Vec::with_capacity(acc.len());
    for (mask, z) in acc {
        if z.im.abs() > tol {
            return Err(Error::OutOfDomain {
                context: "depth-one imaginary residue",
                value: z.im.as_f64(),
            });
        }
        if mask.is_zero() {
            constant += z.re * half;
        } else {
            terms.push((mask, z.re * half));
        }
    }
    Ok(Qaoa1Expansion { m, constant, terms })
}

fn subset(support: &[usize], code: u64) -> Vec<usize> {
    support
        .iter()
        .enumerate()
        .filter(|(i, _)| code >> i & 1 == 1)
        .map(|(_, &j)| j)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{sample_gallager, sample_instance};
    use crate::rng::stream;
    use crate::thresholds::qaoa1_formula;

    fn small() -> XorSatInstance {
        let h = sample_gallager(12, 3, 6, &mut stream(3)).unwrap();
        sample_instance(&h, &mut stream(4))
    }

    #[test]
    fn zero_angles_give_half_the_clauses() {
        let inst = small();
        let g = qaoa_expectation(&inst, &[(0.0f64, 0.4)]).unwrap();
        assert!((g - inst.m() as f64 / 2.0).abs() < 1e-12);
        let g = qaoa_expectation(&inst, &[(0.7f64, 0.0)]).unwrap();
        assert!((g - inst.m() as f64 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn statevector_stays_normalized() {
        let psi = qaoa_statevector(&small(), &[(0.3f64, 0.2), (0.5, 0.1)]).unwrap();
        let norm: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn heisenberg_matches_statevector() {
        let inst = small();
        for (gamma, beta) in [(0.3f64, 0.2), (1.1, -0.4), (2.0, 0.9)] {
            let exp = qaoa1_heisenberg(inst.b(), gamma, beta).unwrap();
            for seed in 0..4 {
                let v = crate::ensembles::sample_instance(&inst.b().transpose(), &mut stream(seed))
                    .v()
                    .clone();
                let dense =
                    qaoa_expectation(&inst.with_parity(v.clone()).unwrap(), &[(gamma, beta)])
                        .unwrap();
                assert!((exp.expectation(&v).unwrap() - dense).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn parity_average_on_steiner_uses_one_less_power() {
        // On a design without 4-cycles the average over v is the closed form
        // with c raised to d − 1 rather than k·λ.
        let b = steiner_2_4_25();
        let (gamma, beta) = (0.3f64, 0.2);
        let exp = qaoa1_heisenberg(&b, gamma, beta).unwrap();
        let got = exp.mean_over_parities() / 50.0;
        let (s, c) = (gamma.sin(), gamma.cos());
        let (p, q) = ((2.0 * beta).cos(), (2.0 * beta).sin());
        let cd = c.powi(7);
        let alt = 0.5
            - (Complex::new(0.0, s / 4.0)
                * (Complex::new(p, q * cd).powi(4) - Complex::new(p, -q * cd).powi(4)))
            .re;
        assert!((got - alt).abs() < 1e-12, "{got} vs {alt}");
        assert!((got - qaoa1_formula(4, 2.0, gamma, beta).unwrap()).abs() > 1e-6);
    }
}
