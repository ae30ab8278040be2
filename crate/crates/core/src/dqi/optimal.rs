use super::DqiPolynomial;
use crate::caps;
use crate::ensembles::XorSatInstance;
use crate::error::{invalid, Error, Result};
use crate::objective::violation_spectrum;
use crate::scalar::Real;

/// Degree-`ell` polynomial maximizing the expected satisfied fraction.
#[derive(Debug, Clone, PartialEq)]
pub struct DqiOptimum<T> {
    pub poly: DqiPolynomial<T>,
    /// `⟨g⟩/m` of the optimal state.
    pub value: T,
}

const JACOBI_SWEEPS: usize = 100;
const POWER_STEPS: usize = 10_000;

/// Maximizes the Rayleigh quotient `Σ_x P(f(x))² g(x) / Σ_x P(f(x))²` over
/// `deg P ≤ ell`.
///
/// Both sums depend on `x` only through `|Bx ⊕ v|`, so the problem lives on
/// the violation spectrum. An orthonormal basis of polynomials in `t = s/m` is
/// built by modified Gram–Schmidt, then the largest eigenpair of the weighted
/// `g` matrix is taken. The sign is fixed so `P > 0` at the largest attained
/// `f`.
pub fn dqi_optimal_coefficients<T: Real>(
    inst: &XorSatInstance,
    ell: usize,
) -> Result<DqiOptimum<T>> {
    caps::check_n(
        "DQI optimization variables",
        inst.n(),
        caps::DQI_OPTIMAL_MAX_N,
    )?;
    let m = inst.m();
    if ell > m {
        return Err(invalid(format!("ell = {ell} exceeds m = {m}")));
    }
    let spectrum = violation_spectrum(inst)?;
    let total = T::count(spectrum.iter().sum::<u64>() as usize);
    // (weight, t, g/m) per attained violation count, largest f first.
    let points: Vec<(T, T, T)> = spectrum
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(w, &c)| {
            let t = (T::count(m) - T::lit(2.0) * T::count(w)) / T::count(m);
            (
                T::count(c as usize) / total,
                t,
                T::count(m - w) / T::count(m),
            )
        })
        .collect();
    if points.len() < ell + 1 {
        return Err(Error::Singular(
            "fewer attained objective values than coefficients",
        ));
    }
    let size = ell + 1;

    // basis[i][j]: coefficient of t^j in the i-th orthonormal polynomial.
    let eval = |coeffs: &[T], t: T| coeffs.iter().rev().fold(T::zero(), |acc, &a| acc * t + a);
    let inner = |a: &[T], b: &[T]| -> T {
        points
            .iter()
            .map(|&(wt, t, _)| wt * eval(a, t) * eval(b, t))
            .sum()
    };
    let mut basis: Vec<Vec<T>> = Vec::with_capacity(size);
    for j in 0..size {
        let mut q = vec![T::zero(); size];
        q[j] = T::one();
        let start = inner(&q, &q).sqrt();
        for _ in 0..2 {
            for b in &basis {
                let proj = inner(&q, b);
                for (qi, &bi) in q.iter_mut().zip(b) {
                    *qi -= proj * bi;
                }
            }
        }
        let norm = inner(&q, &q).sqrt();
        if !(norm > T::lit(1e-10).max(T::epsilon() * T::lit(1e3)) * start) {
            return Err(Error::Singular("polynomial basis"));
        }
        q.iter_mut().for_each(|a| *a /= norm);
        basis.push(q);
    }

    let g_matrix: Vec<Vec<T>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    points
                        .iter()
                        .map(|&(wt, t, g)| wt * g * eval(&basis[i], t) * eval(&basis[j], t))
                        .sum()
                })
                .collect()
        })
        .collect();
    let (value, u) = match jacobi_top(&g_matrix) {
        Some(pair) => pair,
        None => power_top(&g_matrix)?,
    };

    let mut t_coeffs = vec![T::zero(); size];
    for (ui, b) in u.iter().zip(&basis) {
        for (tj, &bj) in t_coeffs.iter_mut().zip(b) {
            *tj += *ui * bj;
        }
    }
    let sign = points
        .iter()
        .map(|&(_, t, _)| eval(&t_coeffs, t))
        .find(|&p| p != T::zero())
        .map_or(
            T::one(),
            |p| if p < T::zero() { -T::one() } else { T::one() },
        );
    let mut scale = T::one();
    let p_coeffs: Vec<T> = t_coeffs
        .iter()
        .map(|&a| {
            let c = sign * a / scale;
            scale *= T::count(m);
            c
        })
        .collect();
    Ok(DqiOptimum {
        poly: DqiPolynomial::from_poly(p_coeffs, m, ell)?,
        value,
    })
}

/// Largest eigenpair of a symmetric matrix by cyclic Jacobi rotations.
fn jacobi_top<T: Real>(a: &[Vec<T>]) -> Option<(T, Vec<T>)> {
    let n = a.len();
    let mut a = a.to_vec();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let scale = a
        .iter()
        .flatten()
        .fold(T::zero(), |acc, &x| acc.max(x.abs()))
        .max(T::min_positive_value());
    let tol = T::epsilon() * scale;
    let mut converged = n < 2;
    for _ in 0..JACOBI_SWEEPS {
        let off = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc.max(a[i][j].abs()));
        if off <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() <= tol * T::lit(1e-3) {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (T::lit(2.0) * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    if !converged {
        return None;
    }
    let top = (0..n).max_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).expect("finite"))?;
    Some((a[top][top], v.iter().map(|row| row[top]).collect()))
}

/// Power iteration; valid here because the matrix is positive semidefinite.
fn power_top<T: Real>(a: &[Vec<T>]) -> Result<(T, Vec<T>)> {
    let n = a.len();
    let mut x = vec![T::one() / T::count(n).sqrt(); n];
    let mut value = T::zero();
    for _ in 0..POWER_STEPS {
        let y: Vec<T> = a
            .iter()
            .map(|row| row.iter().zip(&x).map(|(&r, &xi)| r * xi).sum())
            .collect();
        let norm = y.iter().map(|&yi| yi * yi).sum::<T>().sqrt();
        if !(norm > T::zero()) {
            return Err(Error::Singular("power iteration"));
        }
        let next: Vec<T> = y.iter().map(|&yi| yi / norm).collect();
        let delta = next
            .iter()
            .zip(&x)
            .fold(T::zero(), |acc, (&p, &q)| acc.max((p - q).abs()));
        x = next;
        value = norm;
        if delta < T::epsilon() * T::lit(16.0) {
            break;
        }
    }
    Ok((value, x))
}

#[cfg(test)]
mod tests {
    use super::super::{dqi_expected_fraction, dqi_state_direct};
    use super::*;
    use crate::ensembles::{sample_gallager, sample_instance};
    use crate::rng::stream;

    fn inst() -> XorSatInstance {
        let h = sample_gallager(12, 3, 6, &mut stream(11)).unwrap();
        sample_instance(&h, &mut stream(12))
    }

    #[test]
    fn degree_zero_is_uniform() {
        let opt = dqi_optimal_coefficients::<f64>(&inst(), 0).unwrap();
        assert!((opt.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn value_matches_state_and_grows_with_degree() {
        let inst = inst();
        let mut last = 0.0;
        for ell in 0..=3 {
            let opt = dqi_optimal_coefficients::<f64>(&inst, ell).unwrap();
            let st = dqi_state_direct(&inst, &opt.poly).unwrap();
            let got = dqi_expected_fraction(&st, &inst).unwrap();
            assert!(
                (got - opt.value).abs() < 1e-10,
                "ell {ell}: {got} vs {}",
                opt.value
            );
            assert!(opt.value >= last - 1e-12);
            last = opt.value;
        }
    }

    #[test]
    fn eigen_solvers_agree() {
        let a = vec![
            vec![2.0f64, 1.0, 0.0],
            vec![1.0, 2.0, 0.5],
            vec![0.0, 0.5, 1.0],
        ];
        let (j, _) = jacobi_top(&a).unwrap();
        let (p, _) = power_top(&a).unwrap();
        assert!((j - p).abs() < 1e-10);
    }
}
