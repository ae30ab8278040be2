use super::KravchukContext;
use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// `Σ_j a_j s^j` by Horner's rule.
pub(crate) fn eval_poly<T: Real>(coeffs: &[T], s: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &a| acc * s + a)
}

pub(crate) fn degree<T: Real>(coeffs: &[T]) -> Option<usize> {
    coeffs.iter().rposition(|&a| a != T::zero())
}

/// Coefficients `c_0..c_ell` with `P(m − 2w) = Σ_k c_k K_k(w)`.
///
/// The square system on `w = 0..=ell` is solved with partial pivoting and one
/// step of iterative refinement. Since `deg P ≤ ell`, the identity then holds
/// for every `w ≤ m`.
pub fn symmetric_expansion<T: Real>(poly: &[T], m: usize, ell: usize) -> Result<Vec<T>> {
    if ell > m {
        return Err(invalid(format!("ell = {ell} exceeds m = {m}")));
    }
    if let Some(deg) = degree(poly) {
        if deg > ell {
            return Err(invalid(format!(
                "polynomial degree {deg} exceeds ell = {ell}"
            )));
        }
    }
    let ctx = KravchukContext::new(m);
    let size = ell + 1;
    let a: Vec<Vec<T>> = (0..size)
        .map(|w| {
            (0..size)
                .map(|k| ctx.value(k, w))
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<_>>()?;
    let rhs: Vec<T> = (0..size)
        .map(|w| eval_poly(poly, T::count(m) - T::lit(2.0) * T::count(w)))
        .collect();

    let lu = Lu::factor(&a)?;
    let mut c = lu.solve(&rhs);
    let r = residual(&a, &c, &rhs);
    let dc = lu.solve(&r);
    for (ci, di) in c.iter_mut().zip(&dc) {
        *ci += *di;
    }

    let scale = rhs.iter().fold(T::zero(), |acc, &v| acc.max(v.abs()));
    let worst = residual(&a, &c, &rhs)
        .iter()
        .fold(T::zero(), |acc, &v| acc.max(v.abs()));
    if worst > tolerance::<T>() * scale {
        return Err(Error::Singular("symmetric expansion residual"));
    }
    Ok(c)
}

fn tolerance<T: Real>() -> T {
    T::lit(1e-9).max(T::epsilon() * T::lit(1e3))
}

fn residual<T: Real>(a: &[Vec<T>], x: &[T], b: &[T]) -> Vec<T> {
    a.iter()
        .zip(b)
        .map(|(row, &bi)| bi - row.iter().zip(x).map(|(&aij, &xj)| aij * xj).sum::<T>())
        .collect()
}

/// Row-pivoted LU factors of a square matrix.
struct Lu<T> {
    lu: Vec<Vec<T>>,
    perm: Vec<usize>,
}

impl<T: Real> Lu<T> {
    fn factor(a: &[Vec<T>]) -> Result<Self> {
        let n = a.len();
        let mut lu = a.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let p = (col..n)
                .max_by(|&i, &j| {
                    lu[i][col]
                        .abs()
                        .partial_cmp(&lu[j][col].abs())
                        .expect("finite")
                })
                .expect("nonempty range");
            if lu[p][col] == T::zero() {
                return Err(Error::Singular("symmetric expansion"));
            }
            lu.swap(col, p);
            perm.swap(col, p);
            for i in col + 1..n {
                let f = lu[i][col] / lu[col][col];
                lu[i][col] = f;
                for j in col + 1..n {
                    let u = lu[col][j];
                    lu[i][j] -= f * u;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    fn solve(&self, b: &[T]) -> Vec<T> {
        let n = b.len();
        let mut y: Vec<T> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[i][j];
                let yj = y[j];
                y[i] -= l * yj;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[i][j];
                let yj = y[j];
                y[i] -= u * yj;
            }
            y[i] /= self.lu[i][i];
        }
        y
    }
}
