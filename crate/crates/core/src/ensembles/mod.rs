//! Random code ensembles, instances, and correlated parity constructions.
//!
//! Matrices called `h` are parity-check matrices with one column per clause;
//! an instance uses `B = hᵀ`, so clause arity is the column weight of `h`.

mod correlated;
mod instance;

pub use correlated::{correlate, interpolation_path, upsilon, CorrelatedFamily, InterpolationPath};
pub use instance::{sample_instance, Ensemble, InstanceRecord, XorSatInstance};

use crate::error::{invalid, Error, Result};
use crate::f2::{code_distance_exact, BitMatrix, BitVec};
use crate::rng::Stream;
use num_rational::Ratio;
use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::Serialize;

/// Gallager `(k, d)` sample: `n × m` with `n = mk/d`.
///
/// Rows come layer by layer; rows `i·m/d .. (i+1)·m/d` are layer `i`, and
/// each layer has column weight exactly one.
pub fn sample_gallager(m: usize, k: usize, d: usize, rng: &mut Stream) -> Result<BitMatrix> {
    if k < 3 {
        return Err(invalid(format!("Gallager ensemble needs k >= 3, got {k}")));
    }
    if d == 0 || !m.is_multiple_of(d) {
        return Err(invalid(format!(
            "Gallager ensemble needs d | m, got m = {m}, d = {d}"
        )));
    }
    let per_layer = m / d;
    let mut rows = Vec::with_capacity(per_layer * k);
    let mut perm: Vec<usize> = (0..m).collect();
    for _ in 0..k {
        perm.shuffle(rng);
        for block in perm.chunks(d) {
            rows.push(BitVec::from_support(m, block)?);
        }
    }
    BitMatrix::from_rows(m, rows)
}

/// `(inv_lambda·m) × m` matrix with i.i.d. Bernoulli(`p`) entries.
pub fn sample_bernoulli(
    m: usize,
    inv_lambda: Ratio<usize>,
    p: f64,
    rng: &mut Stream,
) -> Result<BitMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfDomain {
            context: "Bernoulli probability",
            value: p,
        });
    }
    let rows = scaled_rows(m, inv_lambda)?;
    let data = (0..rows)
        .map(|_| {
            let mut r = BitVec::zeros(m);
            for j in 0..m {
                if rng.gen_bool(p) {
                    r.set(j, true);
                }
            }
            r
        })
        .collect();
    BitMatrix::from_rows(m, data)
}

/// `(inv_lambda·m) × m` matrix whose rows are independent uniform weight-`d` vectors.
pub fn sample_right_regular(
    m: usize,
    inv_lambda: Ratio<usize>,
    d: usize,
    rng: &mut Stream,
) -> Result<BitMatrix> {
    if d > m {
        return Err(invalid(format!("row weight {d} exceeds row length {m}")));
    }
    let rows = scaled_rows(m, inv_lambda)?;
    let data = (0..rows)
        .map(|_| {
            let mut support = index::sample(rng, m, d).into_vec();
            support.sort_unstable();
            BitVec::from_support(m, &support)
        })
        .collect::<Result<Vec<_>>>()?;
    BitMatrix::from_rows(m, data)
}

fn scaled_rows(m: usize, inv_lambda: Ratio<usize>) -> Result<usize> {
    let rows = inv_lambda * m;
    if !rows.is_integer() {
        return Err(invalid(format!(
            "inv_lambda * m = {rows} is not an integer"
        )));
    }
    Ok(rows.to_integer())
}

/// The submatrix of `h` on the rows in `s`.
pub fn restrict_rows(h: &BitMatrix, s: &[usize]) -> Result<BitMatrix> {
    h.select_rows(s)
}

/// `(wt_b, wt_c)`: the largest column sum and the largest row sum.
pub fn sparsities(h: &BitMatrix) -> (usize, usize) {
    let wt_b = h.col_weights().into_iter().max().unwrap_or(0);
    let wt_c = h.row_weights().into_iter().max().unwrap_or(0);
    (wt_b, wt_c)
}

/// Distance report for the leading `epsilon` fraction of rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub rows_kept: usize,
    pub w_max: usize,
    /// `None` means the distance exceeds `w_max`.
    pub restricted_distance: Option<usize>,
}

pub fn restrictability_probe(
    h: &BitMatrix,
    epsilon: Ratio<usize>,
    w_max: usize,
) -> Result<CodeReport> {
    if epsilon > Ratio::from_integer(1) {
        return Err(invalid(format!("epsilon = {epsilon} exceeds 1")));
    }
    let kept = epsilon * h.rows();
    if !kept.is_integer() {
        return Err(invalid(format!(
            "epsilon * rows = {kept} is not an integer"
        )));
    }
    let rows_kept = kept.to_integer();
    let sub = h.select_rows(&(0..rows_kept).collect::<Vec<_>>())?;
    Ok(CodeReport {
        rows_kept,
        w_max,
        restricted_distance: code_distance_exact(&sub, w_max),
    })
}
