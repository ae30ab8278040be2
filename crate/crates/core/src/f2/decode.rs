use super::{BitMatrix, BitVec};
use crate::caps;
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Syndrome lookup for every error of weight at most `ell`.
///
/// Invariant: the map is injective and contains `H·e ↦ e` for every `e` with
/// `weight(e) <= ell`.
#[derive(Debug, Clone)]
pub struct DecodeTable {
    ell: usize,
    n_checks: usize,
    n_bits: usize,
    entries: HashMap<BitVec, BitVec>,
}

impl DecodeTable {
    /// Builds the table, failing on the first syndrome collision.
    pub fn build(h: &BitMatrix, ell: usize) -> Result<Self> {
        let n_bits = h.cols();
        if ell > n_bits {
            return Err(Error::InvalidParameter(format!(
                "ell = {ell} exceeds the number of bits {n_bits}"
            )));
        }
        let total = ball_size(n_bits, ell);
        let cap = caps::decode_table_entries();
        if total > cap {
            return Err(Error::CapExceeded {
                what: "decode table entries",
                requested: total,
                cap,
            });
        }
        let cols = h.columns();
        let mut entries = HashMap::with_capacity(total as usize);
        entries.insert(BitVec::zeros(h.rows()), BitVec::zeros(n_bits));
        for w in 1..=ell {
            let mut err = Ok(());
            for_each_subset(n_bits, w, |support| {
                let mut syn = BitVec::zeros(h.rows());
                for &j in support {
                    syn ^= &cols[j];
                }
                let e = BitVec::from_support(n_bits, support).expect("indices in range");
                if let Some(prev) = entries.get(&syn) {
                    err = Err(Error::SyndromeCollision {
                        first: prev.clone(),
                        second: e,
                    });
                    return false;
                }
                entries.insert(syn, e);
                true
            });
            err?;
        }
        Ok(Self {
            ell,
            n_checks: h.rows(),
            n_bits,
            entries,
        })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n_checks(&self) -> usize {
        self.n_checks
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The stored error with syndrome `s`.
    pub fn decode(&self, s: &BitVec) -> Result<BitVec> {
        if s.len() != self.n_checks {
            return Err(Error::DimensionMismatch {
                context: "syndrome",
                expected: self.n_checks,
                got: s.len(),
            });
        }
        self.entries
            .get(s)
            .cloned()
            .ok_or_else(|| Error::UnknownSyndrome(s.clone()))
    }

    /// Borrowing variant of [`DecodeTable::decode`] for hot loops.
    pub(crate) fn lookup(&self, s: &BitVec) -> Option<&BitVec> {
        self.entries.get(s)
    }
}

/// `Σ_{w≤ell} C(n, w)`, saturating.
pub fn ball_size(n: usize, ell: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for w in 0..=ell.min(n) {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - w) as u128) / (w as u128 + 1);
    }
    total
}

/// Calls `f` on each `w`-subset of `0..n` in colex order; stops when `f`
/// returns false.
pub(crate) fn for_each_subset(n: usize, w: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if w > n {
        return;
    }
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut j = w;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            if idx[j] < n - (w - j) {
                break;
            }
        }
        idx[j] += 1;
        for t in j + 1..w {
            idx[t] = idx[t - 1] + 1;
        }
    }
}
