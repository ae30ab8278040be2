use super::{BitMatrix, BitVec};

/// Minimum weight of a nonzero `c` with `H·c = 0`, if it is at most `w_max`.
///
/// Supports are visited in ascending weight, and in colex order within a
/// weight, keeping a running XOR of the selected columns of `H`. Returns
/// `None` when no codeword of weight `1..=w_max` exists.
pub fn code_distance_exact(h: &BitMatrix, w_max: usize) -> Option<usize> {
    let cols = h.columns();
    let n = cols.len();
    let w_max = w_max.min(n);
    (1..=w_max).find(|&w| has_codeword_of_weight(&cols, h.rows(), w))
}

/// Whether some weight-`w` subset of `cols` XORs to zero.
pub(crate) fn has_codeword_of_weight(cols: &[BitVec], rows: usize, w: usize) -> bool {
    let n = cols.len();
    if w == 0 || w > n {
        return false;
    }
    // partial[j] = XOR of cols[idx[0..j]]
    let mut idx: Vec<usize> = (0..w).collect();
    let mut partial = vec![BitVec::zeros(rows); w + 1];
    for j in 0..w {
        partial[j + 1] = &partial[j] ^ &cols[idx[j]];
    }
    loop {
        if partial[w].is_zero() {
            return true;
        }
        // Advance the rightmost index that can still move.
        let mut j = w;
        loop {
            if j == 0 {
                return false;
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
        for t in j..w {
            partial[t + 1] = &partial[t] ^ &cols[idx[t]];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_examples() {
        let rep = BitMatrix::from_dense(&[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(code_distance_exact(&rep, 3), Some(3));
        assert_eq!(code_distance_exact(&rep, 2), None);
        assert_eq!(code_distance_exact(&BitMatrix::zeros(1, 4), 4), Some(1));
        assert_eq!(code_distance_exact(&BitMatrix::identity(3), 3), None);
    }

    #[test]
    fn hamming_code_has_distance_three() {
        // Columns are 1..7 in binary.
        let h = BitMatrix::from_dense(&[
            &[1, 0, 1, 0, 1, 0, 1],
            &[0, 1, 1, 0, 0, 1, 1],
            &[0, 0, 0, 1, 1, 1, 1],
        ]);
        assert_eq!(code_distance_exact(&h, 7), Some(3));
    }
}
