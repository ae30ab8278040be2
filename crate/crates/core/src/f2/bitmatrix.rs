use super::bitvec::BitVec;
use crate::error::{Error, Result};
use std::fmt;

/// Dense matrix over F₂ stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from packed rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, data: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = data.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                context: "matrix row",
                expected: cols,
                got: bad.len(),
            });
        }
        Ok(Self {
            rows: data.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from 0/1 rows. Panics on ragged input.
    pub fn from_dense(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                BitVec::from_bits(r)
            })
            .collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix from per-row column supports.
    pub fn from_supports(cols: usize, supports: &[Vec<usize>]) -> Result<Self> {
        let data = supports
            .iter()
            .map(|s| BitVec::from_support(cols, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: supports.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[BitVec] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    /// Sorted column indices of each row.
    pub fn row_supports(&self) -> Vec<Vec<usize>> {
        self.data.iter().map(BitVec::support).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for j in row.ones_iter() {
                out.data[j].set(i, true);
            }
        }
        out
    }

    /// Column `j` as a packed vector of length `rows`.
    pub fn column(&self, j: usize) -> BitVec {
        let mut c = BitVec::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            if row.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn columns(&self) -> Vec<BitVec> {
        self.transpose().data
    }

    /// `M·x` over F₂.
    pub fn mat_vec_mul(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "mat_vec_mul",
                expected: self.cols,
                got: x.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            if row.dot(x) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// `Mᵀ·y` over F₂, the XOR of the rows selected by `y`.
    pub fn transpose_mul(&self, y: &BitVec) -> Result<BitVec> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch {
                context: "transpose_mul",
                expected: self.rows,
                got: y.len(),
            });
        }
        let mut out = BitVec::zeros(self.cols);
        for i in y.ones_iter() {
            out ^= &self.data[i];
        }
        Ok(out)
    }

    /// Integer row sums.
    pub fn row_weights(&self) -> Vec<usize> {
        self.data.iter().map(BitVec::weight).collect()
    }

    /// Integer column sums.
    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for row in &self.data {
            for j in row.ones_iter() {
                w[j] += 1;
            }
        }
        w
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m.data[i].get(c)) else {
                continue;
            };
            m.data.swap(r, p);
            let pivot_row = m.data[r].clone();
            for i in 0..self.rows {
                if i != r && m.data[i].get(c) {
                    m.data[i] ^= &pivot_row;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{c : M·c = 0}`, one vector per free column of the RREF.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut v = BitVec::unit(self.cols, free);
                for (r, &p) in pivots.iter().enumerate() {
                    if reduced.data[r].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Solves `M·x = b` if consistent; returns one solution.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                context: "solve",
                expected: self.rows,
                got: b.len(),
            });
        }
        // Eliminate on the augmented matrix [M | b].
        let aug_rows = self
            .data
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = BitVec::zeros(self.cols + 1);
                for j in row.ones_iter() {
                    r.set(j, true);
                }
                r.set(self.cols, b.get(i));
                r
            })
            .collect();
        let aug = Self::from_rows(self.cols + 1, aug_rows)?;
        let (reduced, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            if reduced.data[r].get(self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// Submatrix of the selected rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        let data = rows
            .iter()
            .map(|&i| {
                self.data.get(i).cloned().ok_or(Error::DimensionMismatch {
                    context: "row index",
                    expected: self.rows,
                    got: i,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: rows.len(),
            cols: self.cols,
            data,
        })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> BitVec {
        BitVec::from_bitstring(s).unwrap()
    }

    #[test]
    fn mat_vec_examples() {
        let id = BitMatrix::identity(3);
        assert_eq!(id.mat_vec_mul(&v("101")).unwrap(), v("101"));
        let m = BitMatrix::from_dense(&[&[1, 1], &[0, 1]]);
        assert_eq!(m.mat_vec_mul(&v("11")).unwrap(), v("01"));
        assert_eq!(m.mat_vec_mul(&v("00")).unwrap(), v("00"));
        assert!(matches!(
            m.mat_vec_mul(&v("101")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_examples() {
        assert!(BitMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(BitMatrix::zeros(2, 3).kernel_basis().len(), 3);
        let rep = BitMatrix::from_dense(&[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(rep.kernel_basis(), vec![v("111")]);
    }

    #[test]
    fn transpose_twice_is_identity() {
        let m = BitMatrix::from_dense(&[&[1, 0, 1, 1], &[0, 1, 1, 0], &[1, 1, 1, 1]]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().rows(), 4);
    }

    #[test]
    fn solve_finds_solution_or_none() {
        let m = BitMatrix::from_dense(&[&[1, 1, 0], &[0, 1, 1]]);
        let x = m.solve(&v("10")).unwrap().unwrap();
        assert_eq!(m.mat_vec_mul(&x).unwrap(), v("10"));
        let z = BitMatrix::from_dense(&[&[1, 1], &[1, 1]]);
        assert_eq!(z.solve(&v("10")).unwrap(), None);
    }

    #[test]
    fn select_rows_bounds() {
        let m = BitMatrix::identity(3);
        assert_eq!(m.select_rows(&[]).unwrap().rows(), 0);
        assert!(m.select_rows(&[3]).is_err());
    }
}
