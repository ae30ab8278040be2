//! Dense linear algebra over F₂, code distance and bounded-distance decoding.

mod bitmatrix;
mod bitvec;
mod decode;
mod distance;

pub use bitmatrix::BitMatrix;
pub use bitvec::BitVec;
pub use decode::{ball_size, DecodeTable};
pub use distance::code_distance_exact;

pub(crate) use decode::for_each_subset;

/// Basis of `ker H`; see [`BitMatrix::kernel_basis`].
pub fn kernel_basis(h: &BitMatrix) -> Vec<BitVec> {
    h.kernel_basis()
}

/// Builds the decode table for all errors of weight at most `ell`.
pub fn build_decode_table(h: &BitMatrix, ell: usize) -> crate::Result<DecodeTable> {
    DecodeTable::build(h, ell)
}

/// `M·x`; see [`BitMatrix::mat_vec_mul`].
pub fn mat_vec_mul(m: &BitMatrix, x: &BitVec) -> crate::Result<BitVec> {
    m.mat_vec_mul(x)
}
