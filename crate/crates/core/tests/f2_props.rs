use proptest::prelude::*;
use xorsat::f2::{code_distance_exact, kernel_basis, BitMatrix, BitVec, DecodeTable};
use xorsat::Error;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(0u8..2, c), r).prop_map(|rows| {
            let refs: Vec<&[u8]> = rows.iter().map(Vec::as_slice).collect();
            BitMatrix::from_dense(&refs)
        })
    })
}

fn vector(len: usize) -> impl Strategy<Value = BitVec> {
    proptest::collection::vec(0u8..2, len).prop_map(|b| BitVec::from_bits(&b))
}

/// Naive product from individual entries.
fn naive_mul(h: &BitMatrix, x: &BitVec) -> BitVec {
    let bits: Vec<u8> = (0..h.rows())
        .map(|i| ((0..h.cols()).filter(|&j| h.get(i, j) && x.get(j)).count() % 2) as u8)
        .collect();
    BitVec::from_bits(&bits)
}

/// Minimum weight of a nonzero kernel vector by exhaustive search.
fn naive_distance(h: &BitMatrix) -> Option<usize> {
    let n = h.cols();
    (1u64..1 << n)
        .map(|c| BitVec::from_u64(n, c))
        .filter(|x| naive_mul(h, x).is_zero())
        .map(|x| x.weight())
        .min()
}

proptest! {
    #[test]
    fn product_matches_naive_and_is_linear((h, x, y) in matrix(12, 70).prop_flat_map(|h| {
        let c = h.cols();
        (Just(h), vector(c), vector(c))
    })) {
        let hx = h.mat_vec_mul(&x).unwrap();
        prop_assert_eq!(&hx, &naive_mul(&h, &x));
        let sum = h.mat_vec_mul(&(&x ^ &y)).unwrap();
        prop_assert_eq!(sum, &hx ^ &h.mat_vec_mul(&y).unwrap());
    }

    #[test]
    fn rank_nullity_and_kernel(h in matrix(10, 14)) {
        let kernel = kernel_basis(&h);
        prop_assert_eq!(h.rank() + kernel.len(), h.cols());
        for c in &kernel {
            prop_assert!(h.mat_vec_mul(c).unwrap().is_zero());
        }
        // Kernel vectors are independent: their span has 2^dim elements.
        let basis = BitMatrix::from_rows(h.cols(), kernel.clone()).unwrap_or_else(|_| BitMatrix::zeros(0, h.cols()));
        prop_assert_eq!(basis.rank(), kernel.len());
    }

    #[test]
    fn transpose_is_an_involution(h in matrix(9, 80)) {
        prop_assert_eq!(h.transpose().transpose(), h.clone());
        prop_assert_eq!(h.transpose().rank(), h.rank());
    }

    #[test]
    fn solve_is_consistent((h, x) in matrix(8, 12).prop_flat_map(|h| {
        let c = h.cols();
        (Just(h), vector(c))
    })) {
        let rhs = h.mat_vec_mul(&x).unwrap();
        let sol = h.solve(&rhs).unwrap().expect("rhs is in the column space");
        prop_assert_eq!(h.mat_vec_mul(&sol).unwrap(), rhs);
    }

    #[test]
    fn distance_matches_exhaustive(h in matrix(6, 10)) {
        prop_assert_eq!(code_distance_exact(&h, h.cols()), naive_distance(&h));
    }

    #[test]
    fn decoder_round_trips_within_radius(h in matrix(7, 10)) {
        let Some(dist) = naive_distance(&h) else { return Ok(()) };
        let ell = (dist - 1) / 2;
        let table = DecodeTable::build(&h, ell).unwrap();
        for code in 0u64..1 << h.cols() {
            let e = BitVec::from_u64(h.cols(), code);
            if e.weight() <= ell {
                prop_assert_eq!(table.decode(&h.mat_vec_mul(&e).unwrap()).unwrap(), e);
            }
        }
        // One step past the unique-decoding radius must collide.
        let collided = matches!(DecodeTable::build(&h, ell + 1), Err(Error::SyndromeCollision { .. }));
        prop_assert!(collided);
    }

    #[test]
    fn bitvec_code_round_trip(len in 1usize..64, code in any::<u64>()) {
        let code = code & (u64::MAX >> (64 - len));
        prop_assert_eq!(BitVec::from_u64(len, code).to_u64(), code);
    }
}
