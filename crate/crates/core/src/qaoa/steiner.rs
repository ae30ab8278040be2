use crate::f2::BitMatrix;

/// The 2-(25, 4, 1) design on `Z₅ × Z₅` developed from two base blocks.
///
/// Rows are blocks, columns points `(a, b) ↦ 5a + b`. Every point lies on 8
/// blocks and any two points share exactly one, so the factor graph has no
/// 4-cycles. Shape 50 × 25.
pub fn steiner_2_4_25() -> BitMatrix {
    const BASE: [[(usize, usize); 4]; 2] = [
        [(0, 0), (0, 1), (1, 0), (2, 2)],
        [(0, 0), (0, 2), (1, 3), (3, 2)],
    ];
    let mut supports = Vec::with_capacity(50);
    for base in BASE {
        for shift in 0..25 {
            let (da, db) = (shift / 5, shift % 5);
            let mut block: Vec<usize> = base
                .iter()
                .map(|&(a, b)| 5 * ((a + da) % 5) + (b + db) % 5)
                .collect();
            block.sort_unstable();
            supports.push(block);
        }
    }
    BitMatrix::from_supports(25, &supports).expect("points are in range")
}

/// Whether two rows share two or more columns.
pub fn has_four_cycle(b: &BitMatrix) -> bool {
    let rows = b.row_vecs();
    (0..rows.len()).any(|i| (i + 1..rows.len()).any(|j| rows[i].and_weight(&rows[j]) >= 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn design_parameters() {
        let b = steiner_2_4_25();
        assert_eq!((b.rows(), b.cols()), (50, 25));
        assert!(b.row_weights().iter().all(|&w| w == 4));
        assert!(b.col_weights().iter().all(|&w| w == 8));
        assert!(!has_four_cycle(&b));
        let mut cover = 0;
        for i in 0..50 {
            for j in i + 1..50 {
                cover += b.row(i).and_weight(b.row(j));
            }
        }
        // Pairs of blocks meeting in a point: each point contributes C(8, 2).
        assert_eq!(cover, 25 * 28);
    }
}
