use num_complex::Complex64;
use proptest::prelude::*;
use xorsat::objective::g_value;
use xorsat::qaoa::*;
use xorsat::{BitMatrix, BitVec, XorSatInstance};

fn random_instance() -> impl Strategy<Value = XorSatInstance> {
    (1usize..7, 1usize..9).prop_flat_map(|(n, m)| {
        (
            proptest::collection::vec(proptest::collection::vec(0u8..2, n), m),
            proptest::collection::vec(0u8..2, m),
        )
            .prop_map(|(rows, v)| {
                let refs: Vec<&[u8]> = rows.iter().map(Vec::as_slice).collect();
                XorSatInstance::new(BitMatrix::from_dense(&refs), BitVec::from_bits(&v)).unwrap()
            })
    })
}

/// Depth-one expectation from the full mixer matrix element
/// `⟨x|e^{−iβΣX}|y⟩ = Π_j (cos β if x_j = y_j else −i sin β)`.
fn naive_expectation(inst: &XorSatInstance, gamma: f64, beta: f64) -> f64 {
    let n = inst.n();
    let dim = 1u64 << n;
    let g: Vec<f64> = (0..dim)
        .map(|c| g_value(inst, &BitVec::from_u64(n, c)).unwrap() as f64)
        .collect();
    let amp0 = (dim as f64).sqrt().recip();
    let phased: Vec<Complex64> = g
        .iter()
        .map(|&gy| Complex64::from_polar(amp0, -gamma * gy))
        .collect();
    let (c, s) = (
        Complex64::new(beta.cos(), 0.0),
        Complex64::new(0.0, -beta.sin()),
    );
    (0..dim)
        .map(|x| {
            let a: Complex64 = (0..dim)
                .map(|y| {
                    let flips = (x ^ y).count_ones() as i32;
                    c.powi(n as i32 - flips) * s.powi(flips) * phased[y as usize]
                })
                .sum();
            a.norm_sqr() * g[x as usize]
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn statevector_matches_mixer_matrix(inst in random_instance(), gamma in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let got = qaoa_expectation(&inst, &[(gamma, beta)]).unwrap();
        prop_assert!((got - naive_expectation(&inst, gamma, beta)).abs() < 1e-10);
    }

    #[test]
    fn heisenberg_matches_statevector(inst in random_instance(), gamma in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let exp = qaoa1_heisenberg(inst.b(), gamma, beta).unwrap();
        let got = exp.expectation(inst.v()).unwrap();
        prop_assert!((got - qaoa_expectation(&inst, &[(gamma, beta)]).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn parity_average_equals_mean_over_all_parities() {
    let b = BitMatrix::from_dense(&[
        &[1, 1, 0, 0],
        &[0, 1, 1, 0],
        &[0, 0, 1, 1],
        &[1, 0, 1, 0],
        &[1, 1, 1, 1],
    ]);
    let exp = qaoa1_heisenberg(&b, 0.4f64, 0.3).unwrap();
    let mean: f64 = (0u64..32)
        .map(|c| {
            let inst = XorSatInstance::new(b.clone(), BitVec::from_u64(5, c)).unwrap();
            qaoa_expectation(&inst, &[(0.4, 0.3)]).unwrap()
        })
        .sum::<f64>()
        / 32.0;
    assert!((exp.mean_over_parities() - mean).abs() < 1e-12);
}
