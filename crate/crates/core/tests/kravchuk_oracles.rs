use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use xorsat::kravchuk::*;
use xorsat::BitVec;

/// `Σ_{|y|=w} (−1)^{x·y}` with `x = 1^x 0^{m−x}`.
fn character_sum(m: usize, w: usize, x: usize) -> BigInt {
    let xv = BitVec::from_u64(m, (1u64 << x) - 1);
    (0u64..1 << m)
        .map(|c| BitVec::from_u64(m, c))
        .filter(|y| y.weight() == w)
        .map(|y| if y.dot(&xv) { -1 } else { 1 })
        .sum::<i64>()
        .into()
}

/// `P[y_1 ⊕ ⋯ ⊕ y_r = 0]` for independent uniform `y_i` of the given weights.
fn xor_zero_by_enumeration(m: usize, weights: &[usize]) -> BigRational {
    let layers: Vec<Vec<u64>> = weights
        .iter()
        .map(|&w| {
            (0u64..1 << m)
                .filter(|c| c.count_ones() as usize == w)
                .collect()
        })
        .collect();
    // Distribution of the running XOR as counts per code.
    let mut dist = vec![BigInt::from(0); 1 << m];
    dist[0] = BigInt::from(1);
    let mut total = BigInt::from(1);
    for layer in &layers {
        let mut next = vec![BigInt::from(0); 1 << m];
        for (code, count) in dist.iter().enumerate() {
            if *count == BigInt::from(0) {
                continue;
            }
            for &y in layer {
                next[code ^ y as usize] += count;
            }
        }
        dist = next;
        total *= layer.len();
    }
    BigRational::new(dist[0].clone(), total)
}

#[test]
fn recurrence_matches_character_sums() {
    for m in 0..=10 {
        let ctx = KravchukContext::new(m);
        for w in 0..=m {
            for x in 0..=m {
                assert_eq!(
                    ctx.get(w, x).unwrap(),
                    &character_sum(m, w, x),
                    "m={m} w={w} x={x}"
                );
            }
        }
    }
}

#[test]
fn orthogonality_is_exact() {
    for m in 0..=16usize {
        let ctx = KravchukContext::new(m);
        for w in 0..=m {
            for wp in 0..=m {
                let s: BigInt = (0..=m)
                    .map(|x| ctx.binomial(x) * ctx.get(w, x).unwrap() * ctx.get(wp, x).unwrap())
                    .sum();
                let want = if w == wp {
                    ctx.binomial(w) << m
                } else {
                    BigInt::from(0)
                };
                assert_eq!(s, want);
            }
        }
    }
}

#[test]
fn xor_zero_matches_enumeration() {
    for m in 1..=8usize {
        for r in 1..=4usize {
            // A spread of weight tuples per (m, r).
            for seed in 0..6usize {
                let weights: Vec<usize> =
                    (0..r).map(|i| (seed * 7 + i * 3 + m) % (m + 1)).collect();
                assert_eq!(
                    xor_zero_probability(m, &weights).unwrap(),
                    xor_zero_by_enumeration(m, &weights),
                    "m={m} weights={weights:?}"
                );
            }
        }
    }
}

#[test]
fn psi_at_one_half() {
    for p in [1.5f64, 2.0, 3.0, 4.5, 10.0, 30.0] {
        if let Ok(e) = psi(p, 0.5) {
            assert!(
                (e.value - (p / 2.0 - 1.0)).abs() < 1e-10,
                "p={p}: {}",
                e.value
            );
        }
    }
    assert!((psi(4.0f64, 0.5).unwrap().value - 1.0).abs() < 1e-10);
}

fn poly_strategy() -> impl Strategy<Value = (usize, usize, Vec<f64>)> {
    (2usize..14).prop_flat_map(|m| {
        (0..=m.min(5)).prop_flat_map(move |ell| {
            (
                Just(m),
                Just(ell),
                proptest::collection::vec(-1.0f64..1.0, ell + 1),
            )
        })
    })
}

proptest! {
    #[test]
    fn expansion_reproduces_the_polynomial((m, ell, poly) in poly_strategy()) {
        let c = symmetric_expansion(&poly, m, ell).unwrap();
        let ctx = KravchukContext::new(m);
        for w in 0..=m {
            let s = (m as f64) - 2.0 * w as f64;
            let p: f64 = poly.iter().rev().fold(0.0, |acc, &a| acc * s + a);
            let q: f64 = c.iter().enumerate().map(|(k, ck)| ck * ctx.value::<f64>(k, w).unwrap()).sum();
            let scale = poly.iter().map(|a| a.abs()).sum::<f64>() * (m as f64).powi(ell as i32).max(1.0);
            prop_assert!((p - q).abs() <= 1e-9 * scale.max(1.0), "w={} p={} q={}", w, p, q);
        }
    }

    #[test]
    fn psi_root_is_consistent(p in 1.5f64..30.0, x in 0.01f64..0.5) {
        if let Ok(e) = psi(p, x) {
            prop_assert!(e.delta >= 0.0 && e.delta < 0.5);
            prop_assert!(e.residual.abs() < 1e-8);
            if p >= 3.0 {
                prop_assert!(e.value <= psi_upper_bound(p, x).unwrap() + 1e-9);
            }
        }
    }
}
