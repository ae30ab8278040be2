use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use xorsat::ensembles::{sample_gallager, sample_instance};
use xorsat::objective::*;
use xorsat::rng::stream;
use xorsat::{BitMatrix, BitVec, XorSatInstance};

fn random_instance() -> impl Strategy<Value = XorSatInstance> {
    (1usize..10, 1usize..11).prop_flat_map(|(n, m)| {
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

/// Satisfied clauses computed entry by entry.
fn naive_g(inst: &XorSatInstance, z: &BitVec) -> usize {
    (0..inst.m())
        .filter(|&a| {
            let lhs = (0..inst.n())
                .filter(|&j| inst.b().get(a, j) && z.get(j))
                .count()
                % 2
                == 1;
            lhs == inst.v().get(a)
        })
        .count()
}

fn all(n: usize) -> impl Iterator<Item = BitVec> {
    (0u64..1 << n).map(move |c| BitVec::from_u64(n, c))
}

/// Lexicographic order with entry 0 most significant.
fn lex_less(a: &BitVec, b: &BitVec) -> bool {
    a.to_bitstring() < b.to_bitstring()
}

fn naive_dk(x: &BitVec, y: &BitVec, k: usize) -> usize {
    let b = x.len() / k;
    (0..k)
        .map(|i| {
            let w = (i * b..(i + 1) * b)
                .filter(|&j| x.get(j) != y.get(j))
                .count();
            w.min(b - w)
        })
        .sum()
}

proptest! {
    #[test]
    fn objective_values_match_naive(inst in random_instance()) {
        for z in all(inst.n()) {
            let g = naive_g(&inst, &z);
            prop_assert_eq!(g_value(&inst, &z).unwrap(), g);
            prop_assert_eq!(f_value(&inst, &z).unwrap(), 2 * g as i64 - inst.m() as i64);
        }
    }

    #[test]
    fn brute_force_max_matches_naive(inst in random_instance()) {
        let mut best: Option<(BitVec, usize)> = None;
        for z in all(inst.n()) {
            let g = naive_g(&inst, &z);
            let better = match &best {
                None => true,
                Some((bz, bg)) => g > *bg || (g == *bg && lex_less(&z, bz)),
            };
            if better {
                best = Some((z, g));
            }
        }
        prop_assert_eq!(brute_force_max(&inst).unwrap(), best.unwrap());
    }

    #[test]
    fn counts_and_sets_match_naive(inst in random_instance(), theta in 0.0f64..=1.0) {
        let m = inst.m() as f64;
        let naive_count = all(inst.n())
            .filter(|z| naive_g(&inst, z) as f64 >= theta * m - 1e-9)
            .count() as u64;
        prop_assert_eq!(count_above(&inst, theta).unwrap(), naive_count);
        let set = enumerate_solutions(&inst, theta).unwrap();
        prop_assert_eq!(set.len() as u64, naive_count);
        for z in set.members() {
            prop_assert!(naive_g(&inst, &z) as f64 >= theta * m - 1e-9);
        }
        let spectrum = violation_spectrum(&inst).unwrap();
        prop_assert_eq!(spectrum.iter().sum::<u64>(), 1u64 << inst.n());
    }

    #[test]
    fn dk_is_a_symmetric_semimetric(
        k in 1usize..5,
        block in 1usize..6,
        seed in any::<u64>(),
    ) {
        let n = k * block;
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let (a, b, c) = (seed & mask, seed.rotate_left(17) & mask, seed.rotate_left(41) & mask);
        let (x, y, z) = (BitVec::from_u64(n, a), BitVec::from_u64(n, b), BitVec::from_u64(n, c));
        let dxy = dk_semimetric(&x, &y, k).unwrap();
        prop_assert_eq!(dxy, naive_dk(&x, &y, k));
        prop_assert_eq!(dxy, dk_semimetric(&y, &x, k).unwrap());
        prop_assert_eq!(dk_semimetric(&x, &x, k).unwrap(), 0);
        prop_assert!(dxy <= n / 2);
        prop_assert!(dk_relaxed_triangle_check(&x, &y, &z, k).unwrap());
    }
}

#[test]
fn expected_count_matches_enumeration_over_parities() {
    // E N_θ by summing over every B and v for n = 2, m = 3.
    let (n, m) = (2usize, 3usize);
    for theta in [0.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0] {
        let mut total = BigInt::from(0);
        let mut cases = BigInt::from(0);
        for bcode in 0u64..1 << (n * m) {
            let rows: Vec<BitVec> = (0..m)
                .map(|a| BitVec::from_u64(n, bcode >> (a * n)))
                .collect();
            let b = BitMatrix::from_rows(n, rows).unwrap();
            for vcode in 0u64..1 << m {
                let inst = XorSatInstance::new(b.clone(), BitVec::from_u64(m, vcode)).unwrap();
                total += count_above(&inst, theta).unwrap();
                cases += 1;
            }
        }
        let want = BigRational::new(total, cases);
        assert_eq!(
            expected_count_exact(n, m, theta).unwrap(),
            want,
            "theta {theta}"
        );
        let approx = expected_count_formula(n, m, theta).unwrap();
        let exact: f64 = num_traits::ToPrimitive::to_f64(&want).unwrap();
        assert!((approx - exact).abs() < 1e-12);
    }
}

#[test]
fn maximum_set_contains_the_optimizer() {
    let h = sample_gallager(24, 3, 6, &mut stream(9)).unwrap();
    let inst = sample_instance(&h, &mut stream(10));
    let (z, g) = brute_force_max(&inst).unwrap();
    let set = enumerate_solutions(&inst, g as f64 / inst.m() as f64).unwrap();
    assert!(set.contains(&z));
    assert!(enumerate_solutions(&inst, (g + 1) as f64 / inst.m() as f64)
        .unwrap()
        .is_empty());
    assert_eq!(
        enumerate_solutions(&inst, 0.0).unwrap().len(),
        1 << inst.n()
    );
}
