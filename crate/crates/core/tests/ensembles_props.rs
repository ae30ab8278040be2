use num_rational::Ratio;
use proptest::prelude::*;
use xorsat::ensembles::*;
use xorsat::rng::stream;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gallager_is_biregular(k in 3usize..6, d in 2usize..7, blocks in 1usize..5, seed in any::<u64>()) {
        let m = d * blocks;
        let h = sample_gallager(m, k, d, &mut stream(seed)).unwrap();
        prop_assert_eq!((h.rows(), h.cols()), (m * k / d, m));
        prop_assert!(h.row_weights().iter().all(|&w| w == d));
        prop_assert!(h.col_weights().iter().all(|&w| w == k));
        prop_assert_eq!(sparsities(&h), (k, d));
    }

    #[test]
    fn instance_json_round_trips_byte_for_byte(seed in any::<u64>()) {
        let h = sample_gallager(12, 3, 6, &mut stream(seed)).unwrap();
        let inst = sample_instance(&h, &mut stream(seed ^ 1)).with_meta(seed, Ensemble::Gallager);
        let json = inst.to_json();
        let back = XorSatInstance::from_json(&json).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.to_json(), json);
        prop_assert_eq!(inst.lambda(), Ratio::new(2, 1));
    }

    #[test]
    fn correlated_parities_agree_past_the_cut(kappa in 0.0f64..=1.0, seed in any::<u64>()) {
        let h = sample_gallager(12, 3, 6, &mut stream(seed)).unwrap();
        let inst = sample_instance(&h, &mut stream(seed ^ 2));
        let fam = correlate(&inst, kappa, 3, &mut stream(seed ^ 3)).unwrap();
        let p = fam.resampled;
        prop_assert_eq!(p, (kappa * 12.0 + 1e-9).floor() as usize);
        for v in &fam.parities {
            prop_assert_eq!(v.slice(p, 12), inst.v().slice(p, 12));
        }
    }

    #[test]
    fn interpolation_endpoints(seed in any::<u64>(), q in 1usize..6) {
        let b = sample_gallager(12, 3, 6, &mut stream(seed)).unwrap().transpose();
        let path = interpolation_path(&b, 3, q, &mut stream(seed ^ 4)).unwrap();
        // Every replica starts from the shared vector.
        for t in 1..3 {
            prop_assert_eq!(&path.grid[t][0], &path.grid[0][0]);
            for j in 0..q {
                let (a, c) = (&path.grid[t][j], &path.grid[t][j + 1]);
                prop_assert_eq!(a.slice(path.cut(j + 1), 12), c.slice(path.cut(j + 1), 12));
            }
        }
    }

    #[test]
    fn right_regular_rows_have_fixed_weight(seed in any::<u64>(), d in 1usize..6) {
        let h = sample_right_regular(20, Ratio::new(1, 2), d, &mut stream(seed)).unwrap();
        prop_assert_eq!(h.rows(), 10);
        prop_assert!(h.row_weights().iter().all(|&w| w == d));
    }
}
