use proptest::prelude::*;
use xorsat::thresholds::*;

proptest! {
    #[test]
    fn entropy_inverse(y in 0.0f64..=1.0) {
        let x = h2_inv(y).unwrap();
        prop_assert!((0.0..=0.5).contains(&x));
        prop_assert!((h2(x) - y).abs() < 1e-12);
    }

    #[test]
    fn entropy_inverse_away_from_the_peak(x in 0.0f64..0.45) {
        prop_assert!((h2_inv(h2(x)).unwrap() - x).abs() < 1e-10);
    }

    #[test]
    fn theta_star_decreases_with_density(a in 1.01f64..50.0, b in 1.01f64..50.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (t_lo, t_hi) = (theta_star(lo).unwrap(), theta_star(hi).unwrap());
        prop_assert!(t_hi <= t_lo + 1e-15);
        prop_assert!(t_hi >= 0.5 && t_lo <= 1.0);
    }

    #[test]
    fn ogp2_threshold_is_a_root(k in 4u32..200, lambda in 1.5f64..20.0, nu1 in 0.0f64..0.3, width in 0.01f64..0.2) {
        let nu2 = (nu1 + width).min(0.49);
        if let Ok(mu) = ogp2_threshold(k, lambda, nu1, nu2) {
            prop_assert!(varpsi(mu, nu1, nu2, lambda, k).abs() < 1e-9);
        }
    }

    #[test]
    fn qaoa1_is_real(k in 2u32..40, lam in 1u32..6, gamma in -3.2f64..3.2, beta in -3.2f64..3.2) {
        prop_assert!(qaoa1_formula(k, lam as f64, gamma, beta).is_ok());
    }

    #[test]
    fn single_precision_tracks_double(lambda in 1.1f64..20.0) {
        let d = theta_star(lambda).unwrap();
        let s = theta_star(lambda as f32).unwrap();
        prop_assert!((d - s as f64).abs() < 1e-5);
    }
}

#[test]
fn tilde_psi_never_exceeds_psi() {
    use rand::Rng;
    let mut rng = xorsat::rng::stream(2024);
    for _ in 0..10_000 {
        let mu = rng.gen_range(0.5..1.0);
        let nu1 = rng.gen_range(0.0..0.25);
        let nu2 = rng.gen_range(nu1..0.5);
        let lambda = rng.gen_range(1.01..20.0);
        let k = rng.gen_range(3..500);
        assert!(varpsi_tilde(mu, nu2, lambda, 2) <= varpsi(mu, nu1, nu2, lambda, k));
    }
}

#[test]
fn chaos_threshold_approaches_one_half() {
    let mut last = f64::INFINITY;
    for nu2 in [0.3, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.001] {
        let r = chaos_replicas(nu2).unwrap();
        let mu = chaos_threshold(r, 2.0, nu2).unwrap();
        assert!(mu > 0.5 && mu < last);
        last = mu;
    }
}

#[test]
fn asymptotic_forms_track_exact_forms() {
    for k in [256u32, 1024, 4096] {
        let exact = dqi_expected_bound(k, 2.0f64, 1.0).unwrap();
        let approx = dqi_bound_asymptotic(k, 2.0f64, 1.0);
        assert!((exact - approx).abs() / (exact - 0.5) < 0.5);
    }
    let exact = theta_star(1000.0f64).unwrap();
    assert!((exact - theta_star_asymptotic(1000.0f64)).abs() < 0.01);
}
