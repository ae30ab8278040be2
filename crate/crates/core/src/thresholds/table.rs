use super::*;
use serde::Serialize;

/// One row of the comparison table. Formulas whose domain check fails are NaN.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdRow {
    pub k: u32,
    pub lambda: f64,
    pub c_star: f64,
    pub theta_star: f64,
    pub ell_star: f64,
    pub dqi_bound: f64,
    pub mu_top: f64,
    pub chaos_mu: f64,
    pub ogp2_mu: f64,
    pub qaoa1_opt: f64,
    pub amp_fit: f64,
}

fn or_nan(r: Result<f64>) -> f64 {
    r.unwrap_or(f64::NAN)
}

/// Evaluates every formula at `(k, λ, c*)`.
///
/// `chaos_mu` uses `ν₂ = 4c*/k` with `R = ⌈ν₂⁻²⌉`; `ogp2_mu` uses
/// `(ν₁, ν₂) = (0.1, 0.1 + 1/ln(k)²)`.
pub fn threshold_row(k: u32, lambda: f64, c_star: f64) -> ThresholdRow {
    let chaos_mu = or_nan((|| {
        let nu2 = 4.0 * c_star / k as f64;
        if nu2 >= 0.5 {
            return Err(invalid(format!("nu2 = {nu2} is not below 1/2")));
        }
        chaos_threshold(chaos_replicas(nu2)?, lambda, nu2)
    })());
    let (nu1, nu2) = ogp2_default_band::<f64>(k);
    ThresholdRow {
        k,
        lambda,
        c_star,
        theta_star: or_nan(theta_star(lambda)),
        ell_star: or_nan(ell_star_fraction(k, lambda, c_star)),
        dqi_bound: or_nan(dqi_expected_bound(k, lambda, c_star)),
        mu_top: or_nan(mu_top(k, lambda, c_star)),
        chaos_mu,
        ogp2_mu: if nu2 < 0.5 {
            or_nan(ogp2_threshold(k, lambda, nu1, nu2))
        } else {
            f64::NAN
        },
        qaoa1_opt: or_nan(qaoa1_optimize(k, lambda).map(|o| o.value)),
        amp_fit: or_nan(amp_fitted(k, lambda)),
    }
}

/// Smallest `k` in `rows` from which `pred` holds on every later row; `None`
/// if it fails on the last row. NaN comparisons count as failures.
pub fn amp_crossover(rows: &[ThresholdRow], pred: impl Fn(&ThresholdRow) -> bool) -> Option<u32> {
    let mut crossover = None;
    for row in rows.iter().rev() {
        if pred(row) {
            crossover = Some(row.k);
        } else {
            break;
        }
    }
    crossover
}
