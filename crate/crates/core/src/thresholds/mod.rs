//! Closed-form thresholds and bounds.
//!
//! Every function is generic over [`Real`]. Where a formula carries `o_k(1)`
//! corrections, the exact finite-`k` form is the main function and the
//! leading-order asymptotic is a separate `*_asymptotic` function.

mod qaoa1;
mod table;

pub use qaoa1::{qaoa1_formula, qaoa1_optimize, qaoa1_reference_angles, Qaoa1Optimum, Qaoa1Params};
pub use table::{amp_crossover, threshold_row, ThresholdRow};

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Binary entropy in bits, with `H₂(0) = H₂(1) = 0`. NaN outside `[0, 1]`.
pub fn h2<T: Real>(x: T) -> T {
    if !(x >= T::zero() && x <= T::one()) {
        return T::nan();
    }
    let term = |p: T| {
        if p == T::zero() {
            T::zero()
        } else {
            -p * p.log2()
        }
    };
    term(x) + term(T::one() - x)
}

/// Inverse of [`h2`] on `[0, 1/2]`.
pub fn h2_inv<T: Real>(y: T) -> Result<T> {
    if !(y >= T::zero() && y <= T::one()) {
        return Err(Error::OutOfDomain {
            context: "h2_inv",
            value: y.as_f64(),
        });
    }
    let (mut lo, mut hi) = (T::zero(), T::lit(0.5));
    if y == T::one() {
        return Ok(hi);
    }
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if h2(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if y - h2(lo) <= h2(hi) - y { lo } else { hi })
}

/// `1 − H₂⁻¹(arg)` after checking `arg ∈ [0, 1]`.
fn upper_root<T: Real>(context: &'static str, arg: T) -> Result<T> {
    if !(arg >= T::zero() && arg <= T::one()) {
        return Err(Error::OutOfDomain {
            context,
            value: arg.as_f64(),
        });
    }
    Ok(T::one() - h2_inv(arg)?)
}

fn check_lambda<T: Real>(lambda: T) -> Result<()> {
    if lambda > T::one() {
        Ok(())
    } else {
        Err(invalid(format!(
            "clause density must exceed 1, got {lambda}"
        )))
    }
}

/// `θ* = 1 − H₂⁻¹(1 − 1/λ)`.
pub fn theta_star<T: Real>(lambda: T) -> Result<T> {
    check_lambda(lambda)?;
    upper_root("theta_star", T::one() - lambda.recip())
}

/// `1/2 + √(ln 2 / (2λ))`.
pub fn theta_star_asymptotic<T: Real>(lambda: T) -> T {
    T::lit(0.5) + (T::LN_2() / (T::lit(2.0) * lambda)).sqrt()
}

/// `ℓ*/m = H₂⁻¹(c*/(kλ))`.
pub fn ell_star_fraction<T: Real>(k: u32, lambda: T, c_star: T) -> Result<T> {
    if k < 3 {
        return Err(invalid(format!("need k >= 3, got {k}")));
    }
    let arg = c_star / (T::count(k as usize) * lambda);
    if !(arg >= T::zero() && arg <= T::one()) {
        return Err(Error::OutOfDomain {
            context: "ell_star_fraction",
            value: arg.as_f64(),
        });
    }
    h2_inv(arg)
}

/// `c*/(λ k log₂(kλ))`, the equivalent log form of `ℓ*/m` up to `1 + o_k(1)`.
pub fn ell_star_log_form<T: Real>(k: u32, lambda: T, c_star: T) -> T {
    let kl = T::count(k as usize) * lambda;
    c_star / (kl * kl.log2())
}

/// `(√(x/2) + √((1−x)/2))²`, evaluated as `1/2 + √(x(1−x))`.
pub fn semicircle_value<T: Real>(x: T) -> Result<T> {
    if !(x >= T::zero() && x <= T::one()) {
        return Err(Error::OutOfDomain {
            context: "semicircle",
            value: x.as_f64(),
        });
    }
    Ok(T::lit(0.5) + (x * (T::one() - x)).sqrt())
}

/// Semicircle value at `ℓ*/m`.
pub fn dqi_expected_bound<T: Real>(k: u32, lambda: T, c_star: T) -> Result<T> {
    semicircle_value(ell_star_fraction(k, lambda, c_star)?)
}

/// `1/2 + √(c*/(λ k log₂(kλ)))`.
pub fn dqi_bound_asymptotic<T: Real>(k: u32, lambda: T, c_star: T) -> T {
    T::lit(0.5) + ell_star_log_form(k, lambda, c_star).sqrt()
}

/// `μ_top = 1 − H₂⁻¹(1 − 4c* log₂(k)/(kλ))`, requiring `4c* log₂(k)/(kλ) < 1`.
pub fn mu_top<T: Real>(k: u32, lambda: T, c_star: T) -> Result<T> {
    let kf = T::count(k as usize);
    let a = T::lit(4.0) * c_star * kf.log2() / (kf * lambda);
    if !(a >= T::zero() && a < T::one()) {
        return Err(Error::OutOfDomain {
            context: "mu_top",
            value: a.as_f64(),
        });
    }
    upper_root("mu_top", T::one() - a)
}

/// `1/2 + √(2c* ln(k)/(kλ))`.
pub fn mu_top_asymptotic<T: Real>(k: u32, lambda: T, c_star: T) -> T {
    let kf = T::count(k as usize);
    T::lit(0.5) + (T::lit(2.0) * c_star * kf.ln() / (kf * lambda)).sqrt()
}

/// `1 − H₂⁻¹(1 − 1/(Rλ) − (1/λ)(1 − 1/R)H₂(ν₂))`.
pub fn chaos_threshold<T: Real>(r: u32, lambda: T, nu2: T) -> Result<T> {
    if r < 2 {
        return Err(invalid(format!("need R >= 2, got {r}")));
    }
    check_unit("nu2", nu2)?;
    let rf = T::count(r as usize);
    let arg = T::one() - (rf * lambda).recip() - (T::one() - rf.recip()) * h2(nu2) / lambda;
    upper_root("chaos_threshold", arg)
}

/// `⌈ν₂⁻²⌉`.
pub fn chaos_replicas<T: Real>(nu2: T) -> Result<u32> {
    if !(nu2 > T::zero()) {
        return Err(Error::OutOfDomain {
            context: "nu2",
            value: nu2.as_f64(),
        });
    }
    // Slack keeps exact squares such as 0.1⁻² = 100 from rounding up.
    ((nu2 * nu2).recip() - T::lit(1e-9))
        .ceil()
        .to_u32()
        .ok_or_else(|| invalid("replica count overflows"))
}

/// `(2e/ln 2) e^{−ν₁k}`.
fn ogp_tail<T: Real>(k: u32, nu1: T) -> T {
    T::lit(2.0) * T::E() / T::LN_2() * (-nu1 * T::count(k as usize)).exp()
}

/// `1 − H₂⁻¹(1 − 1/(2λ) − H₂(ν₂)/(2λ) − (2e/ln 2)e^{−ν₁k})`.
pub fn ogp2_threshold<T: Real>(k: u32, lambda: T, nu1: T, nu2: T) -> Result<T> {
    check_unit("nu1", nu1)?;
    check_unit("nu2", nu2)?;
    let two_l = T::lit(2.0) * lambda;
    let arg = T::one() - two_l.recip() - h2(nu2) / two_l - ogp_tail(k, nu1);
    upper_root("ogp2_threshold", arg)
}

/// `(ν₁, ν₂) = (0.1, 0.1 + 1/ln(k)²)`.
pub fn ogp2_default_band<T: Real>(k: u32) -> (T, T) {
    let lk = T::count(k as usize).ln();
    (T::lit(0.1), T::lit(0.1) + (lk * lk).recip())
}

/// `Ψ = 1 + H₂(ν₂) + 2λH₂(μ) − 2λ + (4eλ/ln 2)e^{−ν₁k}`.
pub fn varpsi<T: Real>(mu: T, nu1: T, nu2: T, lambda: T, k: u32) -> T {
    let two_l = T::lit(2.0) * lambda;
    T::one() + h2(nu2) + two_l * h2(mu) - two_l + lambda * T::lit(2.0) * ogp_tail(k, nu1)
}

/// `Ψ̃ = 1 + (R−1)H₂(ν₂) + RλH₂(μ) − Rλ`.
pub fn varpsi_tilde<T: Real>(mu: T, nu2: T, lambda: T, r: u32) -> T {
    let rf = T::count(r as usize);
    T::one() + (rf - T::one()) * h2(nu2) + rf * lambda * h2(mu) - rf * lambda
}

/// `1/2 + √(0.882 ln(k)/(kλ))`.
pub fn amp_fitted<T: Real>(k: u32, lambda: T) -> Result<T> {
    if k < 2 {
        return Err(invalid(format!("need k >= 2, got {k}")));
    }
    let kf = T::count(k as usize);
    Ok(T::lit(0.5) + (T::lit(0.882) * kf.ln() / (kf * lambda)).sqrt())
}

/// `1/2 + √(ln(k)/(4ekλ))`.
pub fn qaoa1_asymptotic<T: Real>(k: u32, lambda: T) -> T {
    let kf = T::count(k as usize);
    T::lit(0.5) + (kf.ln() / (T::lit(4.0) * T::E() * kf * lambda)).sqrt()
}

fn check_unit<T: Real>(context: &'static str, x: T) -> Result<()> {
    if x >= T::zero() && x <= T::one() {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            context,
            value: x.as_f64(),
        })
    }
}

/// Parameters shared by the threshold formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdParams<T> {
    pub k: u32,
    pub lambda: T,
    pub c_star: T,
    pub nu1: T,
    pub nu2: T,
    pub r: u32,
}

impl<T: Real> ThresholdParams<T> {
    /// Checks `ν₁ < ν₂ < 1/2`, `λ > 1`, `R ≥ 2`, `c* ≥ 1`.
    pub fn validate(&self) -> Result<()> {
        check_lambda(self.lambda)?;
        if !(self.nu1 >= T::zero() && self.nu1 < self.nu2 && self.nu2 < T::lit(0.5)) {
            return Err(invalid(format!(
                "need 0 <= nu1 < nu2 < 1/2, got nu1 = {}, nu2 = {}",
                self.nu1, self.nu2
            )));
        }
        if self.r < 2 {
            return Err(invalid(format!("need R >= 2, got {}", self.r)));
        }
        if self.c_star < T::one() {
            return Err(invalid(format!("need c* >= 1, got {}", self.c_star)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_basics() {
        assert_eq!(h2(0.5f64), 1.0);
        assert_eq!(h2(0.0f64), 0.0);
        assert_eq!(h2(1.0f64), 0.0);
        assert!(h2(1.5f64).is_nan());
        assert_eq!(h2_inv(0.0f64).unwrap(), 0.0);
        assert_eq!(h2_inv(1.0f64).unwrap(), 0.5);
        let x = h2_inv(0.5f64).unwrap();
        assert!((x - 0.1100).abs() < 5e-5);
        assert!((h2(x) - 0.5).abs() < 1e-12);
        assert!(h2_inv(1.2f64).is_err());
    }

    #[test]
    fn theta_star_values() {
        assert!((theta_star(2.0f64).unwrap() - 0.8900).abs() < 5e-5);
        assert!((theta_star(1.0 + 1e-12f64).unwrap() - 1.0).abs() < 1e-9);
        assert!(theta_star(1.0f64).is_err());
    }

    #[test]
    fn semicircle_points() {
        assert_eq!(semicircle_value(0.0f64).unwrap(), 0.5);
        assert!((semicircle_value(0.5f64).unwrap() - 1.0).abs() < 1e-15);
        assert!((semicircle_value(1.0f64).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ell_star_edge() {
        assert_eq!(ell_star_fraction(4, 2.0f64, 8.0).unwrap(), 0.5);
        assert!(ell_star_fraction(2, 2.0f64, 1.0).is_err());
        assert!(ell_star_fraction(4, 2.0f64, 9.0).is_err());
    }

    #[test]
    fn mu_top_domain() {
        assert!(mu_top(4, 2.0f64, 1.0).is_err());
        let v = mu_top(16, 2.0f64, 1.0).unwrap();
        assert!(v > 0.5 && v < 1.0);
    }

    #[test]
    fn chaos_limits() {
        let base = 1.0 - h2_inv(1.0 - 1.0 / 4.0f64).unwrap();
        assert!((chaos_threshold(2, 2.0f64, 0.0).unwrap() - base).abs() < 1e-15);
        assert_eq!(chaos_replicas(0.1f64).unwrap(), 100);
        assert_eq!(chaos_replicas(0.3f64).unwrap(), 12);
        assert_eq!(chaos_replicas(0.5f64).unwrap(), 4);
    }

    #[test]
    fn ogp_small_k_fails() {
        assert!(ogp2_threshold(3, 2.0f64, 0.1, 0.2).is_err());
        let (nu1, nu2) = ogp2_default_band::<f64>(50);
        assert!(ogp2_threshold(50, 2.0, nu1, nu2).is_ok());
    }

    #[test]
    fn varpsi_at_half() {
        let (l, nu1, nu2, k) = (3.0f64, 0.2, 0.3, 10);
        let want =
            1.0 + h2(nu2) + 4.0 * std::f64::consts::E * l / 2f64.ln() * (-nu1 * k as f64).exp();
        assert!((varpsi(0.5, nu1, nu2, l, k) - want).abs() < 1e-12);
    }

    #[test]
    fn params_validation() {
        let p = ThresholdParams {
            k: 8,
            lambda: 2.0f64,
            c_star: 1.0,
            nu1: 0.1,
            nu2: 0.2,
            r: 2,
        };
        assert!(p.validate().is_ok());
        assert!(ThresholdParams { nu2: 0.05, ..p }.validate().is_err());
        assert!(ThresholdParams { lambda: 1.0, ..p }.validate().is_err());
    }
}
