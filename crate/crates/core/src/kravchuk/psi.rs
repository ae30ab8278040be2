use super::{kravchuk_moment, KravchukContext};
use crate::error::{invalid, Error, Result};
use crate::scalar::Real;
use crate::thresholds::h2;
use num_traits::ToPrimitive;

/// `ψ(p, x)` with the implicit root `δ` that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiEval<T> {
    pub p: T,
    pub x: T,
    pub delta: T,
    pub value: T,
    /// `|x − x(δ)|` at the returned root.
    pub residual: T,
}

/// `x(δ) = (1/2 − δ)((1−δ)^{p−1} − δ^{p−1}) / ((1−δ)^p + δ^p)`, decreasing
/// from `1/2` at `δ = 0` to `0` at `δ = 1/2` for `p > 1`.
fn x_of_delta<T: Real>(p: T, delta: T) -> T {
    let a = T::one() - delta;
    let num = (T::lit(0.5) - delta) * (a.powf(p - T::one()) - delta.powf(p - T::one()));
    num / (a.powf(p) + delta.powf(p))
}

/// Moment exponent `ψ(p, x)` for `p ≥ 1`, `x ∈ (0, 1/2]`.
///
/// `δ` is found by bisection on `[0, 1/2]`; the bracket is checked from the
/// endpoint signs and a failed bracket is an error.
pub fn psi<T: Real>(p: T, x: T) -> Result<PsiEval<T>> {
    let half = T::lit(0.5);
    if p < T::one() {
        return Err(invalid(format!("psi needs p >= 1, got {p}")));
    }
    if !(x > T::zero() && x <= half) {
        return Err(Error::OutOfDomain {
            context: "psi argument",
            value: x.as_f64(),
        });
    }
    let resid = |d: T| x_of_delta(p, d) - x;
    let (mut lo, mut hi) = (T::zero(), half);
    let (r_lo, r_hi) = (resid(lo), resid(hi));
    if !(r_lo >= T::zero() && r_hi < T::zero()) {
        return Err(Error::RootNotBracketed("psi delta"));
    }
    let delta = if r_lo == T::zero() {
        T::zero()
    } else {
        for _ in 0..200 {
            let mid = (lo + hi) * half;
            if mid <= lo || mid >= hi {
                break;
            }
            if resid(mid) >= T::zero() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // `hi` may still be 1/2, where the log term diverges.
        if hi < half && resid(hi).abs() < resid(lo).abs() {
            hi
        } else {
            lo
        }
    };
    let a = T::one() - delta;
    let log_term = p * x * (T::one() - T::lit(2.0) * delta).log2();
    let value = p - T::one() + (a.powf(p) + delta.powf(p)).log2() - p * half * h2(x) - log_term;
    Ok(PsiEval {
        p,
        x,
        delta,
        value,
        residual: resid(delta).abs(),
    })
}

/// `(4/ln 2)(1 − 2x)^{(p−1)/2} + (p/2)H₂(x) − 1`, for `p ≥ 3`.
pub fn psi_upper_bound<T: Real>(p: T, x: T) -> Result<T> {
    if p < T::lit(3.0) {
        return Err(invalid(format!("psi upper bound needs p >= 3, got {p}")));
    }
    if !(x >= T::zero() && x <= T::lit(0.5)) {
        return Err(Error::OutOfDomain {
            context: "psi bound argument",
            value: x.as_f64(),
        });
    }
    let four_over_ln2 = T::lit(4.0) / T::LN_2();
    let decay = (T::one() - T::lit(2.0) * x).powf((p - T::one()) * T::lit(0.5));
    Ok(four_over_ln2 * decay + p * T::lit(0.5) * h2(x) - T::one())
}

/// Slack in log₂ units for [`moment_bound_check`]; at `p = 2` the bound is an equality.
pub const MOMENT_SLACK: f64 = 1e-9;

/// Whether `E|K_w(x)|^p ≤ C(m,w)^{p/2} 2^{m ψ(p, min(w/m, 1 − w/m))}` with
/// `x ∼ Bin(m, 1/2)`. The left side is exact; `ψ(p, 0) = 0` by continuity.
pub fn moment_bound_check(m: usize, w: usize, p: u32) -> Result<bool> {
    if m == 0 || w > m {
        return Err(invalid(format!(
            "need 0 <= w <= m and m >= 1, got m = {m}, w = {w}"
        )));
    }
    let ctx = KravchukContext::new(m);
    let lhs = kravchuk_moment(&ctx, w, p)?
        .to_f64()
        .expect("finite moment");
    let frac = (w.min(m - w)) as f64 / m as f64;
    let exponent = if frac == 0.0 {
        0.0
    } else {
        psi(p as f64, frac)?.value
    };
    let binom = ctx.binomial(w).to_f64().expect("finite binomial");
    let log2_rhs = (p as f64 / 2.0) * binom.log2() + m as f64 * exponent;
    Ok(lhs.log2() <= log2_rhs + MOMENT_SLACK)
}
