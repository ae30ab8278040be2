//! Binary Kravchuk polynomials, XOR-of-random-vectors probabilities, the
//! moment exponent ψ and the symmetric polynomial expansion.

mod expansion;
mod psi;

pub(crate) use expansion::eval_poly;
pub use expansion::symmetric_expansion;
pub use psi::{moment_bound_check, psi, psi_upper_bound, PsiEval};

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Table of `K_w(x)` for `0 ≤ w, x ≤ m`, exact.
///
/// Invariants: `K_0(x) = 1`, `K_w(0) = C(m, w)`, and
/// `Σ_x C(m,x) K_w(x) K_w′(x) = 2^m C(m,w) δ_{ww′}`.
#[derive(Debug, Clone)]
pub struct KravchukContext {
    m: usize,
    /// `table[w][x]`
    table: Vec<Vec<BigInt>>,
    binom: Vec<BigInt>,
}

impl KravchukContext {
    /// Fills the table with the three-term recurrence in `w`.
    pub fn new(m: usize) -> Self {
        let mut table = vec![vec![BigInt::zero(); m + 1]; m + 1];
        for x in 0..=m {
            table[0][x] = BigInt::one();
            if m >= 1 {
                table[1][x] = BigInt::from(m as i64 - 2 * x as i64);
            }
        }
        for w in 1..m {
            for x in 0..=m {
                let a = BigInt::from(m as i64 - 2 * x as i64) * &table[w][x];
                let b = BigInt::from((m - w + 1) as i64) * &table[w - 1][x];
                let next = (a - b) / BigInt::from((w + 1) as i64);
                table[w + 1][x] = next;
            }
        }
        let binom = (0..=m).map(|w| table[w][0].clone()).collect();
        Self { m, table, binom }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `K_w(x)`.
    pub fn get(&self, w: usize, x: usize) -> Result<&BigInt> {
        if w > self.m || x > self.m {
            return Err(invalid(format!(
                "Kravchuk index (w = {w}, x = {x}) outside 0..={}",
                self.m
            )));
        }
        Ok(&self.table[w][x])
    }

    /// `C(m, w)`.
    pub fn binomial(&self, w: usize) -> &BigInt {
        &self.binom[w]
    }

    /// `K_w(x)` as a float.
    pub fn value<T: Real>(&self, w: usize, x: usize) -> Result<T> {
        let v = self.get(w, x)?;
        Ok(T::lit(v.to_f64().expect("finite")))
    }
}

/// `K_w(x)` for length `m`.
pub fn kravchuk_eval(m: usize, w: usize, x: usize) -> Result<BigInt> {
    if w > m || x > m {
        return Err(invalid(format!(
            "Kravchuk index (w = {w}, x = {x}) outside 0..={m}"
        )));
    }
    // Single row of the recurrence.
    let xi = BigInt::from(m as i64 - 2 * x as i64);
    let mut prev = BigInt::one();
    if w == 0 {
        return Ok(prev);
    }
    let mut cur = xi.clone();
    for j in 1..w {
        let next =
            (&xi * &cur - BigInt::from((m - j + 1) as i64) * &prev) / BigInt::from((j + 1) as i64);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Probability that the XOR of independent uniform vectors of weights
/// `weights` in `F₂^m` is zero:
/// `2^{−m} Σ_x C(m,x) Π_i K_{w_i}(x) / C(m,w_i)`.
pub fn xor_zero_probability(m: usize, weights: &[usize]) -> Result<BigRational> {
    if let Some(&w) = weights.iter().find(|&&w| w > m) {
        return Err(invalid(format!("weight {w} exceeds length {m}")));
    }
    let ctx = KravchukContext::new(m);
    let mut num = BigInt::zero();
    for x in 0..=m {
        let mut term = ctx.binomial(x).clone();
        for &w in weights {
            term *= &ctx.table[w][x];
        }
        num += term;
    }
    let mut den = BigInt::one() << m;
    for &w in weights {
        den *= ctx.binomial(w);
    }
    Ok(BigRational::new(num, den))
}

/// `P[Bin(n, p) even] = 1/2 + (1/2)(1 − 2p)^n`.
pub fn binomial_even_probability<T: Real>(n: u32, p: T) -> Result<T> {
    check_unit("binomial probability", p)?;
    let half = T::lit(0.5);
    Ok(half + half * (T::one() - T::lit(2.0) * p).powi(n as i32))
}

/// Whether `(1−q)^w ≤ 1 − (1 − 1/e)·q·w` for `q ∈ [0, 1]`, `1 ≤ w ≤ 1/q`.
pub fn binomial_linear_bound_check<T: Real>(q: T, w: T) -> Result<bool> {
    check_unit("q", q)?;
    if w < T::one() || w * q > T::one() + T::epsilon() {
        return Err(invalid(format!("need 1 <= w <= 1/q, got q = {q}, w = {w}")));
    }
    let lhs = (T::one() - q).powf(w);
    let rhs = T::one() - (T::one() - T::one() / T::E()) * q * w;
    // One ulp of slack absorbs rounding at q = 0.
    Ok(lhs <= rhs + T::epsilon())
}

fn check_unit<T: Real>(context: &'static str, p: T) -> Result<()> {
    if p >= T::zero() && p <= T::one() {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            context,
            value: p.as_f64(),
        })
    }
}

/// `E_{x∼Bin(m,1/2)} |K_w(x)|^p` as an exact rational.
pub fn kravchuk_moment(ctx: &KravchukContext, w: usize, p: u32) -> Result<BigRational> {
    let m = ctx.m();
    if w > m {
        return Err(invalid(format!("weight {w} exceeds length {m}")));
    }
    let num: BigInt = (0..=m)
        .map(|x| ctx.binomial(x) * ctx.table[w][x].abs().pow(p))
        .sum();
    Ok(BigRational::new(num, BigInt::one() << m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn big_binomial(n: usize, k: usize) -> BigUint {
        let mut c = BigUint::one();
        for i in 0..k {
            c = c * BigUint::from(n - i) / BigUint::from(i + 1);
        }
        c
    }

    #[test]
    fn small_values() {
        for x in 0..=5 {
            assert_eq!(kravchuk_eval(5, 0, x).unwrap(), BigInt::one());
            assert_eq!(
                kravchuk_eval(5, 1, x).unwrap(),
                BigInt::from(5 - 2 * x as i64)
            );
        }
        assert_eq!(kravchuk_eval(4, 2, 1).unwrap(), BigInt::zero());
        assert!(kravchuk_eval(4, 5, 0).is_err());
    }

    #[test]
    fn context_matches_single_evaluation() {
        let ctx = KravchukContext::new(9);
        for w in 0..=9 {
            for x in 0..=9 {
                assert_eq!(*ctx.get(w, x).unwrap(), kravchuk_eval(9, w, x).unwrap());
            }
            assert_eq!(
                BigUint::try_from(ctx.binomial(w).clone()).unwrap(),
                big_binomial(9, w)
            );
        }
    }

    #[test]
    fn xor_probability_examples() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(xor_zero_probability(4, &[0]).unwrap(), r(1, 1));
        assert_eq!(xor_zero_probability(4, &[2]).unwrap(), r(0, 1));
        assert_eq!(xor_zero_probability(2, &[1, 1]).unwrap(), r(1, 2));
        assert_eq!(xor_zero_probability(3, &[2, 1, 1]).unwrap(), r(2, 9));
    }

    #[test]
    fn binomial_parity_examples() {
        assert!((binomial_even_probability(1, 0.3f64).unwrap() - 0.7).abs() < 1e-15);
        assert!((binomial_even_probability(3, 0.2f64).unwrap() - 0.608).abs() < 1e-15);
        assert_eq!(binomial_even_probability(5, 0.5f64).unwrap(), 0.5);
        assert!(binomial_even_probability(5, 1.5f64).is_err());
    }

    #[test]
    fn linear_bound_edges() {
        assert!(binomial_linear_bound_check(0.0f64, 3.0).unwrap());
        assert!(binomial_linear_bound_check(0.25f64, 4.0).unwrap());
        assert!(binomial_linear_bound_check(0.25f64, 5.0).is_err());
    }
}
