use crate::error::{invalid, Error, Result};
use crate::scalar::Real;
use num_complex::Complex;

/// Depth-1 angles with their trigonometric shorthands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Qaoa1Params<T> {
    pub gamma: T,
    pub beta: T,
    /// `sin γ`
    pub s: T,
    /// `cos γ`
    pub c: T,
    /// `cos 2β`
    pub p: T,
    /// `sin 2β`
    pub q: T,
}

impl<T: Real> Qaoa1Params<T> {
    pub fn new(gamma: T, beta: T) -> Self {
        let two_b = T::lit(2.0) * beta;
        Self {
            gamma,
            beta,
            s: gamma.sin(),
            c: gamma.cos(),
            p: two_b.cos(),
            q: two_b.sin(),
        }
    }
}

/// `γ = √(ln(4k/π²)/(kλ))`, `β = 1/(2√k)`.
pub fn qaoa1_reference_angles<T: Real>(k: u32, lambda: T) -> (T, T) {
    let kf = T::count(k as usize);
    let pi2 = T::PI() * T::PI();
    let gamma = ((T::lit(4.0) * kf / pi2).ln() / (kf * lambda)).sqrt();
    let beta = (T::lit(2.0) * kf.sqrt()).recip();
    (gamma, beta)
}

/// `1/2 − (is/4)((p + iqc^{kλ})^k − (p − iqc^{kλ})^k)` for integral `kλ`.
pub fn qaoa1_formula<T: Real>(k: u32, lambda: T, gamma: T, beta: T) -> Result<T> {
    let degree = T::count(k as usize) * lambda;
    let rounded = degree.round();
    if (degree - rounded).abs() > T::lit(1e-9) * rounded.max(T::one()) || rounded < T::zero() {
        return Err(invalid(format!(
            "k * lambda = {degree} is not a nonnegative integer"
        )));
    }
    let d = rounded
        .to_i32()
        .ok_or_else(|| invalid("degree overflows"))?;
    let a = Qaoa1Params::new(gamma, beta);
    let cd = a.c.powi(d);
    let plus = Complex::new(a.p, a.q * cd).powi(k as i32);
    let minus = Complex::new(a.p, -a.q * cd).powi(k as i32);
    let total = Complex::new(T::lit(0.5), T::zero())
        - Complex::new(T::zero(), a.s / T::lit(4.0)) * (plus - minus);
    let tol = T::lit(1e-12).max(T::epsilon() * T::lit(16.0));
    if total.im.abs() > tol {
        return Err(Error::OutOfDomain {
            context: "qaoa1 imaginary residue",
            value: total.im.as_f64(),
        });
    }
    Ok(total.re)
}

/// Best angles found and the value there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Qaoa1Optimum<T> {
    pub gamma: T,
    pub beta: T,
    pub value: T,
}

pub const QAOA1_GRID: usize = 256;

/// Grid search over `[0, 2π)²` followed by compass-search refinement.
pub fn qaoa1_optimize<T: Real>(k: u32, lambda: T) -> Result<Qaoa1Optimum<T>> {
    let f = |g: T, b: T| qaoa1_formula(k, lambda, g, b);
    let step = T::lit(2.0) * T::PI() / T::count(QAOA1_GRID);
    let mut best = Qaoa1Optimum {
        gamma: T::zero(),
        beta: T::zero(),
        value: f(T::zero(), T::zero())?,
    };
    for i in 0..QAOA1_GRID {
        for j in 0..QAOA1_GRID {
            let (g, b) = (step * T::count(i), step * T::count(j));
            let v = f(g, b)?;
            if v > best.value {
                best = Qaoa1Optimum {
                    gamma: g,
                    beta: b,
                    value: v,
                };
            }
        }
    }
    let mut h = step;
    let floor = T::lit(1e-10).max(T::epsilon() * T::lit(8.0));
    while h > floor {
        let mut moved = false;
        for (dg, db) in [
            (h, T::zero()),
            (-h, T::zero()),
            (T::zero(), h),
            (T::zero(), -h),
        ] {
            let (g, b) = (best.gamma + dg, best.beta + db);
            let v = f(g, b)?;
            if v > best.value {
                best = Qaoa1Optimum {
                    gamma: g,
                    beta: b,
                    value: v,
                };
                moved = true;
            }
        }
        if !moved {
            h *= T::lit(0.5);
        }
    }
    Ok(best)
}
