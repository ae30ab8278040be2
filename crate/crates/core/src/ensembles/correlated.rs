use super::instance::{uniform_bitvec, XorSatInstance};
use crate::error::{invalid, Result};
use crate::f2::{BitMatrix, BitVec};
use crate::rng::Stream;

/// `Υ_p`: keeps entries `0..p` and zeroes the rest.
pub fn upsilon(x: &BitVec, p: usize) -> BitVec {
    let mut out = BitVec::zeros(x.len());
    for i in x.ones_iter().take_while(|&i| i < p) {
        out.set(i, true);
    }
    out
}

/// `⌊κm⌋`, robust to `κm` landing a rounding error below an integer.
pub(crate) fn floor_fraction(kappa: f64, m: usize) -> usize {
    ((kappa * m as f64 + 1e-9).floor() as usize).min(m)
}

/// `R` parity vectors sharing `B` and agreeing outside the first `⌊κm⌋` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatedFamily {
    pub b: BitMatrix,
    pub kappa: f64,
    /// Number of leading coordinates that were resampled.
    pub resampled: usize,
    pub parities: Vec<BitVec>,
}

impl CorrelatedFamily {
    pub fn instance(&self, r: usize) -> XorSatInstance {
        XorSatInstance::new(self.b.clone(), self.parities[r].clone()).expect("dimensions agree")
    }
}

/// `v⁽¹⁾ = inst.v` and `v⁽ʳ⁾ = v⁽¹⁾ ⊕ Υ_{⌊κm⌋}(v⁽¹⁾ ⊕ ṽ⁽ʳ⁾)` with fresh uniform `ṽ⁽ʳ⁾`.
pub fn correlate(
    inst: &XorSatInstance,
    kappa: f64,
    r: usize,
    rng: &mut Stream,
) -> Result<CorrelatedFamily> {
    if !(0.0..=1.0).contains(&kappa) {
        return Err(invalid(format!("kappa = {kappa} outside [0, 1]")));
    }
    if r < 2 {
        return Err(invalid(format!("need at least 2 replicas, got {r}")));
    }
    let m = inst.m();
    let p = floor_fraction(kappa, m);
    let base = inst.v().clone();
    let mut parities = vec![base.clone()];
    for _ in 1..r {
        let fresh = uniform_bitvec(m, rng);
        parities.push(&base ^ &upsilon(&(&base ^ &fresh), p));
    }
    Ok(CorrelatedFamily {
        b: inst.b().clone(),
        kappa,
        resampled: p,
        parities,
    })
}

/// `grid[t][q] = ṽ⁽⁰⁾ ⊕ Υ_{⌊qm/Q⌋}(ṽ⁽⁰⁾ ⊕ ṽ⁽ᵗ⁾)` for `t < T`, `q ≤ Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationPath {
    pub b: BitMatrix,
    pub replicas: usize,
    pub steps: usize,
    pub grid: Vec<Vec<BitVec>>,
}

impl InterpolationPath {
    /// `⌊qm/Q⌋`.
    pub fn cut(&self, q: usize) -> usize {
        q * self.b.rows() / self.steps
    }
}

pub fn interpolation_path(
    b: &BitMatrix,
    t: usize,
    q: usize,
    rng: &mut Stream,
) -> Result<InterpolationPath> {
    if t == 0 || q == 0 {
        return Err(invalid("interpolation path needs T >= 1 and Q >= 1"));
    }
    let m = b.rows();
    let v0 = uniform_bitvec(m, rng);
    let grid = (0..t)
        .map(|_| {
            let diff = &v0 ^ &uniform_bitvec(m, rng);
            (0..=q).map(|j| &v0 ^ &upsilon(&diff, j * m / q)).collect()
        })
        .collect();
    Ok(InterpolationPath {
        b: b.clone(),
        replicas: t,
        steps: q,
        grid,
    })
}
