//! Empirical landscape probes on desk-scale instances: overlap histograms,
//! chaos and OGP event frequencies, interpolation traces and concentration of
//! the optimum.
//!
//! Every trial draws from its own substream of a master seed taken from the
//! caller's generator, so results do not depend on thread count, and probes
//! run at different `μ` with the same generator state see the same instances.

mod tuples;

pub use crate::objective::{enumerate_solutions, SolutionSet};
pub use tuples::{find_pair_in_band, find_tuple, TupleOutcome};

use crate::caps;
use crate::ensembles::{
    correlate, interpolation_path, sample_gallager, sample_instance, XorSatInstance,
};
use crate::error::{invalid, Error, Result};
use crate::f2::BitMatrix;
use crate::objective::{brute_force_max, dk_codes, COUNT_SLACK};
use crate::rng::{substream, Stream};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Tallies of `d_k(z, z′)/n` over cross pairs. Bin `j` covers
/// `[j/(2n), (j+1)/(2n))`, so the attainable value `d/n` lands in bin `2d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapHistogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub mu: f64,
    pub n: usize,
    pub k: usize,
    pub trials: usize,
}

impl OverlapHistogram {
    pub fn empty(n: usize, k: usize, mu: f64) -> Self {
        Self {
            bin_edges: (0..=n + 1).map(|j| j as f64 / (2 * n) as f64).collect(),
            counts: vec![0; n + 1],
            mu,
            n,
            k,
            trials: 0,
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Adds another histogram over the same grid.
    pub fn merge(&mut self, other: &Self) -> Result<()> {
        if (self.n, self.k) != (other.n, other.k) {
            return Err(invalid("histograms over different grids"));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.trials += other.trials;
        Ok(())
    }
}

fn block_for(n: usize, k: usize) -> Result<usize> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(invalid(format!("k = {k} does not divide n = {n}")));
    }
    if n > 64 {
        return Err(invalid(format!("n = {n} exceeds packed width")));
    }
    Ok(n / k)
}

fn check_pairs(a: usize, b: usize) -> Result<()> {
    let pairs = a as u128 * b as u128;
    if pairs > caps::PAIR_CAP {
        return Err(Error::CapExceeded {
            what: "solution pairs",
            requested: pairs,
            cap: caps::PAIR_CAP,
        });
    }
    Ok(())
}

/// Histogram of `d_k/n` over all of `S1 × S2`.
pub fn overlap_histogram(s1: &SolutionSet, s2: &SolutionSet, k: usize) -> Result<OverlapHistogram> {
    if s1.n != s2.n {
        return Err(Error::DimensionMismatch {
            context: "solution sets",
            expected: s1.n,
            got: s2.n,
        });
    }
    let n = s1.n;
    let block = block_for(n, k)?;
    check_pairs(s1.len(), s2.len())?;
    let counts = s1
        .codes()
        .par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut acc, &x| {
                for &y in s2.codes() {
                    acc[2 * dk_codes(x, y, k, block)] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let mut hist = OverlapHistogram::empty(n, k, s1.mu);
    hist.counts = counts;
    hist.trials = 1;
    Ok(hist)
}

/// Integer `d_k` band `[⌈ν₁n⌉, ⌊ν₂n⌋]`.
pub(crate) fn dk_band(nu1: f64, nu2: f64, n: usize) -> Result<(usize, usize)> {
    if !(0.0..=0.5).contains(&nu1) || !(0.0..=0.5).contains(&nu2) || nu1 > nu2 {
        return Err(invalid(format!(
            "need 0 <= nu1 <= nu2 <= 1/2, got ({nu1}, {nu2})"
        )));
    }
    let lo = (nu1 * n as f64 - COUNT_SLACK).ceil().max(0.0) as usize;
    let hi = (nu2 * n as f64 + COUNT_SLACK).floor() as usize;
    Ok((lo, hi))
}

/// Two-sided 95% Wilson score interval.
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let center = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Outcome tallies of a probe; `frequency` is `yes / trials`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub trials: usize,
    pub yes: usize,
    pub no: usize,
    pub unknown: usize,
    pub frequency: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub mu: f64,
    pub nu1: f64,
    pub nu2: f64,
    pub replicas: usize,
}

impl ProbeReport {
    fn from_outcomes(
        outcomes: &[TupleOutcome],
        mu: f64,
        nu1: f64,
        nu2: f64,
        replicas: usize,
    ) -> Self {
        let count = |o: TupleOutcome| outcomes.iter().filter(|&&x| x == o).count();
        let (yes, no, unknown) = (
            count(TupleOutcome::Yes),
            count(TupleOutcome::No),
            count(TupleOutcome::Unknown),
        );
        let trials = outcomes.len();
        let (wilson_low, wilson_high) = wilson_interval(yes, trials);
        Self {
            trials,
            yes,
            no,
            unknown,
            frequency: if trials == 0 {
                0.0
            } else {
                yes as f64 / trials as f64
            },
            wilson_low,
            wilson_high,
            mu,
            nu1,
            nu2,
            replicas,
        }
    }
}

/// Clause arity of `b`; the semimetric uses that many blocks.
fn arity(b: &BitMatrix) -> Result<usize> {
    let k = b.row_weights().into_iter().max().unwrap_or(0);
    block_for(b.cols(), k)?;
    Ok(k)
}

fn run_trials<F>(trials: usize, label: &str, rng: &mut Stream, f: F) -> Result<Vec<TupleOutcome>>
where
    F: Fn(&mut Stream) -> Result<TupleOutcome> + Sync,
{
    if trials == 0 {
        return Err(invalid("need at least one trial"));
    }
    let master: u64 = rng.gen();
    (0..trials)
        .into_par_iter()
        .map(|t| f(&mut substream(master, label, t as u64)))
        .collect()
}

/// Frequency over `trials` draws of `R` independent uniform parities of an
/// `R`-tuple of `μ`-good solutions with pairwise `d_k ≤ ν₂n`.
pub fn chaos_probe(
    b: &BitMatrix,
    r: usize,
    mu: f64,
    nu2: f64,
    trials: usize,
    rng: &mut Stream,
) -> Result<ProbeReport> {
    caps::check_n("chaos probe variables", b.cols(), 22)?;
    if r < 2 {
        return Err(invalid(format!("need at least 2 replicas, got {r}")));
    }
    let k = arity(b)?;
    let (_, hi) = dk_band(0.0, nu2, b.cols())?;
    let outcomes = run_trials(trials, "chaos", rng, |s| {
        let sets = (0..r)
            .map(|_| enumerate_solutions(&sample_instance(&b.transpose(), s), mu))
            .collect::<Result<Vec<_>>>()?;
        find_tuple(&sets, k, 0, hi, caps::CLIQUE_NODE_BUDGET)
    })?;
    Ok(ProbeReport::from_outcomes(&outcomes, mu, 0.0, nu2, r))
}

/// Gallager ensemble parameters: `H` is `(mk/d) × m`, the instance uses `B = Hᵀ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GallagerParams {
    pub m: usize,
    pub k: usize,
    pub d: usize,
}

/// Frequency over fresh instances and `κ`-correlated partners of a pair of
/// `μ`-good solutions with `d_k/n ∈ [ν₁, ν₂]`.
pub fn ogp_probe(
    kappa: f64,
    mu: f64,
    nu1: f64,
    nu2: f64,
    trials: usize,
    params: GallagerParams,
    rng: &mut Stream,
) -> Result<ProbeReport> {
    let n = params.m * params.k / params.d.max(1);
    caps::check_n("OGP probe variables", n, 22)?;
    let (lo, hi) = dk_band(nu1, nu2, n)?;
    let outcomes = run_trials(trials, "ogp", rng, |s| {
        let h = sample_gallager(params.m, params.k, params.d, s)?;
        let inst = sample_instance(&h, s);
        let k = arity(inst.b())?;
        let family = correlate(&inst, kappa, 2, s)?;
        let s1 = enumerate_solutions(&family.instance(0), mu)?;
        let s2 = enumerate_solutions(&family.instance(1), mu)?;
        Ok(match find_pair_in_band(&s1, &s2, k, lo, hi)? {
            Some(_) => TupleOutcome::Yes,
            None => TupleOutcome::No,
        })
    })?;
    Ok(ProbeReport::from_outcomes(&outcomes, mu, nu1, nu2, 2))
}

/// Minimum of `d_k` between `μ`-good solutions of two replicas at one step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterpolationRow {
    pub q: usize,
    pub t1: usize,
    pub t2: usize,
    /// `None` when either replica has no `μ`-good solution.
    pub min_dk: Option<usize>,
    pub min_overlap: Option<f64>,
}

/// Minimum of `d_k` over `S1 × S2`.
pub fn min_cross_dk(s1: &SolutionSet, s2: &SolutionSet, k: usize) -> Result<Option<usize>> {
    let block = block_for(s1.n, k)?;
    check_pairs(s1.len(), s2.len())?;
    let mut best: Option<usize> = None;
    'outer: for &x in s1.codes() {
        for &y in s2.codes() {
            let d = dk_codes(x, y, k, block);
            if best.is_none_or(|b| d < b) {
                best = Some(d);
                if d == 0 {
                    break 'outer;
                }
            }
        }
    }
    Ok(best)
}

/// Per-step minimum overlaps along a fresh interpolation path with `T`
/// replicas and `Q` steps, one row per `(q, t1 < t2)`.
pub fn interpolation_overlap_sweep(
    b: &BitMatrix,
    t: usize,
    q: usize,
    mu: f64,
    rng: &mut Stream,
) -> Result<Vec<InterpolationRow>> {
    caps::check_n("interpolation variables", b.cols(), 22)?;
    if t < 2 {
        return Err(invalid("need at least 2 replicas"));
    }
    let k = arity(b)?;
    let n = b.cols();
    let bt = b.clone();
    let path = interpolation_path(b, t, q, rng)?;
    let per_step = (0..=q)
        .into_par_iter()
        .map(|step| {
            let sets = (0..t)
                .map(|r| {
                    let inst = XorSatInstance::new(bt.clone(), path.grid[r][step].clone())?;
                    enumerate_solutions(&inst, mu)
                })
                .collect::<Result<Vec<_>>>()?;
            let mut rows = Vec::new();
            for t1 in 0..t {
                for t2 in t1 + 1..t {
                    let min_dk = min_cross_dk(&sets[t1], &sets[t2], k)?;
                    rows.push(InterpolationRow {
                        q: step,
                        t1,
                        t2,
                        min_dk,
                        min_overlap: min_dk.map(|d| d as f64 / n as f64),
                    });
                }
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_step.into_iter().flatten().collect())
}

/// Spread of `g*/m` over fresh uniform parities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationReport {
    pub samples: usize,
    pub mean: f64,
    /// Sample standard deviation; zero for one sample.
    pub stddev: f64,
    pub values: Vec<f64>,
}

pub fn concentration_probe(
    b: &BitMatrix,
    samples: usize,
    rng: &mut Stream,
) -> Result<ConcentrationReport> {
    caps::check_n("concentration variables", b.cols(), 24)?;
    if samples == 0 {
        return Err(invalid("need at least one sample"));
    }
    let master: u64 = rng.gen();
    let bt = b.transpose();
    let m = b.rows() as f64;
    let values = (0..samples)
        .map(|i| {
            let inst = sample_instance(&bt, &mut substream(master, "concentration", i as u64));
            brute_force_max(&inst).map(|(_, g)| g as f64 / m)
        })
        .collect::<Result<Vec<_>>>()?;
    let mean = values.iter().sum::<f64>() / samples as f64;
    let stddev = if samples > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (samples - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(ConcentrationReport {
        samples,
        mean,
        stddev,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    #[test]
    fn wilson_brackets_the_estimate() {
        let (lo, hi) = wilson_interval(30, 100);
        assert!(lo < 0.3 && 0.3 < hi);
        assert!(wilson_interval(0, 10).0 < 1e-12);
        assert!(wilson_interval(10, 10).1 > 1.0 - 1e-12);
    }

    #[test]
    fn band_rounding() {
        assert_eq!(dk_band(0.1, 0.3, 10).unwrap(), (1, 3));
        assert_eq!(dk_band(0.0, 0.5, 7).unwrap(), (0, 3));
        assert!(dk_band(0.3, 0.1, 10).is_err());
    }

    #[test]
    fn singleton_histogram() {
        let h = sample_gallager(12, 3, 6, &mut stream(1)).unwrap();
        let inst = sample_instance(&h, &mut stream(2));
        let (_, g) = brute_force_max(&inst).unwrap();
        let s = enumerate_solutions(&inst, g as f64 / 12.0).unwrap();
        let hist = overlap_histogram(&s, &s, 3).unwrap();
        assert_eq!(hist.total(), (s.len() * s.len()) as u64);
        assert_eq!(hist.bin_edges.len(), 8);
    }

    #[test]
    fn trivial_frequencies() {
        let h = sample_gallager(12, 3, 6, &mut stream(3)).unwrap();
        let b = h.transpose();
        let rep = chaos_probe(&b, 2, 0.0, 0.5, 5, &mut stream(4)).unwrap();
        assert_eq!(rep.frequency, 1.0);
        let rep = chaos_probe(&b, 3, 1.01, 0.5, 5, &mut stream(4)).unwrap();
        assert_eq!(rep.frequency, 0.0);
    }
}
