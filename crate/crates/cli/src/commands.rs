//! Command bodies, independent of argument parsing so the selftest can replay
//! them.

use num_rational::Ratio;
use serde::Serialize;
use xorsat::caps;
use xorsat::dqi::{
    dqi_expected_fraction, dqi_optimal_coefficients, dqi_pipeline_trace, dqi_state_direct,
    dqi_state_syndrome, semicircle_value,
};
use xorsat::ensembles::{
    restrictability_probe, sample_bernoulli, sample_gallager, sample_instance,
    sample_right_regular, CodeReport, Ensemble,
};
use xorsat::f2::code_distance_exact;
use xorsat::landscape::{
    chaos_probe, concentration_probe, interpolation_overlap_sweep, ogp_probe, ConcentrationReport,
    GallagerParams, InterpolationRow, ProbeReport,
};
use xorsat::objective::{brute_force_max, f_value};
use xorsat::qaoa::{qaoa1_heisenberg, qaoa_expectation};
use xorsat::rng::{derive_seed, stream};
use xorsat::thresholds::{threshold_row, ThresholdRow};
use xorsat::{BitMatrix, DecodeTable, DqiPolynomial, Error, Result, XorSatInstance};

/// Parameters of a parity-check ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "ensemble", rename_all = "snake_case")]
pub enum EnsembleSpec {
    Gallager { m: usize, k: usize, d: usize },
    Bernoulli { m: usize, rows: usize, p: f64 },
    RightRegular { m: usize, rows: usize, d: usize },
}

impl EnsembleSpec {
    /// Samples `H` from a stream derived from `seed` alone.
    pub fn sample_h(&self, seed: u64) -> Result<BitMatrix> {
        let rng = &mut stream(derive_seed(seed, "matrix", 0));
        match *self {
            Self::Gallager { m, k, d } => sample_gallager(m, k, d, rng),
            Self::Bernoulli { m, rows, p } => sample_bernoulli(m, Ratio::new(rows, m), p, rng),
            Self::RightRegular { m, rows, d } => {
                sample_right_regular(m, Ratio::new(rows, m), d, rng)
            }
        }
    }

    fn tag(&self) -> Ensemble {
        match self {
            Self::Gallager { .. } => Ensemble::Gallager,
            Self::Bernoulli { .. } => Ensemble::Bernoulli,
            Self::RightRegular { .. } => Ensemble::RightRegular,
        }
    }
}

pub fn gen(spec: &EnsembleSpec, seed: u64) -> Result<XorSatInstance> {
    let h = spec.sample_h(seed)?;
    let inst = sample_instance(&h, &mut stream(derive_seed(seed, "parity", 0)));
    Ok(inst.with_meta(seed, spec.tag()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveOutput {
    pub n: usize,
    pub m: usize,
    pub best: String,
    pub g: usize,
    pub f: i64,
    pub fraction: f64,
}

pub fn solve(inst: &XorSatInstance) -> Result<SolveOutput> {
    let (best, g) = brute_force_max(inst)?;
    Ok(SolveOutput {
        n: inst.n(),
        m: inst.m(),
        f: f_value(inst, &best)?,
        best: best.to_bitstring(),
        g,
        fraction: g as f64 / inst.m() as f64,
    })
}

/// How the DQI polynomial is chosen.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolySpec {
    Optimal,
    UniformW,
    /// Monomial coefficients of `P(s)`, constant term first.
    Coefficients(Vec<f64>),
}

/// Per-instance DQI summary. Fractions are of `m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DqiRecord {
    pub seed: u64,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub ell: usize,
    /// Minimum distance of the code with checks `Bᵀ`.
    pub distance: Option<usize>,
    pub dqi_value: f64,
    pub semicircle: f64,
    pub gstar: f64,
    /// Deviation of the syndrome-side state; `None` when it exceeds a cap.
    pub syndrome_deviation: Option<f64>,
    /// Deviation of the decoded pipeline state; `None` unless `2ℓ + 1 ≤ distance`
    /// and the register fits.
    pub pipeline_deviation: Option<f64>,
    pub routes_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DqiOutput {
    #[serde(flatten)]
    pub record: DqiRecord,
    pub p_coeffs: Vec<f64>,
    pub w_coeffs: Vec<f64>,
    pub amplitudes: Option<Vec<f64>>,
}

/// Route agreement tolerance on aligned amplitudes.
pub const ROUTE_TOL: f64 = 1e-9;

fn skip_caps<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn dqi(
    inst: &XorSatInstance,
    ell: usize,
    poly: &PolySpec,
    with_amplitudes: bool,
) -> Result<DqiOutput> {
    let poly = match poly {
        PolySpec::Optimal => dqi_optimal_coefficients::<f64>(inst, ell)?.poly,
        PolySpec::UniformW => DqiPolynomial::uniform_w(inst.m(), ell)?,
        PolySpec::Coefficients(c) => DqiPolynomial::from_poly(c.clone(), inst.m(), ell)?,
    };
    let state = dqi_state_direct(inst, &poly)?;
    let (m, n) = (inst.m(), inst.n());
    let h = inst.b().transpose();
    let distance = code_distance_exact(&h, m);

    let syndrome_deviation = match skip_caps(dqi_state_syndrome(inst, &poly))? {
        Some(s) => Some(state.aligned_deviation(&s)?),
        None => None,
    };
    let decodable =
        distance.is_some_and(|dist| 2 * ell < dist) && m + n <= caps::PIPELINE_MAX_QUBITS;
    let pipeline_deviation = if decodable {
        match skip_caps(
            DecodeTable::build(&h, ell).and_then(|t| dqi_pipeline_trace(inst, &poly, &t)),
        )? {
            Some(s) => Some(state.aligned_deviation(&s)?),
            None => None,
        }
    } else {
        None
    };
    let routes_agree = [syndrome_deviation, pipeline_deviation]
        .iter()
        .flatten()
        .all(|&d| d <= ROUTE_TOL);
    let (_, g) = brute_force_max(inst)?;
    Ok(DqiOutput {
        record: DqiRecord {
            seed: inst.seed(),
            m,
            n,
            k: inst.k(),
            d: inst.d(),
            ell,
            distance,
            dqi_value: dqi_expected_fraction(&state, inst)?,
            semicircle: semicircle_value(ell as f64 / m as f64)?,
            gstar: g as f64 / m as f64,
            syndrome_deviation,
            pipeline_deviation,
            routes_agree,
        },
        p_coeffs: poly.p_coeffs,
        w_coeffs: poly.w_coeffs,
        amplitudes: with_amplitudes.then_some(state.amplitudes),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QaoaOutput {
    pub gamma: f64,
    pub beta: f64,
    pub expectation: f64,
    pub fraction: f64,
    /// Average over all parity vectors; depth one only.
    pub parity_average_fraction: Option<f64>,
}

pub fn qaoa(inst: &XorSatInstance, layers: &[(f64, f64)]) -> Result<QaoaOutput> {
    let expectation = qaoa_expectation(inst, layers)?;
    let parity_average_fraction = match layers {
        [(g, b)] => {
            Some(qaoa1_heisenberg(inst.b(), *g, *b)?.mean_over_parities() / inst.m() as f64)
        }
        _ => None,
    };
    let (gamma, beta) = layers.first().copied().unwrap_or((0.0, 0.0));
    Ok(QaoaOutput {
        gamma,
        beta,
        expectation,
        fraction: expectation / inst.m() as f64,
        parity_average_fraction,
    })
}

pub fn thresholds(ks: &[u32], lambda: f64, c_star: f64) -> Vec<ThresholdRow> {
    ks.iter()
        .map(|&k| threshold_row(k, lambda, c_star))
        .collect()
}

/// `B = Hᵀ` for a landscape probe.
pub fn probe_matrix(spec: &EnsembleSpec, seed: u64) -> Result<BitMatrix> {
    Ok(spec.sample_h(seed)?.transpose())
}

pub fn chaos_scan(
    b: &BitMatrix,
    r: usize,
    mu: f64,
    nu2: f64,
    trials: usize,
    seed: u64,
) -> Result<ProbeReport> {
    chaos_probe(
        b,
        r,
        mu,
        nu2,
        trials,
        &mut stream(derive_seed(seed, "chaos-scan", 0)),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn ogp_scan(
    params: GallagerParams,
    kappa: f64,
    mu: f64,
    nu1: f64,
    nu2: f64,
    trials: usize,
    seed: u64,
) -> Result<ProbeReport> {
    ogp_probe(
        kappa,
        mu,
        nu1,
        nu2,
        trials,
        params,
        &mut stream(derive_seed(seed, "ogp-scan", 0)),
    )
}

pub fn interp_scan(
    b: &BitMatrix,
    t: usize,
    q: usize,
    mu: f64,
    seed: u64,
) -> Result<Vec<InterpolationRow>> {
    interpolation_overlap_sweep(
        b,
        t,
        q,
        mu,
        &mut stream(derive_seed(seed, "interp-scan", 0)),
    )
}

pub fn concentration(b: &BitMatrix, samples: usize, seed: u64) -> Result<ConcentrationReport> {
    concentration_probe(
        b,
        samples,
        &mut stream(derive_seed(seed, "concentration", 0)),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodeOutput {
    pub rows: usize,
    pub cols: usize,
    /// `None` means the distance exceeds `w_max`.
    pub distance: Option<usize>,
    pub restricted: CodeReport,
}

pub fn code_report(h: &BitMatrix, epsilon: Ratio<usize>, w_max: usize) -> Result<CodeOutput> {
    Ok(CodeOutput {
        rows: h.rows(),
        cols: h.cols(),
        distance: code_distance_exact(h, w_max),
        restricted: restrictability_probe(h, epsilon, w_max)?,
    })
}
