use super::oracles;
use num_rational::Ratio;
use rand::Rng;
use serde_json::{json, Value};
use xorsat::dqi::{dqi_pipeline_trace, dqi_state_direct, dqi_state_syndrome};
use xorsat::ensembles::{
    correlate, interpolation_path, sample_bernoulli, sample_gallager, sample_instance,
};
use xorsat::f2::code_distance_exact;
use xorsat::kravchuk::{
    moment_bound_check, psi, psi_upper_bound, xor_zero_probability, KravchukContext,
};
use xorsat::landscape::{
    chaos_probe, concentration_probe, enumerate_solutions, interpolation_overlap_sweep, ogp_probe,
    overlap_histogram, GallagerParams,
};
use xorsat::objective::{brute_force_max, count_above, expected_count_formula};
use xorsat::qaoa::{has_four_cycle, qaoa1_heisenberg, qaoa_expectation, steiner_2_4_25};
use xorsat::rng::{stream, substream, Stream};
use xorsat::thresholds::{
    amp_crossover, chaos_replicas, chaos_threshold, ogp2_default_band, ogp2_threshold,
    qaoa1_formula, qaoa1_reference_angles, theta_star, threshold_row, varpsi, varpsi_tilde,
    ThresholdRow,
};
use xorsat::{BitVec, DecodeTable, DqiPolynomial, DqiState, Error, Result, XorSatInstance};

/// Pass flag plus the numbers behind it.
pub type Outcome = (bool, Value);

fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn dqi_routes(seed: u64) -> Result<Outcome> {
    let mut rng = substream(seed, "dqi-routes", 0);
    let (mut syn, mut naive, mut pipe) = (0f64, 0f64, 0f64);
    let (mut piped, mut degenerate) = (0usize, 0usize);
    for i in 0..50 {
        let h = sample_gallager(12, 3, 6, &mut rng)?;
        let inst = sample_instance(&h, &mut rng);
        let ell = i % 4;
        let mut coeffs: Vec<f64> = (0..=ell).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if coeffs[ell].abs() < 0.1 {
            coeffs[ell] = 1.0;
        }
        let poly = DqiPolynomial::from_poly(coeffs.clone(), inst.m(), ell)?;
        let direct = match dqi_state_direct(&inst, &poly) {
            Ok(s) => s,
            Err(Error::Degenerate(_)) => {
                degenerate += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        syn = syn.max(direct.aligned_deviation(&dqi_state_syndrome(&inst, &poly)?)?);
        let reference =
            oracles::dqi_amplitudes(&inst, &coeffs).expect("direct route was nondegenerate");
        naive = naive
            .max(direct.aligned_deviation(&DqiState::from_unnormalized(inst.n(), reference)?)?);
        if let Some(dist) = code_distance_exact(&h, h.cols()) {
            if 2 * ell < dist {
                let table = DecodeTable::build(&h, ell)?;
                pipe =
                    pipe.max(direct.aligned_deviation(&dqi_pipeline_trace(&inst, &poly, &table)?)?);
                piped += 1;
            }
        }
    }
    let pass = syn <= 1e-9 && naive <= 1e-9 && pipe <= 1e-9 && piped > 0;
    Ok((
        pass,
        json!({"instances": 50, "degenerate": degenerate, "pipeline_checked": piped,
               "max_dev_syndrome": syn, "max_dev_naive": naive, "max_dev_pipeline": pipe}),
    ))
}

pub fn decoder(seed: u64) -> Result<Outcome> {
    let mut rng = substream(seed, "decoder", 0);
    let mut deltas = Vec::new();
    let (mut checked, mut wrong, mut missing_collisions) = (0u64, 0u64, 0usize);
    while deltas.len() < 20 {
        let (m, rows) = if deltas.len() % 2 == 0 {
            (14, Ratio::new(9, 14))
        } else {
            (12, Ratio::new(2, 3))
        };
        let h = sample_bernoulli(m, rows, 0.5, &mut rng)?;
        let Some(delta) = code_distance_exact(&h, m) else {
            continue;
        };
        let ell = (delta - 1) / 2;
        let table = DecodeTable::build(&h, ell)?;
        for e in (0u64..1 << m).filter(|e| e.count_ones() as usize <= ell) {
            let got = table.decode(&oracles::syndrome(h.row_vecs(), e))?;
            checked += 1;
            if got.to_u64() != e {
                wrong += 1;
            }
        }
        if !matches!(
            DecodeTable::build(&h, delta.div_ceil(2)),
            Err(Error::SyndromeCollision { .. })
        ) {
            missing_collisions += 1;
        }
        deltas.push(delta);
    }
    Ok((
        wrong == 0 && missing_collisions == 0,
        json!({"codes": 20, "distances": deltas, "errors_checked": checked, "wrong": wrong,
               "missing_collisions": missing_collisions}),
    ))
}

pub fn kravchuk_orthogonality(_seed: u64) -> Result<Outcome> {
    let mut pairs = 0u64;
    let mut bad = 0u64;
    for m in 0..=16usize {
        let ctx = KravchukContext::new(m);
        for w in 0..=m {
            for wp in 0..=m {
                let mut s = num_bigint::BigInt::from(0);
                for x in 0..=m {
                    s += ctx.binomial(x) * ctx.get(w, x)? * ctx.get(wp, x)?;
                }
                let want = if w == wp {
                    ctx.binomial(w) << m
                } else {
                    num_bigint::BigInt::from(0)
                };
                pairs += 1;
                if s != want {
                    bad += 1;
                }
            }
        }
    }
    let mut sums_bad = 0u64;
    for m in 0..=10usize {
        let ctx = KravchukContext::new(m);
        for w in 0..=m {
            for x in 0..=m {
                if *ctx.get(w, x)? != oracles::character_sum(m, w, x) {
                    sums_bad += 1;
                }
            }
        }
    }
    Ok((
        bad == 0 && sums_bad == 0,
        json!({"pairs": pairs, "failures": bad, "character_sum_mismatches": sums_bad}),
    ))
}

pub fn xor_zero(seed: u64) -> Result<Outcome> {
    let mut rng = substream(seed, "xor-zero", 0);
    let (mut cases, mut bad) = (0u64, 0u64);
    for m in 1..=12usize {
        for r in 1..=4usize {
            for _ in 0..4 {
                let weights: Vec<usize> = (0..r).map(|_| rng.gen_range(0..=m)).collect();
                cases += 1;
                if xor_zero_probability(m, &weights)? != oracles::xor_zero(m, &weights) {
                    bad += 1;
                }
            }
        }
    }
    Ok((bad == 0, json!({"cases": cases, "mismatches": bad})))
}

pub fn psi_machinery(_seed: u64) -> Result<Outcome> {
    let mut moment_fail = 0u64;
    for m in 1..=14usize {
        for w in 0..=m {
            for p in [2u32, 3, 4, 6] {
                if !moment_bound_check(m, w, p)? {
                    moment_fail += 1;
                }
            }
        }
    }
    let (mut bound_fail, mut worst_margin) = (0u64, f64::NEG_INFINITY);
    for i in 0..100 {
        let p = 3.0 + 27.0 * i as f64 / 99.0;
        for j in 0..100 {
            let x = 0.5 * (j + 1) as f64 / 100.0;
            let excess = psi(p, x)?.value - psi_upper_bound(p, x)?;
            worst_margin = worst_margin.max(excess);
            if excess > 1e-9 {
                bound_fail += 1;
            }
        }
    }
    let mut half_err = 0f64;
    for p in [1.5f64, 2.0, 3.0, 4.0, 5.5, 8.0, 12.0, 20.0, 30.0] {
        half_err = half_err.max((psi::<f64>(p, 0.5)?.value - (p / 2.0 - 1.0)).abs());
    }
    Ok((
        moment_fail == 0 && bound_fail == 0 && half_err <= 1e-10,
        json!({"moment_failures": moment_fail, "bound_failures": bound_fail,
               "max_psi_minus_bound": worst_margin, "max_half_error": half_err}),
    ))
}

pub fn first_moment(seed: u64) -> Result<Outcome> {
    let mut rng = substream(seed, "first-moment", 0);
    let h = sample_gallager(24, 3, 6, &mut rng)?;
    let inst = sample_instance(&h, &mut rng);
    let parities: Vec<BitVec> = (0..10_000)
        .map(|_| sample_instance(&h, &mut rng).v().clone())
        .collect();
    let mut rows = Vec::new();
    let mut pass = true;
    for theta in [0.5, 0.6, 0.7] {
        let counts = parities
            .iter()
            .map(|v| count_above(&inst.with_parity(v.clone())?, theta).map(|c| c as f64))
            .collect::<Result<Vec<f64>>>()?;
        let (mean, se) = mean_and_se(&counts);
        let formula = expected_count_formula(12, 24, theta)?;
        let z = if se > 0.0 { (formula - mean) / se } else { 0.0 };
        pass &= (formula - mean).abs() <= 4.0 * se || (se == 0.0 && (formula - mean).abs() < 1e-9);
        rows.push(
            json!({"theta": theta, "formula": formula, "mc_mean": mean, "mc_se": se, "z": z}),
        );
    }
    Ok((
        pass,
        json!({"samples": 10_000, "n": 12, "m": 24, "rows": rows}),
    ))
}

pub fn theta_upper(seed: u64) -> Result<Outcome> {
    let mut rng = substream(seed, "theta-upper", 0);
    let bound = theta_star(2.0f64)?;
    let mut fractions = Vec::new();
    for _ in 0..20 {
        let h = sample_gallager(48, 4, 8, &mut rng)?;
        let inst = sample_instance(&h, &mut rng);
        let (_, g) = brute_force_max(&inst)?;
        fractions.push(g as f64 / inst.m() as f64);
    }
    let max = fractions.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = fractions.iter().sum::<f64>() / fractions.len() as f64;
    Ok((
        max <= bound + 0.05,
        json!({"instances": 20, "n": 24, "m": 48, "theta_star": bound, "max_fraction": max,
               "mean_fraction": mean, "mean_gap": (mean - bound).abs(), "fractions": fractions}),
    ))
}

pub fn qaoa1(seed: u64) -> Result<Outcome> {
    let mut trivial = true;
    for k in [3u32, 4, 5, 8, 16] {
        for lambda in [1.0f64, 2.0, 3.0] {
            for angle in [-2.0, -0.3, 0.1, 0.7, 1.9] {
                trivial &= qaoa1_formula(k, lambda, 0.0, angle)? == 0.5;
                trivial &= qaoa1_formula(k, lambda, angle, 0.0)? == 0.5;
            }
        }
    }

    let b = steiner_2_4_25();
    let girth_ok = !has_four_cycle(&b);
    let (gamma, beta) = qaoa1_reference_angles(4, 2.0f64);
    let expansion = qaoa1_heisenberg(&b, gamma, beta)?;
    let h = b.transpose();
    let mut rng = substream(seed, "qaoa1", 0);
    let parities: Vec<BitVec> = (0..1000)
        .map(|_| sample_instance(&h, &mut rng).v().clone())
        .collect();
    let values = parities
        .iter()
        .map(|v| expansion.expectation(v).map(|g| g / 50.0))
        .collect::<Result<Vec<f64>>>()?;
    // Dense statevector on two of the sampled parities certifies the expansion.
    let mut dense_gap = 0f64;
    for (v, &value) in parities.iter().zip(&values).take(2) {
        let inst = XorSatInstance::new(b.clone(), v.clone())?;
        let dense = qaoa_expectation(&inst, &[(gamma, beta)])? / 50.0;
        dense_gap = dense_gap.max((dense - value).abs());
    }
    let (mean, se) = mean_and_se(&values);
    let formula = qaoa1_formula(4, 2.0, gamma, beta)?;
    let within = (formula - mean).abs() <= 3.0 * se;
    Ok((
        trivial && girth_ok && dense_gap <= 1e-9 && within,
        json!({"trivial_angles_exact": trivial, "girth_above_4": girth_ok, "gamma": gamma, "beta": beta,
               "samples": 1000, "mc_mean": mean, "mc_se": se, "formula": formula,
               "formula_minus_mean": formula - mean, "parity_average_exact": expansion.mean_over_parities() / 50.0,
               "dense_vs_expansion": dense_gap}),
    ))
}

pub fn threshold_consistency(seed: u64) -> Result<Outcome> {
    let (mut roots, mut worst_root) = (0usize, 0f64);
    for k in [8u32, 16, 32, 64, 128, 256, 512, 1024] {
        let (nu1, nu2) = ogp2_default_band::<f64>(k);
        for lambda in [1.5, 2.0, 3.0, 5.0, 10.0] {
            if let Ok(mu) = ogp2_threshold(k, lambda, nu1, nu2) {
                roots += 1;
                worst_root = worst_root.max(varpsi(mu, nu1, nu2, lambda, k).abs());
            }
        }
    }
    let mut rng = substream(seed, "varpsi-grid", 0);
    let mut tilde_violations = 0usize;
    for _ in 0..10_000 {
        let mu = rng.gen_range(0.5..1.0);
        let nu1 = rng.gen_range(0.0..0.25);
        let nu2 = rng.gen_range(nu1..0.5);
        let lambda = rng.gen_range(1.01..20.0);
        let k = rng.gen_range(3..1000);
        if varpsi_tilde(mu, nu2, lambda, 2) > varpsi(mu, nu1, nu2, lambda, k) {
            tilde_violations += 1;
        }
    }
    let mut trend = Vec::new();
    let mut monotone = true;
    let mut last = f64::INFINITY;
    for nu2 in [0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001] {
        let r = chaos_replicas(nu2)?;
        let mu = chaos_threshold(r, 2.0, nu2)?;
        monotone &= mu > 0.5 && mu < last;
        last = mu;
        let scale = (nu2 * (1.0 / nu2).ln()).sqrt();
        trend.push(
            json!({"nu2": nu2, "replicas": r, "mu": mu, "excess_over_scale": (mu - 0.5) / scale}),
        );
    }
    Ok((
        roots > 0 && worst_root <= 1e-9 && tilde_violations == 0 && monotone,
        json!({"ogp2_roots": roots, "max_abs_psi_at_root": worst_root, "tilde_violations": tilde_violations,
               "chaos_monotone": monotone, "chaos_trend": trend}),
    ))
}

/// Rows for `k = 4, 8, …, 2²⁰` at `λ = 2`, `c* = 1`.
pub fn comparison_rows() -> Vec<ThresholdRow> {
    (2..=20)
        .map(|e| threshold_row(1u32 << e, 2.0, 1.0))
        .collect()
}

pub fn comparison_table(rows: &[ThresholdRow]) -> Outcome {
    let amp = amp_crossover(rows, |r| r.amp_fit > r.dqi_bound);
    let top = amp_crossover(rows, |r| r.mu_top > r.dqi_bound);
    (
        amp.is_some() && top.is_some(),
        json!({"k_max": rows.last().map(|r| r.k), "amp_over_dqi_from_k": amp, "mu_top_over_dqi_from_k": top}),
    )
}

fn replay_mu_good(b: &xorsat::BitMatrix, s: &mut Stream, mu: f64) -> Vec<u64> {
    oracles::mu_good(&sample_instance(&b.transpose(), s), mu)
}

pub fn landscape(seed: u64) -> Result<Outcome> {
    let mut mismatches = Vec::<String>::new();
    let mut rng = substream(seed, "landscape", 0);

    // Histogram at n = 12.
    let h12 = sample_gallager(24, 3, 6, &mut rng)?;
    for mu in [0.7, 0.75] {
        let (i1, i2) = (
            sample_instance(&h12, &mut rng),
            sample_instance(&h12, &mut rng),
        );
        let hist = overlap_histogram(
            &enumerate_solutions(&i1, mu)?,
            &enumerate_solutions(&i2, mu)?,
            3,
        )?;
        let mut want = vec![0u64; 13];
        let (a, c) = (oracles::mu_good(&i1, mu), oracles::mu_good(&i2, mu));
        for &x in &a {
            for &y in &c {
                want[2 * oracles::dk(x, y, 12, 3)] += 1;
            }
        }
        if hist.counts != want {
            mismatches.push(format!("histogram mu={mu}"));
        }
    }

    // Chaos with R = 2 and R = 3 on n = 6, replaying each trial's draws.
    let b6 = sample_gallager(12, 3, 6, &mut rng)?.transpose();
    let mus = [0.0, 0.5, 0.6, 0.65, 0.7, 0.75, 0.8, 0.9, 1.0];
    let mut monotone = true;
    for r in [2usize, 3] {
        let mut last = usize::MAX;
        for &mu in &mus {
            let probe_seed = derive(seed, "chaos", r);
            let rep = chaos_probe(&b6, r, mu, 0.34, 16, &mut stream(probe_seed))?;
            let master: u64 = stream(probe_seed).gen();
            let hi = (0.34f64 * 6.0 + 1e-9).floor() as usize;
            let yes = (0..16u64)
                .filter(|&t| {
                    let mut s = substream(master, "chaos", t);
                    let sets: Vec<Vec<u64>> =
                        (0..r).map(|_| replay_mu_good(&b6, &mut s, mu)).collect();
                    exists_tuple(&sets, 6, 3, 0, hi)
                })
                .count();
            if rep.yes != yes || rep.unknown != 0 {
                mismatches.push(format!("chaos R={r} mu={mu}"));
            }
            monotone &= rep.yes <= last;
            last = rep.yes;
        }
    }

    // OGP on fresh Gallager instances with a correlated partner.
    let params = GallagerParams { m: 12, k: 3, d: 6 };
    let mut last = usize::MAX;
    for &mu in &mus {
        let probe_seed = derive(seed, "ogp", 0);
        let rep = ogp_probe(0.5, mu, 0.15, 0.35, 16, params, &mut stream(probe_seed))?;
        let master: u64 = stream(probe_seed).gen();
        let yes = (0..16u64)
            .filter(|&t| {
                let mut s = substream(master, "ogp", t);
                let h = sample_gallager(12, 3, 6, &mut s).expect("valid parameters");
                let inst = sample_instance(&h, &mut s);
                let fam = correlate(&inst, 0.5, 2, &mut s).expect("valid kappa");
                let sets = [
                    oracles::mu_good(&fam.instance(0), mu),
                    oracles::mu_good(&fam.instance(1), mu),
                ];
                exists_tuple(&sets, 6, 3, 1, 2)
            })
            .count();
        if rep.yes != yes {
            mismatches.push(format!("ogp mu={mu}"));
        }
        monotone &= rep.yes <= last;
        last = rep.yes;
    }

    // Interpolation traces.
    let sweep_seed = derive(seed, "interp", 0);
    let rows = interpolation_overlap_sweep(&b6, 3, 4, 0.6, &mut stream(sweep_seed))?;
    let path = interpolation_path(&b6, 3, 4, &mut stream(sweep_seed))?;
    for row in &rows {
        let set = |t: usize| -> Result<Vec<u64>> {
            Ok(oracles::mu_good(
                &XorSatInstance::new(b6.clone(), path.grid[t][row.q].clone())?,
                0.6,
            ))
        };
        let (a, c) = (set(row.t1)?, set(row.t2)?);
        let want = a
            .iter()
            .flat_map(|&x| c.iter().map(move |&y| oracles::dk(x, y, 6, 3)))
            .min();
        if row.min_dk != want {
            mismatches.push(format!("interp q={} ({}, {})", row.q, row.t1, row.t2));
        }
    }

    // Concentration of the optimum.
    let conc_seed = derive(seed, "concentration", 0);
    let rep = concentration_probe(&b6, 12, &mut stream(conc_seed))?;
    let master: u64 = stream(conc_seed).gen();
    let want: Vec<f64> = (0..12u64)
        .map(|i| {
            let inst = sample_instance(&b6.transpose(), &mut substream(master, "concentration", i));
            let best = (0u64..1 << inst.n())
                .map(|z| oracles::g(&inst, z))
                .max()
                .unwrap_or(0);
            best as f64 / inst.m() as f64
        })
        .collect();
    if rep.values != want {
        mismatches.push("concentration".into());
    }

    Ok((
        mismatches.is_empty() && monotone,
        json!({"mismatches": mismatches, "monotone_in_mu": monotone}),
    ))
}

fn derive(seed: u64, label: &str, i: usize) -> u64 {
    xorsat::rng::derive_seed(seed, label, i as u64)
}

/// Naive search over `S_1 × ⋯ × S_R` for pairwise `d_k ∈ [lo, hi]`.
fn exists_tuple(sets: &[Vec<u64>], n: usize, k: usize, lo: usize, hi: usize) -> bool {
    fn go(
        sets: &[Vec<u64>],
        chosen: &mut Vec<u64>,
        n: usize,
        k: usize,
        lo: usize,
        hi: usize,
    ) -> bool {
        if chosen.len() == sets.len() {
            return true;
        }
        let level = chosen.len();
        for &x in &sets[level] {
            if chosen.iter().all(|&y| {
                let d = oracles::dk(x, y, n, k);
                lo <= d && d <= hi
            }) {
                chosen.push(x);
                if go(sets, chosen, n, k, lo, hi) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(sets, &mut Vec::new(), n, k, lo, hi)
}
