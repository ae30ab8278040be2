//! Acceptance self-test: twelve numbered checks, each reduced to one pass or
//! fail line plus the numbers behind it.
//!
//! Every check draws from its own stream derived from the master seed, so the
//! report depends on the seed alone. Wall-clock time is printed but never
//! written to artifacts.

mod criteria;
pub mod oracles;

use crate::commands::{self, EnsembleSpec, PolySpec};
use crate::output::thresholds_csv;
use serde::Serialize;
use serde_json::{json, Value};
use std::path::Path;
use std::time::{Duration, Instant};
use xorsat::rng::derive_seed;
use xorsat::thresholds::{amp_crossover, ThresholdRow};
use xorsat::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub criteria: Vec<CriterionResult>,
    #[serde(skip)]
    pub threshold_rows: Vec<ThresholdRow>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

type Check = fn(u64) -> Result<criteria::Outcome>;

/// `(id, name, time limit, check)`. Criteria 10 and 12 are wired separately.
const CHECKS: [(u32, &str, Option<u64>, Check); 10] = [
    (
        1,
        "dqi state: direct, syndrome and pipeline routes agree",
        Some(120),
        criteria::dqi_routes,
    ),
    (
        2,
        "syndrome decoder round-trips up to half the distance",
        Some(60),
        criteria::decoder,
    ),
    (
        3,
        "kravchuk orthogonality and character sums",
        Some(60),
        criteria::kravchuk_orthogonality,
    ),
    (
        4,
        "xor-zero probability matches enumeration",
        Some(120),
        criteria::xor_zero,
    ),
    (
        5,
        "psi moment bound and closed-form bound",
        Some(120),
        criteria::psi_machinery,
    ),
    (
        6,
        "first-moment count formula vs Monte Carlo",
        Some(120),
        criteria::first_moment,
    ),
    (
        7,
        "brute-force optimum below theta* plus slack",
        Some(1200),
        criteria::theta_upper,
    ),
    (
        8,
        "depth-one qaoa formula vs girth-six instance",
        Some(600),
        criteria::qaoa1,
    ),
    (
        9,
        "threshold formulas are self-consistent",
        None,
        criteria::threshold_consistency,
    ),
    (
        11,
        "landscape probes vs naive replays",
        Some(300),
        criteria::landscape,
    ),
];

fn record(
    id: u32,
    name: &str,
    limit: Option<u64>,
    start: Instant,
    result: Result<criteria::Outcome>,
) -> (CriterionResult, Duration) {
    let elapsed = start.elapsed();
    let (pass, detail) = match result {
        Ok(outcome) => outcome,
        Err(e) => (false, json!({"error": e.to_string()})),
    };
    let in_time = limit.is_none_or(|s| elapsed <= Duration::from_secs(s));
    let detail = if in_time {
        detail
    } else {
        json!({"over_time_limit_s": limit, "result": detail})
    };
    (
        CriterionResult {
            id,
            name: name.to_string(),
            pass: pass && in_time,
            detail,
        },
        elapsed,
    )
}

/// Runs every check in order, reporting each as it finishes.
pub fn run(seed: u64, mut on_result: impl FnMut(&CriterionResult, Duration)) -> SelftestReport {
    let mut results = Vec::new();
    let mut push = |(r, t): (CriterionResult, Duration)| {
        on_result(&r, t);
        results.push(r);
    };
    for (id, name, limit, check) in CHECKS.iter().copied().filter(|c| c.0 < 10) {
        let start = Instant::now();
        push(record(
            id,
            name,
            limit,
            start,
            check(derive_seed(seed, "criterion", id as u64)),
        ));
    }

    let start = Instant::now();
    let rows = criteria::comparison_rows();
    push(record(
        10,
        "threshold table crossovers exist",
        None,
        start,
        Ok(criteria::comparison_table(&rows)),
    ));

    let (id, name, limit, check) = CHECKS[9];
    let start = Instant::now();
    push(record(
        id,
        name,
        limit,
        start,
        check(derive_seed(seed, "criterion", id as u64)),
    ));

    let start = Instant::now();
    push(record(
        12,
        "artifacts are byte-identical across runs and thread counts",
        None,
        start,
        determinism(seed),
    ));

    let passed = results.iter().filter(|r| r.pass).count();
    SelftestReport {
        seed,
        passed,
        failed: results.len() - passed,
        criteria: results,
        threshold_rows: rows,
    }
}

/// Artifacts of a small fixed workload, concatenated.
pub fn determinism_bundle(seed: u64) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut put = |label: &str, body: String| {
        out.extend_from_slice(label.as_bytes());
        out.push(b'\n');
        out.extend_from_slice(body.as_bytes());
        out.push(b'\n');
    };
    let spec = EnsembleSpec::Gallager { m: 24, k: 3, d: 6 };
    let inst = commands::gen(&spec, seed)?;
    put("gen", inst.to_json());
    put("solve", to_json(&commands::solve(&inst)?));
    put(
        "dqi",
        to_json(&commands::dqi(&inst, 2, &PolySpec::Optimal, true)?),
    );
    put(
        "qaoa",
        to_json(&commands::qaoa(&inst, &[(0.3, 0.2), (0.1, 0.4)])?),
    );
    let b = commands::probe_matrix(&spec, seed)?;
    put(
        "chaos",
        to_json(&commands::chaos_scan(&b, 3, 0.6, 0.3, 24, seed)?),
    );
    put(
        "ogp",
        to_json(&commands::ogp_scan(
            xorsat::landscape::GallagerParams { m: 24, k: 3, d: 6 },
            0.5,
            0.6,
            0.1,
            0.4,
            24,
            seed,
        )?),
    );
    put(
        "interp",
        to_json(&commands::interp_scan(&b, 3, 4, 0.6, seed)?),
    );
    put(
        "concentration",
        to_json(&commands::concentration(&b, 16, seed)?),
    );
    let rows = commands::thresholds(&[4, 8, 16, 32, 64], 2.0, 1.0);
    put(
        "thresholds",
        thresholds_csv(&rows).map_err(|e| xorsat::Error::InvalidParameter(e.to_string()))?,
    );
    Ok(out)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn in_pool(threads: usize, seed: u64) -> Result<Vec<u8>> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| xorsat::Error::InvalidParameter(e.to_string()))?
        .install(|| determinism_bundle(seed))
}

fn determinism(seed: u64) -> Result<criteria::Outcome> {
    let seed = derive_seed(seed, "criterion", 12);
    let first = in_pool(1, seed)?;
    let again = in_pool(1, seed)?;
    let wide = in_pool(4, seed)?;
    let same_run = first == again;
    let same_threads = first == wide;
    Ok((
        same_run && same_threads,
        json!({"bytes": first.len(), "repeat_identical": same_run, "threads_1_vs_4_identical": same_threads}),
    ))
}

/// Writes `selftest.json`, `thresholds.csv` and `manifest.json` into `dir`.
pub fn write_artifacts(
    report: &SelftestReport,
    dir: &Path,
    manifest: &Value,
) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut json = serde_json::to_string_pretty(report)?;
    json.push('\n');
    std::fs::write(dir.join("selftest.json"), json)?;
    std::fs::write(
        dir.join("thresholds.csv"),
        thresholds_csv(&report.threshold_rows)?,
    )?;
    let rows = &report.threshold_rows;
    let mut manifest = manifest.clone();
    manifest["crossovers"] = json!({
        "amp_fit_over_dqi_bound": amp_crossover(rows, |r| r.amp_fit > r.dqi_bound),
        "mu_top_over_dqi_bound": amp_crossover(rows, |r| r.mu_top > r.dqi_bound),
    });
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    std::fs::write(dir.join("manifest.json"), text)
}
