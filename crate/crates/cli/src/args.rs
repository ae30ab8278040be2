use crate::commands::{self, EnsembleSpec, PolySpec};
use crate::output::{csv_rows, emit, manifest, parse_k_range};
use crate::selftest;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};
use std::error::Error;
use std::path::{Path, PathBuf};
use xorsat::landscape::GallagerParams;
use xorsat::XorSatInstance;

type AnyResult<T> = std::result::Result<T, Box<dyn Error + Send + Sync>>;

#[derive(Debug, Parser)]
#[command(name = "xorsat", version, about = "Random MAX-k-XOR-SAT experiments")]
pub struct Cli {
    /// Master seed; every output depends on it and the arguments alone.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file (a directory for `selftest`); a manifest is written next to it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    Gallager,
    Bernoulli,
    RightRegular,
}

/// Parity-check ensemble; `n = rows` and `B = Hᵀ`.
#[derive(Debug, Clone, Args)]
pub struct EnsembleArgs {
    #[arg(long, value_enum, default_value_t = EnsembleKind::Gallager)]
    pub ensemble: EnsembleKind,
    /// Number of clauses (columns of H).
    #[arg(long, default_value_t = 40)]
    pub m: usize,
    /// Column weight of H (clause arity) for Gallager.
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    /// Row weight of H (variable degree) for Gallager and right-regular.
    #[arg(long, default_value_t = 8)]
    pub d: usize,
    /// Rows of H for Bernoulli and right-regular.
    #[arg(long)]
    pub rows: Option<usize>,
    /// Entry probability for Bernoulli.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
}

impl EnsembleArgs {
    pub fn spec(&self) -> AnyResult<EnsembleSpec> {
        let rows = || self.rows.ok_or("--rows is required for this ensemble");
        Ok(match self.ensemble {
            EnsembleKind::Gallager => EnsembleSpec::Gallager {
                m: self.m,
                k: self.k,
                d: self.d,
            },
            EnsembleKind::Bernoulli => EnsembleSpec::Bernoulli {
                m: self.m,
                rows: rows()?,
                p: self.p,
            },
            EnsembleKind::RightRegular => EnsembleSpec::RightRegular {
                m: self.m,
                rows: rows()?,
                d: self.d,
            },
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample an instance and print it as JSON.
    Gen(EnsembleArgs),
    /// Exact optimum by enumeration.
    Solve {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Exact DQI state statistics; CSV emits the summary record only.
    Dqi {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        ell: usize,
        /// `optimal`, `uniform`, or comma-separated monomial coefficients.
        #[arg(long, default_value = "optimal")]
        poly: String,
        /// Include the full amplitude vector.
        #[arg(long)]
        amplitudes: bool,
    },
    /// QAOA expectation by statevector simulation.
    Qaoa {
        #[arg(long)]
        instance: PathBuf,
        /// `gamma:beta` pairs, comma separated, one per layer.
        #[arg(long, default_value = "0.25:0.25")]
        layers: String,
    },
    /// Threshold comparison table.
    Thresholds {
        /// `lo:hi:*factor`, `lo:hi:+step`, or a comma list.
        #[arg(long, default_value = "4:1048576:*2")]
        k: String,
        #[arg(long, default_value_t = 2.0)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        c_star: f64,
    },
    /// Overlap-gap probe on correlated Gallager instances.
    OgpScan {
        #[arg(long, default_value_t = 40)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        d: usize,
        #[arg(long, default_value_t = 0.5)]
        kappa: f64,
        /// Comma-separated thresholds; one row each.
        #[arg(long, default_value = "0.6,0.65,0.7,0.75,0.8")]
        mu: String,
        #[arg(long, default_value_t = 0.1)]
        nu1: f64,
        #[arg(long, default_value_t = 0.3)]
        nu2: f64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Chaos probe on independent parities of one matrix.
    ChaosScan {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[arg(long, default_value_t = 3)]
        replicas: usize,
        #[arg(long, default_value = "0.6,0.65,0.7,0.75,0.8")]
        mu: String,
        #[arg(long, default_value_t = 0.3)]
        nu2: f64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Minimum overlaps along an interpolation path.
    InterpScan {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[arg(long, default_value_t = 3)]
        replicas: usize,
        #[arg(long, default_value_t = 8)]
        steps: usize,
        #[arg(long, default_value_t = 0.8)]
        mu: f64,
    },
    /// Distance of a sampled code and of its leading rows.
    CodeReport {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        /// Fraction of rows kept, as `p/q`.
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        #[arg(long, default_value_t = 8)]
        w_max: usize,
    },
    /// Run the twelve acceptance checks.
    Selftest,
}

fn read_instance(path: &Path) -> AnyResult<XorSatInstance> {
    Ok(XorSatInstance::from_json(&std::fs::read_to_string(path)?)?)
}

fn parse_list<T: std::str::FromStr>(s: &str) -> AnyResult<Vec<T>>
where
    T::Err: Error + Send + Sync + 'static,
{
    Ok(s.split(',')
        .map(|t| t.trim().parse::<T>())
        .collect::<Result<_, _>>()?)
}

fn parse_ratio(s: &str) -> AnyResult<Ratio<usize>> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let q: usize = q.trim().parse()?;
    if q == 0 {
        return Err("zero denominator".into());
    }
    Ok(Ratio::new(p.trim().parse()?, q))
}

/// Serialized body in the requested format. CSV needs flat rows.
fn render<T: Serialize>(format: Format, rows: &[T], single: bool) -> AnyResult<String> {
    Ok(match format {
        Format::Csv => csv_rows(rows)?,
        Format::Json if single => pretty(&rows[0]),
        Format::Json => pretty(&rows),
    })
}

fn pretty<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn json_only(format: Format, what: &str) -> AnyResult<()> {
    if format == Format::Csv {
        return Err(format!("{what} output is nested; use --format json").into());
    }
    Ok(())
}

/// Runs one command. Returns whether it succeeded in the sense of its exit
/// status (the self-test fails when any check fails).
pub fn execute(cli: &Cli) -> AnyResult<bool> {
    let seed = cli.seed;
    let (name, config, body): (&str, Value, String) = match &cli.command {
        Command::Gen(e) => {
            json_only(cli.format, "gen")?;
            let spec = e.spec()?;
            let inst = commands::gen(&spec, seed)?;
            ("gen", json!(spec), inst.to_json() + "\n")
        }
        Command::Solve { instance } => {
            let out = commands::solve(&read_instance(instance)?)?;
            (
                "solve",
                json!({"instance": instance}),
                render(cli.format, &[out], true)?,
            )
        }
        Command::Dqi {
            instance,
            ell,
            poly,
            amplitudes,
        } => {
            let spec = match poly.as_str() {
                "optimal" => PolySpec::Optimal,
                "uniform" => PolySpec::UniformW,
                list => PolySpec::Coefficients(parse_list(list)?),
            };
            let out = commands::dqi(&read_instance(instance)?, *ell, &spec, *amplitudes)?;
            let body = match cli.format {
                Format::Json => pretty(&out),
                Format::Csv => csv_rows(&[out.record])?,
            };
            (
                "dqi",
                json!({"instance": instance, "ell": ell, "poly": spec}),
                body,
            )
        }
        Command::Qaoa { instance, layers } => {
            let layers = layers
                .split(',')
                .map(|pair| {
                    let (g, b) = pair
                        .split_once(':')
                        .ok_or_else(|| format!("expected gamma:beta, got {pair:?}"))?;
                    Ok((g.trim().parse()?, b.trim().parse()?))
                })
                .collect::<AnyResult<Vec<(f64, f64)>>>()?;
            let out = commands::qaoa(&read_instance(instance)?, &layers)?;
            (
                "qaoa",
                json!({"instance": instance, "layers": layers}),
                render(cli.format, &[out], true)?,
            )
        }
        Command::Thresholds { k, lambda, c_star } => {
            let ks = parse_k_range(k)?;
            let rows = commands::thresholds(&ks, *lambda, *c_star);
            let config = json!({"k": ks, "lambda": lambda, "c_star": c_star});
            ("thresholds", config, render(cli.format, &rows, false)?)
        }
        Command::OgpScan {
            m,
            k,
            d,
            kappa,
            mu,
            nu1,
            nu2,
            trials,
        } => {
            let params = GallagerParams {
                m: *m,
                k: *k,
                d: *d,
            };
            let config = json!({"m": m, "k": k, "d": d, "kappa": kappa, "nu1": nu1, "nu2": nu2, "trials": trials});
            let rows = parse_list::<f64>(mu)?
                .into_iter()
                .map(|mu| {
                    Ok(commands::ogp_scan(
                        params, *kappa, mu, *nu1, *nu2, *trials, seed,
                    )?)
                })
                .collect::<AnyResult<Vec<_>>>()?;
            ("ogp-scan", config, render(cli.format, &rows, false)?)
        }
        Command::ChaosScan {
            ensemble,
            replicas,
            mu,
            nu2,
            trials,
        } => {
            let spec = ensemble.spec()?;
            let b = commands::probe_matrix(&spec, seed)?;
            let rows = parse_list::<f64>(mu)?
                .into_iter()
                .map(|mu| {
                    Ok(commands::chaos_scan(
                        &b, *replicas, mu, *nu2, *trials, seed,
                    )?)
                })
                .collect::<AnyResult<Vec<_>>>()?;
            let config =
                json!({"matrix": spec, "replicas": replicas, "nu2": nu2, "trials": trials});
            ("chaos-scan", config, render(cli.format, &rows, false)?)
        }
        Command::InterpScan {
            ensemble,
            replicas,
            steps,
            mu,
        } => {
            let spec = ensemble.spec()?;
            let b = commands::probe_matrix(&spec, seed)?;
            let rows = commands::interp_scan(&b, *replicas, *steps, *mu, seed)?;
            let config = json!({"matrix": spec, "replicas": replicas, "steps": steps, "mu": mu});
            ("interp-scan", config, render(cli.format, &rows, false)?)
        }
        Command::CodeReport {
            ensemble,
            epsilon,
            w_max,
        } => {
            json_only(cli.format, "code-report")?;
            let spec = ensemble.spec()?;
            let out = commands::code_report(&spec.sample_h(seed)?, parse_ratio(epsilon)?, *w_max)?;
            (
                "code-report",
                json!({"matrix": spec, "epsilon": epsilon, "w_max": w_max}),
                pretty(&out),
            )
        }
        Command::Selftest => return run_selftest(cli),
    };
    emit(
        &body,
        cli.out.as_deref(),
        &manifest(name, config, seed, cli.threads),
    )?;
    Ok(true)
}

fn run_selftest(cli: &Cli) -> AnyResult<bool> {
    let report = selftest::run(cli.seed, |r, elapsed| {
        println!(
            "criterion {:>2} {} ({:.1}s): {}",
            r.id,
            if r.pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            r.name
        );
    });
    println!("{} passed, {} failed", report.passed, report.failed);
    if let Some(dir) = &cli.out {
        let m = manifest("selftest", json!({}), cli.seed, cli.threads);
        selftest::write_artifacts(&report, dir, &m)?;
    }
    Ok(report.all_passed())
}
