//! Command-line front end: polynomial printing, verification suites, and
//! vanishing-integral families with JSON reports.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use bcsym::cli::{self, mbasis_json, ParamsFile, ReportFile, ReportHeader, SuiteConfig};
use bcsym::error::Error;
use bcsym::interpolation::Caches;
use bcsym::koornwinder::{koorn_poly, KoornParams};
use bcsym::lifting::{lifted_interp, lifted_koorn};
use bcsym::partitions::Partition;
use bcsym::scalar::{Params, Scalar};

#[derive(Parser)]
#[command(name = "bcsym", version, about = "Exact BC_n interpolation and Koornwinder polynomials with machine-verified identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SuiteArgs {
    /// Maximum partition size
    #[arg(long, default_value_t = 4)]
    max_size: u32,
    /// Maximum number of variables
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    /// Truncation order for series checks
    #[arg(long, default_value_t = 3)]
    series_order: usize,
    /// Number of random specializations
    #[arg(long, default_value_t = 1)]
    spec_count: u64,
    /// Seed for the guarded random draws
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Fail on advisory (open-conjecture) mismatches too
    #[arg(long)]
    strict: bool,
    /// Worker threads (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
    /// Report output path (JSON)
    #[arg(long, alias = "report")]
    out: Option<PathBuf>,
    /// JSON config file mirroring these flags (flags take precedence)
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print an interpolation polynomial as an m-basis coefficient map
    Interp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: String,
        /// Half-parameter of q (q = qh²)
        #[arg(long)]
        qh: Scalar,
        /// Half-parameter of t (t = th²)
        #[arg(long)]
        th: Scalar,
        /// Spectral parameter
        #[arg(long)]
        s: Scalar,
    },
    /// Print a Koornwinder polynomial as an m-basis coefficient map
    Koorn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: String,
        /// JSON file with qh, th, r = [r0..r3]
        #[arg(long)]
        params_file: PathBuf,
    },
    /// Print lifted symmetric-function family members
    Lift {
        #[command(subcommand)]
        which: LiftCommand,
    },
    /// Run a verification suite
    Verify {
        /// cnorm | interp-core | interp | hyperg | koorn | lifting
        module: String,
        /// For `lifting`: t0 | generic | all
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        args: SuiteArgs,
    },
    /// Run a vanishing-integral family
    Vanishing {
        /// usp | uo | t0 | schur | ograss | spgrass | ugrass1 | ugrass2 | o1 | o2 | dm
        #[arg(long)]
        family: String,
        #[command(flatten)]
        args: SuiteArgs,
    },
}

#[derive(Subcommand)]
enum LiftCommand {
    /// Lifted interpolation polynomial
    Interp {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        qh: Scalar,
        #[arg(long)]
        th: Scalar,
        #[arg(long)]
        s: Scalar,
        #[arg(long, name = "T")]
        cap_t: Scalar,
    },
    /// Lifted Koornwinder polynomial
    Koorn {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        params_file: PathBuf,
    },
}

fn parse_partition(text: &str) -> Result<Partition, Error> {
    text.parse()
}

fn merge_config(args: &SuiteArgs) -> Result<SuiteConfig, Error> {
    let mut cfg = if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ConfigError(format!("read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::ConfigError(format!("parse {}: {e}", path.display())))?
    } else {
        SuiteConfig::default()
    };
    // flags override file values when explicitly provided; clap defaults
    // make this a plain overwrite, which matches the documented precedence
    cfg.max_size = args.max_size;
    cfg.max_n = args.max_n;
    cfg.series_order = args.series_order;
    cfg.spec_count = args.spec_count;
    cfg.seed = args.seed;
    cfg.strict = args.strict;
    cfg.threads = args.threads;
    Ok(cfg)
}

fn run_and_report(suites: &[String], args: &SuiteArgs) -> Result<ExitCode, Error> {
    let cfg = merge_config(args)?;
    let started = Instant::now();
    let mut items = Vec::new();
    let mut all_pass = true;
    for suite in suites {
        let report = cli::run_suite(suite, &cfg)?;
        all_pass &= if cfg.strict {
            report.all_pass_strict()
        } else {
            report.all_pass()
        };
        for item in &report.items {
            if !item.equal {
                eprintln!(
                    "{} {} [{}]: {} != {}",
                    if item.advisory { "ADVISORY" } else { "FAIL" },
                    item.identity,
                    item.shapes,
                    item.lhs,
                    item.rhs
                );
            }
        }
        items.extend(report.items);
    }
    let elapsed = started.elapsed();
    let passed = items.iter().filter(|c| c.equal).count();
    println!(
        "{} checks, {} passed, {} failed ({} advisory), {:.2?}",
        items.len(),
        passed,
        items.len() - passed,
        items.iter().filter(|c| !c.equal && c.advisory).count(),
        elapsed
    );
    if let Some(path) = &args.out {
        let file = ReportFile {
            header: ReportHeader {
                version: cli::VERSION.to_string(),
                suite: suites.join(","),
                seed: cfg.seed,
                timestamp: httpdate_now(),
                elapsed_ms: elapsed.as_millis(),
            },
            items,
        };
        cli::write_report(path, &file)?;
        println!("report written to {}", path.display());
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn httpdate_now() -> String {
    use std::time::{SystemTime, UNIX_EPOCH};
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}

fn real_main() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Interp { n, lambda, qh, th, s } => {
            let lam = parse_partition(&lambda)?;
            let params = Params::builder().q_half(qh).t_half(th).s(s).build()?;
            let cx = Caches::new();
            let poly =
                bcsym::interpolation::interp_poly(&cx, n, &lam, params.s(), params.q(), params.t())?;
            println!("{}", mbasis_json(&poly.to_mbasis()?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Koorn { n, lambda, params_file } => {
            let lam = parse_partition(&lambda)?;
            let text = std::fs::read_to_string(&params_file)
                .map_err(|e| Error::ConfigError(format!("read {}: {e}", params_file.display())))?;
            let pf: ParamsFile = serde_json::from_str(&text)
                .map_err(|e| Error::ConfigError(format!("parse params file: {e}")))?;
            let params = pf.to_params()?;
            let kp = KoornParams::from_params(&params)?;
            let cx = Caches::new();
            let poly = koorn_poly(&cx, n, &lam, &kp)?;
            println!("{}", mbasis_json(&poly.to_mbasis()?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Lift { which } => {
            let cx = Caches::new();
            match which {
                LiftCommand::Interp { lambda, qh, th, s, cap_t } => {
                    let lam = parse_partition(&lambda)?;
                    let params = Params::builder()
                        .q_half(qh)
                        .t_half(th)
                        .s(s)
                        .cap_t(cap_t)
                        .build()?;
                    let f = lifted_interp(
                        &cx,
                        &lam,
                        params.cap_t(),
                        params.s(),
                        params.q(),
                        params.t(),
                    )?;
                    println!("{}", mbasis_json(&f.coeffs));
                }
                LiftCommand::Koorn { lambda, params_file } => {
                    let lam = parse_partition(&lambda)?;
                    let text = std::fs::read_to_string(&params_file).map_err(|e| {
                        Error::ConfigError(format!("read {}: {e}", params_file.display()))
                    })?;
                    let pf: ParamsFile = serde_json::from_str(&text)
                        .map_err(|e| Error::ConfigError(format!("parse params file: {e}")))?;
                    let params = pf.to_params()?;
                    let kp = KoornParams::from_params(&params)?;
                    let f = lifted_koorn(&cx, &lam, params.cap_t(), &kp)?;
                    println!("{}", mbasis_json(&f.coeffs));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { module, suite, args } => {
            let suites: Vec<String> = match module.as_str() {
                "lifting" => match suite.as_str() {
                    "t0" => vec!["lifting-t0".into()],
                    "generic" => vec!["lifting-generic".into()],
                    "all" => vec!["lifting-generic".into(), "lifting-t0".into()],
                    other => {
                        return Err(Error::ConfigError(format!(
                            "unknown lifting suite {other:?}"
                        )))
                    }
                },
                "interp" => match suite.as_str() {
                    "core" => vec!["interp-core".into()],
                    "identities" => vec!["interp".into()],
                    "all" => vec!["interp-core".into(), "interp".into()],
                    other => {
                        return Err(Error::ConfigError(format!(
                            "unknown interp suite {other:?}"
                        )))
                    }
                },
                m @ ("cnorm" | "hyperg" | "koorn") => vec![m.to_string()],
                other => {
                    return Err(Error::ConfigError(format!("unknown module {other:?}")))
                }
            };
            run_and_report(&suites, &args)
        }
        Command::Vanishing { family, args } => {
            let suites = vec![format!("vanishing-{family}")];
            run_and_report(&suites, &args)
        }
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
