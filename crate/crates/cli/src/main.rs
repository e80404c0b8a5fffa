use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};

use g2orbifold::acceptance;
use g2orbifold::lattice::IntegerLattice;
use g2orbifold::pipeline::{
    catalog, evaluate, flat_model_report, BlockChoice, Config, Kind, Options, OrbifoldSpec,
};

#[derive(Parser)]
#[command(name = "g2orbifold", version, about = "Compact G2 orbifolds from K3 surfaces with ADE singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build one orbifold and print its report.
    Build {
        #[arg(long, value_parser = parse_kind)]
        kind: Option<Kind>,
        /// Node indices kept in E8_1 (`none`, `all`, or e.g. `1,2,3`).
        #[arg(long)]
        keep1: Option<BlockChoice>,
        #[arg(long)]
        keep2: Option<BlockChoice>,
        /// JSON config; command-line flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Skip the per-block comparison of the singularity set.
        #[arg(long)]
        no_crosscheck: bool,
        /// Attach the flat model with cyclic group of this order.
        #[arg(long)]
        flat_n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate every pair of catalog representatives.
    Catalog {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the flat model with cyclic group of order n.
    Flat {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the acceptance suite.
    VerifyAll {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    let k: u8 = s.parse().map_err(|_| format!("kind must be 1 or 2, got {s:?}"))?;
    Kind::try_from(k)
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    match writeln!(out, "{}", text.trim_end()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    emit(&serde_json::to_string_pretty(value)?)
}

fn build_config(
    kind: Option<Kind>,
    keep1: Option<BlockChoice>,
    keep2: Option<BlockChoice>,
    config: Option<PathBuf>,
    no_crosscheck: bool,
    flat_n: Option<usize>,
) -> Result<Config> {
    let base: Option<Config> = match config {
        Some(path) => {
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            Some(serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?)
        }
        None => None,
    };
    let mut cfg = match (base, kind, keep1, keep2) {
        (Some(mut c), kind, k1, k2) => {
            if let Some(kind) = kind {
                c.spec.kind = kind;
            }
            if let Some(k1) = k1 {
                c.spec.keep1 = k1;
            }
            if let Some(k2) = k2 {
                c.spec.keep2 = k2;
            }
            c
        }
        (None, Some(kind), Some(k1), Some(k2)) => Config {
            spec: OrbifoldSpec::new(kind, k1, k2),
            options: Options::default(),
        },
        _ => bail!("build needs --kind, --keep1 and --keep2, or --config"),
    };
    if no_crosscheck {
        cfg.options.crosscheck = false;
    }
    if flat_n.is_some() {
        cfg.options.flat_n = flat_n;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build {
            kind,
            keep1,
            keep2,
            config,
            no_crosscheck,
            flat_n,
            format,
        } => {
            let cfg = build_config(kind, keep1, keep2, config, no_crosscheck, flat_n)?;
            let report = evaluate(&IntegerLattice::k3(), &cfg.spec, &cfg.options)?;
            match format {
                Format::Json => print_json(&report)?,
                Format::Text => emit(&report.to_string())?,
            }
            Ok(if report.valid { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Catalog { kind, format } => {
            let entries = catalog(&IntegerLattice::k3(), kind, &Options::default())?;
            match format {
                Format::Json => print_json(&entries)?,
                Format::Text => {
                    let mut table = format!("{:<5} {:<5} {:>4} {:>4} {:>4} {:>4}  valid\n", "E8_1", "E8_2", "rank", "b2", "b3", "b1N");
                    for e in &entries {
                        let b = &e.report.betti;
                        table += &format!(
                            "{:<5} {:<5} {:>4} {:>4} {:>4} {:>4}  {}\n",
                            e.labels[0],
                            e.labels[1],
                            e.report.total_rank(),
                            b.b2,
                            b.b3,
                            b.b1n,
                            e.report.valid
                        );
                    }
                    emit(&table)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Flat { kind, n, format } => {
            if n == 0 {
                bail!("n must be at least 1");
            }
            let report = flat_model_report(kind, n);
            match format {
                Format::Json => print_json(&report)?,
                Format::Text => emit(&format!("{report:#?}"))?,
            }
            Ok(if report.checks_pass() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::VerifyAll { format } => {
            let results = acceptance::run_all();
            match format {
                Format::Json => print_json(&results)?,
                Format::Text => {
                    let lines: Vec<String> = results.iter().map(ToString::to_string).collect();
                    emit(&lines.join("\n"))?;
                }
            }
            let passed = results.iter().filter(|r| r.passed).count();
            eprintln!("{passed}/{} criteria pass", results.len());
            Ok(if passed == results.len() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
