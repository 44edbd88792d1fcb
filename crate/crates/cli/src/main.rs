//! Command-line front end: zeros, Lommel polynomials, interlacing reports,
//! common-zero orders, Wronskian checks, trajectories and slope limits.

mod commands;
mod config;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bessel_interlace::Error;
use clap::{Args, Parser, Subcommand};

use commands::{CommonZeroQuery, FamilyArg, Output, ZeroKind};
use config::{Format, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "bessel-interlace", version, about = "Zeros, Lommel polynomials and interlacing of Bessel functions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Zero residual tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// key = value settings; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Diagnostics on stderr and full violation lists
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Positive zeros of J, Y, C or J'
    Zeros {
        #[arg(long, value_enum)]
        kind: ZeroKind,
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        count: usize,
    },
    /// Coefficients or positive roots of R_{m,nu} (R*_{m,nu} with --assoc)
    Lommel {
        #[arg(long)]
        m: i32,
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        #[arg(long)]
        assoc: bool,
        #[arg(long)]
        roots: bool,
    },
    /// Interlacing report over the first k base zeros
    Interlace {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        m: i32,
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: Option<f64>,
        /// Check the plain pattern against the higher-order zeros alone
        #[arg(long)]
        plain: bool,
    },
    /// Orders at which J_nu and J_{nu+m} share a zero
    CommonZero {
        #[arg(long)]
        m: i32,
        #[arg(long, requires = "bracket")]
        l: Option<usize>,
        #[arg(long, requires_all = ["l", "bracket"])]
        k: Option<usize>,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true, conflicts_with = "scan")]
        bracket: Option<Vec<f64>>,
        #[arg(long, requires_all = ["nu_max", "k_max"])]
        scan: bool,
        #[arg(long, requires = "scan")]
        nu_max: Option<f64>,
        #[arg(long, requires = "scan")]
        k_max: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Wronskian of J_nu and R_{m-1,nu+1} J_{nu+m}, directly and as a series
    Wronskian {
        #[arg(long)]
        m: i32,
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        #[arg(long)]
        x: f64,
        /// Series truncation
        #[arg(long = "N")]
        n: Option<usize>,
        /// Use J'_nu and R*_{m,nu} J_{nu+m}
        #[arg(long)]
        deriv: bool,
    },
    /// Zero trajectories in the (nu, x)-plane
    Trajectory {
        #[arg(long)]
        m: i32,
        #[arg(long, allow_negative_numbers = true)]
        nu_from: f64,
        #[arg(long)]
        nu_to: f64,
        #[arg(long)]
        step: f64,
        #[arg(long, default_value_t = 5)]
        k_max: usize,
        #[arg(long, default_value_t = 3)]
        l_max: usize,
    },
    /// Large-order slope limits of the Lommel roots of degree n
    Eta {
        #[arg(long)]
        n: i32,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn run_config(g: &Global, truncation: Option<usize>) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::default();
    if let Some(p) = &g.config {
        cfg.apply_file(p).map_err(|e| format!("--config: {e}"))?;
    }
    if let Some(f) = g.format {
        cfg.format = f;
    }
    if let Some(o) = &g.out {
        cfg.out = Some(o.clone());
    }
    if let Some(t) = g.tol {
        cfg.zero_tol = t;
    }
    if let Some(j) = g.jobs {
        cfg.jobs = Some(j);
    }
    if let Some(n) = truncation {
        cfg.truncation = n;
    }
    cfg.verbose |= g.verbose;
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn dispatch(cmd: Command, cfg: &RunConfig) -> Result<Output, Error> {
    match cmd {
        Command::Zeros { kind, nu, alpha, count } => commands::zeros(kind, nu, alpha, count, cfg),
        Command::Lommel { m, nu, assoc, roots } => commands::lommel(m, nu, assoc, roots, cfg),
        Command::Interlace { family, m, nu, k, alpha, plain } => {
            commands::interlace(family, m, nu, k, alpha, plain, cfg)
        }
        Command::CommonZero { m, l, k, bracket, nu_max, k_max, alpha, .. } => {
            let query = match (bracket, l, k) {
                (Some(b), Some(l), Some(k)) => CommonZeroQuery::Single { l, k, lo: b[0], hi: b[1] },
                (Some(b), _, _) => CommonZeroQuery::Bracket { lo: b[0], hi: b[1] },
                (None, _, _) => CommonZeroQuery::Scan { nu_max: nu_max.unwrap_or(0.0), k_max: k_max.unwrap_or(0) },
            };
            commands::common_zero(m, query, alpha)
        }
        Command::Wronskian { m, nu, x, deriv, .. } => commands::wronskian(m, nu, x, deriv, cfg),
        Command::Trajectory { m, nu_from, nu_to, step, k_max, l_max } => {
            commands::trajectory(m, nu_from, nu_to, step, k_max, l_max)
        }
        Command::Eta { n } => commands::eta(n),
    }
}

fn emit(out: &Output, cfg: &RunConfig) -> std::io::Result<()> {
    let text = match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Csv => out.table.render(),
    };
    match &cfg.out {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let truncation = match &cli.command {
        Command::Wronskian { n, .. } => *n,
        _ => None,
    };
    let cfg = match run_config(&cli.global, truncation) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Some(j) = cfg.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    if cfg.verbose {
        eprintln!("{cfg:?}");
    }
    let out = match dispatch(cli.command, &cfg) {
        Ok(o) => o,
        Err(e @ Error::Domain(_)) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    };
    if let Err(e) = emit(&out, &cfg) {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(EXIT_FAIL);
    }
    if cfg.verbose {
        for n in &out.notes {
            eprintln!("{n}");
        }
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        if !cfg.verbose {
            for n in &out.notes {
                eprintln!("{n}");
            }
        }
        eprintln!("verification failed");
        ExitCode::from(EXIT_FAIL)
    }
}
