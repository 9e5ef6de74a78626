//! `orbitobs`: command-line front end for the orbitobs toolkit.

mod cache;
mod commands;
mod config;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::{
    EcSpectrumArgs, EcTranslateArgs, LineArgs, OrderSpectrumArgs, Prop4Args, TrichotomyArgs, ZhatArgs,
    ZsigmondyArgs,
};
use crate::config::{OutputFormat, Overrides, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<orbitobs::Error> for CliError {
    fn from(e: orbitobs::Error) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else if matches!(e, orbitobs::Error::Invariant(_)) {
            CliError::Internal(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "orbitobs", version, about = "Orbit intersection certificates for power maps and elliptic curves over Q")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Config file of `key = value` lines with RunConfig fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format; csv is available for order-spectrum and ec-spectrum.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Factorization cache file (overrides ORBITOBS_CACHE).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Upper bound on primes scanned by witness searches.
    #[arg(long, global = true)]
    prime_budget: Option<u64>,
    /// Work budget for factoring cyclotomic values.
    #[arg(long, global = true)]
    factor_effort: Option<u64>,
    /// Largest coordinate size in bits that may be materialized.
    #[arg(long, global = true)]
    bit_cap: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Smallest prime with f_p(λ) = n for each n ≤ nmax.
    OrderSpectrum(OrderSpectrumArgs),
    /// Primitive divisors of a^n − b^n for λ = a/b.
    Zsigmondy(ZsigmondyArgs),
    /// Orbit of P under the d-th power map against A·X^k = B·Y^l.
    Trichotomy(TrichotomyArgs),
    /// Orbit of P against the line A·X + B·Y + C·Z = 0.
    LineIntersect(LineArgs),
    /// Refutation transcript for ξ = v-lim λ^(d^n).
    Prop4(Prop4Args),
    /// Elliptic order spectrum of a nontorsion point.
    EcSpectrum(EcSpectrumArgs),
    /// Congruence test for [d^n]P̄ → T̄ on an elliptic curve.
    EcTranslate(EcTranslateArgs),
    /// Whether d^(r_i) → m in the profinite integers.
    #[command(alias = "zhat")]
    ZhatLimit(ZhatArgs),
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let g = cli.global;
    let cfg = RunConfig::resolve(
        g.config.as_deref(),
        std::env::var_os("ORBITOBS_CACHE").map(PathBuf::from),
        Overrides {
            prime_budget: g.prime_budget,
            factor_effort: g.factor_effort,
            coordinate_bit_cap: g.bit_cap,
            cache_path: g.cache,
            output_format: g.format,
        },
    )?;
    let cache = cache::FactorCache::open(cfg.factorer(), cfg.cache_path.clone());
    let out = match cli.command {
        Command::OrderSpectrum(a) => commands::order_spectrum(a, &cfg, &cache),
        Command::Zsigmondy(a) => commands::zsigmondy(a, &cfg, &cache),
        Command::Trichotomy(a) => commands::trichotomy(a, &cfg),
        Command::LineIntersect(a) => commands::line_intersect(a),
        Command::Prop4(a) => commands::prop4(a, &cfg, &cache),
        Command::EcSpectrum(a) => commands::ec_spectrum(a, &cfg),
        Command::EcTranslate(a) => commands::ec_translate(a, &cfg),
        Command::ZhatLimit(a) => commands::zhat(a),
    };
    if let Err(e) = cache.save() {
        eprintln!("warning: could not write factorization cache: {e}");
    }
    let out = out?;
    print!("{}", out.render(cfg.output_format)?);
    Ok(out.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
