//! Command-line interface of the `freecsp` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use freecsp::affine::{
    irreducibility_certificate, smallest_prime_congruent_one, two_generation_certificate,
    AffineParams, Gamma,
};
use freecsp::congruence::{certify, spot_check, CongruenceInput, NOracle};
use freecsp::{FiniteQuotient, SchreierSystem};
use serde_json::json;

use crate::runner::{check_rng, run_suite, RunOptions, Suite};

#[derive(Debug, Parser)]
#[command(name = "freecsp", version, about = "Reproducible checks for free-group automorphism computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
    /// Certificates for the explicit congruence subgroup M.
    #[command(subcommand)]
    Congruence(CongruenceCommand),
    /// Two-generation and irreducibility certificates for the affine construction.
    #[command(subcommand)]
    Affine(AffineCommand),
    /// Schreier systems of finite quotients.
    #[command(subcommand)]
    Quotients(QuotientsCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include a timestamp and per-check durations (the report is then no
    /// longer reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum CongruenceCommand {
    Certify(CongruenceArgs),
}

#[derive(Debug, Args)]
pub struct CongruenceArgs {
    /// Finite quotient of the free group on {alpha, beta} whose base-point
    /// stabilizer is K. Defaults to K = the whole group.
    #[arg(long)]
    pub k_quotient: Option<PathBuf>,
    #[arg(long)]
    pub p: u64,
    /// Number of spot-check samples.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum AffineCommand {
    Certify(AffineArgs),
}

#[derive(Debug, Args)]
pub struct AffineArgs {
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub p: Option<u64>,
    /// Element of order r in F_p; the smallest one when omitted.
    #[arg(long)]
    pub xi: Option<u64>,
    /// Use the smallest prime p ≡ 1 mod r when --p is omitted.
    #[arg(long)]
    pub find_p: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum QuotientsCommand {
    Schreier(SchreierArgs),
}

#[derive(Debug, Args)]
pub struct SchreierArgs {
    #[arg(long)]
    pub quotient: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(value: &serde_json::Value, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(&text, out)
}

fn read_quotient(path: &Path) -> Result<FiniteQuotient> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    FiniteQuotient::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn exit(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

pub fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let report = run_suite(args.suite, RunOptions { seed: args.seed, timings: args.timings });
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    emit(&text, args.out.as_deref())?;
    Ok(exit(report.passed()))
}

pub fn congruence_certify(args: &CongruenceArgs) -> Result<ExitCode> {
    let input = match &args.k_quotient {
        Some(path) => CongruenceInput::new(&read_quotient(path)?, args.p)?,
        None => CongruenceInput::trivial(args.p)?,
    };
    let n = NOracle::build(&input)?;
    let certificate = certify(&n);
    let mut rng = check_rng(args.seed, "congruence.certify");
    let spot = spot_check(&n, args.samples, &mut rng)?;
    let passed = certificate.divides && spot.passed();
    emit_json(
        &json!({ "certificate": certificate, "spotCheck": spot, "passed": passed }),
        args.out.as_deref(),
    )?;
    Ok(exit(passed))
}

pub fn affine_certify(args: &AffineArgs) -> Result<ExitCode> {
    let p = match (args.p, args.find_p) {
        (Some(p), _) => p,
        (None, true) => smallest_prime_congruent_one(args.r),
        (None, false) => bail!("--p is required unless --find-p is given"),
    };
    let params = AffineParams::new(args.r, p, args.xi)?;
    let irreducibility = irreducibility_certificate(&params);
    let two_generation = two_generation_certificate(&params);
    let passed = irreducibility.irreducible && two_generation.passed(&params);
    emit_json(
        &json!({
            "params": params,
            "gammaOrder": Gamma::new(params).order().to_string(),
            "irreducibility": irreducibility,
            "twoGeneration": two_generation,
            "passed": passed,
        }),
        args.out.as_deref(),
    )?;
    Ok(exit(passed))
}

pub fn quotients_schreier(args: &SchreierArgs) -> Result<ExitCode> {
    let q = read_quotient(&args.quotient)?;
    let s = SchreierSystem::new(&q);
    let words = |ws: &[freecsp::Word]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>();
    emit_json(
        &json!({
            "index": s.index(),
            "rank": s.rank(),
            "transversal": words(s.transversal()),
            "generators": s
                .subgroup_alphabet()
                .names()
                .iter()
                .zip(words(s.generators()))
                .map(|(name, w)| json!({ "name": name, "word": w }))
                .collect::<Vec<_>>(),
            "cosetTable": s.coset_table(),
        }),
        args.out.as_deref(),
    )?;
    Ok(ExitCode::SUCCESS)
}

pub fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Verify(args) => verify(args),
        Command::Congruence(CongruenceCommand::Certify(args)) => congruence_certify(args),
        Command::Affine(AffineCommand::Certify(args)) => affine_certify(args),
        Command::Quotients(QuotientsCommand::Schreier(args)) => quotients_schreier(args),
    }
}
