use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mellint::harness::config::RunConfig;
use mellint::harness::selftest::{selftest_with, QUICK_DIGITS};
use mellint::harness::{export, list_identities, sweep, verify, Format, IdentityId, Params, Summary, VerificationReport};
use mellint::{BigReal, PrecisionContext};

const EXIT_FAILED: u8 = 2;
const EXIT_ERROR: u8 = 3;

/// High-precision numerical verification of elliptic-integral identities.
#[derive(Debug, Parser)]
#[command(name = "mellint", version)]
struct Cli {
    /// Working precision in significant decimal digits.
    #[arg(long, global = true)]
    digits: Option<u32>,
    /// Pass tolerance, overriding 10^-(digits-15).
    #[arg(long, global = true)]
    tol: Option<String>,
    /// Highest quadrature refinement level.
    #[arg(long, global = true)]
    level_cap: Option<u32>,
    /// key=value config file; defaults to the file named by MELLINT_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the identity catalog.
    List,
    /// Verify one identity.
    Verify {
        /// Identity id, e.g. I1, I1-ext, I6.
        id: String,
        /// Parameter value, e.g. --param a=0.5 (repeatable).
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Verify one identity along a grid of one parameter.
    Sweep {
        id: String,
        /// Name of the swept parameter.
        #[arg(long)]
        param: String,
        /// Grid as lo:hi:steps, endpoints included.
        #[arg(long, value_name = "LO:HI:STEPS")]
        range: String,
        /// Value of another parameter held fixed, e.g. --fixed b=1 (repeatable).
        #[arg(long = "fixed", value_name = "NAME=VALUE")]
        fixed: Vec<String>,
        /// Write the reports here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report format; defaults to the extension of --out, else csv.
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Run the built-in property suite.
    Selftest {
        /// Run at 30 digits.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let file = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::from_env()?.unwrap_or_default(),
    };
    let flags = RunConfig { digits: cli.digits, tol: cli.tol.clone(), level_cap: cli.level_cap };
    let settings = file.overlay(flags);
    match cli.command {
        Command::List => {
            list();
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { id, params, format } => {
            let ctx = settings.context()?;
            let id: IdentityId = id.parse()?;
            let params = parse_params(&params, &ctx)?;
            let report = verify(id, &params, &ctx)?;
            emit(&[report.clone()], format, None)?;
            Ok(outcome(report.passed))
        }
        Command::Sweep { id, param, range, fixed, out, format } => {
            let ctx = settings.context()?;
            let id: IdentityId = id.parse()?;
            let fixed = parse_params(&fixed, &ctx)?;
            let (lo, hi, steps) = parse_range(&range, &ctx)?;
            let reports = sweep(id, &param, &lo, &hi, steps, &fixed, &ctx)?;
            let format = format.unwrap_or_else(|| match out.as_ref().and_then(|p| p.extension()) {
                Some(ext) if ext.eq_ignore_ascii_case("json") => OutputFormat::Json,
                _ => OutputFormat::Csv,
            });
            emit(&reports, format, out.as_ref())?;
            if out.is_some() {
                let passed = reports.iter().filter(|r| r.passed).count();
                eprintln!("{passed}/{} passed", reports.len());
            }
            Ok(outcome(reports.iter().all(|r| r.passed)))
        }
        Command::Selftest { quick } => {
            let settings = if quick { settings.overlay(RunConfig { digits: Some(QUICK_DIGITS), ..Default::default() }) } else { settings };
            let ctx = settings.context()?;
            println!("selftest at {} digits", ctx.digits());
            let report = selftest_with(&ctx, |c| {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                println!("{mark} {:<30} {:>9.2} s  {}", c.name, c.wall_time.as_secs_f64(), c.detail);
            });
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            println!(
                "{} checks, {failed} failed, {:.2} s",
                report.checks.len(),
                report.wall_time.as_secs_f64()
            );
            Ok(outcome(report.passed()))
        }
    }
}

fn outcome(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}

fn list() {
    println!("{:<7} {:<22} {:<48} right-hand side", "id", "parameters", "identity");
    for rec in list_identities() {
        let params: Vec<String> = rec.params.iter().map(|p| p.to_string()).collect();
        let params = if params.is_empty() { "-".to_string() } else { params.join(", ") };
        println!("{:<7} {:<22} {:<48} {}", rec.id.label(), params, rec.title, rec.rhs_text);
    }
}

fn parse_params(raw: &[String], ctx: &PrecisionContext) -> Result<Params> {
    raw.iter()
        .map(|item| {
            let (name, value) = item.split_once('=').ok_or_else(|| anyhow!("expected NAME=VALUE, got `{item}`"))?;
            Ok((name.trim().to_string(), ctx.parse(value)?))
        })
        .collect()
}

fn parse_range(raw: &str, ctx: &PrecisionContext) -> Result<(BigReal, BigReal, u32)> {
    let parts: Vec<&str> = raw.split(':').collect();
    let [lo, hi, steps] = parts.as_slice() else {
        bail!("expected LO:HI:STEPS, got `{raw}`");
    };
    let steps = steps.trim().parse().with_context(|| format!("bad step count `{steps}`"))?;
    Ok((ctx.parse(lo)?, ctx.parse(hi)?, steps))
}

fn emit(reports: &[VerificationReport], format: OutputFormat, out: Option<&PathBuf>) -> Result<()> {
    let bytes = match format {
        OutputFormat::Json => export(reports, Format::Json)?,
        OutputFormat::Csv => export(reports, Format::Csv)?,
        OutputFormat::Text => reports.iter().map(|r| format!("{}\n", Summary(r))).collect::<String>().into_bytes(),
    };
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display())),
        None => {
            std::io::stdout().write_all(&bytes)?;
            Ok(())
        }
    }
}
