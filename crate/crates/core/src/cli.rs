//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 usage or parameter error, 3 internal invariant breach.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::complex::{
    build_resolution, verify_complex, verify_homogeneity, verify_minimality, Fault,
};
use crate::error::Error;
use crate::export::{
    macaulay2_script, resolution_text, singular_script, InfoDocument, ResolutionDocument,
};
use crate::modp::DEFAULT_PRIME;
use crate::semigroup::{RepunitParams, RepunitSemigroup};
use crate::verify::{parameter_grid, verify, VerifyConfig, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "repunit",
    version,
    about = "Minimal graded free resolutions of generalized repunit semigroup algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generators, c, Betti numbers, pseudo-Frobenius set and Frobenius number.
    Info(InstanceArgs),
    /// Emit the resolution: shifts and differential matrices.
    Resolve(ResolveArgs),
    /// Run every structural check and the brute-force oracles.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Macaulay2,
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultKind {
    Sign,
    Constant,
    Shift,
    Zero,
}

impl From<FaultKind> for Fault {
    fn from(k: FaultKind) -> Self {
        match k {
            FaultKind::Sign => Fault::SignFlip,
            FaultKind::Constant => Fault::ConstantAdd,
            FaultKind::Shift => Fault::ShiftPerturb,
            FaultKind::Zero => Fault::ZeroLevel,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// Base b (at least 2).
    #[arg(long = "b", allow_negative_numbers = true)]
    pub b: Option<i64>,
    /// Embedding dimension n (at least 2).
    #[arg(long = "n", allow_negative_numbers = true)]
    pub n: Option<i64>,
    /// Step a (at least 1, coprime to 1 + b + ... + b^(n-1)).
    #[arg(long = "a", allow_negative_numbers = true)]
    pub a: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ResolveArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Test hook: corrupt the resolution before the output self-check.
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<FaultKind>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Prime for homology and rank computations.
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    /// Random evaluation points for the rank condition.
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    /// Seed for the evaluation points.
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Degrees scanned past the largest claimed shift (default: largest generator).
    #[arg(long)]
    pub bound_margin: Option<i64>,
    /// Corrupt the built resolution before checking it.
    #[arg(long, value_enum)]
    pub inject_fault: Option<FaultKind>,
    /// Verify every coprime triple of the grid instead of one instance.
    #[arg(long)]
    pub grid: bool,
    #[arg(long, value_delimiter = ',', default_values_t = [2i64, 3])]
    pub grid_b: Vec<i64>,
    #[arg(long, value_delimiter = ',', default_values_t = [2i64, 3, 4, 5])]
    pub grid_n: Vec<i64>,
    #[arg(long, value_delimiter = ',', default_values_t = [1i64, 2, 3, 4, 5, 6, 7, 8])]
    pub grid_a: Vec<i64>,
}

impl InstanceArgs {
    fn params(&self) -> Result<RepunitParams, String> {
        match (self.b, self.n, self.a) {
            (Some(b), Some(n), Some(a)) => Ok(RepunitParams::new(b, n, a)),
            _ => Err("--b, --n and --a are all required".to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match cli.command {
        Command::Info(args) => cmd_info(&args, out, err),
        Command::Resolve(args) => cmd_resolve(&args, out, err),
        Command::Verify(args) => cmd_verify(&args, out, err),
    }
}

fn construct(args: &InstanceArgs, err: &mut dyn Write) -> Result<RepunitSemigroup, i32> {
    let params = args.params().map_err(|msg| {
        let _ = writeln!(err, "error: {msg}");
        EXIT_USAGE
    })?;
    let s = RepunitSemigroup::new(params).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_USAGE
    })?;
    for w in params.warnings() {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(s)
}

fn internal(e: Error, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {e}");
    match e {
        Error::Invariant(_) => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

pub fn cmd_info(args: &InstanceArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let s = match construct(args, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let doc = match InfoDocument::new(&s) {
        Ok(doc) => doc,
        Err(e) => return internal(e, err),
    };
    let text = match args.format {
        Format::Json => doc.to_json(),
        _ => doc.to_text(),
    };
    let _ = write!(out, "{text}");
    EXIT_OK
}

/// Emits the resolution after checking that it is a minimal graded complex;
/// a failed self-check exits with [`EXIT_INVARIANT`].
pub fn cmd_resolve(args: &ResolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let s = match construct(&args.instance, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let mut gc = match build_resolution(&s) {
        Ok(gc) => gc,
        Err(e) => return internal(e, err),
    };
    if let Some(fault) = args.inject_fault {
        gc.inject_fault(fault.into());
    }
    let self_check = verify_complex(&gc)
        .and_then(|()| verify_homogeneity(&gc))
        .and_then(|()| verify_minimality(&gc));
    if let Err(v) = self_check {
        return internal(Error::Invariant(v.to_string()), err);
    }
    let text = match args.instance.format {
        Format::Text => resolution_text(&s, &gc),
        Format::Json => ResolutionDocument::new(&s, &gc).to_json(),
        Format::Macaulay2 => macaulay2_script(&s, &gc),
        Format::Singular => singular_script(&s, &gc),
    };
    let _ = write!(out, "{text}");
    EXIT_OK
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let config = VerifyConfig {
        prime: args.prime,
        trials: args.trials,
        seed: args.seed,
        bound_margin: args.bound_margin,
        fault: args.inject_fault.map(Fault::from),
    };
    if args.grid {
        return verify_grid(args, &config, out, err);
    }
    let s = match construct(&args.instance, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    match verify(&s, &config) {
        Ok(report) => {
            match args.instance.format {
                Format::Json => {
                    let _ = write!(out, "{}", report.to_json());
                }
                _ => {
                    let _ = writeln!(out, "{report}");
                }
            }
            if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Err(e) => internal(e, err),
    }
}

fn verify_grid(
    args: &VerifyArgs,
    config: &VerifyConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let grid = parameter_grid(&args.grid_b, &args.grid_n, &args.grid_a);
    let results: Vec<(RepunitParams, crate::Result<VerifyReport>)> = grid
        .par_iter()
        .map(|&p| (p, RepunitSemigroup::new(p).and_then(|s| verify(&s, config))))
        .collect();
    let _ = writeln!(
        out,
        "{:>4} {:>4} {:>4}  {:>6}  result",
        "b", "n", "a", "checks"
    );
    let mut worst = EXIT_OK;
    for (p, result) in &results {
        match result {
            Ok(report) => {
                let _ = writeln!(
                    out,
                    "{:>4} {:>4} {:>4}  {:>3}/{:<2}  {}",
                    p.b,
                    p.n,
                    p.a,
                    report.passed_count(),
                    report.checks.len(),
                    if report.all_passed() { "PASS" } else { "FAIL" }
                );
                for check in report.checks.iter().filter(|c| !c.passed()) {
                    let _ = writeln!(out, "      {check}");
                }
                if !report.all_passed() {
                    worst = worst.max(EXIT_VERIFY_FAILED);
                }
            }
            Err(e) => {
                let _ = writeln!(out, "{:>4} {:>4} {:>4}  error: {e}", p.b, p.n, p.a);
                let code = if matches!(e, Error::Invariant(_)) {
                    EXIT_INVARIANT
                } else {
                    EXIT_USAGE
                };
                worst = worst.max(code);
            }
        }
    }
    let passed = results
        .iter()
        .filter(|(_, r)| r.as_ref().is_ok_and(VerifyReport::all_passed))
        .count();
    let _ = writeln!(out, "{passed}/{} instances passed", results.len());
    if results.is_empty() {
        let _ = writeln!(err, "error: the grid contains no valid parameter triple");
        return EXIT_USAGE;
    }
    worst
}
