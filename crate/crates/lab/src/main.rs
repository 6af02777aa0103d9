use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modelspace_core::NormKind;
use modelspace_lab::commands::{
    asymptotic_rows, audit_rows, bernstein_rows, interp_rows, parse_list, trend_summary, InterpOptions,
    TruncChoice,
};
use modelspace_lab::error::{usage, LabError, EXIT_INVARIANT, EXIT_PASS};
use modelspace_lab::rows::{write_rows, OutputFormat, SweepRow};
use modelspace_lab::sigma::SigmaSpec;
use modelspace_lab::verify::{run_verify, VerifyOptions};

/// Model-space Bernstein and interpolation constants.
#[derive(Parser)]
#[command(name = "modelspace", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Bergman,
    Hardy,
}

impl From<Target> for NormKind {
    fn from(t: Target) -> Self {
        match t {
            Target::Bergman => NormKind::Bergman,
            Target::Hardy => NormKind::Hardy,
        }
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Write rows here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SigmaArgs {
    /// `re,im;re,im;...`, `one-point:n=<k>,r=<x>` or `random:n=<k>,r=<x>,count=<m>,seed=<s>`.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["n", "r"])]
    sigma: Option<String>,
    /// Point count for a one-point configuration (with `--r`).
    #[arg(long, requires = "r")]
    n: Option<usize>,
    #[arg(long, requires = "n", allow_hyphen_values = true)]
    r: Option<f64>,
    /// Default seed for random configurations.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Series length `N` or `auto`.
    #[arg(long, default_value = "auto")]
    trunc: TruncChoice,
}

impl SigmaArgs {
    fn spec(&self) -> Result<SigmaSpec, LabError> {
        match (&self.sigma, self.n, self.r) {
            (Some(text), _, _) => SigmaSpec::parse(text, self.seed),
            (None, Some(n), Some(r)) => SigmaSpec::parse(&format!("one-point:n={n},r={r}"), self.seed),
            _ => Err(usage("give --sigma or both --n and --r")),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the invariant suite.
    Verify {
        /// Treat closed-form audits as failures.
        #[arg(long)]
        strict_paper: bool,
        #[arg(long, hide = true, allow_hyphen_values = true)]
        inject_gram_perturbation: Option<f64>,
    },
    /// Bernstein constants with their envelopes.
    Bernstein {
        #[command(flatten)]
        sigma: SigmaArgs,
        #[arg(long, value_enum, default_value_t = Target::Bergman)]
        target: Target,
        #[command(flatten)]
        output: Output,
    },
    /// Interpolation constants and bounds.
    Interp {
        #[command(flatten)]
        sigma: SigmaArgs,
        /// Emit the exact constant (default on).
        #[arg(long, overrides_with = "no_exact")]
        exact: bool,
        #[arg(long)]
        no_exact: bool,
        /// Also emit the projection and one-point lower bounds.
        #[arg(long)]
        bounds: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Normalized one-point constants against their limit.
    Asymptotics {
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        /// Ascending comma-separated point counts.
        #[arg(long)]
        n_list: String,
        #[arg(long, value_enum, default_value_t = Target::Bergman)]
        target: Target,
        #[command(flatten)]
        output: Output,
    },
    /// Closed forms compared with numerics.
    Audit {
        #[arg(long, default_value = "2")]
        n_list: String,
        #[arg(long, default_value = "0.5")]
        r_list: String,
        #[arg(long)]
        strict_paper: bool,
        #[command(flatten)]
        output: Output,
    },
}

fn emit(rows: &[SweepRow], output: &Output) -> Result<(), LabError> {
    match &output.out {
        Some(path) => write_rows(BufWriter::new(File::create(path)?), rows, output.format),
        None => write_rows(io::stdout().lock(), rows, output.format),
    }
}

fn run(cli: Cli) -> Result<u8, LabError> {
    match cli.command {
        Command::Verify { strict_paper, inject_gram_perturbation } => {
            let report = run_verify(&VerifyOptions { strict_paper, inject_gram_perturbation });
            let mut out = io::stdout().lock();
            out.write_all(report.text().as_bytes())?;
            out.flush()?;
            Ok(if report.passed() { EXIT_PASS } else { EXIT_INVARIANT })
        }
        Command::Bernstein { sigma, target, output } => {
            let rows = bernstein_rows(&sigma.spec()?, target.into(), sigma.trunc)?;
            emit(&rows, &output)?;
            Ok(EXIT_PASS)
        }
        Command::Interp { sigma, exact, no_exact, bounds, output } => {
            let opts = InterpOptions { exact: exact || !no_exact, bounds, trunc: sigma.trunc };
            let rows = interp_rows(&sigma.spec()?, opts)?;
            emit(&rows, &output)?;
            let broken: Vec<&SweepRow> = rows
                .iter()
                .filter(|r| r.quantity.bracket_checked() && !r.within_bounds(1e-9))
                .collect();
            for row in &broken {
                eprintln!("bracket violated: {} {} = {}", row.sigma, row.quantity.tag(), row.value);
            }
            Ok(if broken.is_empty() { EXIT_PASS } else { EXIT_INVARIANT })
        }
        Command::Asymptotics { r, n_list, target, output } => {
            let n_list: Vec<usize> = parse_list(&n_list, "n-list")?;
            if n_list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(usage("n-list must be strictly ascending"));
            }
            let (rows, shrinks, ratios) = asymptotic_rows(r, &n_list, target.into())?;
            emit(&rows, &output)?;
            eprint!("{}", trend_summary(&ratios, shrinks));
            Ok(if shrinks { EXIT_PASS } else { EXIT_INVARIANT })
        }
        Command::Audit { n_list, r_list, strict_paper, output } => {
            let n_list: Vec<usize> = parse_list(&n_list, "n-list")?;
            let r_list: Vec<f64> = parse_list(&r_list, "r-list")?;
            let (rows, findings) = audit_rows(&n_list, &r_list)?;
            emit(&rows, &output)?;
            for f in &findings {
                eprintln!("AUDIT {f}");
            }
            Ok(if strict_paper && !findings.is_empty() { EXIT_INVARIANT } else { EXIT_PASS })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
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
