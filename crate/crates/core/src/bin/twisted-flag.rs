use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use twisted_flag::report::{
    cmd_check, cmd_cohomology, cmd_generate, cmd_isotropy, cmd_verify, enumeration_records,
    enumeration_summary, load_input, Report, RunConfig,
};
use twisted_flag::{Error, Result};

/// Cone condition, isotropy, numerical certification and cohomology for
/// double-sided torus actions on SU(3).
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Command {
    /// Cone condition, (N), (R), (C) and the interpolation path.
    Check,
    /// Freeness, classification and isotropy of singular strata.
    Isotropy,
    /// Certify the transverse Kähler structure at sampled points.
    Verify,
    /// Weights from cone data {"A", "B"}.
    Generate,
    /// Stream all weight systems in [-bound, bound] satisfying the cone condition.
    Enumerate,
    /// Basic, de Rham and Dolbeault tables.
    Cohomology,
}

#[derive(Args)]
struct Opts {
    /// Weight system or cone data: inline JSON or a file path.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Residual tolerance for level-set points.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    tol_zero: Option<f64>,
    #[arg(long, global = true)]
    tol_pos: Option<f64>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    bound: Option<i64>,
    /// Interpolation samples t = k/n, k = 0..=n.
    #[arg(long, global = true)]
    steps: Option<u32>,
    /// β = (p/q)·x2 + (r/s)·x3 as "p/q,r/s".
    #[arg(long, global = true)]
    beta: Option<String>,
    /// Use a β on the degeneracy locus (coefficients in Q(√-3)).
    #[arg(long, global = true)]
    degenerate: bool,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

impl Opts {
    fn run_config(&self) -> Result<RunConfig> {
        let mut c = RunConfig::default();
        if let Some(arg) = &self.config {
            c.input = Some(serde_json::to_value(load_input(arg)?)?);
        }
        c.tol_residual = self.tol.unwrap_or(c.tol_residual);
        c.tol_zero = self.tol_zero.unwrap_or(c.tol_zero);
        c.tol_pos = self.tol_pos.unwrap_or(c.tol_pos);
        c.samples = self.samples.unwrap_or(c.samples);
        c.seed = self.seed.unwrap_or(c.seed);
        c.bound = self.bound.unwrap_or(c.bound);
        c.interpolation_steps = self.steps.unwrap_or(c.interpolation_steps);
        c.beta = self.beta.clone();
        c.degenerate = self.degenerate;
        c.validate()?;
        Ok(c)
    }
}

fn output(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: &Cli) -> Result<i32> {
    let start = Instant::now();
    let config = cli.opts.run_config()?;
    let mut out = output(&cli.opts.out)?;
    let mut report: Report = match cli.command {
        Command::Check => cmd_check(&config)?,
        Command::Isotropy => cmd_isotropy(&config)?,
        Command::Verify => cmd_verify(&config)?,
        Command::Generate => cmd_generate(&config)?,
        Command::Cohomology => cmd_cohomology(&config)?,
        Command::Enumerate => {
            let records = enumeration_records(config.bound)?;
            for r in &records {
                writeln!(out, "{}", serde_json::to_string(r)?)?;
            }
            enumeration_summary(&config, &records)
        }
    };
    if cli.opts.timing {
        report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let text = match cli.command {
        Command::Enumerate => serde_json::to_string(&report)?,
        _ => report.to_json(),
    };
    writeln!(out, "{text}")?;
    out.flush()?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io(_) | Error::Json(_) => 2,
                ref e => e.exit_code() as u8,
            })
        }
    }
}
