//! Command-line surface for the heralded cat-state pipeline.
//!
//! Subcommands: `herald` (one conditional state), `sweep` (optimized-fidelity
//! tables), `compare` (gains over the vacuum-ancilla baseline),
//! `distribution` (full outcome table via the brute-force cascade) and
//! `validate` (the cross-check suites).
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage/domain error,
//! 3 numerical non-convergence.

mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use scs_core::{
    cascade_herald, conditional_state, gain_curves, herald_probability, smsv_state, sweep_beta,
    BeamSplitterParams, CascadeParams, Error, FockVector, GainMetrics, HeraldPattern,
    OptimizationResult, Parity, SqueezeParams,
};

use config::{OutputFormat, RunConfig};
use report::{fmt_float, write_csv, write_json, DistributionRow};

#[derive(Parser)]
#[command(
    name = "scs",
    version,
    about = "Heralded generation of even/odd cat states from squeezed vacuum: \
             simulate, optimize, validate"
)]
struct Cli {
    /// JSON config file; command-line flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format for tabular commands.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads (0 = library default).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conditional state and probability of one detection pattern.
    Herald(HeraldArgs),
    /// Optimized-fidelity sweep over target amplitudes.
    Sweep(SweepArgs),
    /// Fidelity and probability gains over the vacuum-ancilla baseline.
    Compare(CompareArgs),
    /// Outcome-probability table of the full cascade.
    Distribution(DistributionArgs),
    /// Run the oracle-equivalence and two-route cross-check suites.
    Validate,
}

#[derive(Args)]
struct HeraldArgs {
    /// Photons detected behind the first splitter.
    #[arg(long)]
    k1: usize,
    /// Photons detected behind the second splitter.
    #[arg(long)]
    k2: usize,
    /// Input squeezing in dB.
    #[arg(long = "squeeze-db")]
    squeeze_db: f64,
    /// Beam-splitter parameter B = R/T.
    #[arg(long = "B", visible_alias = "b")]
    b: f64,
    /// Ancilla occupation: one photon per auxiliary mode (11) or vacuum (00).
    #[arg(long, default_value = "11")]
    ancillas: String,
    /// Cross-check the closed form against the brute-force cascade.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Pattern family when --patterns is not given: even (22,44,66) or odd
    /// (23,45,67).
    #[arg(long, default_value = "even")]
    parity: String,
    /// Explicit patterns, e.g. "2:2,4:4" or the two-digit shorthand "22,44".
    #[arg(long, value_delimiter = ',')]
    patterns: Option<Vec<String>>,
    #[arg(long = "beta-min", default_value_t = 0.5)]
    beta_min: f64,
    #[arg(long = "beta-max", default_value_t = 3.0)]
    beta_max: f64,
    /// Number of grid points.
    #[arg(long, default_value_t = 26)]
    steps: usize,
}

#[derive(Args)]
struct CompareArgs {
    /// Patterns to compare (defaults to 22,44,66,23,45,67).
    #[arg(long, value_delimiter = ',')]
    patterns: Option<Vec<String>>,
    /// Baseline squeezing values in dB (defaults to the configured high
    /// value); rows are emitted per baseline.
    #[arg(long = "baseline-sdb", value_delimiter = ',')]
    baseline_sdb: Option<Vec<f64>>,
    #[arg(long = "beta-min", default_value_t = 0.5)]
    beta_min: f64,
    #[arg(long = "beta-max", default_value_t = 3.0)]
    beta_max: f64,
    #[arg(long, default_value_t = 11)]
    steps: usize,
}

#[derive(Args)]
struct DistributionArgs {
    #[arg(long = "squeeze-db")]
    squeeze_db: f64,
    #[arg(long = "B", visible_alias = "b")]
    b: f64,
    #[arg(long, default_value = "11")]
    ancillas: String,
    /// Largest detector count per mode (defaults to the input cutoff + 2).
    #[arg(long)]
    kmax: Option<usize>,
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) => 2,
            Error::Truncation { .. } | Error::Convergence(_) | Error::InfeasibleBaseline { .. } => {
                3
            }
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path).map_err(CliError::usage)?,
        None => RunConfig::default(),
    };
    if let Some(format) = cli.format {
        config.format = format;
    }
    if let Some(threads) = cli.threads {
        config.threads = threads;
    }
    if config.threads > 0 {
        // A second initialization in the same process is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build_global();
    }

    let mut sink: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .map_err(|e| CliError::usage(format!("cannot create {}: {e}", path.display())))?,
        ),
        None => Box::new(std::io::stdout()),
    };

    match cli.command {
        Command::Herald(args) => cmd_herald(&args, &config, &mut sink),
        Command::Sweep(args) => cmd_sweep(&args, &config, &mut sink),
        Command::Compare(args) => cmd_compare(&args, &config, &mut sink),
        Command::Distribution(args) => cmd_distribution(&args, &config, &mut sink),
        Command::Validate => cmd_validate(&mut sink),
    }
}

fn parse_ancillas(s: &str) -> Result<usize, CliError> {
    match s {
        "11" => Ok(1),
        "00" => Ok(0),
        other => Err(CliError::usage(format!(
            "ancillas must be 11 or 00, got {other}"
        ))),
    }
}

fn parse_pattern(token: &str) -> Result<(usize, usize), CliError> {
    let err = || {
        CliError::usage(format!(
            "pattern {token:?} not understood; use k1:k2 or the two-digit shorthand like 22"
        ))
    };
    if let Some((a, b)) = token.split_once(':') {
        let k1 = a.trim().parse().map_err(|_| err())?;
        let k2 = b.trim().parse().map_err(|_| err())?;
        return Ok((k1, k2));
    }
    let digits: Vec<u32> = token
        .trim()
        .chars()
        .map(|c| c.to_digit(10))
        .collect::<Option<_>>()
        .ok_or_else(err)?;
    if digits.len() != 2 {
        return Err(err());
    }
    Ok((digits[0] as usize, digits[1] as usize))
}

fn resolve_patterns(
    explicit: &Option<Vec<String>>,
    parity: Option<&str>,
) -> Result<Vec<(usize, usize)>, CliError> {
    if let Some(tokens) = explicit {
        return tokens.iter().map(|t| parse_pattern(t)).collect();
    }
    match parity.unwrap_or("even") {
        "even" => Ok(vec![(2, 2), (4, 4), (6, 6)]),
        "odd" => Ok(vec![(2, 3), (4, 5), (6, 7)]),
        other => Err(CliError::usage(format!(
            "parity must be even or odd, got {other}"
        ))),
    }
}

fn beta_grid(min: f64, max: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if !(min > 0.0 && max >= min) || steps == 0 {
        return Err(CliError::usage(format!(
            "invalid beta grid: [{min}, {max}] with {steps} steps"
        )));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    Ok((0..steps)
        .map(|i| min + i as f64 * (max - min) / (steps - 1) as f64)
        .collect())
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
        Parity::Mixed => "mixed",
    }
}

#[derive(serde::Serialize)]
struct HeraldReport {
    k1: usize,
    k2: usize,
    ancillas: String,
    squeeze_db: f64,
    b: f64,
    y2: f64,
    source: String,
    parity: String,
    probability: f64,
    cutoff: usize,
    /// Leading nonzero amplitudes (photon number, value), at most twenty.
    amplitudes: Vec<(usize, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<CheckReport>,
}

#[derive(serde::Serialize)]
struct CheckReport {
    state_residual: f64,
    probability_rel_residual: f64,
    tolerance: f64,
    ok: bool,
}

fn cmd_herald(
    args: &HeraldArgs,
    config: &RunConfig,
    sink: &mut Box<dyn Write>,
) -> Result<u8, CliError> {
    let ancilla = parse_ancillas(&args.ancillas)?;
    let squeeze = SqueezeParams::from_decibels(args.squeeze_db)?;
    let bs = BeamSplitterParams::from_ratio(args.b)?;
    let cascade = CascadeParams::new(squeeze, bs);
    let policy = config.cutoff.to_policy();

    let closed_form_route = ancilla == 1 && args.k1 >= 1 && args.k2 >= 1;
    let (state, probability, source) = if closed_form_route {
        let pattern = HeraldPattern::new(args.k1, args.k2)?;
        let state = conditional_state(pattern, cascade.y2(), args.b, policy)?;
        let probability = herald_probability(pattern, &cascade)?;
        (state, probability, "closed-form".to_string())
    } else {
        let input = smsv_state(&squeeze, policy)?;
        let outcome = cascade_herald(&input, ancilla, ancilla, &bs, args.k1, args.k2);
        let source = if ancilla == 1 {
            "oracle (zero-click outcome, no closed form)".to_string()
        } else {
            "oracle (vacuum ancillas)".to_string()
        };
        (outcome.state, outcome.probability, source)
    };

    let check = if args.check && closed_form_route {
        let input = smsv_state(&squeeze, policy)?;
        let outcome = cascade_herald(&input, 1, 1, &bs, args.k1, args.k2);
        let span = state.cutoff().max(outcome.state.cutoff());
        let state_residual = (0..=span)
            .map(|n| (state.amplitude(n) - outcome.state.amplitude(n)).abs())
            .fold(0.0, f64::max);
        let probability_rel_residual =
            (probability - outcome.probability).abs() / outcome.probability;
        let tolerance = config.oracle_match_tol;
        Some(CheckReport {
            state_residual,
            probability_rel_residual,
            tolerance,
            ok: state_residual < tolerance && probability_rel_residual < tolerance,
        })
    } else {
        None
    };
    let check_unavailable = args.check && !closed_form_route;

    // Show the support amplitudes only; wrong-parity slots are structural
    // zeros, while an in-support zero (a weight-polynomial root) is physics
    // worth displaying.
    let shown: Vec<(usize, f64)> = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(n, _)| state.parity().admits(*n))
        .take(20)
        .map(|(n, a)| (n, *a))
        .collect();
    let report = HeraldReport {
        k1: args.k1,
        k2: args.k2,
        ancillas: args.ancillas.clone(),
        squeeze_db: args.squeeze_db,
        b: args.b,
        y2: cascade.y2(),
        source,
        parity: parity_name(state.parity()).to_string(),
        probability,
        cutoff: state.cutoff(),
        amplitudes: shown,
        check,
    };

    match config.format {
        OutputFormat::Json => {
            write_json(
                sink.as_mut(),
                "herald",
                config,
                &[],
                std::slice::from_ref(&report),
            )
            .map_err(io_error)?;
        }
        OutputFormat::Csv => {
            // Herald emits a human-readable report; the tabular commands are
            // the CSV surface.
            writeln!(
                sink,
                "pattern ({}, {}), ancillas {}",
                report.k1, report.k2, report.ancillas
            )
            .map_err(io_error)?;
            writeln!(
                sink,
                "squeeze {} dB (y = {}), B = {} (y2 = {})",
                fmt_float(report.squeeze_db),
                fmt_float(squeeze.y()),
                fmt_float(report.b),
                fmt_float(report.y2)
            )
            .map_err(io_error)?;
            writeln!(sink, "source: {}", report.source).map_err(io_error)?;
            writeln!(sink, "parity: {}", report.parity).map_err(io_error)?;
            writeln!(sink, "probability: {}", fmt_float(report.probability)).map_err(io_error)?;
            writeln!(
                sink,
                "amplitudes (first {} of cutoff {}):",
                report.amplitudes.len(),
                report.cutoff
            )
            .map_err(io_error)?;
            for (n, a) in &report.amplitudes {
                writeln!(sink, "  {n:4}: {}", fmt_float(*a)).map_err(io_error)?;
            }
            if let Some(check) = &report.check {
                writeln!(
                    sink,
                    "check vs oracle: state residual {}, probability rel residual {} \
                     (tolerance {:.1e}) -> {}",
                    fmt_float(check.state_residual),
                    fmt_float(check.probability_rel_residual),
                    check.tolerance,
                    if check.ok { "OK" } else { "MISMATCH" }
                )
                .map_err(io_error)?;
            }
            if check_unavailable {
                writeln!(sink, "note: --check applies to the closed-form route only")
                    .map_err(io_error)?;
            }
        }
    }
    Ok(0)
}

fn cmd_sweep(
    args: &SweepArgs,
    config: &RunConfig,
    sink: &mut Box<dyn Write>,
) -> Result<u8, CliError> {
    let patterns = resolve_patterns(&args.patterns, Some(&args.parity))?;
    let betas = beta_grid(args.beta_min, args.beta_max, args.steps)?;
    let bounds = config.optimizer.search_box();
    let settings = config.optimizer.settings();

    let mut rows: Vec<OptimizationResult> = Vec::new();
    for &(k1, k2) in &patterns {
        rows.extend(sweep_beta(k1, k2, &betas, &bounds, &settings)?);
    }

    match config.format {
        OutputFormat::Csv => {
            write_csv(sink.as_mut(), "sweep", config, &[], &rows).map_err(io_error)?
        }
        OutputFormat::Json => {
            write_json(sink.as_mut(), "sweep", config, &[], &rows).map_err(io_error)?
        }
    }
    if rows.iter().all(|r| !r.converged) {
        return Err(CliError {
            message: "no sweep point converged".into(),
            code: 3,
        });
    }
    Ok(0)
}

fn cmd_compare(
    args: &CompareArgs,
    config: &RunConfig,
    sink: &mut Box<dyn Write>,
) -> Result<u8, CliError> {
    let patterns = match &args.patterns {
        Some(_) => resolve_patterns(&args.patterns, None)?,
        None => vec![(2, 2), (4, 4), (6, 6), (2, 3), (4, 5), (6, 7)],
    };
    let betas = beta_grid(args.beta_min, args.beta_max, args.steps)?;
    let baselines = args
        .baseline_sdb
        .clone()
        .unwrap_or_else(|| vec![config.baseline.s_db_high]);
    let bounds = config.optimizer.search_box();
    let settings = config.optimizer.settings();
    let baseline_settings = config.baseline.settings();

    let mut rows: Vec<GainMetrics> = Vec::new();
    for &baseline_s_db in &baselines {
        rows.extend(gain_curves(
            &patterns,
            &betas,
            baseline_s_db,
            &bounds,
            &settings,
            &baseline_settings,
        )?);
    }

    let infeasible = rows.iter().filter(|r| !r.feasible).count();
    let notes = if infeasible > 0 {
        vec![(
            "infeasible_rows".to_string(),
            format!("{infeasible} (baseline squeezing below optimal y2; p00 and j_db are NaN)"),
        )]
    } else {
        Vec::new()
    };
    match config.format {
        OutputFormat::Csv => {
            write_csv(sink.as_mut(), "compare", config, &notes, &rows).map_err(io_error)?
        }
        OutputFormat::Json => {
            write_json(sink.as_mut(), "compare", config, &notes, &rows).map_err(io_error)?
        }
    }
    Ok(0)
}

fn cmd_distribution(
    args: &DistributionArgs,
    config: &RunConfig,
    sink: &mut Box<dyn Write>,
) -> Result<u8, CliError> {
    let ancilla = parse_ancillas(&args.ancillas)?;
    let squeeze = SqueezeParams::from_decibels(args.squeeze_db)?;
    let bs = BeamSplitterParams::from_ratio(args.b)?;
    let input: FockVector = smsv_state(&squeeze, config.cutoff.to_policy())?;
    let kmax = args.kmax.unwrap_or(input.cutoff() + 2);

    let outcomes = scs_core::herald_distribution(&input, ancilla, ancilla, &bs, kmax);
    let total: f64 = outcomes.iter().map(|o| o.probability).sum();
    let rows: Vec<DistributionRow> = outcomes
        .iter()
        .map(|o| DistributionRow {
            k1: o.k1,
            k2: o.k2,
            probability: o.probability,
            parity: parity_name(o.state.parity()).to_string(),
            feasible: o.feasible,
        })
        .collect();

    let notes = vec![
        ("kmax".to_string(), kmax.to_string()),
        ("total_probability".to_string(), fmt_float(total)),
    ];
    match config.format {
        OutputFormat::Csv => {
            write_csv(sink.as_mut(), "distribution", config, &notes, &rows).map_err(io_error)?
        }
        OutputFormat::Json => {
            write_json(sink.as_mut(), "distribution", config, &notes, &rows).map_err(io_error)?
        }
    }
    Ok(0)
}

fn cmd_validate(sink: &mut Box<dyn Write>) -> Result<u8, CliError> {
    let reports = scs_core::validate::run_all();
    let mut all_passed = true;
    for report in &reports {
        writeln!(
            sink,
            "suite {:32} {:5} cases, max residual {:.3e} (tolerance {:.1e}) -> {}",
            report.name,
            report.cases,
            report.max_residual,
            report.tolerance,
            if report.passed() { "ok" } else { "FAIL" }
        )
        .map_err(io_error)?;
        if !report.passed() {
            all_passed = false;
            if let Some(first) = report.failures.first() {
                writeln!(sink, "  first failing case: {first}").map_err(io_error)?;
            }
        }
    }
    if all_passed {
        writeln!(sink, "all suites passed").map_err(io_error)?;
        Ok(0)
    } else {
        Err(CliError {
            message: "validation failed".into(),
            code: 1,
        })
    }
}

fn io_error(e: std::io::Error) -> CliError {
    CliError {
        message: format!("output error: {e}"),
        code: 2,
    }
}
