//! `entcat`: success probabilities, optimal catalysts and extraction
//! strategies for entanglement concentration of two-qubit pure states.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
//! 3 search finished without converging (result still printed).

mod format;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use entcat::closed_form::linspace;
use entcat::search::DEFAULT_SEED;
use entcat::verify::DEFAULT_DENSITY;
use entcat::{
    binary_entropy, boost_sweep, compare_strategies, grid_search_rank2, lqcc_probability,
    majorizes, optimal_catalyst, ratio_sweep, simplex_search_rank_k, ConcentrationInstance,
    SchmidtSpectrum, SearchConfig, TransformPair,
};
use serde::Serialize;

use report::{CatalystReport, Method, ProbReport};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NO_CONVERGENCE: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepMode {
    /// r2, r3, r4 against the catalyst coefficient c.
    Ratios,
    /// Optimal-catalysis boost against alpha, per number of copies.
    Boost,
}

#[derive(Parser, Debug)]
#[command(name = "entcat", version)]
#[command(about = "Catalyzed entanglement concentration of qubit pairs")]
struct Cli {
    /// Output format. Defaults to csv for sweeps and text otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Uncatalyzed LOCC probability of |alpha>^N -> Bell.
    Prob {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        n: u32,
    },
    /// Optimal catalyst: closed form for rank 2, numerical search otherwise.
    Catalyst {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        n: u32,
        /// Schmidt rank of the catalyst.
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Use the numerical search even for rank 2.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 5_000)]
        max_iterations: usize,
        #[arg(long, default_value_t = 1e-4)]
        grid_step: f64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Tabulate ratio curves over c or boost curves over alpha.
    Sweep {
        #[arg(long, value_enum)]
        mode: SweepMode,
        /// Fixed alpha (ratios mode).
        #[arg(long)]
        alpha: Option<f64>,
        /// Number of copies; comma-separated list allowed in boost mode.
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        #[arg(long, default_value_t = 0.5)]
        c_from: f64,
        #[arg(long, default_value_t = 0.99)]
        c_to: f64,
        #[arg(long, default_value_t = 0.75)]
        alpha_from: f64,
        #[arg(long, default_value_t = 0.995)]
        alpha_to: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Compare pairwise catalysis with the best partition for m* Bell pairs.
    Strategy {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        n: u32,
        /// Target number of Bell pairs.
        #[arg(long = "m")]
        m_star: u32,
    },
    /// Cross-check the closed forms against explicit spectra.
    Verify {
        #[arg(long, default_value_t = DEFAULT_DENSITY)]
        grid_density: usize,
    },
}

/// A failed command: message and exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<entcat::Error> for Failure {
    fn from(e: entcat::Error) -> Self {
        usage(e.to_string())
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Rendered output plus the exit code to finish with.
struct Output {
    body: String,
    code: u8,
}

impl Output {
    fn ok(body: String) -> Self {
        Self { body, code: 0 }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn no_csv(format: OutputFormat, command: &str) -> Result<(), Failure> {
    if format == OutputFormat::Csv {
        Err(usage(format!("csv output is not available for `{command}`")))
    } else {
        Ok(())
    }
}

fn prob(alpha: f64, n: u32, format: OutputFormat) -> Result<Output, Failure> {
    no_csv(format, "prob")?;
    let inst = ConcentrationInstance::new(alpha, n)?;
    let pair = TransformPair::new(inst.spectrum()?, SchmidtSpectrum::bell());
    let deterministic = majorizes(&pair);
    let report = ProbReport {
        alpha,
        n,
        p_baseline: lqcc_probability(&inst),
        incommensurate: !deterministic,
        deterministic,
        entropy: binary_entropy(alpha)?,
    };
    Ok(Output::ok(match format {
        OutputFormat::Json => json(&report),
        _ => report.text(),
    }))
}

#[allow(clippy::too_many_arguments)]
fn catalyst(
    alpha: f64,
    n: u32,
    rank: usize,
    search: bool,
    cfg: SearchConfig,
    format: OutputFormat,
) -> Result<Output, Failure> {
    no_csv(format, "catalyst")?;
    if rank < 2 {
        return Err(usage(format!("catalyst rank must be at least 2, got {rank}")));
    }
    cfg.validate()?;
    let inst = ConcentrationInstance::new(alpha, n)?;
    let exact = optimal_catalyst(&inst);

    let report = if exact.deterministic || (rank == 2 && !search) {
        CatalystReport {
            alpha,
            n,
            rank: 2,
            method: Method::ClosedForm,
            c_opt: exact.c_opt,
            spectrum: exact.c_opt.map(|c| vec![c, 1.0 - c]),
            p: exact.p_catalyzed,
            p_catalyzed: exact.p_catalyzed,
            p_baseline: exact.p_baseline,
            boost: exact.boost,
            deterministic: exact.deterministic,
            converged: true,
            warning: None,
        }
    } else {
        let found = if rank == 2 {
            // The simplex refines the grid optimum; keep whichever is better.
            let grid = grid_search_rank2(&inst, &cfg)?;
            let simplex = simplex_search_rank_k(&inst, 2, &cfg)?;
            if simplex.probability >= grid.probability {
                simplex
            } else {
                grid
            }
        } else {
            simplex_search_rank_k(&inst, rank, &cfg)?
        };
        let spectrum = found.spectrum.expanded();
        let baseline = lqcc_probability(&inst);
        CatalystReport {
            alpha,
            n,
            rank,
            method: Method::Search,
            c_opt: (rank == 2).then(|| spectrum[0]),
            spectrum: Some(spectrum),
            p: found.probability,
            p_catalyzed: found.probability,
            p_baseline: baseline,
            boost: found.probability / baseline,
            deterministic: false,
            converged: found.converged,
            warning: (!found.converged)
                .then(|| "simplex search hit the iteration cap before converging".to_string()),
        }
    };
    let code = if report.converged { 0 } else { EXIT_NO_CONVERGENCE };
    let body = match format {
        OutputFormat::Json => json(&report),
        _ => report.text(),
    };
    Ok(Output { body, code })
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    mode: SweepMode,
    alpha: Option<f64>,
    ns: &[u32],
    c_range: (f64, f64),
    alpha_range: (f64, f64),
    steps: usize,
    format: OutputFormat,
) -> Result<Output, Failure> {
    if steps == 0 {
        return Err(usage("--steps must be at least 1"));
    }
    let num = format::number;
    match mode {
        SweepMode::Ratios => {
            let alpha = alpha.ok_or_else(|| usage("ratios mode needs --alpha"))?;
            let n = match ns {
                [n] => *n,
                [] => return Err(usage("ratios mode needs --n")),
                _ => return Err(usage("ratios mode takes a single --n")),
            };
            let inst = ConcentrationInstance::new(alpha, n)?;
            let rows = ratio_sweep(&inst, c_range.0, c_range.1, steps)?;
            Ok(Output::ok(match format {
                OutputFormat::Json => json(&rows),
                OutputFormat::Csv => format::csv(
                    &["alpha", "n", "c", "r2", "r3", "r4", "min"],
                    rows.iter().map(|r| {
                        vec![
                            num(alpha),
                            n.to_string(),
                            num(r.c),
                            num(r.r2),
                            num(r.r3),
                            num(r.r4),
                            num(r.minimum),
                        ]
                    }),
                ),
                OutputFormat::Text => {
                    let mut s = format!("{:>10} {:>12} {:>12} {:>12} {:>12}\n", "c", "r2", "r3", "r4", "min");
                    for r in &rows {
                        s += &format!(
                            "{:>10.6} {:>12.6} {:>12.6} {:>12.6} {:>12.6}\n",
                            r.c, r.r2, r.r3, r.r4, r.minimum
                        );
                    }
                    s
                }
            }))
        }
        SweepMode::Boost => {
            let ns: Vec<u32> = if ns.is_empty() {
                vec![2, 4, 8, 16, 32]
            } else {
                ns.to_vec()
            };
            let alphas = linspace(alpha_range.0, alpha_range.1, steps);
            let rows = boost_sweep(&alphas, &ns)?;
            Ok(Output::ok(match format {
                OutputFormat::Json => json(&rows),
                OutputFormat::Csv => format::csv(
                    &["alpha", "n", "boost"],
                    rows.iter()
                        .map(|r| vec![num(r.alpha), r.n.to_string(), num(r.boost)]),
                ),
                OutputFormat::Text => {
                    let mut s = format!("{:>10} {:>4} {:>12}\n", "alpha", "n", "boost");
                    for r in &rows {
                        s += &format!("{:>10.6} {:>4} {:>12.6}\n", r.alpha, r.n, r.boost);
                    }
                    s
                }
            }))
        }
    }
}

fn strategy(alpha: f64, n: u32, m_star: u32, format: OutputFormat) -> Result<Output, Failure> {
    let report = compare_strategies(alpha, n, m_star)?;
    Ok(Output::ok(match format {
        OutputFormat::Json => json(&report),
        OutputFormat::Csv => format::csv(
            &["m", "probability"],
            report
                .pairwise
                .distribution
                .iter()
                .map(|(m, p)| vec![m.to_string(), format::number(*p)]),
        ),
        OutputFormat::Text => report::strategy_text(&report),
    }))
}

fn verify(density: usize, format: OutputFormat) -> Result<Output, Failure> {
    no_csv(format, "verify")?;
    #[cfg(not(feature = "fault-injection"))]
    let report = entcat::verify::run(density)?;
    #[cfg(feature = "fault-injection")]
    let report = entcat::verify::run_with(density, &|inst, c| {
        Ok(entcat::catalyzed_probability(inst, c)? + 1e-9)
    })?;
    let code = if report.all_passed() { 0 } else { EXIT_VERIFY_FAILED };
    let body = match format {
        OutputFormat::Json => json(&report),
        _ => report::verify_text(&report),
    };
    Ok(Output { body, code })
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let text_default = cli.format.unwrap_or(OutputFormat::Text);
    match cli.command {
        Command::Prob { alpha, n } => prob(alpha, n, text_default),
        Command::Catalyst {
            alpha,
            n,
            rank,
            search,
            seed,
            restarts,
            max_iterations,
            grid_step,
            tolerance,
        } => {
            let cfg = SearchConfig {
                grid_step,
                simplex_tolerance: tolerance,
                max_iterations,
                restarts,
                seed,
            };
            catalyst(alpha, n, rank, search, cfg, text_default)
        }
        Command::Sweep {
            mode,
            alpha,
            n,
            c_from,
            c_to,
            alpha_from,
            alpha_to,
            steps,
        } => sweep(
            mode,
            alpha,
            &n,
            (c_from, c_to),
            (alpha_from, alpha_to),
            steps,
            cli.format.unwrap_or(OutputFormat::Csv),
        ),
        Command::Strategy { alpha, n, m_star } => strategy(alpha, n, m_star, text_default),
        Command::Verify { grid_density } => verify(grid_density, text_default),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.out.clone();
    match run(cli) {
        Ok(output) => {
            match &out_path {
                Some(path) => {
                    if let Err(e) = fs::write(path, &output.body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(EXIT_USAGE);
                    }
                }
                None => print!("{}", output.body),
            }
            if output.code == EXIT_NO_CONVERGENCE {
                eprintln!("warning: search did not converge; best result reported");
            }
            ExitCode::from(output.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
