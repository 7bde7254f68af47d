use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cascade_fading::config::{parse_config, ScenarioConfig};
use cascade_fading::eval::{eval, EvalError, Quantity};
use cascade_fading::recipes::write_recipes;
use cascade_fading::run::{evaluate, prepare, write_csv, Mode, RunOptions};
use cascade_fading_core::mc::MIN_SAMPLES;
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cascade-fading",
    version,
    about = "Outage probability of cascaded turbulence and misalignment channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Analytic,
    Mc,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    Pdf,
    Cdf,
    Kappa,
    Diversity,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the sweep of a scenario file and write CSV
    Run {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "analytic")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// defaults to stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print one value and its accuracy flag
    Eval {
        config: PathBuf,
        #[arg(long, value_enum)]
        quantity: QuantityArg,
        /// argument of the pdf/cdf, or frequency in Hz for kappa
        #[arg(long, allow_negative_numbers = true)]
        at: Option<f64>,
    },
    /// Write the bundled figure recipes into a directory
    Recipes { dir: PathBuf },
}

fn load(path: &Path) -> Result<ScenarioConfig, ExitCode> {
    let src = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(EXIT_CONFIG)
    })?;
    parse_config(&src).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(EXIT_CONFIG)
    })
}

fn configure_threads() -> Result<(), ExitCode> {
    let Ok(v) = std::env::var("CASCADE_FADING_THREADS") else {
        return Ok(());
    };
    let n: usize = match v.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => {
            eprintln!("error: CASCADE_FADING_THREADS must be a positive integer, got {v:?}");
            return Err(ExitCode::from(EXIT_CONFIG));
        }
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| {
            eprintln!("error: thread pool: {e}");
            ExitCode::FAILURE
        })
}

fn run(
    config: &Path,
    mode: ModeArg,
    seed: u64,
    samples: u64,
    out: Option<&Path>,
) -> Result<(), ExitCode> {
    let cfg = load(config)?;
    let mode = match mode {
        ModeArg::Analytic => Mode::Analytic,
        ModeArg::Mc => Mode::Mc,
        ModeArg::Both => Mode::Both,
    };
    if mode != Mode::Analytic && samples < MIN_SAMPLES {
        eprintln!("error: --samples must be at least {MIN_SAMPLES}, got {samples}");
        return Err(ExitCode::from(EXIT_CONFIG));
    }
    let points = prepare(&cfg).map_err(|e| {
        let src = fs::read_to_string(config).unwrap_or_default();
        eprintln!("error: {}: {}", config.display(), e.located(&src));
        ExitCode::from(EXIT_CONFIG)
    })?;
    configure_threads()?;
    let rows = evaluate(
        &points,
        &RunOptions {
            mode,
            seed,
            samples,
        },
    );
    let mut buf = Vec::new();
    write_csv(&rows, cfg.outer.is_some(), &mut buf).expect("writing to memory");
    let written = match out {
        Some(p) => fs::write(p, &buf),
        None => io::stdout().lock().write_all(&buf),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return Err(ExitCode::FAILURE);
    }
    let failed: Vec<_> = rows.iter().filter(|r| r.error.is_some()).collect();
    if failed.is_empty() {
        return Ok(());
    }
    eprintln!("error: {} point(s) failed numerically:", failed.len());
    for r in failed {
        let at = match (r.outer, r.sweep) {
            (Some(o), Some(s)) => format!("outer_value={o:e} sweep_value={s:e}"),
            (_, Some(s)) => format!("sweep_value={s:e}"),
            _ => "base point".to_string(),
        };
        eprintln!("  {at}: {}", r.error.as_deref().unwrap_or_default());
    }
    Err(ExitCode::from(EXIT_NUMERIC))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            config,
            mode,
            seed,
            samples,
            out,
        } => run(&config, mode, seed, samples, out.as_deref()),
        Command::Eval {
            config,
            quantity,
            at,
        } => (|| {
            let cfg = load(&config)?;
            let q = match quantity {
                QuantityArg::Pdf => Quantity::Pdf,
                QuantityArg::Cdf => Quantity::Cdf,
                QuantityArg::Kappa => Quantity::Kappa,
                QuantityArg::Diversity => Quantity::Diversity,
            };
            match eval(&cfg, q, at) {
                Ok((v, flag)) => {
                    println!("{v:e} {flag}");
                    Ok(())
                }
                Err(EvalError::Config(e)) => {
                    let src = fs::read_to_string(&config).unwrap_or_default();
                    eprintln!("error: {}: {}", config.display(), e.located(&src));
                    Err(ExitCode::from(EXIT_CONFIG))
                }
                Err(EvalError::Numeric(e)) => {
                    eprintln!("error: {e}");
                    Err(ExitCode::from(EXIT_NUMERIC))
                }
            }
        })(),
        Command::Recipes { dir } => match write_recipes(&dir) {
            Ok(n) => {
                eprintln!("wrote {n} recipes to {}", dir.display());
                Ok(())
            }
            Err(e) => {
                eprintln!("error: {}: {e}", dir.display());
                Err(ExitCode::FAILURE)
            }
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
