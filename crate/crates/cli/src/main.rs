//! `xplate`: natural frequencies and mode shapes of cracked FGM plates.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use xplate::config::RunConfig;
use xplate::par::Execution;
use xplate::pipeline;
use xplate::post::Table;
use xplate::validate::{self, TABLE_IDS};
use xplate::Error;

/// Exit code for a completed validation with out-of-tolerance values.
const VALIDATION_FAILED: u8 = 5;

#[derive(Parser)]
#[command(name = "xplate", version, about = "Free vibration of cracked functionally graded plates")]
struct Cli {
    /// Log level (error, warn, info, debug, trace); overrides the configuration.
    #[arg(long, global = true)]
    log: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one configuration and print its frequency table.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Directory for frequencies.csv and effective.toml.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Number of modes (overrides solver.modes).
        #[arg(long)]
        modes: Option<usize>,
        /// Threads for element computations.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Solve every combination of the configuration's [sweep] axes.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        modes: Option<usize>,
        /// Concurrent sweep cells.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Reproduce a published table and compare against its values.
    Validate {
        /// Table id, or `all`.
        #[arg(long, default_value = "all")]
        table: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Export mode shapes as legacy-VTK structured grids.
    Modes {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        modes: Option<usize>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn init_logging(level: &str) {
    let env = env_logger::Env::default().default_filter_or(level);
    let _ = env_logger::Builder::from_env(env).format_timestamp(None).try_init();
}

fn load(path: &Path, modes: Option<usize>, cli_log: &Option<String>) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::load(path)?;
    init_logging(cli_log.as_deref().unwrap_or(&cfg.output.verbosity));
    if let Some(k) = modes {
        cfg.solver.modes = k;
        cfg.validate()?;
    }
    Ok(cfg)
}

fn write_table(table: &Table, out: Option<&Path>, name: &str) -> Result<(), Error> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(name);
            table.write_csv_file(&path)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{}", table.to_csv()),
    }
    Ok(())
}

fn write_effective(cfg: &RunConfig, out: Option<&Path>) -> Result<(), Error> {
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("effective.toml"), cfg.to_toml()?)?;
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Run {
            config,
            out,
            modes,
            workers,
        } => {
            let cfg = load(&config, modes, &cli.log)?;
            let result = xplate::par::with_workers(workers.unwrap_or_else(default_workers), || pipeline::run(&cfg))??;
            result.write_artifacts()?;
            write_effective(&result.config, out.as_deref())?;
            write_table(&result.table()?, out.as_deref(), "frequencies.csv")?;
        }
        Command::Sweep {
            config,
            out,
            modes,
            workers,
        } => {
            let cfg = load(&config, modes, &cli.log)?;
            let records = pipeline::sweep(&cfg, workers.unwrap_or_else(default_workers), Execution::Parallel)?;
            let failed = records.iter().filter(|r| r.outcome.is_err()).count();
            let table = xplate::post::tabulate(&records);
            if let Some(csv) = &cfg.output.csv {
                table.write_csv_file(csv)?;
            }
            write_effective(&cfg, out.as_deref())?;
            write_table(&table, out.as_deref(), "sweep.csv")?;
            if failed > 0 {
                log::warn!("{failed} of {} sweep cells failed", records.len());
            }
        }
        Command::Validate { table, out, workers } => {
            init_logging(cli.log.as_deref().unwrap_or("warn"));
            let ids: Vec<&str> = if table == "all" {
                TABLE_IDS.to_vec()
            } else {
                vec![table.as_str()]
            };
            let workers = workers.unwrap_or_else(default_workers);
            let mut all_passed = true;
            for id in ids {
                let report = validate::validate(id, workers, Execution::Parallel)?;
                println!("{}", report.summary());
                if let Some(dir) = &out {
                    std::fs::create_dir_all(dir)?;
                    report.table().write_csv_file(&dir.join(format!("{id}.csv")))?;
                } else {
                    for row in report.table().rows.iter().filter(|r| r.last().is_some_and(|s| s == "FAIL")) {
                        println!("    {}", row.join(" "));
                    }
                }
                all_passed &= report.passed();
            }
            if !all_passed {
                return Ok(VALIDATION_FAILED);
            }
        }
        Command::Modes {
            config,
            out,
            modes,
            workers,
        } => {
            let cfg = load(&config, modes, &cli.log)?;
            let result = xplate::par::with_workers(workers.unwrap_or_else(default_workers), || pipeline::run(&cfg))??;
            for p in result.write_modes(&out, cfg.output.grid)? {
                eprintln!("wrote {}", p.display());
            }
            write_effective(&result.config, Some(&out))?;
            write_table(&result.table()?, Some(&out), "frequencies.csv")?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            init_logging("warn");
            eprintln!("xplate: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
