use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use robin_bie::cli::{self, RunConfig};
use robin_bie::{Error, Result};

#[derive(Parser)]
#[command(
    name = "robin-bie",
    version,
    about = "Robin problem for Δu - κ²u = 0 in doubly connected domains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve at one M; write densities.csv and probes.csv
    Solve {
        /// Config file or preset name (example1a, example1b, example2)
        #[arg(long)]
        config: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Probe values over a list of M
    Convergence {
        #[arg(long)]
        config: String,
        /// Comma separated, strictly ascending; defaults to the config's m_list
        #[arg(long, value_delimiter = ',')]
        m_list: Option<Vec<usize>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Field values on a rectangular grid, blank outside the domain
    Field {
        #[arg(long)]
        config: String,
        #[arg(long, num_args = 2, value_names = ["NX", "NY"])]
        grid: Option<Vec<usize>>,
        #[arg(long, num_args = 4, value_names = ["X0", "Y0", "X1", "Y1"], allow_negative_numbers = true)]
        bbox: Option<Vec<f64>>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("BEM_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Error::Config(format!(
            "BEM_THREADS must be a positive integer, got '{raw}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(e.to_string()))
}

fn run(args: Cli) -> Result<()> {
    configure_threads()?;
    match args.command {
        Command::Solve { config, out } => {
            let cfg = RunConfig::load(&config)?;
            let outcome = cli::cmd_solve(&cfg, &out)?;
            println!(
                "solved with M = {} ({} unknowns)",
                outcome.solution.m,
                4 * outcome.solution.m
            );
            for p in &outcome.probes {
                match p.abs_error {
                    Some(e) => println!(
                        "  u({}, {}) = {:.12e}  abs_error {:.3e}",
                        p.x.x1, p.x.x2, p.u, e
                    ),
                    None => println!("  u({}, {}) = {:.12e}", p.x.x1, p.x.x2, p.u),
                }
            }
            println!("wrote {}", out.display());
        }
        Command::Convergence {
            config,
            m_list,
            out,
        } => {
            let cfg = RunConfig::load(&config)?;
            let report = cli::cmd_convergence(&cfg, m_list.as_deref(), &out)?;
            let mut ms: Vec<usize> = report.rows.iter().map(|r| r.m).collect();
            ms.dedup();
            for m in ms {
                let diff = report
                    .rows_for(m)
                    .filter_map(|r| r.successive_diff)
                    .reduce(f64::max);
                match (report.max_error(m), diff) {
                    (Some(e), _) => println!("M = {m:3}  max abs_error {e:.3e}"),
                    (None, Some(d)) => println!("M = {m:3}  max successive diff {d:.3e}"),
                    (None, None) => println!("M = {m:3}"),
                }
            }
            println!("wrote {}", out.display());
        }
        Command::Field {
            config,
            grid,
            bbox,
            out,
        } => {
            let cfg = RunConfig::load(&config)?;
            let size = grid.map(|g| (g[0], g[1]));
            let bbox = bbox.map(|b| [b[0], b[1], b[2], b[3]]);
            let spec = cli::resolve_grid(&cfg, size, bbox)?;
            let points = cli::cmd_field(&cfg, &spec, &out)?;
            let inside = points.iter().filter(|p| p.u.is_some()).count();
            println!(
                "{} x {} grid, {inside} of {} points inside the domain",
                spec.nx,
                spec.ny,
                points.len()
            );
            println!("wrote {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // usage errors count as configuration errors (exit 1), not clap's default 2
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
