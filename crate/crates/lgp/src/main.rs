use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lgp::commands;
use lgp::config::{Exponent, GridSize};
use lgp::{CliError, CliResult, Overrides, RunConfig};

/// Least gradient solver: level-set construction on convex planar domains.
#[derive(Parser, Debug)]
#[command(name = "lgp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve, reconstruct and check the trace; writes u.csv, matchings.json, chords.svg, summary.json.
    Solve(Common),
    /// Report optimal-matching multiplicity and equal-cost witness curves (p = 1 or inf).
    Nonuniqueness(Common),
    /// Mollify the datum over a width schedule and track convergence; writes approx.csv.
    Approx(Common),
    /// Cantor interval lengths, the stage inequality and stage measures; writes cantor.csv.
    Cantor(Common),
    /// Split the solution into continuous and jump parts; writes tree.json, u_c.csv, u_j.csv.
    Decompose(Common),
    /// Check the matching dynamic program against brute force on random instances.
    MatchOracle(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// JSON run configuration.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Number of sampled levels K.
    #[arg(long, value_name = "K")]
    levels: Option<usize>,
    /// Raster resolution, e.g. 512x512.
    #[arg(long, value_name = "WxH")]
    grid: Option<GridSize>,
    /// Anisotropy exponent, a number ≥ 1 or "inf".
    #[arg(long, value_name = "VALUE")]
    p: Option<Exponent>,
    /// Seed for randomized instances.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
}

impl Common {
    fn config(&self) -> CliResult<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        cfg.apply(&Overrides {
            out: self.out.clone(),
            levels: self.levels,
            grid: self.grid,
            p: self.p,
            seed: self.seed,
        });
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Solve(c) => {
            let cfg = c.config()?;
            let s = commands::cmd_solve(&cfg)?;
            let trace = s.trace.expect("solve records a trace");
            println!(
                "solve: {} levels kept, {} skipped; co-area TV {:.6}, grid TV {:.6}; trace discrepancy {:.3e}{}",
                s.kept_levels,
                s.skipped_levels.len(),
                s.coarea_tv.unwrap_or(f64::NAN),
                s.grid_tv.unwrap_or(f64::NAN),
                trace.discrepancy,
                if trace.flagged { " (flagged)" } else { "" }
            );
            println!("wrote {}", cfg.out.display());
        }
        Command::Nonuniqueness(c) => {
            let cfg = c.config()?;
            let s = commands::cmd_nonuniqueness(&cfg)?;
            for n in &s.notes {
                println!("nonuniqueness: {n}");
            }
            println!("wrote {}", cfg.out.display());
        }
        Command::Approx(c) => {
            let cfg = c.config()?;
            let s = commands::cmd_approx(&cfg)?;
            for n in &s.notes {
                println!("approx: {n}");
            }
            println!("wrote {}", cfg.out.join("approx.csv").display());
        }
        Command::Cantor(c) => {
            let cfg = c.config()?;
            let (_, report) = commands::cmd_cantor(&cfg)?;
            print!("{report}");
        }
        Command::Decompose(c) => {
            let cfg = c.config()?;
            let s = commands::cmd_decompose(&cfg)?;
            println!(
                "decompose: {} regions, {} jump surfaces",
                s.metrics.get("regions").copied().unwrap_or(0.0),
                s.metrics.get("jump_surfaces").copied().unwrap_or(0.0)
            );
            println!("wrote {}", cfg.out.display());
        }
        Command::MatchOracle(c) => {
            let cfg = c.config()?;
            let (_, r) = commands::cmd_match_oracle(&cfg)?;
            println!("match-oracle: {} trials agree with brute force in {:.2?}", r.trials, r.elapsed);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lgp: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}

fn exit_status(e: &CliError) -> u8 {
    e.exit_code() as u8
}
