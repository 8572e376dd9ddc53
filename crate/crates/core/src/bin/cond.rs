use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bezier_cond::cli::{self, CommandOutput, EXIT_INPUT};
use bezier_cond::IntersectConfig;

/// Intersect planar Bézier curves and report root condition numbers.
#[derive(Debug, Parser)]
#[command(name = "cond", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Newton step and residual tolerance.
    #[arg(long, default_value_t = IntersectConfig::default().tol)]
    tol: f64,
    /// Maximum subdivision depth.
    #[arg(long, default_value_t = IntersectConfig::default().max_depth)]
    max_depth: usize,
}

impl SolverArgs {
    fn config(&self) -> Result<IntersectConfig, String> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(format!(
                "--tol must be positive and finite, got {}",
                self.tol
            ));
        }
        Ok(IntersectConfig {
            tol: self.tol,
            max_depth: self.max_depth,
            ..IntersectConfig::default()
        })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find all intersections of a curve pair and report κ for each.
    Intersect {
        /// Curve-pair JSON document, or `-` for stdin.
        input: PathBuf,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Compare measured κ with the closed form over a built-in family.
    Family {
        /// `offset-d` or `coincidence-r`.
        name: String,
        /// Comma-separated parameter values.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        values: String,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Empirical perturbation check against the closed-form κ.
    Perturb {
        /// Curve-pair JSON document, or `-` for stdin.
        input: PathBuf,
        /// Comma-separated, strictly decreasing perturbation sizes.
        #[arg(long, default_value = "")]
        eps: String,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Recompute the worked examples and compare with their known values.
    Examples,
}

fn read_input(path: &PathBuf) -> Result<(String, String), String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("<stdin>: {e}"))?;
        return Ok(("<stdin>".to_string(), text));
    }
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| format!("{name}: {e}"))?;
    Ok((name, text))
}

fn run(command: Command) -> Result<CommandOutput, String> {
    Ok(match command {
        Command::Intersect {
            input,
            json,
            solver,
        } => {
            let config = solver.config()?;
            let (name, text) = read_input(&input)?;
            cli::cmd_intersect(&name, &text, &config, json)
        }
        Command::Family {
            name,
            values,
            solver,
        } => cli::cmd_family(&name, &values, &solver.config()?),
        Command::Perturb { input, eps, solver } => {
            let config = solver.config()?;
            let (name, text) = read_input(&input)?;
            cli::cmd_perturb(&name, &text, &eps, &config)
        }
        Command::Examples => cli::cmd_examples(),
    })
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let out = run(parsed.command).unwrap_or_else(|msg| CommandOutput {
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
        code: EXIT_INPUT,
    });
    let _ = io::stdout().write_all(out.stdout.as_bytes());
    let _ = io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
