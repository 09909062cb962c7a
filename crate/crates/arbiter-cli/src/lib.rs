//! `arbiter` command line: verification suites, simulation, synthesis,
//! exports and the local console service.

pub mod server;

use std::path::{Path, PathBuf};

use anyhow::Context;
use arbiter_core::io;
use arbiter_core::market::Chain;
use arbiter_core::report::{self, Suite};
use arbiter_core::semigroup::{self, semigroup};
use arbiter_core::synthesis::{formulas, TargetExponents};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "arbiter", version, about = "Four-currency arbitrage dynamics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Emit {
    Trajectory,
    Final,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Apply a chain to an ensemble and write the trajectory.
    Run {
        #[arg(long)]
        ensemble: PathBuf,
        #[arg(long)]
        chain: PathBuf,
        /// Defaults to the chain length (24 periods for periodic chains).
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum, default_value = "trajectory")]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Serve the console API on 127.0.0.1.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
    /// Enumerate the discrepancy semigroup.
    Enumerate {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the discrepancy orbit graph.
    Graph {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Second generator; omit for the one-generator 12-vertex graph.
        #[arg(long)]
        b: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a chain reaching exponents n1,n2,n3 from a standard start.
    Synth {
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value_t = 1)]
        initial: usize,
        #[arg(long, default_value = "printed")]
        method: String,
    },
    /// Write the operator matrices.
    ExportMatrices {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure with an exit code: 1 for a failing check, 2 for usage or
/// internal errors.
#[derive(Debug)]
pub struct Exit {
    pub code: i32,
    pub message: String,
}

impl Exit {
    fn usage(e: impl std::fmt::Display) -> Self {
        Exit { code: 2, message: e.to_string() }
    }
}

impl From<anyhow::Error> for Exit {
    fn from(e: anyhow::Error) -> Self {
        Exit { code: 2, message: format!("{e:#}") }
    }
}

impl From<arbiter_core::Error> for Exit {
    fn from(e: arbiter_core::Error) -> Self {
        Exit::usage(e)
    }
}

fn write_out(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Executes one command, returning what should go to stdout on success.
/// Output files are written directly.
pub fn execute(cmd: &Command) -> Result<String, Exit> {
    match cmd {
        Command::Verify { suite, format } => {
            let suite: Suite = suite.parse()?;
            let rep = report::run_suite(suite)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&rep).expect("serializable"),
                _ => {
                    let mut lines: Vec<String> = rep.checks.iter().map(ToString::to_string).collect();
                    let devs = rep.deviations().count();
                    lines.push(format!(
                        "{} checks, {} deviations, {}",
                        rep.checks.len(),
                        devs,
                        if rep.passed() { "PASS" } else { "FAIL" }
                    ));
                    lines.join("\n")
                }
            };
            if rep.passed() {
                Ok(text)
            } else {
                Err(Exit { code: 1, message: text })
            }
        }
        Command::Run { ensemble, chain, steps, emit, out } => {
            let r = read(ensemble).and_then(|t| io::ensemble_from_json(&t).map_err(|e| Exit::usage(format!("{}: {e}", ensemble.display()))))?;
            let c = read(chain).and_then(|t| io::chain_from_json(&t).map_err(|e| Exit::usage(format!("{}: {e}", chain.display()))))?;
            let n = steps.unwrap_or(if c.period.is_some() { 24 * c.len() } else { c.len() });
            let text = run_text(&r, &c, n, *emit)?;
            write_out(out.as_deref(), &text)?;
            Ok(String::new())
        }
        Command::Serve { .. } => Err(Exit::usage("serve runs through `serve()`")),
        Command::Enumerate { format, out } => {
            let sg = semigroup();
            let text = match format {
                Format::Json => io::semigroup_to_json(sg),
                Format::Text => {
                    let mut lines = vec![format!("{} elements", sg.len())];
                    for (k, size) in sg.component_sizes().iter().enumerate() {
                        lines.push(format!("U{}: {size} elements, successors {:?}", k + 1, sg.successors(k + 1)));
                    }
                    lines.join("\n")
                }
                Format::Dot => return Err(Exit::usage("enumerate supports json or text")),
            };
            write_out(out.as_deref(), &text)?;
            Ok(String::new())
        }
        Command::Graph { a, b, format, out } => {
            let orbit = match b {
                None => semigroup::disc12_orbit(*a)?,
                Some(b) => semigroup::orbit_polyhedron(*a, *b)?,
            };
            let text = match format {
                Format::Dot => orbit.to_dot(),
                Format::Json => serde_json::to_string(&orbit).expect("serializable"),
                Format::Text => orbit
                    .edges
                    .iter()
                    .map(|e| format!("{} -> {} by arbitrage {}", orbit.vertices[e.from].name, orbit.vertices[e.to].name, e.arbitrage))
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            write_out(out.as_deref(), &text)?;
            Ok(String::new())
        }
        Command::Synth { target, initial, method } => {
            let n = TargetExponents::parse(target)?;
            let res = formulas::synthesize(*initial, n, method)?;
            Ok(serde_json::to_string(&res).expect("serializable"))
        }
        Command::ExportMatrices { out } => {
            write_out(out.as_deref(), &io::matrices_to_json())?;
            Ok(String::new())
        }
    }
}

fn read(path: &Path) -> Result<String, Exit> {
    std::fs::read_to_string(path).map_err(|e| Exit::usage(format!("{}: {e}", path.display())))
}

fn run_text(r: &arbiter_core::RateEnsemble, c: &Chain, steps: usize, emit: Emit) -> Result<String, Exit> {
    let traj = r.apply_chain(c, steps)?;
    let flags: Vec<[bool; 24]> = traj.iter().map(|s| s.active_flags()).collect();
    Ok(match emit {
        Emit::Trajectory => io::trajectory_to_json(&traj, &flags),
        Emit::Final => io::trajectory_to_json(&traj[traj.len() - 1..], &flags[flags.len() - 1..]),
    })
}

/// Binds 127.0.0.1:`port` and serves until the process ends.
pub async fn serve(port: u16) -> Result<(), Exit> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port))
        .await
        .map_err(|e| Exit::usage(format!("cannot bind port {port}: {e}")))?;
    log::info!("listening on http://127.0.0.1:{port}");
    axum::serve(listener, server::router())
        .await
        .map_err(|e| Exit { code: 2, message: e.to_string() })
}
