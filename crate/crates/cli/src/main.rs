use std::f64::consts::PI;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use skewbound::bounds::{BoundOptions, ChannelBounds, SignChoice, DEFAULT_TUPLE_CAP};
use skewbound::quantum::{self, CHANNEL_EXAMPLE_RADIUS, UNITARY_EXAMPLE_RADIUS};
use skewbound::repro::{self, SweepConfig};
use skewbound::selftest::{self, Status};
use skewbound::{formats, SkewParams};

#[derive(Parser)]
#[command(
    name = "skewbound",
    version,
    about = "Skew-information sum uncertainty bounds for quantum channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute the q = 0.4 comparison table and check it against the published values.
    Table1 {
        #[command(flatten)]
        bounds: BoundArgs,
        /// Also write the table as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Channel bounds along θ for the amplitude-damping, phase-damping and bit-flip channels.
    Sweep {
        #[arg(long, default_value_t = 0.4)]
        q: f64,
        /// Bloch radius of the equatorial state.
        #[arg(long, default_value_t = CHANNEL_EXAMPLE_RADIUS)]
        radius: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unitary bounds along θ for exp(iπσ_k/8), k = 1, 2, 3.
    UnitarySweep {
        #[arg(long, default_value_t = UNITARY_EXAMPLE_RADIUS)]
        radius: f64,
        /// Use diag(e^{iπ/8}, -e^{iπ/8}) for the third unitary instead of exp(iπσ₃/8).
        #[arg(long)]
        printed_u3: bool,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full bound report for user-supplied channels, as JSON. Exits non-zero if
    /// any soundness invariant fails.
    Bounds {
        /// Channel files: {"name": ..., "kraus": [matrix, ...]}.
        #[arg(required = true, num_args = 2..)]
        channels: Vec<PathBuf>,
        /// Qubit state as a Bloch vector "x,y,z".
        #[arg(long, conflicts_with = "rho", required_unless_present = "rho")]
        bloch: Option<String>,
        /// Density matrix file: a matrix or {"rho": matrix}.
        #[arg(long)]
        rho: Option<PathBuf>,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded numerical self-checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta_start: f64,
    #[arg(long, default_value_t = PI, allow_negative_numbers = true)]
    theta_end: f64,
    /// Number of grid points, endpoints included (default grid: 181 points over [0, π]).
    #[arg(long, default_value_t = 181)]
    steps: usize,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
    /// Defaults to 1 - alpha.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, default_value_t = 0.25)]
    gamma: f64,
}

impl ParamArgs {
    fn params(&self) -> Result<SkewParams> {
        let beta = self.beta.unwrap_or(1.0 - self.alpha);
        Ok(SkewParams::new(self.alpha, beta, self.gamma)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Sum,
    Difference,
    Best,
}

#[derive(Args)]
struct BoundArgs {
    /// Maximum number of permutation tuples to enumerate.
    #[arg(long, default_value_t = DEFAULT_TUPLE_CAP)]
    cap: u64,
    /// Sign variant of the third bound in each family.
    #[arg(long, value_enum, default_value_t = SignArg::Difference)]
    sign: SignArg,
}

impl BoundArgs {
    fn options(&self) -> BoundOptions {
        BoundOptions {
            cap: self.cap,
            sign: match self.sign {
                SignArg::Sum => SignChoice::Sum,
                SignArg::Difference => SignChoice::Difference,
                SignArg::Best => SignChoice::Best,
            },
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => say(text),
    }
}

fn say(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Table1 { bounds, out } => {
            let rows = repro::table1(&bounds.options())?;
            say(&repro::format_table1(&rows))?;
            if let Some(path) = out {
                emit(Some(&path), &repro::table1_csv(&rows))?;
            }
            let ok = rows.iter().all(|r| r.passes());
            say(&format!(
                "{}: 28 values within {:.0e}\n",
                if ok { "PASS" } else { "FAIL" },
                repro::PUBLISHED_TOL
            ))?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Sweep {
            q,
            radius,
            grid,
            params,
            bounds,
            out,
        } => {
            let cfg = SweepConfig {
                theta_start: grid.theta_start,
                theta_end: grid.theta_end,
                steps: grid.steps,
                q,
                params: params.params()?,
                bloch_radius: radius,
            };
            let rows = repro::channel_sweep(&cfg, &bounds.options())?;
            emit(out.as_deref(), &repro::channel_sweep_csv(&rows))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::UnitarySweep {
            radius,
            printed_u3,
            grid,
            params,
            out,
        } => {
            let cfg = SweepConfig {
                theta_start: grid.theta_start,
                theta_end: grid.theta_end,
                steps: grid.steps,
                q: 0.0,
                params: params.params()?,
                bloch_radius: radius,
            };
            let rows = repro::unitary_sweep(&cfg, printed_u3)?;
            emit(out.as_deref(), &repro::unitary_sweep_csv(&rows))?;
            eprintln!(
                "lb3 >= max(lb1, lb2) at {:.1}% of {} grid points",
                100.0 * repro::lb3_dominance_fraction(&rows),
                rows.len()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds {
            channels,
            bloch,
            rho,
            params,
            bounds,
            out,
        } => {
            let state = match (bloch, rho) {
                (Some(b), _) => quantum::bloch_state(formats::parse_bloch_vector(&b)?)?,
                (None, Some(path)) => formats::parse_density_json(&read(&path)?)
                    .with_context(|| format!("in {}", path.display()))?,
                (None, None) => bail!("either --bloch or --rho is required"),
            };
            let chans = channels
                .iter()
                .map(|p| {
                    formats::parse_channel_json(&read(p)?)
                        .with_context(|| format!("in {}", p.display()))
                })
                .collect::<Result<Vec<_>>>()?;
            let report =
                ChannelBounds::new(&state, &chans, &params.params()?)?.report(&bounds.options())?;
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            emit(out.as_deref(), &text)?;
            let violations = report.violations();
            for v in &violations {
                eprintln!("soundness violation: {v}");
            }
            Ok(if violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Selftest { seed } => {
            let checks = selftest::run(seed)?;
            for c in &checks {
                say(&format!("{c}\n"))?;
            }
            let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
            say(&format!(
                "{} checks, {failed} failed (seed {seed})\n",
                checks.len()
            ))?;
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<io::Error>())
        .any(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
