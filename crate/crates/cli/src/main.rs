// Copyright 2026 The warpsim Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! `warpsim`: solve, verify, export and count Schrödingerisation circuits.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input.

mod commands;
mod config;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use warpsim::EvolutionMode;

use config::Equation;

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Core(warpsim::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<warpsim::Error> for CliError {
    fn from(e: warpsim::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "warpsim",
    version,
    about = "Schrödingerisation circuits for heat and advection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and write a JSON report.
    Solve(SolveArgs),
    /// Check Trotter bounds, commutator identities or gate counts.
    Verify(VerifyArgs),
    /// Write a circuit listing.
    Export(ExportArgs),
    /// Print native gate counts and the closed-form CNOT-equivalent cost.
    Count(CircuitArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProfileName {
    Sine,
    Gaussian,
    Step,
    Constant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeName {
    Circuit,
    Exact,
}

/// Problem settings. Flags override the fields of `--config`; defaults: heat, a=1, L=1, T=0.05,
/// n_x=3, d=1, n_p=7, R=3, eps=0.01, sine profile, circuit mode.
#[derive(Args, Clone, Debug, Default)]
pub struct ProblemArgs {
    /// JSON experiment configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    equation: Option<Equation>,
    /// Heat diffusivity.
    #[arg(long)]
    a: Option<f64>,
    /// Advection velocities, comma separated (sets d).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a_vec: Option<Vec<f64>>,
    /// Domain length L.
    #[arg(long)]
    length: Option<f64>,
    /// Final time T.
    #[arg(long)]
    t: Option<f64>,
    /// Qubits per spatial dimension.
    #[arg(long)]
    n_x: Option<usize>,
    /// Spatial dimensions (heat).
    #[arg(long)]
    d: Option<usize>,
    /// Qubits of the p-register.
    #[arg(long)]
    n_p: Option<usize>,
    /// Half-width R of the p-domain.
    #[arg(long)]
    r_warp: Option<f64>,
    /// Trotter tolerance used for the step budget.
    #[arg(long)]
    eps: Option<f64>,
    /// Trotter steps, overriding the budget.
    #[arg(long)]
    r: Option<usize>,
    /// Post-selection index.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<ModeName>,
    #[arg(long, value_enum)]
    profile: Option<ProfileName>,
    /// Initial values from a CSV file (last column, one row per grid point).
    #[arg(long)]
    u0_csv: Option<PathBuf>,
}

impl ProblemArgs {
    fn resolve(&self) -> Result<config::ExperimentConfig, CliError> {
        let mut c = match &self.config {
            Some(p) => config::ExperimentConfig::load(p)?,
            None => config::ExperimentConfig::default(),
        };
        if let Some(v) = self.equation {
            c.equation = v;
        }
        if let Some(v) = self.a {
            c.a = v;
        }
        if let Some(v) = &self.a_vec {
            c.a_vec = v.clone();
        }
        if let Some(v) = self.length {
            c.length = v;
        }
        if let Some(v) = self.t {
            c.t = v;
        }
        if let Some(v) = self.n_x {
            c.n_x = v;
        }
        if let Some(v) = self.d {
            c.d = v;
        }
        if let Some(v) = self.n_p {
            c.n_p = v;
        }
        if let Some(v) = self.r_warp {
            c.r_warp = v;
        }
        if let Some(v) = self.eps {
            c.eps = v;
        }
        if self.r.is_some() {
            c.r = self.r;
        }
        if self.k.is_some() {
            c.k = self.k;
        }
        if let Some(m) = self.mode {
            c.mode = match m {
                ModeName::Circuit => EvolutionMode::Circuit,
                ModeName::Exact => EvolutionMode::Exact,
            };
        }
        if let Some(p) = self.profile {
            c.profile = match p {
                ProfileName::Sine => warpsim::Profile::Sine,
                ProfileName::Gaussian => warpsim::Profile::gaussian(),
                ProfileName::Step => warpsim::Profile::step(),
                ProfileName::Constant => warpsim::Profile::Constant,
            };
        }
        if self.u0_csv.is_some() {
            c.u0_csv = self.u0_csv.clone();
        }
        Ok(c)
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// JSON report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV with the recovered and reference solutions.
    #[arg(long)]
    solution_csv: Option<PathBuf>,
    /// Run one solve per value, `key=v1,v2,…`, in parallel; the report becomes a JSON array.
    #[arg(long)]
    sweep: Option<String>,
    /// Print the resolved configuration as JSON and exit.
    #[arg(long)]
    print_config: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Trotter,
    Commutators,
    Counts,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Register sizes for the commutator suite.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
    n_x: Vec<usize>,
    /// Use a reduced Trotter sweep (n_x = 2, n_p = 2).
    #[arg(long)]
    quick: bool,
    /// CSV output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the reports as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// `W_j(γτ, λ)`.
    W,
    /// `B_j(λ)`.
    B,
    B1,
    B2,
    U1,
    U2,
    V0,
    V0Tilde,
    V1,
    V2,
    V1Tilde,
    V2Tilde,
    VHeat,
    VAdv,
    Qft,
    Dft,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone, Debug)]
pub struct CircuitArgs {
    #[arg(value_enum)]
    target: Target,
    /// Register size for single-register targets.
    #[arg(long, default_value_t = 3)]
    width: usize,
    /// 1-based qubit index for `w` and `b`.
    #[arg(long, default_value_t = 1)]
    j: usize,
    /// Phase λ for `w` and `b`.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    lambda: f64,
    /// Step τ for single-register targets.
    #[arg(long, default_value_t = 0.1)]
    tau: f64,
    /// Coefficient γ for single-register targets.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    gamma: f64,
    /// Problem settings for `v-heat`, `v-adv`, the tilde targets and `dft`.
    #[command(flatten)]
    problem: ProblemArgs,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    circuit: CircuitArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) if a.print_config => a.problem.resolve().map(|c| {
            println!("{}", c.to_json());
            ExitCode::SUCCESS
        }),
        Command::Solve(a) => commands::solve(
            &a.problem,
            a.out.as_deref(),
            a.solution_csv.as_deref(),
            a.sweep.as_deref(),
        ),
        Command::Verify(a) => {
            let suites: &[Suite] = match a.suite {
                Suite::All => &[Suite::Commutators, Suite::Counts, Suite::Trotter],
                ref s => std::slice::from_ref(s),
            };
            commands::verify(
                suites.iter().map(|s| match s {
                    Suite::Trotter => commands::SuiteKind::Trotter { quick: a.quick },
                    Suite::Commutators => commands::SuiteKind::Commutators(a.n_x.clone()),
                    Suite::Counts | Suite::All => commands::SuiteKind::Counts,
                }),
                a.out.as_deref(),
                a.json.as_deref(),
            )
        }
        Command::Export(a) => {
            commands::export(&a.circuit, a.format == Format::Json, a.out.as_deref())
        }
        Command::Count(a) => commands::count(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
