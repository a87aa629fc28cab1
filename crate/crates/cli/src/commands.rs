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

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use rayon::prelude::*;
use serde_json::json;
use warpsim::advection::{self, WrapVariant};
use warpsim::heat;
use warpsim::verify::{self, BoundReport};
use warpsim::warp;
use warpsim::{cnot_equivalent, Circuit, CostFormula, Report};

use crate::config::{parse_sweep, ExperimentConfig, Problem};
use crate::{CircuitArgs, CliError, ProblemArgs, Target};

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| CliError::Invalid(format!("{}: {e}", p.display())))
        }
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

struct Solved {
    report: serde_json::Value,
    csv: String,
}

fn run_one(config: &ExperimentConfig) -> Result<Solved, CliError> {
    let u0 = config.initial_condition()?;
    let problem = config.problem()?;
    let mut resolved = config.clone();
    let (equation, outcome, grid) = match &problem {
        Problem::Heat(p) => {
            resolved.r = Some(p.r);
            (
                "heat",
                heat::heat_pipeline(p, &u0, config.mode, config.k)?,
                &p.grid,
            )
        }
        Problem::Advection(p) => {
            resolved.r = Some(p.r);
            (
                "advection",
                advection::adv_pipeline(p, &u0, config.mode, config.k)?,
                &p.grid,
            )
        }
    };
    let report = serde_json::to_value(Report::new(equation, &resolved, &outcome))
        .map_err(warpsim::Error::from)?;

    let mut csv = String::from("index");
    for alpha in 1..=grid.d {
        write!(csv, ",x{alpha}").unwrap();
    }
    csv.push_str(",u_est_re,u_est_im,u_exact_re,u_exact_im\n");
    for (i, (est, exact)) in outcome
        .u_est
        .iter()
        .zip(&outcome.diagnostics.u_exact)
        .enumerate()
    {
        write!(csv, "{i}").unwrap();
        for x in grid.coordinates(i) {
            write!(csv, ",{x:e}").unwrap();
        }
        writeln!(
            csv,
            ",{:e},{:e},{:e},{:e}",
            est.re, est.im, exact[0], exact[1]
        )
        .unwrap();
    }
    Ok(Solved { report, csv })
}

pub fn solve(
    args: &ProblemArgs,
    out: Option<&Path>,
    solution_csv: Option<&Path>,
    sweep: Option<&str>,
) -> Result<ExitCode, CliError> {
    let base = args.resolve()?;
    let Some(spec) = sweep else {
        let solved = run_one(&base)?;
        emit(out, &(pretty(&solved.report)? + "\n"))?;
        if let Some(p) = solution_csv {
            emit(Some(p), &solved.csv)?;
        }
        return Ok(ExitCode::SUCCESS);
    };
    if solution_csv.is_some() {
        return Err(CliError::Invalid(
            "--solution-csv cannot be combined with --sweep".into(),
        ));
    }
    let (key, values) = parse_sweep(spec)?;
    let configs = values
        .iter()
        .map(|v| {
            let mut c = base.clone();
            c.set(&key, v)?;
            Ok(c)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let reports = configs
        .par_iter()
        .map(|c| run_one(c).map(|s| s.report))
        .collect::<Result<Vec<_>, CliError>>()?;
    emit(out, &(pretty(&serde_json::Value::Array(reports))? + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn pretty(v: &serde_json::Value) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v).map_err(warpsim::Error::from)?)
}

pub enum SuiteKind {
    Trotter { quick: bool },
    Commutators(Vec<usize>),
    Counts,
}

fn trotter_reports(quick: bool) -> Result<Vec<BoundReport>, CliError> {
    let keep = |n_x: usize, n_p: usize| !quick || (n_x == 2 && n_p == 2);
    let heat_points: Vec<_> = verify::default_heat_sweep()
        .into_iter()
        .filter(|p| keep(p.n_x, p.n_p))
        .collect();
    let adv_points: Vec<_> = verify::default_adv_sweep()
        .into_iter()
        .filter(|p| keep(p.n_x, p.n_p))
        .collect();
    let mut out = verify::register_trotter_suite(2, &[0.02, 0.05, 0.1])?;
    if !quick {
        out.extend(verify::register_trotter_suite(3, &[0.02, 0.05, 0.1])?);
    }
    let heat = heat_points
        .par_iter()
        .map(verify::heat_trotter_point)
        .collect::<Result<Vec<_>, _>>()?;
    let adv = adv_points
        .par_iter()
        .map(verify::adv_trotter_point)
        .collect::<Result<Vec<_>, _>>()?;
    out.extend(heat);
    out.extend(adv.into_iter().flatten());
    Ok(out)
}

pub fn verify(
    suites: impl Iterator<Item = SuiteKind>,
    out: Option<&Path>,
    json: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let mut reports = Vec::new();
    for suite in suites {
        match suite {
            SuiteKind::Trotter { quick } => reports.extend(trotter_reports(quick)?),
            SuiteKind::Commutators(sizes) => {
                for n_x in sizes {
                    reports.extend(verify::commutator_suite(n_x)?);
                }
            }
            SuiteKind::Counts => reports.extend(verify::counts_suite()?),
        }
    }
    let mut csv = Vec::new();
    verify::write_reports_csv(&reports, &mut csv)?;
    emit(out, &String::from_utf8(csv).expect("ascii csv"))?;
    if let Some(p) = json {
        emit(Some(p), &verify::reports_to_json(&reports)?)?;
    }
    let failed: Vec<&BoundReport> = reports.iter().filter(|r| !r.pass).collect();
    if failed.is_empty() {
        eprintln!("{} checks passed", reports.len());
        return Ok(ExitCode::SUCCESS);
    }
    for r in &failed {
        eprintln!(
            "FAIL {} [{}]: measured {:e} vs formula {:e}",
            r.name, r.params, r.measured, r.formula
        );
    }
    eprintln!("{} of {} checks failed", failed.len(), reports.len());
    Ok(ExitCode::from(1))
}

/// Closed-form cost and its `(n_x, n_p, d)` arguments.
type Cost = (CostFormula, u32, u32, u32);

/// Builds the requested circuit and the closed-form cost it corresponds to, if any.
fn build(args: &CircuitArgs) -> Result<(Circuit, Option<Cost>), CliError> {
    let (w, tau, gamma) = (args.width, args.tau, args.gamma);
    let single = |f: CostFormula| Some((f, w as u32, 1, 1));
    Ok(match args.target {
        Target::W => (heat::w_gate(args.j, gamma * tau, args.lambda, w)?, None),
        Target::B => (heat::bell_basis(args.j, args.lambda, w)?, None),
        Target::B1 => (advection::b_wrap(WrapVariant::One, w)?, None),
        Target::B2 => (advection::b_wrap(WrapVariant::Two, w)?, None),
        Target::U1 => (advection::u_wrap(WrapVariant::One, tau, gamma, w)?, None),
        Target::U2 => (advection::u_wrap(WrapVariant::Two, tau, gamma, w)?, None),
        Target::V0 => (heat::v0(tau, gamma, w)?, single(CostFormula::V0)),
        Target::V1 => (advection::v1(tau, gamma, w)?, single(CostFormula::V1)),
        Target::V2 => (advection::v2(tau, gamma, w)?, single(CostFormula::V2)),
        Target::Qft => (warp::qft_circuit(w), None),
        Target::V0Tilde => {
            let c = args.problem.resolve()?;
            (heat::v0_tilde(tau, gamma, w, c.d)?, None)
        }
        Target::V1Tilde => {
            let c = args.problem.resolve()?;
            (advection::v1_tilde(tau, gamma, w, &c.a_vec)?, None)
        }
        Target::V2Tilde => {
            let c = args.problem.resolve()?;
            (advection::v2_tilde(tau, gamma, w, &c.a_vec)?, None)
        }
        Target::VHeat | Target::VAdv | Target::Dft => {
            let mut c = args.problem.resolve()?;
            c.equation = if args.target == Target::VAdv {
                crate::config::Equation::Advection
            } else {
                crate::config::Equation::Heat
            };
            match c.problem()? {
                Problem::Heat(p) if args.target == Target::Dft => {
                    (warp::centered_dft_circuit(&p.pgrid), None)
                }
                Problem::Heat(p) => (
                    heat::v_heat(&p)?,
                    Some((
                        CostFormula::VHeat,
                        p.grid.n_x as u32,
                        p.pgrid.n_p as u32,
                        p.grid.d as u32,
                    )),
                ),
                Problem::Advection(p) => (
                    advection::v_adv(&p)?,
                    Some((
                        CostFormula::VAdv,
                        p.grid.n_x as u32,
                        p.pgrid.n_p as u32,
                        p.grid.d as u32,
                    )),
                ),
            }
        }
    })
}

pub fn export(args: &CircuitArgs, as_json: bool, out: Option<&Path>) -> Result<ExitCode, CliError> {
    let (c, _) = build(args)?;
    let text = if as_json {
        c.to_json()? + "\n"
    } else {
        c.to_text()
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn count(args: &CircuitArgs) -> Result<ExitCode, CliError> {
    let (c, formula) = build(args)?;
    let cost = formula.map(|(f, n_x, n_p, d)| {
        json!({
            "formula": f.name(),
            "cnot_equivalent": cnot_equivalent(f, n_x, n_p, d).ok(),
        })
    });
    let doc = json!({
        "label": c.label(),
        "n_qubits": c.n_qubits(),
        "gates": c.len(),
        "native": c.count_native(),
        "cost": cost,
    });
    emit(None, &(pretty(&doc)? + "\n"))?;
    Ok(ExitCode::SUCCESS)
}
