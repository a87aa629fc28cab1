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

//! Experiment configuration: a JSON document, overridden field by field from the command line.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use warpsim::advection::AdvectionProblem;
use warpsim::fdm::{Boundary, GridSpec, Profile};
use warpsim::heat::HeatProblem;
use warpsim::{EvolutionMode, PGrid};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    Heat,
    Advection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub equation: Equation,
    /// Heat diffusivity.
    pub a: f64,
    /// Advection velocity per dimension; its length sets `d` for advection runs.
    pub a_vec: Vec<f64>,
    pub length: f64,
    pub t: f64,
    pub n_x: usize,
    pub d: usize,
    pub n_p: usize,
    /// Half-width of the p-domain.
    pub r_warp: f64,
    pub eps: f64,
    /// Trotter steps; the step budget at `eps` when absent.
    pub r: Option<usize>,
    /// Post-selection index; the first `p_k > 0` when absent.
    pub k: Option<usize>,
    pub mode: EvolutionMode,
    pub profile: Profile,
    /// CSV file with one initial value per grid point, overriding `profile`.
    pub u0_csv: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            equation: Equation::Heat,
            a: 1.0,
            a_vec: vec![1.0],
            length: 1.0,
            t: 0.05,
            n_x: 3,
            d: 1,
            n_p: 7,
            r_warp: 3.0,
            eps: 0.01,
            r: None,
            k: None,
            mode: EvolutionMode::Circuit,
            profile: Profile::Sine,
            u0_csv: None,
        }
    }
}

/// A validated problem ready to run.
pub enum Problem {
    Heat(HeatProblem),
    Advection(AdvectionProblem),
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    fn grid(&self) -> Result<GridSpec, CliError> {
        let (d, boundary) = match self.equation {
            Equation::Heat => (self.d, Boundary::Dirichlet),
            Equation::Advection => (self.a_vec.len(), Boundary::Periodic),
        };
        Ok(GridSpec::new(d, self.n_x, self.length, boundary)?)
    }

    /// Builds the problem, resolving `r` from the step budget when it is not given.
    pub fn problem(&self) -> Result<Problem, CliError> {
        let grid = self.grid()?;
        let pgrid = PGrid::new(self.r_warp, self.n_p)?;
        Ok(match self.equation {
            Equation::Heat => {
                let p = HeatProblem::new(self.a, grid, pgrid, self.t, 1)?;
                let r = match self.r {
                    Some(r) => r,
                    None => p.budget_r(self.eps)?,
                };
                Problem::Heat(p.with_r(r)?)
            }
            Equation::Advection => {
                let p = AdvectionProblem::new(self.a_vec.clone(), grid, pgrid, self.t, 1)?;
                let r = match self.r {
                    Some(r) => r,
                    None => p.budget_r(self.eps)?,
                };
                Problem::Advection(p.with_r(r)?)
            }
        })
    }

    pub fn initial_condition(&self) -> Result<Vec<f64>, CliError> {
        let grid = self.grid()?;
        match &self.u0_csv {
            Some(path) => {
                let u0 = read_column_csv(path)?;
                if u0.len() != grid.dim() {
                    return Err(CliError::Invalid(format!(
                        "u0_csv: expected {} values, found {}",
                        grid.dim(),
                        u0.len()
                    )));
                }
                Ok(u0)
            }
            None => Ok(self.profile.evaluate(&grid)),
        }
    }

    /// Applies `key=value` as a field override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let bad = |e: String| CliError::Invalid(format!("{key}={value}: {e}"));
        let float = || value.parse::<f64>().map_err(|e| bad(e.to_string()));
        let int = || value.parse::<usize>().map_err(|e| bad(e.to_string()));
        match key {
            "a" => self.a = float()?,
            "length" => self.length = float()?,
            "t" => self.t = float()?,
            "n_x" => self.n_x = int()?,
            "d" => self.d = int()?,
            "n_p" => self.n_p = int()?,
            "r_warp" => self.r_warp = float()?,
            "eps" => self.eps = float()?,
            "r" => self.r = Some(int()?),
            "k" => self.k = Some(int()?),
            _ => {
                return Err(CliError::Invalid(format!(
                    "cannot sweep `{key}`; use one of a, length, t, n_x, d, n_p, r_warp, eps, r, k"
                )))
            }
        }
        Ok(())
    }
}

/// Reads the last column of a CSV file, skipping blank lines, `#` comments and a text header.
pub fn read_column_csv(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = line.rsplit(',').next().unwrap_or(line).trim();
        match field.parse::<f64>() {
            Ok(v) => out.push(v),
            Err(_) if out.is_empty() && i == 0 => continue,
            Err(e) => {
                return Err(CliError::Invalid(format!(
                    "{}:{}: {e}",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(out)
}

/// Parses `key=v1,v2,…`.
pub fn parse_sweep(spec: &str) -> Result<(String, Vec<String>), CliError> {
    let (key, values) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Invalid(format!("--sweep expects key=v1,v2,…, got `{spec}`")))?;
    let values: Vec<String> = values
        .split(',')
        .map(|v| v.trim().to_string())
        .filter(|v| !v.is_empty())
        .collect();
    if values.is_empty() {
        return Err(CliError::Invalid(format!("--sweep `{key}` has no values")));
    }
    Ok((key.trim().to_string(), values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let mut c = ExperimentConfig {
            equation: Equation::Advection,
            a_vec: vec![1.0, -0.5],
            profile: Profile::step(),
            ..ExperimentConfig::default()
        };
        c.set("r", "12").unwrap();
        let back: ExperimentConfig = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn partial_documents_use_defaults() {
        let c: ExperimentConfig = serde_json::from_str(r#"{"n_x": 2, "t": 0.1}"#).unwrap();
        assert_eq!(c.n_x, 2);
        assert_eq!(c.n_p, 7);
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"nx": 2}"#).is_err());
    }

    #[test]
    fn budget_fills_r() {
        let c = ExperimentConfig {
            t: 1.0,
            n_p: 2,
            ..ExperimentConfig::default()
        };
        match c.problem().unwrap() {
            Problem::Heat(p) => assert_eq!(p.r, p.budget_r(0.01).unwrap()),
            Problem::Advection(_) => unreachable!(),
        }
    }

    #[test]
    fn sweep_spec() {
        let (k, v) = parse_sweep("n_p=5, 6,7").unwrap();
        assert_eq!(k, "n_p");
        assert_eq!(v, ["5", "6", "7"]);
        assert!(parse_sweep("n_p").is_err());
        assert!(ExperimentConfig::default().set("bogus", "1").is_err());
    }
}
