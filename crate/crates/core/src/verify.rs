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

//! Trotter bounds, step budgets, commutator identities, gate-count checks and scaling studies.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::advection::{self, AdvectionProblem};
use crate::error::{Error, Result};
use crate::fdm::{self, Boundary, Direction, GridSpec, SparseOperator};
use crate::gates::{cnot_equivalent, Circuit, CostFormula};
use crate::heat::{self, HeatProblem};
use crate::linalg::{self, expm_hermitian, operator_norm_diff, spectral_norm, DenseMatrix, C64};
use crate::pipeline;
use crate::simulator::dense_unitary;
use crate::warp::PGrid;

/// Relative slack applied to upper-bound checks.
pub const BOUND_SLACK: f64 = 1e-9;
/// Absolute slack applied to upper-bound checks, so that exact splittings with a zero bound pass.
pub const BOUND_FLOOR: f64 = 1e-12;
/// Absolute tolerance for equality checks.
pub const EQUALITY_TOL: f64 = 1e-10;
/// Errors below this level are treated as exact in scaling studies.
pub const SCALING_FLOOR: f64 = 1e-11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// `measured ≤ formula·(1 + 1e−9) + 1e−12`.
    Upper,
    /// `|measured − formula| ≤ 1e−10`.
    Equality,
}

/// One checked bound or identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub params: String,
    pub kind: BoundKind,
    pub formula: f64,
    pub measured: f64,
    pub pass: bool,
    pub margin: f64,
}

impl BoundReport {
    pub fn upper(
        name: impl Into<String>,
        params: impl Into<String>,
        formula: f64,
        measured: f64,
    ) -> Self {
        BoundReport {
            name: name.into(),
            params: params.into(),
            kind: BoundKind::Upper,
            formula,
            measured,
            pass: measured <= formula * (1.0 + BOUND_SLACK) + BOUND_FLOOR,
            margin: formula - measured,
        }
    }

    pub fn equality(
        name: impl Into<String>,
        params: impl Into<String>,
        formula: f64,
        measured: f64,
    ) -> Self {
        BoundReport {
            name: name.into(),
            params: params.into(),
            kind: BoundKind::Equality,
            formula,
            measured,
            pass: (measured - formula).abs() <= EQUALITY_TOL,
            margin: formula - measured,
        }
    }
}

pub fn all_pass(reports: &[BoundReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

pub fn write_reports_csv<W: Write>(reports: &[BoundReport], mut w: W) -> Result<()> {
    writeln!(w, "name,params,kind,formula,measured,margin,pass")?;
    for r in reports {
        let kind = match r.kind {
            BoundKind::Upper => "upper",
            BoundKind::Equality => "equality",
        };
        writeln!(
            w,
            "{},\"{}\",{},{:e},{:e},{:e},{}",
            r.name, r.params, kind, r.formula, r.measured, r.margin, r.pass
        )?;
    }
    Ok(())
}

pub fn reports_to_json(reports: &[BoundReport]) -> Result<String> {
    Ok(serde_json::to_string_pretty(reports)?)
}

fn sum_sq(a_vec: &[f64]) -> f64 {
    a_vec.iter().map(|a| a * a).sum()
}

/// Per-step heat error bound `d N_p γ₀² τ² (n_x − 1)/4`.
pub fn heat_step_bound(d: usize, big_n_p: usize, gamma0: f64, tau: f64, n_x: usize) -> f64 {
    d as f64 * big_n_p as f64 * gamma0 * gamma0 * tau * tau * n_x.saturating_sub(1) as f64 / 4.0
}

/// `‖U₀(τ) − V₀(τ)‖ ≤ γ₀²τ²(n_x − 1)/2`.
pub fn v0_step_bound(gamma0: f64, tau: f64, n_x: usize) -> f64 {
    gamma0 * gamma0 * tau * tau * n_x.saturating_sub(1) as f64 / 2.0
}

/// `‖exp(iτH₁) − V₁(τ)‖` and the `V₂` analogue: `γ²τ²n_x/2`.
pub fn wrap_step_bound(gamma: f64, tau: f64, n_x: usize) -> f64 {
    gamma * gamma * tau * tau * n_x as f64 / 2.0
}

/// Per-step advection bound `τ² n_x² (N_pγ₁² + 2N_pγ₁γ₂ + 2γ₂²) Σa_α² / 4`.
pub fn adv_step_bound(
    big_n_p: usize,
    gamma1: f64,
    gamma2: f64,
    tau: f64,
    n_x: usize,
    a_vec: &[f64],
) -> f64 {
    let np = big_n_p as f64;
    let c = np * gamma1 * gamma1 + 2.0 * np * gamma1 * gamma2 + 2.0 * gamma2 * gamma2;
    tau * tau * (n_x * n_x) as f64 * c * sum_sq(a_vec) / 4.0
}

/// The same bound with the roles of `γ₁` and `γ₂` exchanged in the bracket.
pub fn adv_step_bound_swapped(
    big_n_p: usize,
    gamma1: f64,
    gamma2: f64,
    tau: f64,
    n_x: usize,
    a_vec: &[f64],
) -> f64 {
    let np = big_n_p as f64;
    let c = np * gamma2 * gamma2 + 2.0 * np * gamma1 * gamma2 + 2.0 * gamma1 * gamma1;
    tau * tau * (n_x * n_x) as f64 * c * sum_sq(a_vec) / 4.0
}

/// Splitting `H_adv` into its `H₁` and `H₂` parts: `N_p γ₁γ₂ n_x τ² Σa_α² / 2`.
pub fn adv_first_split_bound(
    big_n_p: usize,
    gamma1: f64,
    gamma2: f64,
    tau: f64,
    n_x: usize,
    a_vec: &[f64],
) -> f64 {
    big_n_p as f64 * gamma1 * gamma2 * n_x as f64 * tau * tau * sum_sq(a_vec) / 2.0
}

/// Parameters of a step budget. `n_p` counts p-register qubits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "equation", rename_all = "lowercase")]
pub enum BudgetParams {
    Heat {
        d: usize,
        n_p: usize,
        gamma0: f64,
        t: f64,
        n_x: usize,
    },
    Advection {
        n_p: usize,
        gamma1: f64,
        gamma2: f64,
        t: f64,
        n_x: usize,
        a_vec: Vec<f64>,
    },
}

/// Smallest `r` whose accumulated per-step bound stays within `eps`.
pub fn r_budget(params: &BudgetParams, eps: f64) -> Result<usize> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::param("eps", "must be positive and finite"));
    }
    let (t, value) = match params {
        BudgetParams::Heat {
            d,
            n_p,
            gamma0,
            t,
            n_x,
        } => (*t, heat_step_bound(*d, 1 << n_p, *gamma0, *t, *n_x) / eps),
        BudgetParams::Advection {
            n_p,
            gamma1,
            gamma2,
            t,
            n_x,
            a_vec,
        } => (
            *t,
            adv_step_bound(1 << n_p, *gamma1, *gamma2, *t, *n_x, a_vec) / eps,
        ),
    };
    if !(t.is_finite() && t >= 0.0) || !value.is_finite() {
        return Err(Error::param("T", "must be a non-negative finite time"));
    }
    if t == 0.0 {
        return Ok(0);
    }
    let nearest = value.round();
    let r = if (value - nearest).abs() <= 1e-9 * value.max(1.0) {
        nearest
    } else {
        value.ceil()
    };
    if r > usize::MAX as f64 {
        return Err(Error::Domain(format!("step budget {r:e} is too large")));
    }
    Ok((r as usize).max(1))
}

/// Heat complexity `d² T² ‖u₀‖³ / (‖u(T)‖³ h⁴ ε³)` with unit constant.
pub fn heat_complexity(d: usize, t: f64, u0_norm: f64, ut_norm: f64, h: f64, eps: f64) -> f64 {
    let d = d as f64;
    d * d * t * t * u0_norm.powi(3) / (ut_norm.powi(3) * h.powi(4) * eps.powi(3))
}

/// Advection complexity `d T² Σa_α² ‖u₀‖³ / (‖u(T)‖³ h² ε³)` with unit constant.
pub fn advection_complexity(
    t: f64,
    a_vec: &[f64],
    u0_norm: f64,
    ut_norm: f64,
    h: f64,
    eps: f64,
) -> f64 {
    a_vec.len() as f64 * t * t * sum_sq(a_vec) * u0_norm.powi(3)
        / (ut_norm.powi(3) * h * h * eps.powi(3))
}

fn dense_comm_norm(a: &SparseOperator, b: &SparseOperator) -> f64 {
    spectral_norm(&linalg::commutator(&a.to_dense(), &b.to_dense()))
}

fn s_sum(dir_sign: f64, n_x: usize) -> Result<SparseOperator> {
    let mut out = SparseOperator::zeros(1 << n_x);
    for j in 1..=n_x {
        out = out.add(&s_pair(dir_sign, j, n_x)?)?;
    }
    Ok(out)
}

fn s_pair(dir_sign: f64, j: usize, n_x: usize) -> Result<SparseOperator> {
    fdm::s_j(Direction::Minus, j, n_x)?.add(&fdm::s_j(Direction::Plus, j, n_x)?.scale_re(dir_sign))
}

/// Commutator identities of the shift and wrap-around operators on `n_x ≥ 2` qubits.
pub fn commutator_suite(n_x: usize) -> Result<Vec<BoundReport>> {
    if n_x < 2 {
        return Err(Error::param("n_x", "the commutator suite needs n_x >= 2"));
    }
    let tag = format!("n_x={n_x}");
    let s01 = fdm::sigma01_all(n_x);
    let s10 = fdm::sigma10_all(n_x);
    let mut out = Vec::new();

    out.push(BoundReport::equality(
        "comm_splus_sigma_plus",
        &tag,
        1.0,
        dense_comm_norm(&s_sum(1.0, n_x)?, &s01.add(&s10)?),
    ));
    out.push(BoundReport::equality(
        "comm_sminus_sigma_minus",
        &tag,
        1.0,
        dense_comm_norm(&s_sum(-1.0, n_x)?, &s01.sub(&s10)?),
    ));
    for (name, sign) in [("pairwise_splus", 1.0), ("pairwise_sminus", -1.0)] {
        let pairs: Vec<SparseOperator> = (1..=n_x)
            .map(|j| s_pair(sign, j, n_x))
            .collect::<Result<_>>()?;
        let mut total = 0.0;
        for j in 0..n_x {
            for jp in j + 1..n_x {
                total += dense_comm_norm(&pairs[j], &pairs[jp]);
            }
        }
        out.push(BoundReport::equality(name, &tag, (n_x - 1) as f64, total));
    }
    for j in 1..=n_x {
        let sm = fdm::s_j(Direction::Minus, j, n_x)?;
        let sp = fdm::s_j(Direction::Plus, j, n_x)?;
        let p = format!("{tag};j={j}");
        out.push(BoundReport::equality(
            "comm_sj_sigma01",
            &p,
            0.0,
            dense_comm_norm(&sm, &s01),
        ));
        out.push(BoundReport::equality(
            "comm_sj_minus_plus",
            &p,
            1.0,
            dense_comm_norm(&sm, &sp),
        ));
    }
    out.push(BoundReport::equality(
        "comm_sigma01_sigma10",
        &tag,
        1.0,
        dense_comm_norm(&s01, &s10),
    ));

    let (g1, g2) = (0.75, 1.5);
    out.push(BoundReport::upper(
        "comm_h1_h2",
        format!("{tag};gamma1={g1};gamma2={g2}"),
        2.0 * g1 * g2 * n_x as f64,
        dense_comm_norm(&advection::h1(g1, n_x), &advection::h2(g2, n_x)),
    ));

    let mut cases = vec![vec![1.3]];
    if n_x <= 3 {
        cases.push(vec![1.0, -0.5]);
    }
    for a_vec in cases {
        let n_p = 2;
        let grid = GridSpec::new(a_vec.len(), n_x, 1.0, Boundary::Periodic)?;
        let prob = AdvectionProblem::new(a_vec.clone(), grid, PGrid::new(3.0, n_p)?, 0.0, 0)?;
        let (p1, p2) = advection::h_parts(&prob)?;
        let big_n = 1usize << n_p;
        let measured = (big_n / 2) as f64 * dense_comm_norm(&p1, &p2);
        let formula = big_n as f64 * prob.gamma1() * prob.gamma2() * n_x as f64 * sum_sq(&a_vec);
        out.push(BoundReport::upper(
            "comm_h_adv_parts",
            format!("{tag};n_p={n_p};a={a_vec:?}"),
            formula,
            measured,
        ));
    }
    Ok(out)
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len().min(ys.len()) as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingStudy {
    pub taus: Vec<f64>,
    pub errors: Vec<f64>,
    /// `None` when every error sits below the numerical floor.
    pub slope: Option<f64>,
}

/// Log-log slope of `‖exp(iτH) − builder(τ)‖` against `τ`.
pub fn scaling_study(
    builder: impl Fn(f64) -> Result<Circuit>,
    hamiltonian: &DenseMatrix,
    taus: &[f64],
) -> Result<ScalingStudy> {
    if taus.len() < 2 || taus.iter().any(|&t| !(t.is_finite() && t > 0.0)) {
        return Err(Error::param(
            "taus",
            "need at least two positive step sizes",
        ));
    }
    let mut errors = Vec::with_capacity(taus.len());
    for &tau in taus {
        let v = dense_unitary(&builder(tau)?)?;
        errors.push(operator_norm_diff(&expm_hermitian(hamiltonian, tau), &v)?);
    }
    let slope = if errors.iter().all(|&e| e < SCALING_FLOOR) {
        None
    } else {
        let xs: Vec<f64> = taus.iter().map(|t| t.ln()).collect();
        let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
        Some(fit_slope(&xs, &ys))
    };
    Ok(ScalingStudy {
        taus: taus.to_vec(),
        errors,
        slope,
    })
}

/// Dyadic step sizes `τ₀, τ₀/2, …`.
pub fn dyadic_taus(tau0: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| tau0 / f64::powi(2.0, i as i32))
        .collect()
}

/// One point of the heat Trotter sweep, parameterised directly by `γ₀`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeatSweepPoint {
    pub d: usize,
    pub n_x: usize,
    pub n_p: usize,
    pub tau: f64,
    pub gamma0: f64,
}

/// Heat problem on the unit box with `R = 3` and diffusivity chosen to give `gamma0`.
pub fn heat_problem_for(
    d: usize,
    n_x: usize,
    n_p: usize,
    gamma0: f64,
    tau: f64,
) -> Result<HeatProblem> {
    let grid = GridSpec::new(d, n_x, 1.0, Boundary::Dirichlet)?;
    let pgrid = PGrid::new(3.0, n_p)?;
    let a = gamma0 * grid.h() * grid.h() * pgrid.r;
    HeatProblem::new(a, grid, pgrid, tau, 1)
}

pub fn default_heat_sweep() -> Vec<HeatSweepPoint> {
    let mut out = Vec::new();
    for d in [1, 2] {
        for n_x in [2, 3] {
            for n_p in [2, 3] {
                for tau in [0.02, 0.05, 0.1] {
                    out.push(HeatSweepPoint {
                        d,
                        n_x,
                        n_p,
                        tau,
                        gamma0: 1.0,
                    });
                }
            }
        }
    }
    out
}

/// `‖exp(iτH_heat) − V_heat(τ)‖` against the per-step heat bound.
pub fn heat_trotter_point(p: &HeatSweepPoint) -> Result<BoundReport> {
    let prob = heat_problem_for(p.d, p.n_x, p.n_p, p.gamma0, p.tau)?;
    let v = dense_unitary(&heat::v_heat(&prob)?)?;
    let u = pipeline::block_diagonal(&pipeline::exact_blocks(&heat::h_heat_blocks(&prob)?, p.tau));
    Ok(BoundReport::upper(
        "heat_step",
        format!(
            "d={};n_x={};n_p={};tau={};gamma0={}",
            p.d, p.n_x, p.n_p, p.tau, p.gamma0
        ),
        heat_step_bound(p.d, prob.pgrid.n(), prob.gamma0(), p.tau, p.n_x),
        operator_norm_diff(&u, &v)?,
    ))
}

pub fn heat_trotter_sweep(points: &[HeatSweepPoint]) -> Result<Vec<BoundReport>> {
    points.iter().map(heat_trotter_point).collect()
}

/// One point of the advection Trotter sweep on the unit box with `R = 3`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdvSweepPoint {
    pub a_vec: Vec<f64>,
    pub n_x: usize,
    pub n_p: usize,
    pub tau: f64,
}

pub fn adv_problem_for(
    a_vec: &[f64],
    n_x: usize,
    n_p: usize,
    tau: f64,
) -> Result<AdvectionProblem> {
    let grid = GridSpec::new(a_vec.len(), n_x, 1.0, Boundary::Periodic)?;
    AdvectionProblem::new(a_vec.to_vec(), grid, PGrid::new(3.0, n_p)?, tau, 1)
}

pub fn default_adv_sweep() -> Vec<AdvSweepPoint> {
    let velocities: [&[f64]; 4] = [&[1.0], &[-2.0], &[1.0, -1.0], &[2.0, 0.5]];
    let mut out = Vec::new();
    for a_vec in velocities {
        for n_x in [2, 3] {
            for n_p in [2, 3] {
                for tau in [0.005, 0.01, 0.02] {
                    out.push(AdvSweepPoint {
                        a_vec: a_vec.to_vec(),
                        n_x,
                        n_p,
                        tau,
                    });
                }
            }
        }
    }
    out
}

/// Measured advection step error against the bracketed bound in both `γ` orders, and the
/// error of splitting `H_adv` into its `H₁` and `H₂` parts against the first-split bound.
pub fn adv_trotter_point(p: &AdvSweepPoint) -> Result<Vec<BoundReport>> {
    let prob = adv_problem_for(&p.a_vec, p.n_x, p.n_p, p.tau)?;
    let (g1, g2, big_n) = (prob.gamma1(), prob.gamma2(), prob.pgrid.n());
    let params = format!(
        "a={:?};n_x={};n_p={};tau={};gamma1={};gamma2={}",
        p.a_vec, p.n_x, p.n_p, p.tau, g1, g2
    );
    let u = pipeline::block_diagonal(&pipeline::exact_blocks(
        &advection::h_adv_blocks(&prob)?,
        p.tau,
    ));
    let v = dense_unitary(&advection::v_adv(&prob)?)?;
    let measured = operator_norm_diff(&u, &v)?;

    let (p1, p2) = advection::h_parts(&prob)?;
    let e1 = expm_hermitian(&p1.to_dense(), p.tau);
    let e2 = expm_hermitian(&p2.to_dense(), p.tau);
    let half = (big_n / 2) as i64;
    let split_blocks: Vec<DenseMatrix> = (0..big_n as i64)
        .map(|k| &e2 * pipeline::unitary_power(&e1, k - half))
        .collect();
    let split = operator_norm_diff(&u, &pipeline::block_diagonal(&split_blocks))?;

    Ok(vec![
        BoundReport::upper(
            "adv_step",
            &params,
            adv_step_bound(big_n, g1, g2, p.tau, p.n_x, &p.a_vec),
            measured,
        ),
        BoundReport::upper(
            "adv_step_swapped",
            &params,
            adv_step_bound_swapped(big_n, g1, g2, p.tau, p.n_x, &p.a_vec),
            measured,
        ),
        BoundReport::upper(
            "adv_first_split",
            &params,
            adv_first_split_bound(big_n, g1, g2, p.tau, p.n_x, &p.a_vec),
            split,
        ),
    ])
}

pub fn adv_trotter_sweep(points: &[AdvSweepPoint]) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    for p in points {
        out.extend(adv_trotter_point(p)?);
    }
    Ok(out)
}

/// Single-register checks: `V₀` against its bound, `V₁`/`V₂` against theirs.
pub fn register_trotter_suite(n_x: usize, taus: &[f64]) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    let (g0, g1, g2) = (1.0, 0.75, 1.5);
    let h0 = heat::h0(g0, n_x).to_dense();
    let h1 = advection::h1(g1, n_x).to_dense();
    let h2 = advection::h2(g2, n_x).to_dense();
    for &tau in taus {
        let tag = format!("n_x={n_x};tau={tau}");
        let v = dense_unitary(&heat::v0(tau, g0, n_x)?)?;
        out.push(BoundReport::upper(
            "v0_step",
            &tag,
            v0_step_bound(g0, tau, n_x),
            operator_norm_diff(&expm_hermitian(&h0, tau), &v)?,
        ));
        if n_x >= 2 {
            let v = dense_unitary(&advection::v1(tau, g1, n_x)?)?;
            out.push(BoundReport::upper(
                "v1_step",
                &tag,
                wrap_step_bound(g1, tau, n_x),
                operator_norm_diff(&expm_hermitian(&h1, tau), &v)?,
            ));
            let v = dense_unitary(&advection::v2(tau, g2, n_x)?)?;
            out.push(BoundReport::upper(
                "v2_step",
                &tag,
                wrap_step_bound(g2, tau, n_x),
                operator_norm_diff(&expm_hermitian(&h2, tau), &v)?,
            ));
        }
    }
    Ok(out)
}

/// Closed-form cost values and the native structure of the `W_j` building block.
pub fn counts_suite() -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    let base = [
        (CostFormula::V0, 16u64),
        (CostFormula::ControlledV0, 88),
        (CostFormula::V1, 28),
        (CostFormula::V2, 28),
        (CostFormula::ControlledV1, 108),
    ];
    for (f, want) in base {
        out.push(BoundReport::equality(
            f.name(),
            "n_x=3",
            want as f64,
            cnot_equivalent(f, 3, 1, 1)? as f64,
        ));
    }
    for n_p in [2u32, 3] {
        for d in [1u32, 2] {
            let half = 1u64 << (n_p - 1);
            let full = (1u64 << n_p) - 1;
            let d64 = d as u64;
            let heat = d64 * half * 16 + d64 * full * 88;
            let adv = d64 * 28 + d64 * half * 28 + d64 * full * 108;
            let tag = format!("n_x=3;n_p={n_p};d={d}");
            out.push(BoundReport::equality(
                CostFormula::VHeat.name(),
                &tag,
                heat as f64,
                cnot_equivalent(CostFormula::VHeat, 3, n_p, d)? as f64,
            ));
            out.push(BoundReport::equality(
                CostFormula::VAdv.name(),
                &tag,
                adv as f64,
                cnot_equivalent(CostFormula::VAdv, 3, n_p, d)? as f64,
            ));
        }
    }
    for n_x in 1..=5usize {
        for j in 1..=n_x {
            let counts = heat::w_gate(j, 0.3, 0.0, n_x)?.count_native();
            let tag = format!("n_x={n_x};j={j}");
            let mcrz = counts
                .multi_controlled_rz
                .get(&(j - 1))
                .copied()
                .unwrap_or(0);
            out.push(BoundReport::equality(
                "w_mcrz",
                &tag,
                1.0,
                counts.total_rz() as f64,
            ));
            out.push(BoundReport::equality(
                "w_mcrz_controls",
                &tag,
                1.0,
                mcrz as f64,
            ));
            out.push(BoundReport::equality(
                "w_cnot_ladder",
                &tag,
                (2 * (j - 1)) as f64,
                counts.cnot as f64,
            ));
        }
    }
    Ok(out)
}

/// Relative distance between two complex vectors after normalising both.
pub fn normalized_distance(a: &[C64], b: &[C64]) -> f64 {
    let na = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    a.iter()
        .zip(b)
        .map(|(x, y)| (x / na - y / nb).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
