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

//! Upwind advection `u_t = Σ_α a_α ∂_α u` on a periodic grid.
//!
//! `H_adv = Σ_k (k − N_p/2) Σ_α |a_α|(H₁)_α ⊗ |k⟩⟨k| + Σ_α a_α (H₂)_α ⊗ I`, with
//! `H₁ = γ₁[Σ_j(s_j⁻ + s_j⁺) − 2I + σ₀₁^{⊗n} + σ₁₀^{⊗n}]` and
//! `H₂ = −iγ₂[Σ_j(s_j⁻ − s_j⁺) − σ₀₁^{⊗n} + σ₁₀^{⊗n}]`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fdm::{self, Boundary, Direction, GridSpec, SparseOperator};
use crate::gates::{cnot_equivalent, Circuit, CostFormula, Gate};
use crate::heat::{bell_basis, crz_ladder_top, tau, validate_time, w_gate};
use crate::linalg::{DenseMatrix, C64, I};
use crate::pipeline::{self, Evolution, EvolutionMode, Finish, SolveOutcome};
use crate::verify;
use crate::warp::PGrid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WrapVariant {
    /// Couples `|0…0⟩` and `|1…1⟩` through `σ₀₁^{⊗n} + σ₁₀^{⊗n}`.
    One,
    /// Couples them through `iσ₀₁^{⊗n} − iσ₁₀^{⊗n}`.
    Two,
}

impl WrapVariant {
    /// Phase of the Bell-basis change used by the variant.
    fn lambda(self) -> f64 {
        match self {
            WrapVariant::One => 0.0,
            WrapVariant::Two => FRAC_PI_2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdvectionProblem {
    pub a_vec: Vec<f64>,
    pub grid: GridSpec,
    pub pgrid: PGrid,
    pub t: f64,
    pub r: usize,
}

impl AdvectionProblem {
    pub fn new(a_vec: Vec<f64>, grid: GridSpec, pgrid: PGrid, t: f64, r: usize) -> Result<Self> {
        if grid.boundary != Boundary::Periodic {
            return Err(Error::param(
                "boundary",
                "the advection solver uses periodic boundaries",
            ));
        }
        if grid.n_x < 2 {
            return Err(Error::param("n_x", "advection circuits need n_x >= 2"));
        }
        if a_vec.len() != grid.d {
            return Err(Error::param(
                "a",
                format!("expected {} velocities, got {}", grid.d, a_vec.len()),
            ));
        }
        if a_vec.iter().any(|a| !a.is_finite()) {
            return Err(Error::param("a", "velocities must be finite"));
        }
        validate_time(t, r)?;
        Ok(AdvectionProblem {
            a_vec,
            grid,
            pgrid,
            t,
            r,
        })
    }

    /// `γ₁ = 1/(2hR)`.
    pub fn gamma1(&self) -> f64 {
        1.0 / (2.0 * self.grid.h() * self.pgrid.r)
    }

    /// `γ₂ = 1/(2h)`.
    pub fn gamma2(&self) -> f64 {
        1.0 / (2.0 * self.grid.h())
    }

    pub fn tau(&self) -> f64 {
        tau(self.t, self.r)
    }

    pub fn n_qubits(&self) -> usize {
        self.grid.n_qubits() + self.pgrid.n_p
    }

    pub fn budget_r(&self, eps: f64) -> Result<usize> {
        verify::r_budget(
            &verify::BudgetParams::Advection {
                n_p: self.pgrid.n_p,
                gamma1: self.gamma1(),
                gamma2: self.gamma2(),
                t: self.t,
                n_x: self.grid.n_x,
                a_vec: self.a_vec.clone(),
            },
            eps,
        )
    }

    pub fn with_r(mut self, r: usize) -> Result<Self> {
        validate_time(self.t, r)?;
        self.r = r;
        Ok(self)
    }
}

fn check_n_x(n_x: usize) -> Result<()> {
    if n_x < 2 {
        return Err(Error::param("n_x", "wrap-around circuits need n_x >= 2"));
    }
    Ok(())
}

/// `B⁽¹⁾` or `B⁽²⁾`: `X` on wires `1…n_x−1`, then `B_{n_x}(λ)`. Maps `|0⟩|1…1⟩` to
/// `(|0…0⟩ + |1…1⟩)/√2` (variant one) or `(|0…0⟩ − i|1…1⟩)/√2` (variant two).
pub fn b_wrap(variant: WrapVariant, n_x: usize) -> Result<Circuit> {
    check_n_x(n_x)?;
    let mut c = Circuit::new(n_x, format!("B^({variant:?})"));
    for m in 0..n_x - 1 {
        c.push(Gate::x(m))?;
    }
    c.append(&bell_basis(n_x, variant.lambda(), n_x)?)?;
    Ok(c)
}

/// `B · CRZ_{n_x}^{1…n_x−1}(−2γτ) · B†`, exactly `exp(iγτ G)` with `G` the variant's coupling.
pub fn u_wrap(variant: WrapVariant, tau: f64, gamma: f64, n_x: usize) -> Result<Circuit> {
    let b = b_wrap(variant, n_x)?;
    let mut c = b.dagger();
    c.push(crz_ladder_top(n_x, -2.0 * gamma * tau, n_x)?)?;
    c.append(&b)?;
    Ok(c.with_label(format!("U^({variant:?})({tau})")))
}

/// `V₁(τ)`: `W_j(γ₁τ, 0)` ascending, then `U₁⁽¹⁾(τ)`, then `Ph(−2γ₁τ)`.
pub fn v1(tau: f64, gamma1: f64, n_x: usize) -> Result<Circuit> {
    check_n_x(n_x)?;
    let mut c = Circuit::new(n_x, format!("V_1({tau})"));
    for j in 1..=n_x {
        c.append(&w_gate(j, gamma1 * tau, 0.0, n_x)?)?;
    }
    c.append(&u_wrap(WrapVariant::One, tau, gamma1, n_x)?)?;
    c.push(Gate::global_phase(-2.0 * gamma1 * tau))?;
    Ok(c)
}

/// `V₂(τ)`: `W_j(γ₂τ, −π/2)` ascending, then `U₂⁽¹⁾(τ)`.
pub fn v2(tau: f64, gamma2: f64, n_x: usize) -> Result<Circuit> {
    check_n_x(n_x)?;
    let mut c = Circuit::new(n_x, format!("V_2({tau})"));
    for j in 1..=n_x {
        c.append(&w_gate(j, gamma2 * tau, -FRAC_PI_2, n_x)?)?;
    }
    c.append(&u_wrap(WrapVariant::Two, tau, gamma2, n_x)?)?;
    Ok(c)
}

fn per_dimension(
    a_vec: &[f64],
    n_x: usize,
    label: String,
    one: impl Fn(f64) -> Result<Circuit>,
) -> Result<Circuit> {
    let total = a_vec.len() * n_x;
    let mut c = Circuit::new(total, label);
    for (alpha, &a) in a_vec.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        c.append(&one(a)?.embed(total, alpha * n_x)?)?;
    }
    Ok(c)
}

/// `Ṽ₁(τ) = Π_α (V₁(|a_α|τ))_α`.
pub fn v1_tilde(tau: f64, gamma1: f64, n_x: usize, a_vec: &[f64]) -> Result<Circuit> {
    per_dimension(a_vec, n_x, format!("V1~({tau})"), |a| {
        v1(a.abs() * tau, gamma1, n_x)
    })
}

/// `Ṽ₂(τ) = Π_α (V₂(a_ατ))_α`.
pub fn v2_tilde(tau: f64, gamma2: f64, n_x: usize, a_vec: &[f64]) -> Result<Circuit> {
    per_dimension(a_vec, n_x, format!("V2~({tau})"), |a| {
        v2(a * tau, gamma2, n_x)
    })
}

/// `V_adv(τ) = (Ṽ₂ ⊗ I) Σ_k Ṽ₁^{k−N_p/2} ⊗ |k⟩⟨k|`.
pub fn v_adv(problem: &AdvectionProblem) -> Result<Circuit> {
    let g = &problem.grid;
    let tau = problem.tau();
    let step = v1_tilde(tau, problem.gamma1(), g.n_x, &problem.a_vec)?;
    let tail = v2_tilde(tau, problem.gamma2(), g.n_x, &problem.a_vec)?;
    pipeline::controlled_power_ladder(&step, Some(&tail), problem.pgrid.n_p, "V_adv")
}

/// `H₁` on `n_x` qubits.
pub fn h1(gamma1: f64, n_x: usize) -> SparseOperator {
    let lap = fdm::diff_op_1d(fdm::DiffKind::Laplacian, Boundary::Periodic, n_x, 1.0);
    lap.scale_re(gamma1)
}

/// `H₂` on `n_x` qubits.
pub fn h2(gamma2: f64, n_x: usize) -> SparseOperator {
    let sm = fdm::shift(Direction::Minus, n_x);
    let inner = sm
        .sub(&sm.adjoint())
        .and_then(|x| x.sub(&fdm::sigma01_all(n_x)))
        .and_then(|x| x.add(&fdm::sigma10_all(n_x)))
        .expect("same dimension");
    inner.scale(-I * gamma2)
}

fn placed_sum(op: &SparseOperator, weights: &[f64], n_x: usize) -> Result<SparseOperator> {
    let d = weights.len();
    let mut out = SparseOperator::zeros(1 << (d * n_x));
    for (alpha, &w) in (1..).zip(weights) {
        if w != 0.0 {
            out = out.add(&fdm::kron_place(&op.scale_re(w), alpha, d, n_x)?)?;
        }
    }
    Ok(out)
}

/// `Σ_α |a_α|(H₁)_α` and `Σ_α a_α(H₂)_α`.
pub fn h_parts(problem: &AdvectionProblem) -> Result<(SparseOperator, SparseOperator)> {
    let n_x = problem.grid.n_x;
    let abs: Vec<f64> = problem.a_vec.iter().map(|a| a.abs()).collect();
    Ok((
        placed_sum(&h1(problem.gamma1(), n_x), &abs, n_x)?,
        placed_sum(&h2(problem.gamma2(), n_x), &problem.a_vec, n_x)?,
    ))
}

/// Block `k` of `H_adv`: `(k − N_p/2) Σ|a_α|(H₁)_α + Σ a_α(H₂)_α`.
pub fn h_adv_blocks(problem: &AdvectionProblem) -> Result<Vec<DenseMatrix>> {
    let (p1, p2) = h_parts(problem)?;
    let (p1, p2) = (p1.to_dense(), p2.to_dense());
    let half = (problem.pgrid.n() / 2) as f64;
    Ok((0..problem.pgrid.n())
        .map(|k| &p1 * C64::from(k as f64 - half) + &p2)
        .collect())
}

/// Dense `H_adv` from the `H₁`/`H₂` decomposition, p-register high.
pub fn h_adv_dense(problem: &AdvectionProblem) -> Result<DenseMatrix> {
    Ok(pipeline::block_diagonal(&h_adv_blocks(problem)?))
}

/// Dense `H_adv = A₁ ⊗ D_η + A₂ ⊗ I` from the Hermitian split of the upwind generator.
pub fn h_adv_dense_from_split(problem: &AdvectionProblem) -> Result<DenseMatrix> {
    let (a1, a2) = fdm::hermitian_split(&generator(problem)?);
    let (a1, a2) = (a1.to_dense(), a2.to_dense());
    let blocks: Vec<DenseMatrix> = problem
        .pgrid
        .etas()
        .into_iter()
        .map(|eta| &a1 * C64::from(eta) + &a2)
        .collect();
    Ok(pipeline::block_diagonal(&blocks))
}

/// Classical upwind generator of the problem.
pub fn generator(problem: &AdvectionProblem) -> Result<SparseOperator> {
    fdm::advection_generator(&problem.a_vec, &problem.grid)
}

/// End-to-end solve, same stages as the heat pipeline with `V_adv`.
pub fn adv_pipeline(
    problem: &AdvectionProblem,
    u0: &[f64],
    mode: EvolutionMode,
    k: Option<usize>,
) -> Result<SolveOutcome> {
    if u0.len() != problem.grid.dim() {
        return Err(Error::DimensionMismatch {
            expected: problem.grid.dim(),
            got: u0.len(),
        });
    }
    let u0c: Vec<C64> = u0.iter().map(|&x| C64::from(x)).collect();
    let step = v_adv(problem)?;
    let evolution = match mode {
        EvolutionMode::Circuit => Evolution::Steps {
            circuit: &step,
            r: problem.r,
        },
        EvolutionMode::Exact => {
            Evolution::Blocks(pipeline::exact_blocks(&h_adv_blocks(problem)?, problem.t))
        }
    };
    let ws = pipeline::evolve_warped(&u0c, &problem.pgrid, &evolution)?;
    let u_exact = fdm::evolve_exact(&generator(problem)?, &u0c, problem.t)?;
    let g = &problem.grid;
    pipeline::finish(Finish {
        ws,
        pgrid: &problem.pgrid,
        k,
        u_exact,
        mode,
        r: problem.r,
        tau: problem.tau(),
        step_bound: verify::adv_step_bound(
            problem.pgrid.n(),
            problem.gamma1(),
            problem.gamma2(),
            problem.tau(),
            g.n_x,
            &problem.a_vec,
        ),
        step_counts: step.count_native(),
        formula_cnots: cnot_equivalent(
            CostFormula::VAdv,
            g.n_x as u32,
            problem.pgrid.n_p as u32,
            g.d as u32,
        )
        .ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::GateKind;
    use crate::linalg::{self, max_abs};
    use crate::simulator::{dense_unitary, run, StateVector};
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn b_wrap_images() {
        for n in 2..=4usize {
            let start = StateVector::basis(n, (1 << (n - 1)) - 1);
            let all_ones = (1 << n) - 1;
            let s = run(&b_wrap(WrapVariant::One, n).unwrap(), start.clone()).unwrap();
            assert!((s.amplitudes()[0] - C64::from(FRAC_1_SQRT_2)).norm() < 1e-12);
            assert!((s.amplitudes()[all_ones] - C64::from(FRAC_1_SQRT_2)).norm() < 1e-12);
            let s = run(&b_wrap(WrapVariant::Two, n).unwrap(), start).unwrap();
            assert!((s.amplitudes()[0] - C64::from(FRAC_1_SQRT_2)).norm() < 1e-12);
            assert!((s.amplitudes()[all_ones] + I * FRAC_1_SQRT_2).norm() < 1e-12);
        }
        assert!(b_wrap(WrapVariant::One, 1).is_err());
    }

    #[test]
    fn b_wrap_two_has_negative_quarter_phase() {
        let c = b_wrap(WrapVariant::Two, 2).unwrap();
        assert!(c
            .gates()
            .iter()
            .any(|g| g.kind() == GateKind::Phase && g.param() == Some(-FRAC_PI_2)));
        assert!(c.to_text().contains(&format!("P 1 {:?}", -FRAC_PI_2)));
    }

    #[test]
    fn wrap_generators_are_hermitian() {
        let g = fdm::sigma01_all(3)
            .scale(I)
            .sub(&fdm::sigma10_all(3).scale(I))
            .unwrap();
        assert!(g.is_hermitian(0.0));
        assert!(h2(1.0, 3).is_hermitian(0.0));
        assert!(h1(1.0, 3).is_hermitian(0.0));
    }

    #[test]
    fn u_wrap_identity_at_zero() {
        let u = dense_unitary(&u_wrap(WrapVariant::Two, 0.0, 1.0, 3).unwrap()).unwrap();
        assert!(max_abs(&(u - linalg::identity(8))) < 1e-12);
    }

    #[test]
    fn zero_velocity_is_identity() {
        let grid = GridSpec::new(2, 2, 1.0, Boundary::Periodic).unwrap();
        let p = PGrid::new(2.0, 2).unwrap();
        let prob = AdvectionProblem::new(vec![0.0, 0.0], grid, p, 0.1, 2).unwrap();
        let u = dense_unitary(&v_adv(&prob).unwrap()).unwrap();
        assert!(max_abs(&(u - linalg::identity(64))) < 1e-12);
        assert_eq!(max_abs(&h_adv_dense(&prob).unwrap()), 0.0);
    }

    #[test]
    fn two_assembly_routes_agree() {
        for a_vec in [vec![1.0], vec![-0.6]] {
            let grid = GridSpec::new(1, 2, 1.0, Boundary::Periodic).unwrap();
            let p = PGrid::new(2.0, 2).unwrap();
            let prob = AdvectionProblem::new(a_vec, grid, p, 0.1, 1).unwrap();
            let x = h_adv_dense(&prob).unwrap();
            let y = h_adv_dense_from_split(&prob).unwrap();
            assert!(max_abs(&(&x - &y)) < 1e-12);
            assert!(max_abs(&(&x - x.adjoint())) < 1e-14);
        }
    }

    #[test]
    fn problem_validation() {
        let p = PGrid::new(2.0, 2).unwrap();
        let dir = GridSpec::new(1, 2, 1.0, Boundary::Dirichlet).unwrap();
        assert!(AdvectionProblem::new(vec![1.0], dir, p, 0.1, 1).is_err());
        let small = GridSpec::new(1, 1, 1.0, Boundary::Periodic).unwrap();
        assert!(AdvectionProblem::new(vec![1.0], small, p, 0.1, 1).is_err());
        let ok = GridSpec::new(1, 3, 1.0, Boundary::Periodic).unwrap();
        assert!(AdvectionProblem::new(vec![1.0, 2.0], ok.clone(), p, 0.1, 1).is_err());
        let prob = AdvectionProblem::new(vec![1.0], ok, p, 0.1, 1).unwrap();
        assert!((prob.gamma1() - 2.0).abs() < 1e-12);
        assert!((prob.gamma2() - 4.0).abs() < 1e-12);
    }
}
