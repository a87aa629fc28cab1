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

//! Heat equation `u_t = a Δu` with homogeneous Dirichlet boundaries.
//!
//! The builders take 1-based qubit labels `j` (wire `j − 1`), matching the operators `s_j^±`.
//! `W_j(γτ, λ) = exp(iγτ(e^{iλ}s_j⁻ + e^{−iλ}s_j⁺))` exactly, and
//! `V_0(τ) = Ph(−2γ₀τ) Π_j W_j(γ₀τ, 0)` approximates `exp(iH₀τ)` to first order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fdm::{self, Boundary, Direction, GridSpec, SparseOperator};
use crate::gates::{cnot_equivalent, Circuit, CostFormula, Gate};
use crate::linalg::{DenseMatrix, C64};
use crate::pipeline::{self, Evolution, EvolutionMode, Finish, SolveOutcome};
use crate::verify;
use crate::warp::PGrid;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeatProblem {
    pub a: f64,
    pub grid: GridSpec,
    pub pgrid: PGrid,
    pub t: f64,
    pub r: usize,
}

impl HeatProblem {
    pub fn new(a: f64, grid: GridSpec, pgrid: PGrid, t: f64, r: usize) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::param("a", "diffusivity must be positive"));
        }
        if grid.boundary != Boundary::Dirichlet {
            return Err(Error::param(
                "boundary",
                "the heat solver uses Dirichlet boundaries",
            ));
        }
        validate_time(t, r)?;
        Ok(HeatProblem {
            a,
            grid,
            pgrid,
            t,
            r,
        })
    }

    /// `γ₀ = a/(h²R)`.
    pub fn gamma0(&self) -> f64 {
        self.a / (self.grid.h().powi(2) * self.pgrid.r)
    }

    pub fn tau(&self) -> f64 {
        tau(self.t, self.r)
    }

    pub fn n_qubits(&self) -> usize {
        self.grid.n_qubits() + self.pgrid.n_p
    }

    /// Step count from the Trotter budget at tolerance `eps`.
    pub fn budget_r(&self, eps: f64) -> Result<usize> {
        verify::r_budget(
            &verify::BudgetParams::Heat {
                d: self.grid.d,
                n_p: self.pgrid.n_p,
                gamma0: self.gamma0(),
                t: self.t,
                n_x: self.grid.n_x,
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

pub(crate) fn validate_time(t: f64, r: usize) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::param("T", "must be a non-negative finite time"));
    }
    if r == 0 && t > 0.0 {
        return Err(Error::param("r", "must be at least 1 when T > 0"));
    }
    Ok(())
}

pub(crate) fn tau(t: f64, r: usize) -> f64 {
    if r == 0 {
        0.0
    } else {
        t / r as f64
    }
}

fn check_j(j: usize, n_x: usize) -> Result<()> {
    if j == 0 || j > n_x {
        return Err(Error::param("j", format!("must lie in 1..={n_x}, got {j}")));
    }
    Ok(())
}

/// `B_j(λ)`: `H_j`, then `P_j(−λ)` (skipped for `λ = 0`), then `CNOT` from `j` onto every lower
/// wire. Maps `|0⟩|1…1⟩ ↦ (|0⟩|1…1⟩ + e^{−iλ}|1⟩|0…0⟩)/√2` on wires `j…1`.
pub fn bell_basis(j: usize, lambda: f64, n_x: usize) -> Result<Circuit> {
    check_j(j, n_x)?;
    let t = j - 1;
    let mut c = Circuit::new(n_x, format!("B_{j}({lambda})"));
    c.push(Gate::hadamard(t))?;
    if lambda != 0.0 {
        c.push(Gate::phase(t, -lambda))?;
    }
    for m in 0..t {
        c.push(Gate::cnot(t, m))?;
    }
    Ok(c)
}

/// `RZ(θ)` on wire `j − 1` controlled by every lower wire.
pub fn crz_ladder_top(j: usize, theta: f64, n_x: usize) -> Result<Gate> {
    check_j(j, n_x)?;
    Gate::rz(j - 1, theta).controlled_by(0..j - 1)
}

/// `W_j(γτ, λ) = B_j(λ) · CRZ_j^{1…j−1}(−2γτ) · B_j(λ)†`.
pub fn w_gate(j: usize, gamma_tau: f64, lambda: f64, n_x: usize) -> Result<Circuit> {
    let b = bell_basis(j, lambda, n_x)?;
    let mut c = b.dagger();
    c.push(crz_ladder_top(j, -2.0 * gamma_tau, n_x)?)?;
    c.append(&b)?;
    Ok(c.with_label(format!("W_{j}({gamma_tau}, {lambda})")))
}

/// `V_0(τ)`: `W_j(γ₀τ, 0)` for ascending `j`, then `Ph(−2γ₀τ)`.
pub fn v0(tau: f64, gamma0: f64, n_x: usize) -> Result<Circuit> {
    if n_x == 0 {
        return Err(Error::param("n_x", "must be at least 1"));
    }
    let mut c = Circuit::new(n_x, format!("V_0({tau})"));
    for j in 1..=n_x {
        c.append(&w_gate(j, gamma0 * tau, 0.0, n_x)?)?;
    }
    c.push(Gate::global_phase(-2.0 * gamma0 * tau))?;
    Ok(c)
}

/// `Ṽ_0(τ) = Π_α (V_0(τ))_α`, ascending `α`, on `d·n_x` wires.
pub fn v0_tilde(tau: f64, gamma0: f64, n_x: usize, d: usize) -> Result<Circuit> {
    let one = v0(tau, gamma0, n_x)?;
    let mut c = Circuit::new(d * n_x, format!("V0~({tau})"));
    for alpha in 0..d {
        c.append(&one.embed(d * n_x, alpha * n_x)?)?;
    }
    Ok(c)
}

/// `V_heat(τ) = Σ_k Ṽ_0(τ)^{k−N_p/2} ⊗ |k⟩⟨k|` via the binary controlled-power ladder.
pub fn v_heat(problem: &HeatProblem) -> Result<Circuit> {
    let step = v0_tilde(
        problem.tau(),
        problem.gamma0(),
        problem.grid.n_x,
        problem.grid.d,
    )?;
    pipeline::controlled_power_ladder(&step, None, problem.pgrid.n_p, "V_heat")
}

/// `H₀ = γ₀[Σ_j (s_j⁻ + s_j⁺) − 2I]` on `n_x` qubits.
pub fn h0(gamma0: f64, n_x: usize) -> SparseOperator {
    let sm = fdm::shift(Direction::Minus, n_x);
    let sum = sm.add(&sm.adjoint()).expect("same dimension");
    let shifted = sum
        .sub(&SparseOperator::identity(1 << n_x).scale_re(2.0))
        .expect("same dimension");
    shifted.scale_re(gamma0)
}

/// `Σ_α (H₀)_α` on `d·n_x` qubits.
pub fn h0_sum(gamma0: f64, n_x: usize, d: usize) -> Result<SparseOperator> {
    let one = h0(gamma0, n_x);
    let mut out = SparseOperator::zeros(1 << (d * n_x));
    for alpha in 1..=d {
        out = out.add(&fdm::kron_place(&one, alpha, d, n_x)?)?;
    }
    Ok(out)
}

/// Block `k` of `H_heat`: `(k − N_p/2) Σ_α (H₀)_α`.
pub fn h_heat_blocks(problem: &HeatProblem) -> Result<Vec<DenseMatrix>> {
    let base = h0_sum(problem.gamma0(), problem.grid.n_x, problem.grid.d)?.to_dense();
    let half = (problem.pgrid.n() / 2) as f64;
    Ok((0..problem.pgrid.n())
        .map(|k| &base * C64::from(k as f64 - half))
        .collect())
}

/// Dense `H_heat` in the joint layout (p-register high).
pub fn h_heat_dense(problem: &HeatProblem) -> Result<DenseMatrix> {
    Ok(pipeline::block_diagonal(&h_heat_blocks(problem)?))
}

/// Classical generator `a Σ_α (D_D^Δ)_α` of the problem.
pub fn generator(problem: &HeatProblem) -> Result<SparseOperator> {
    fdm::heat_generator(problem.a, &problem.grid)
}

/// End-to-end solve: prepare, transform, evolve, transform back, post-select.
pub fn heat_pipeline(
    problem: &HeatProblem,
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
    let step = v_heat(problem)?;
    let evolution = match mode {
        EvolutionMode::Circuit => Evolution::Steps {
            circuit: &step,
            r: problem.r,
        },
        EvolutionMode::Exact => {
            Evolution::Blocks(pipeline::exact_blocks(&h_heat_blocks(problem)?, problem.t))
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
        step_bound: verify::heat_step_bound(
            g.d,
            problem.pgrid.n(),
            problem.gamma0(),
            problem.tau(),
            g.n_x,
        ),
        step_counts: step.count_native(),
        formula_cnots: cnot_equivalent(
            CostFormula::VHeat,
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
    use crate::gates::GateCounts;
    use crate::linalg::{self, max_abs, I};
    use crate::simulator::{dense_unitary, run, StateVector};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    #[test]
    fn bell_basis_structure() {
        let b1 = bell_basis(1, 0.0, 3).unwrap();
        assert_eq!(b1.gates(), &[Gate::hadamard(0)]);
        let counts = bell_basis(3, 0.0, 3).unwrap().count_native();
        assert_eq!((counts.single_qubit, counts.cnot), (1, 2));
        assert!(bell_basis(0, 0.0, 3).is_err());
        assert!(bell_basis(4, 0.0, 3).is_err());
    }

    #[test]
    fn bell_basis_images() {
        let h = FRAC_1_SQRT_2;
        let s = run(&bell_basis(2, 0.0, 2).unwrap(), StateVector::basis(2, 0b01)).unwrap();
        assert!((s.amplitudes()[0b01] - C64::from(h)).norm() < 1e-12);
        assert!((s.amplitudes()[0b10] - C64::from(h)).norm() < 1e-12);
        let s = run(&bell_basis(2, 0.0, 2).unwrap(), StateVector::basis(2, 0b11)).unwrap();
        assert!((s.amplitudes()[0b01] - C64::from(h)).norm() < 1e-12);
        assert!((s.amplitudes()[0b10] + C64::from(h)).norm() < 1e-12);
        let s = run(
            &bell_basis(2, -FRAC_PI_2, 2).unwrap(),
            StateVector::basis(2, 0b01),
        )
        .unwrap();
        assert!((s.amplitudes()[0b10] - I * h).norm() < 1e-12);
    }

    #[test]
    fn w1_is_x_rotation() {
        let u = dense_unitary(&w_gate(1, 0.3, 0.0, 1).unwrap()).unwrap();
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        let expected =
            DenseMatrix::from_row_slice(2, 2, &[C64::from(c), I * s, I * s, C64::from(c)]);
        assert!(max_abs(&(u - expected)) < 1e-12);
    }

    #[test]
    fn w_gate_counts() {
        let counts = w_gate(3, 0.2, 0.0, 3).unwrap().count_native();
        let mut expected = GateCounts {
            single_qubit: 2,
            cnot: 4,
            ..GateCounts::default()
        };
        expected.multi_controlled_rz.insert(2, 1);
        assert_eq!(counts, expected);
        assert_eq!(w_gate(2, 0.2, 0.0, 2).unwrap().len(), 5);
        assert_eq!(w_gate(3, 0.2, 0.0, 3).unwrap().len(), 7);
    }

    #[test]
    fn w_gate_dagger_is_adjoint() {
        let w = w_gate(1, 0.3, 0.0, 1).unwrap();
        let u = dense_unitary(&w).unwrap();
        assert!(max_abs(&(dense_unitary(&w.dagger()).unwrap() - u.adjoint())) < 1e-12);
    }

    #[test]
    fn v0_exact_for_single_qubit() {
        let h = h0(1.3, 1).to_dense();
        let u = linalg::expm_hermitian(&h, 0.2);
        let v = dense_unitary(&v0(0.2, 1.3, 1).unwrap()).unwrap();
        assert!(max_abs(&(u - v)) < 1e-12);
    }

    #[test]
    fn v0_tilde_counts_scale_with_d() {
        let one = v0(0.1, 1.0, 3).unwrap().count_native();
        let two = v0_tilde(0.1, 1.0, 3, 2).unwrap().count_native();
        assert_eq!(two, one.clone() + one);
        assert_eq!(
            v0_tilde(0.1, 1.0, 3, 1).unwrap().gates(),
            v0(0.1, 1.0, 3).unwrap().gates()
        );
    }

    #[test]
    fn h_heat_small_case() {
        let grid = GridSpec::new(1, 1, 2.0, Boundary::Dirichlet).unwrap();
        let p = PGrid::new(1.0, 1).unwrap();
        let prob = HeatProblem::new(1.0, grid, p, 0.0, 0).unwrap();
        let h = h_heat_dense(&prob).unwrap();
        assert!(max_abs(&(&h - h.adjoint())) < 1e-14);
        let g0 = prob.gamma0();
        let h0m = DenseMatrix::from_row_slice(
            2,
            2,
            &[
                C64::from(-2.0 * g0),
                C64::from(g0),
                C64::from(g0),
                C64::from(-2.0 * g0),
            ],
        );
        assert!(max_abs(&(pipeline::block(&h, 0, 2) + &h0m)) < 1e-14);
        assert_eq!(max_abs(&pipeline::block(&h, 1, 2)), 0.0);
    }

    #[test]
    fn problem_validation() {
        let grid = GridSpec::new(1, 2, 1.0, Boundary::Dirichlet).unwrap();
        let p = PGrid::new(1.0, 2).unwrap();
        assert!(HeatProblem::new(0.0, grid.clone(), p, 1.0, 1).is_err());
        assert!(HeatProblem::new(1.0, grid.clone(), p, 1.0, 0).is_err());
        assert!(HeatProblem::new(1.0, grid.clone(), p, -1.0, 1).is_err());
        let periodic = GridSpec::new(1, 2, 1.0, Boundary::Periodic).unwrap();
        assert!(HeatProblem::new(1.0, periodic, p, 1.0, 1).is_err());
        let prob = HeatProblem::new(2.0, grid, p, 1.0, 4).unwrap();
        assert!((prob.gamma0() - 2.0 * 16.0).abs() < 1e-12);
        assert_eq!(prob.tau(), 0.25);
    }
}
