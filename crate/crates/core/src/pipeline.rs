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

//! Stages shared by the heat and advection solvers: the controlled-power ladder over the
//! p-register, the prepare / transform / evolve / transform back / post-select sequence, and the
//! JSON report.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{Circuit, GateCounts};
use crate::linalg::{self, DenseMatrix, C64};
use crate::simulator::{StateVector, DENSE_CAP};
use crate::warp::{self, PGrid, WarpedState};

/// Largest joint register the pipeline will simulate.
pub const PIPELINE_QUBIT_CAP: usize = 20;

/// How the Hamiltonian evolution is carried out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvolutionMode {
    /// Run the Trotterized step circuit `r` times.
    #[default]
    Circuit,
    /// Apply the exact block exponentials of the Hamiltonian.
    Exact,
}

/// `Σ_k step^{k−N_p/2} ⊗ |k⟩⟨k|` followed by `tail`.
///
/// `step` and `tail` act on the x-registers only; the result spans `x_qubits + n_p` wires with
/// the p-register on top. Bit `m` of `k` controls `step^{2^m}`; the uncontrolled
/// `(step†)^{N_p/2}` shifts the exponent range to `−N_p/2 … N_p/2 − 1`.
pub fn controlled_power_ladder(
    step: &Circuit,
    tail: Option<&Circuit>,
    n_p: usize,
    label: &str,
) -> Result<Circuit> {
    let x_qubits = step.n_qubits();
    let total = x_qubits + n_p;
    if n_p == 0 {
        return Err(Error::param("n_p", "must be at least 1"));
    }
    if total > PIPELINE_QUBIT_CAP {
        return Err(Error::CapExceeded {
            n_qubits: total,
            cap: PIPELINE_QUBIT_CAP,
        });
    }
    let wide = step.embed(total, 0)?;
    let mut out = Circuit::new(total, label);
    for m in 0..n_p {
        let power = wide.repeat(1 << m);
        out.append(&power.lift_controlled(&[x_qubits + m])?)?;
    }
    out.append(&wide.dagger().repeat(1 << (n_p - 1)))?;
    if let Some(t) = tail {
        if t.n_qubits() != x_qubits {
            return Err(Error::QubitMismatch {
                left: t.n_qubits(),
                right: x_qubits,
            });
        }
        out.append(&t.embed(total, 0)?)?;
    }
    Ok(out)
}

/// The evolution stage of a solve.
pub enum Evolution<'a> {
    /// Repeat a full step circuit `r` times.
    Steps { circuit: &'a Circuit, r: usize },
    /// Multiply p-block `k` by `blocks[k]`.
    Blocks(Vec<DenseMatrix>),
}

/// Exact per-block unitaries `exp(iT·H_k)` from Hermitian block generators.
pub fn exact_blocks(generators: &[DenseMatrix], t: f64) -> Vec<DenseMatrix> {
    generators
        .iter()
        .map(|h| linalg::expm_hermitian(h, t))
        .collect()
}

/// Final joint state of the solve, before post-selection.
pub fn evolve_warped(u0: &[C64], pgrid: &PGrid, evolution: &Evolution<'_>) -> Result<WarpedState> {
    let mut ws = warp::initial_warped_state(u0, pgrid)?;
    let x_qubits = ws.x_qubits;
    let total = ws.n_qubits();
    if total > PIPELINE_QUBIT_CAP {
        return Err(Error::CapExceeded {
            n_qubits: total,
            cap: PIPELINE_QUBIT_CAP,
        });
    }
    let dft = warp::centered_dft_circuit(pgrid).embed(total, x_qubits)?;
    ws.state.run(&dft)?;
    match evolution {
        Evolution::Steps { circuit, r } => {
            for _ in 0..*r {
                ws.state.run(circuit)?;
            }
        }
        Evolution::Blocks(blocks) => apply_blocks(&mut ws.state, blocks, 1 << x_qubits)?,
    }
    ws.state.run(&dft.dagger())?;
    Ok(ws)
}

fn apply_blocks(state: &mut StateVector, blocks: &[DenseMatrix], nx: usize) -> Result<()> {
    if blocks.len() * nx != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            got: blocks.len() * nx,
        });
    }
    let amps = state.amplitudes_mut();
    for (k, b) in blocks.iter().enumerate() {
        let slice = &mut amps[k * nx..(k + 1) * nx];
        let v = b * nalgebra::DVector::from_column_slice(slice);
        slice.copy_from_slice(v.as_slice());
    }
    Ok(())
}

/// Everything a solve reports besides `u_est`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub mode: EvolutionMode,
    pub k: usize,
    pub p_k: f64,
    pub r: usize,
    pub tau: f64,
    pub n_qubits: usize,
    pub fidelity: f64,
    pub relative_error: f64,
    pub probability: f64,
    /// `e^{−2p_k}‖u(T)‖²/‖v(0)‖²` with `u(T)` from the classical oracle.
    pub expected_probability: f64,
    pub probability_ratio: f64,
    /// Per-step Trotter bound.
    pub step_bound: f64,
    /// `r ×` the per-step bound.
    pub trotter_budget: f64,
    /// Native counts of one full step circuit.
    pub step_counts: GateCounts,
    /// Closed-form CNOT-equivalent count of one step, when `n_x ≥ 3`.
    pub formula_cnots: Option<u64>,
    pub u_exact: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub u_est: Vec<C64>,
    pub probability: f64,
    pub diagnostics: Diagnostics,
}

/// Ingredients for [`finish`] that the solver front-ends compute.
pub(crate) struct Finish<'a> {
    pub ws: WarpedState,
    pub pgrid: &'a PGrid,
    pub k: Option<usize>,
    pub u_exact: Vec<C64>,
    pub mode: EvolutionMode,
    pub r: usize,
    pub tau: f64,
    pub step_bound: f64,
    pub step_counts: GateCounts,
    pub formula_cnots: Option<u64>,
}

pub(crate) fn finish(f: Finish<'_>) -> Result<SolveOutcome> {
    let k = match f.k {
        Some(k) => k,
        None => f.pgrid.default_k().ok_or_else(|| {
            Error::param("n_p", "the p-grid has no point with p_k > 0; use n_p >= 2")
        })?,
    };
    let (u_est, probability) = warp::post_select(&f.ws, f.pgrid, k)?;
    let p_k = f.pgrid.p(k);
    let exact_sq: f64 = f.u_exact.iter().map(|z| z.norm_sqr()).sum();
    let expected_probability = (-2.0 * p_k).exp() * exact_sq / (f.ws.norm0 * f.ws.norm0);
    let diagnostics = Diagnostics {
        mode: f.mode,
        k,
        p_k,
        r: f.r,
        tau: f.tau,
        n_qubits: f.ws.n_qubits(),
        fidelity: warp::fidelity(&u_est, &f.u_exact),
        relative_error: warp::relative_error(&u_est, &f.u_exact),
        probability,
        expected_probability,
        probability_ratio: probability / expected_probability,
        step_bound: f.step_bound,
        trotter_budget: f.r as f64 * f.step_bound,
        step_counts: f.step_counts,
        formula_cnots: f.formula_cnots,
        u_exact: f.u_exact.iter().map(|z| [z.re, z.im]).collect(),
    };
    Ok(SolveOutcome {
        u_est,
        probability,
        diagnostics,
    })
}

/// JSON document emitted by a solve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report<P> {
    pub equation: String,
    pub parameters: P,
    pub diagnostics: Diagnostics,
    pub u_est: Vec<[f64; 2]>,
}

impl<P: Serialize> Report<P> {
    pub fn new(equation: &str, parameters: P, outcome: &SolveOutcome) -> Self {
        Report {
            equation: equation.to_string(),
            parameters,
            diagnostics: outcome.diagnostics.clone(),
            u_est: outcome.u_est.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Block `k` (size `nx × nx`) of a block-diagonal dense matrix.
pub fn block(m: &DenseMatrix, k: usize, nx: usize) -> DenseMatrix {
    m.view((k * nx, k * nx), (nx, nx)).into_owned()
}

/// Largest entry outside the `nx × nx` diagonal blocks.
pub fn off_block_max(m: &DenseMatrix, nx: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            if r / nx != c / nx {
                worst = worst.max(m[(r, c)].norm());
            }
        }
    }
    worst
}

/// `Σ_k blocks[k] ⊗ |k⟩⟨k|` in the joint layout (p-register high).
pub fn block_diagonal(blocks: &[DenseMatrix]) -> DenseMatrix {
    let nx = blocks.first().map_or(0, |b| b.nrows());
    let dim = nx * blocks.len();
    let mut out = DenseMatrix::zeros(dim, dim);
    for (k, b) in blocks.iter().enumerate() {
        out.view_mut((k * nx, k * nx), (nx, nx)).copy_from(b);
    }
    out
}

/// Integer matrix power, negative exponents through the inverse of a unitary.
pub fn unitary_power(u: &DenseMatrix, e: i64) -> DenseMatrix {
    let base = if e < 0 { u.adjoint() } else { u.clone() };
    let mut result = linalg::identity(u.nrows());
    for _ in 0..e.unsigned_abs() {
        result = &result * &base;
    }
    result
}

/// Fails early if a dense verification of `c` would exceed the simulator cap.
pub fn check_dense_cap(c: &Circuit) -> Result<()> {
    if c.n_qubits() > DENSE_CAP {
        return Err(Error::CapExceeded {
            n_qubits: c.n_qubits(),
            cap: DENSE_CAP,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::Gate;
    use crate::linalg::max_abs;
    use crate::simulator::dense_unitary;

    #[test]
    fn ladder_blocks_are_powers() {
        let step = Circuit::from_gates(
            2,
            "s",
            [
                Gate::hadamard(0),
                Gate::rz(1, 0.3).controlled_by([0]).unwrap(),
                Gate::phase(0, 0.2),
                Gate::global_phase(0.4),
            ],
        )
        .unwrap();
        let tail = Circuit::from_gates(2, "t", [Gate::x(1)]).unwrap();
        let s = dense_unitary(&step).unwrap();
        let t = dense_unitary(&tail).unwrap();
        for n_p in 1..=3usize {
            let ladder = controlled_power_ladder(&step, Some(&tail), n_p, "l").unwrap();
            let u = dense_unitary(&ladder).unwrap();
            assert!(off_block_max(&u, 4) < 1e-12);
            let half = 1i64 << (n_p - 1);
            for k in 0..(1usize << n_p) {
                let expected = &t * unitary_power(&s, k as i64 - half);
                assert!(max_abs(&(block(&u, k, 4) - expected)) < 1e-12);
            }
        }
    }

    #[test]
    fn block_helpers() {
        let a = linalg::identity(2) * C64::from(2.0);
        let b = linalg::identity(2) * C64::from(3.0);
        let m = block_diagonal(&[a.clone(), b.clone()]);
        assert_eq!(block(&m, 1, 2), b);
        assert_eq!(off_block_max(&m, 2), 0.0);
    }
}
