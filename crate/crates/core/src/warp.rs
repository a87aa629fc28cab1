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

//! Warped-phase variable `p`, its Fourier dual `η`, and recovery of `u` by post-selection.
//!
//! The joint register holds the x-registers on the low wires and the p-register on the high
//! wires, so the amplitude of `(x, k)` sits at `x + N_x^d · k`.
//!
//! The centred transform uses the kernel `e^{+iη_k p_j}/√N_p`. With this sign the generator
//! `H = A₁ ⊗ D_η + A₂ ⊗ I` evolved as `exp(iHt)` reproduces `e^{−p}u(t)` for `p > 0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{Circuit, Gate};
use crate::linalg::{DenseMatrix, C64};
use crate::simulator::StateVector;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PGrid {
    pub r: f64,
    pub n_p: usize,
}

/// Validated [`PGrid`] constructor.
pub fn make_pgrid(r: f64, n_p: usize) -> Result<PGrid> {
    PGrid::new(r, n_p)
}

impl PGrid {
    pub fn new(r: f64, n_p: usize) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::param("R", "must be a positive finite number"));
        }
        if n_p == 0 || n_p > 20 {
            return Err(Error::param("n_p", "must lie in 1..=20"));
        }
        Ok(PGrid { r, n_p })
    }

    /// `N_p = 2^{n_p}`.
    pub fn n(&self) -> usize {
        1 << self.n_p
    }

    pub fn delta_p(&self) -> f64 {
        2.0 * PI * self.r / self.n() as f64
    }

    /// `p_k = −πR + kΔp`.
    pub fn p(&self, k: usize) -> f64 {
        -PI * self.r + k as f64 * self.delta_p()
    }

    /// `η_k = (k − N_p/2)/R`.
    pub fn eta(&self, k: usize) -> f64 {
        (k as f64 - (self.n() / 2) as f64) / self.r
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n()).map(|k| self.p(k)).collect()
    }

    pub fn etas(&self) -> Vec<f64> {
        (0..self.n()).map(|k| self.eta(k)).collect()
    }

    /// Smallest index with `p_k > 0`, if any.
    pub fn default_k(&self) -> Option<usize> {
        (0..self.n()).find(|&k| self.p(k) > 0.0)
    }
}

/// Joint `x ⊗ p` state together with the norm of the unnormalized `v(0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WarpedState {
    pub state: StateVector,
    pub norm0: f64,
    pub x_qubits: usize,
    pub n_p: usize,
}

impl WarpedState {
    pub fn n_qubits(&self) -> usize {
        self.x_qubits + self.n_p
    }
}

/// `v(0) = u0 ⊗ (e^{−|p_k|})_k`, normalized.
pub fn initial_warped_state(u0: &[C64], pgrid: &PGrid) -> Result<WarpedState> {
    let nx = u0.len();
    if !nx.is_power_of_two() {
        return Err(Error::param(
            "u0",
            format!("length {nx} is not a power of two"),
        ));
    }
    let un = u0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if un == 0.0 || !un.is_finite() {
        return Err(Error::param("u0", "must have a positive finite norm"));
    }
    let weights: Vec<f64> = pgrid.points().iter().map(|p| (-p.abs()).exp()).collect();
    let wn = weights.iter().map(|w| w * w).sum::<f64>().sqrt();
    let norm0 = un * wn;
    let mut amps = Vec::with_capacity(nx * weights.len());
    for w in &weights {
        amps.extend(u0.iter().map(|u| u * (w / norm0)));
    }
    Ok(WarpedState {
        state: StateVector::from_amplitudes(amps)?,
        norm0,
        x_qubits: nx.trailing_zeros() as usize,
        n_p: pgrid.n_p,
    })
}

/// `F_{kj} = e^{iη_k p_j}/√N_p`.
pub fn centered_dft_matrix(pgrid: &PGrid) -> DenseMatrix {
    let n = pgrid.n();
    let half = (n / 2) as i64;
    let scale = 1.0 / (n as f64).sqrt();
    DenseMatrix::from_fn(n, n, |k, j| {
        let m = ((k as i64 - half) * (j as i64 - half)).rem_euclid(n as i64);
        C64::from_polar(scale, 2.0 * PI * m as f64 / n as f64)
    })
}

/// Standard QFT `|j⟩ ↦ Σ_k e^{2πijk/N}|k⟩/√N` on `n` wires, swaps included.
pub fn qft_circuit(n: usize) -> Circuit {
    let mut c = Circuit::new(n, "QFT");
    for q in (0..n).rev() {
        c.push(Gate::hadamard(q)).expect("wire in range");
        for ctrl in (0..q).rev() {
            let angle = 2.0 * PI / (1u64 << (q - ctrl + 1)) as f64;
            let g = Gate::phase(q, angle)
                .controlled_by([ctrl])
                .expect("distinct wires");
            c.push(g).expect("wire in range");
        }
    }
    for q in 0..n / 2 {
        let (a, b) = (q, n - 1 - q);
        for g in [Gate::cnot(a, b), Gate::cnot(b, a), Gate::cnot(a, b)] {
            c.push(g).expect("wire in range");
        }
    }
    c
}

/// Circuit form of [`centered_dft_matrix`] on `n_p` wires:
/// `e^{iπN_p/2} · Z₀ · QFT · Z₀`, with `Z₀ = diag((−1)^k)` realized as `P(π)` on wire 0.
pub fn centered_dft_circuit(pgrid: &PGrid) -> Circuit {
    let n = pgrid.n_p;
    let mut c = Circuit::new(n, "centered DFT");
    c.push(Gate::phase(0, PI)).expect("wire in range");
    c.append(&qft_circuit(n)).expect("same register");
    c.push(Gate::phase(0, PI)).expect("wire in range");
    if (pgrid.n() / 2) % 2 == 1 {
        c.push(Gate::global_phase(PI)).expect("no wires");
    }
    c
}

/// Slice of the p-register at index `k`, rescaled to `u(T)`, and the probability of that outcome.
pub fn post_select(final_state: &WarpedState, pgrid: &PGrid, k: usize) -> Result<(Vec<C64>, f64)> {
    if final_state.n_p != pgrid.n_p {
        return Err(Error::QubitMismatch {
            left: final_state.n_p,
            right: pgrid.n_p,
        });
    }
    if k >= pgrid.n() {
        return Err(Error::param(
            "k",
            format!("must be below N_p = {}", pgrid.n()),
        ));
    }
    let pk = pgrid.p(k);
    if pk <= 0.0 {
        return Err(Error::param(
            "k",
            format!("post-selection needs p_k > 0, got p_{k} = {pk}"),
        ));
    }
    let nx = 1usize << final_state.x_qubits;
    let slice = &final_state.state.amplitudes()[k * nx..(k + 1) * nx];
    let probability = slice.iter().map(|z| z.norm_sqr()).sum();
    let scale = pk.exp() * final_state.norm0;
    Ok((slice.iter().map(|z| z * scale).collect(), probability))
}

/// Probability of every p-register outcome.
pub fn p_marginals(state: &WarpedState) -> Vec<f64> {
    let nx = 1usize << state.x_qubits;
    state
        .state
        .amplitudes()
        .chunks(nx)
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum())
        .collect()
}

/// Relative 2-norm error `‖a − b‖/‖b‖`.
pub fn relative_error(a: &[C64], b: &[C64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den).sqrt()
}

/// `|⟨a, b⟩| / (‖a‖‖b‖)`.
pub fn fidelity(a: &[C64], b: &[C64]) -> f64 {
    let inner: C64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let na: f64 = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    inner.norm() / (na * nb)
}
