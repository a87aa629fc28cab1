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

//! Dense statevector simulation.
//!
//! Amplitude `i` belongs to the basis label whose bit `q` is the value of wire `q`. Gates are
//! applied in place by enumerating only the index pairs selected by the control mask, so a gate
//! with `c` controls touches `2^{n-c}` amplitudes.
//!
//! `RotationZ(θ)` acts as `diag(e^{-iθ/2}, e^{iθ/2})`. Getting this sign wrong silently reverses
//! the direction of every Trotter step.

use std::f64::consts::FRAC_1_SQRT_2;
use std::io::Write;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::gates::{Circuit, Gate, GateKind};
use crate::linalg::{DenseMatrix, C64, ONE, ZERO};

/// Default qubit limit for [`dense_unitary`].
pub const DENSE_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; 1 << n_qubits];
        amps[index] = ONE;
        StateVector { n_qubits, amps }
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(Error::param(
                "amplitudes",
                format!("length {len} is not a power of two"),
            ));
        }
        Ok(StateVector {
            n_qubits: len.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn to_dvector(&self) -> DVector<C64> {
        DVector::from_column_slice(&self.amps)
    }

    /// Applies one gate in place.
    pub fn apply(&mut self, g: &Gate) -> Result<()> {
        if let Some(index) = g.wires().find(|&q| q >= self.n_qubits) {
            return Err(Error::QubitOutOfRange {
                index,
                n_qubits: self.n_qubits,
            });
        }
        self.apply_unchecked(g);
        Ok(())
    }

    fn apply_unchecked(&mut self, g: &Gate) {
        let theta = g.param().unwrap_or(0.0);
        let Some(t) = g.target() else {
            let phase = C64::from_polar(1.0, theta);
            self.amps.iter_mut().for_each(|a| *a *= phase);
            return;
        };
        let tbit = 1usize << t;
        let cmask: usize = g.controls().iter().map(|&c| 1usize << c).sum();
        let mut fixed: Vec<usize> = g.wires().collect();
        fixed.sort_unstable();
        let count = self.amps.len() >> fixed.len();
        let amps = &mut self.amps;
        match g.kind() {
            GateKind::Hadamard => for_each_index(count, &fixed, cmask, |i| {
                let (a, b) = (amps[i], amps[i | tbit]);
                amps[i] = (a + b) * FRAC_1_SQRT_2;
                amps[i | tbit] = (a - b) * FRAC_1_SQRT_2;
            }),
            GateKind::PauliX => for_each_index(count, &fixed, cmask, |i| amps.swap(i, i | tbit)),
            GateKind::Phase => {
                let ph = C64::from_polar(1.0, theta);
                for_each_index(count, &fixed, cmask, |i| amps[i | tbit] *= ph)
            }
            GateKind::RotationZ => {
                let lo = C64::from_polar(1.0, -theta / 2.0);
                let hi = lo.conj();
                for_each_index(count, &fixed, cmask, |i| {
                    amps[i] *= lo;
                    amps[i | tbit] *= hi;
                })
            }
            GateKind::GlobalPhase => unreachable!("global phase has no target"),
        }
    }

    /// Applies every gate of `c` in order.
    pub fn run(&mut self, c: &Circuit) -> Result<()> {
        if c.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch {
                left: c.n_qubits(),
                right: self.n_qubits,
            });
        }
        for g in c.gates() {
            self.apply_unchecked(g);
        }
        Ok(())
    }

    /// `index,real,imag` rows with a header.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "index,real,imag")?;
        for (i, a) in self.amps.iter().enumerate() {
            writeln!(w, "{i},{:e},{:e}", a.re, a.im)?;
        }
        Ok(())
    }
}

/// Calls `f` with every index whose bits at `fixed` are zero, OR-ed with `cmask`.
#[inline]
fn for_each_index(count: usize, fixed: &[usize], cmask: usize, mut f: impl FnMut(usize)) {
    for k in 0..count {
        let mut i = k;
        for &p in fixed {
            i = ((i >> p) << (p + 1)) | (i & ((1 << p) - 1));
        }
        f(i | cmask);
    }
}

/// Functional form of [`StateVector::apply`].
pub fn apply(mut state: StateVector, g: &Gate) -> Result<StateVector> {
    state.apply(g)?;
    Ok(state)
}

/// Functional form of [`StateVector::run`].
pub fn run(c: &Circuit, mut state: StateVector) -> Result<StateVector> {
    state.run(c)?;
    Ok(state)
}

/// Dense unitary of `c`, limited to [`DENSE_CAP`] qubits.
pub fn dense_unitary(c: &Circuit) -> Result<DenseMatrix> {
    dense_unitary_capped(c, DENSE_CAP)
}

/// Column `k` is the image of basis state `k`.
pub fn dense_unitary_capped(c: &Circuit, cap: usize) -> Result<DenseMatrix> {
    let n = c.n_qubits();
    if n > cap {
        return Err(Error::CapExceeded { n_qubits: n, cap });
    }
    let dim = 1usize << n;
    let mut out = DenseMatrix::zeros(dim, dim);
    for k in 0..dim {
        let mut s = StateVector::basis(n, k);
        s.run(c)?;
        out.column_mut(k).copy_from_slice(s.amplitudes());
    }
    Ok(out)
}

pub use crate::linalg::{operator_norm_diff, spectral_norm};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn hadamard_on_zero() {
        let s = apply(StateVector::zero(1), &Gate::hadamard(0)).unwrap();
        assert!(close(s.amplitudes()[0], C64::from(FRAC_1_SQRT_2)));
        assert!(close(s.amplitudes()[1], C64::from(FRAC_1_SQRT_2)));
    }

    #[test]
    fn cnot_flips_target_when_control_set() {
        let s = apply(StateVector::basis(2, 0b10), &Gate::cnot(1, 0)).unwrap();
        assert_eq!(s.amplitudes()[0b11], ONE);
        let s = apply(StateVector::basis(2, 0b01), &Gate::cnot(1, 0)).unwrap();
        assert_eq!(s.amplitudes()[0b01], ONE);
    }

    #[test]
    fn controlled_rz_on_all_ones() {
        // exp(-iθZ/2): the target's |1⟩ branch picks up e^{+iθ/2}.
        let g = Gate::rz(2, 0.8).controlled_by([0, 1]).unwrap();
        let s = apply(StateVector::basis(3, 0b111), &g).unwrap();
        assert!(close(s.amplitudes()[7], C64::from_polar(1.0, 0.4)));
        let s = apply(StateVector::basis(3, 0b011), &g).unwrap();
        assert!(close(s.amplitudes()[3], C64::from_polar(1.0, -0.4)));
        let s = apply(StateVector::basis(3, 0b110), &g).unwrap();
        assert_eq!(s.amplitudes()[6], ONE);
    }

    #[test]
    fn global_phase_and_phase() {
        let s = apply(StateVector::basis(1, 1), &Gate::global_phase(0.5)).unwrap();
        assert!(close(s.amplitudes()[1], C64::from_polar(1.0, 0.5)));
        let s = apply(StateVector::basis(1, 1), &Gate::phase(0, 0.5)).unwrap();
        assert!(close(s.amplitudes()[1], C64::from_polar(1.0, 0.5)));
        let s = apply(StateVector::basis(1, 0), &Gate::phase(0, 0.5)).unwrap();
        assert_eq!(s.amplitudes()[0], ONE);
    }

    #[test]
    fn run_checks_register() {
        let c = Circuit::from_gates(2, "hh", [Gate::hadamard(1), Gate::hadamard(1)]).unwrap();
        let s = run(&c, StateVector::basis(2, 2)).unwrap();
        assert!(close(s.amplitudes()[2], ONE));
        assert!(run(&c, StateVector::zero(3)).is_err());
        assert!(StateVector::zero(1).apply(&Gate::hadamard(1)).is_err());
    }

    #[test]
    fn dense_of_hadamard_and_cap() {
        let c = Circuit::from_gates(1, "h", [Gate::hadamard(0)]).unwrap();
        let u = dense_unitary(&c).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!(close(u[(1, 1)], C64::from(-h)));
        assert!(close(u[(0, 1)], C64::from(h)));
        assert!(
            max_abs(&(dense_unitary(&Circuit::new(2, "")).unwrap() - DenseMatrix::identity(4, 4)))
                == 0.0
        );
        assert!(matches!(
            dense_unitary(&Circuit::new(13, "")),
            Err(Error::CapExceeded {
                n_qubits: 13,
                cap: 12
            })
        ));
    }

    #[test]
    fn dense_matches_kernel_with_controls_in_the_middle() {
        let g = Gate::hadamard(0).controlled_by([2]).unwrap();
        let c = Circuit::from_gates(3, "ch", [g]).unwrap();
        let u = dense_unitary(&c).unwrap();
        for col in 0..8usize {
            for row in 0..8usize {
                let expected = if col & 4 == 0 || (row ^ col) & !1 != 0 {
                    if row == col && col & 4 == 0 {
                        ONE
                    } else {
                        ZERO
                    }
                } else {
                    let sign = if row & col & 1 == 1 { -1.0 } else { 1.0 };
                    C64::from(sign * FRAC_1_SQRT_2)
                };
                assert!(close(u[(row, col)], expected), "({row},{col})");
            }
        }
    }

    #[test]
    fn csv_export() {
        let mut buf = Vec::new();
        StateVector::basis(1, 1).write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("index,real,imag"));
        assert_eq!(text.lines().count(), 3);
    }
}
