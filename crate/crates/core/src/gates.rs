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

//! Circuit intermediate representation.
//!
//! Qubits are 0-based wires; wire `q` carries significance `2^q` in a basis label, so the
//! leftmost factor of a tensor string is the highest wire. A circuit lists gates in the order
//! they are applied, which means the dense unitary of `compose(a, b)` is `U_b · U_a`.
//!
//! `RotationZ(θ)` is `exp(-iθZ/2)`. `GlobalPhase(θ)` multiplies the whole register by `e^{iθ}`
//! and is kept as a real gate so that [`Circuit::lift_controlled`] can turn it into a relative
//! phase on the control wires.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    Hadamard,
    PauliX,
    Phase,
    RotationZ,
    GlobalPhase,
}

impl GateKind {
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::Hadamard => "H",
            GateKind::PauliX => "X",
            GateKind::Phase => "P",
            GateKind::RotationZ => "RZ",
            GateKind::GlobalPhase => "GPHASE",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        Some(match s {
            "H" => GateKind::Hadamard,
            "X" => GateKind::PauliX,
            "P" => GateKind::Phase,
            "RZ" => GateKind::RotationZ,
            "GPHASE" => GateKind::GlobalPhase,
            _ => return None,
        })
    }

    pub fn has_param(self) -> bool {
        matches!(
            self,
            GateKind::Phase | GateKind::RotationZ | GateKind::GlobalPhase
        )
    }
}

/// One primitive operation. Controls are kept sorted and unique.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GateRecord", into = "GateRecord")]
pub struct Gate {
    kind: GateKind,
    target: Option<usize>,
    controls: Vec<usize>,
    param: Option<f64>,
}

/// Flat serialized form of a [`Gate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    pub kind: GateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<usize>,
    #[serde(default)]
    pub controls: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<f64>,
}

impl TryFrom<GateRecord> for Gate {
    type Error = Error;

    fn try_from(r: GateRecord) -> Result<Self> {
        Gate::new(r.kind, r.target, r.controls, r.param)
    }
}

impl From<Gate> for GateRecord {
    fn from(g: Gate) -> Self {
        GateRecord {
            kind: g.kind,
            target: g.target,
            controls: g.controls,
            param: g.param,
        }
    }
}

impl Gate {
    /// General validating constructor.
    pub fn new(
        kind: GateKind,
        target: Option<usize>,
        controls: impl IntoIterator<Item = usize>,
        param: Option<f64>,
    ) -> Result<Self> {
        let mut controls: Vec<usize> = controls.into_iter().collect();
        controls.sort_unstable();
        let before = controls.len();
        controls.dedup();
        if controls.len() != before {
            return Err(Error::InvalidGate("duplicate control qubit".into()));
        }
        match (kind, target) {
            (GateKind::GlobalPhase, Some(_)) => {
                return Err(Error::InvalidGate("global phase takes no target".into()))
            }
            (GateKind::GlobalPhase, None) if !controls.is_empty() => {
                return Err(Error::InvalidGate(
                    "a controlled global phase must be written as a phase gate".into(),
                ))
            }
            (GateKind::GlobalPhase, None) => {}
            (_, None) => {
                return Err(Error::InvalidGate(format!(
                    "{} requires a target",
                    kind.mnemonic()
                )))
            }
            (_, Some(t)) if controls.contains(&t) => {
                return Err(Error::InvalidGate(format!("target {t} is also a control")))
            }
            _ => {}
        }
        match (kind.has_param(), param) {
            (true, None) => {
                return Err(Error::InvalidGate(format!(
                    "{} requires an angle",
                    kind.mnemonic()
                )))
            }
            (false, Some(_)) => {
                return Err(Error::InvalidGate(format!(
                    "{} takes no angle",
                    kind.mnemonic()
                )))
            }
            (true, Some(p)) if !p.is_finite() => {
                return Err(Error::InvalidGate("angle must be finite".into()))
            }
            _ => {}
        }
        Ok(Gate {
            kind,
            target,
            controls,
            param,
        })
    }

    pub fn hadamard(q: usize) -> Self {
        Gate {
            kind: GateKind::Hadamard,
            target: Some(q),
            controls: Vec::new(),
            param: None,
        }
    }

    pub fn x(q: usize) -> Self {
        Gate {
            kind: GateKind::PauliX,
            target: Some(q),
            controls: Vec::new(),
            param: None,
        }
    }

    /// CNOT with `control` driving `target`.
    pub fn cnot(control: usize, target: usize) -> Self {
        assert_ne!(control, target, "CNOT control equals target");
        Gate {
            kind: GateKind::PauliX,
            target: Some(target),
            controls: vec![control],
            param: None,
        }
    }

    /// `diag(1, e^{iλ})` on `q`.
    pub fn phase(q: usize, lambda: f64) -> Self {
        Gate {
            kind: GateKind::Phase,
            target: Some(q),
            controls: Vec::new(),
            param: Some(lambda),
        }
    }

    /// `exp(-iθZ/2)` on `q`.
    pub fn rz(q: usize, theta: f64) -> Self {
        Gate {
            kind: GateKind::RotationZ,
            target: Some(q),
            controls: Vec::new(),
            param: Some(theta),
        }
    }

    pub fn global_phase(theta: f64) -> Self {
        Gate {
            kind: GateKind::GlobalPhase,
            target: None,
            controls: Vec::new(),
            param: Some(theta),
        }
    }

    /// Adds `extra` to the control set.
    pub fn controlled_by(self, extra: impl IntoIterator<Item = usize>) -> Result<Self> {
        let controls = self.controls.iter().copied().chain(extra);
        Gate::new(self.kind, self.target, controls, self.param)
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn target(&self) -> Option<usize> {
        self.target
    }

    pub fn controls(&self) -> &[usize] {
        &self.controls
    }

    pub fn param(&self) -> Option<f64> {
        self.param
    }

    pub fn is_cnot(&self) -> bool {
        self.kind == GateKind::PauliX && self.controls.len() == 1
    }

    /// Target followed by controls.
    pub fn wires(&self) -> impl Iterator<Item = usize> + '_ {
        self.target.into_iter().chain(self.controls.iter().copied())
    }

    pub fn inverse(&self) -> Gate {
        let mut g = self.clone();
        if let Some(p) = g.param.as_mut() {
            *p = -*p;
        }
        g
    }

    fn shifted(&self, offset: usize) -> Gate {
        Gate {
            kind: self.kind,
            target: self.target.map(|t| t + offset),
            controls: self.controls.iter().map(|c| c + offset).collect(),
            param: self.param,
        }
    }
}

impl fmt::Display for Gate {
    /// `KIND [target] [controls...] [param]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.mnemonic())?;
        if let Some(t) = self.target {
            write!(f, " {t}")?;
        }
        for c in &self.controls {
            write!(f, " {c}")?;
        }
        if let Some(p) = self.param {
            // `{:?}` always carries a decimal point or exponent, so the parser can tell the
            // angle apart from a control index. f64 Debug output round-trips exactly.
            write!(f, " {p:?}")?;
        }
        Ok(())
    }
}

impl FromStr for Gate {
    type Err = String;

    fn from_str(line: &str) -> std::result::Result<Self, String> {
        let mut tokens = line.split_whitespace();
        let head = tokens.next().ok_or("empty gate line")?;
        let kind = GateKind::from_mnemonic(head).ok_or_else(|| format!("unknown gate `{head}`"))?;
        let mut rest: Vec<&str> = tokens.collect();
        let param = if kind.has_param() {
            let raw = rest.pop().ok_or("missing angle")?;
            Some(
                raw.parse::<f64>()
                    .map_err(|e| format!("bad angle `{raw}`: {e}"))?,
            )
        } else {
            None
        };
        let mut wires = rest.iter().map(|t| {
            t.parse::<usize>()
                .map_err(|e| format!("bad qubit `{t}`: {e}"))
        });
        let target = if kind == GateKind::GlobalPhase {
            None
        } else {
            Some(wires.next().ok_or("missing target")??)
        };
        let controls = wires.collect::<std::result::Result<Vec<_>, _>>()?;
        Gate::new(kind, target, controls, param).map_err(|e| e.to_string())
    }
}

/// Ordered gate list over a fixed register.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CircuitRecord")]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    label: String,
}

#[derive(Deserialize)]
struct CircuitRecord {
    n_qubits: usize,
    gates: Vec<Gate>,
    #[serde(default)]
    label: String,
}

impl TryFrom<CircuitRecord> for Circuit {
    type Error = Error;

    fn try_from(r: CircuitRecord) -> Result<Self> {
        Circuit::from_gates(r.n_qubits, r.label, r.gates)
    }
}

impl Circuit {
    pub fn new(n_qubits: usize, label: impl Into<String>) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
            label: label.into(),
        }
    }

    pub fn from_gates(
        n_qubits: usize,
        label: impl Into<String>,
        gates: impl IntoIterator<Item = Gate>,
    ) -> Result<Self> {
        let mut c = Circuit::new(n_qubits, label);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        if let Some(index) = gate.wires().find(|&q| q >= self.n_qubits) {
            return Err(Error::QubitOutOfRange {
                index,
                n_qubits: self.n_qubits,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::QubitMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        let mut out = self.clone();
        out.append(other)?;
        Ok(out)
    }

    /// Reversed order with every angle negated.
    pub fn dagger(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            label: format!("{}^dagger", self.label),
        }
    }

    pub fn repeat(&self, times: usize) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len() * times);
        for _ in 0..times {
            gates.extend_from_slice(&self.gates);
        }
        Circuit {
            n_qubits: self.n_qubits,
            gates,
            label: format!("({})^{times}", self.label),
        }
    }

    /// Integer power; negative exponents repeat the dagger.
    pub fn power(&self, exponent: i64) -> Circuit {
        let reps = exponent.unsigned_abs() as usize;
        if exponent >= 0 {
            self.repeat(reps)
        } else {
            self.dagger().repeat(reps)
        }
    }

    /// Places the circuit on wires `offset..offset + self.n_qubits` of an `n_total` register.
    pub fn embed(&self, n_total: usize, offset: usize) -> Result<Circuit> {
        if offset + self.n_qubits > n_total {
            return Err(Error::QubitOutOfRange {
                index: offset + self.n_qubits - 1,
                n_qubits: n_total,
            });
        }
        Ok(Circuit {
            n_qubits: n_total,
            gates: self.gates.iter().map(|g| g.shifted(offset)).collect(),
            label: self.label.clone(),
        })
    }

    /// Adds `new_controls` to every gate. A global phase becomes a phase gate on the controls,
    /// since a controlled global phase is a relative phase.
    pub fn lift_controlled(&self, new_controls: &[usize]) -> Result<Circuit> {
        let mut controls = new_controls.to_vec();
        controls.sort_unstable();
        controls.dedup();
        if let Some(&index) = controls.iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::QubitOutOfRange {
                index,
                n_qubits: self.n_qubits,
            });
        }
        let mut out = Circuit::new(self.n_qubits, format!("c-{}", self.label));
        out.gates.reserve(self.gates.len());
        for g in &self.gates {
            if let Some(&c) = controls.iter().find(|c| g.wires().any(|w| w == **c)) {
                return Err(Error::ControlOverlap(c));
            }
            let lifted = match (g.kind, controls.split_first()) {
                (GateKind::GlobalPhase, Some((&first, rest))) => Gate {
                    kind: GateKind::Phase,
                    target: Some(first),
                    controls: rest.to_vec(),
                    param: g.param,
                },
                _ => g.clone().controlled_by(controls.iter().copied())?,
            };
            out.gates.push(lifted);
        }
        Ok(out)
    }

    pub fn count_native(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for g in &self.gates {
            counts.tally(g);
        }
        counts
    }

    /// Line-oriented listing: `#qubits n`, `#label ...`, then one `KIND target [controls...]
    /// [param]` line per gate.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "#qubits {}", self.n_qubits).unwrap();
        if !self.label.is_empty() {
            writeln!(out, "#label {}", self.label).unwrap();
        }
        for g in &self.gates {
            writeln!(out, "{g}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut n_qubits = None;
        let mut label = String::new();
        let mut gates = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let parse_err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            if line.is_empty() {
                continue;
            }
            if let Some(directive) = line.strip_prefix('#') {
                let directive = directive.trim_start();
                if let Some(n) = directive.strip_prefix("qubits") {
                    let n = n
                        .trim()
                        .parse::<usize>()
                        .map_err(|e| parse_err(e.to_string()))?;
                    n_qubits = Some(n);
                } else if let Some(l) = directive.strip_prefix("label") {
                    label = l.trim().to_string();
                }
                continue;
            }
            gates.push((i + 1, line.parse::<Gate>().map_err(parse_err)?));
        }
        let n_qubits = n_qubits.ok_or(Error::Parse {
            line: 1,
            message: "missing `#qubits` directive".into(),
        })?;
        let mut c = Circuit::new(n_qubits, label);
        for (line, g) in gates {
            c.push(g).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        }
        Ok(c)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(json: &str) -> Result<Circuit> {
        Ok(serde_json::from_str(json)?)
    }
}

/// Free-function form of [`Circuit::compose`].
pub fn compose(a: &Circuit, b: &Circuit) -> Result<Circuit> {
    a.compose(b)
}

/// Free-function form of [`Circuit::dagger`].
pub fn dagger(c: &Circuit) -> Circuit {
    c.dagger()
}

/// Native tallies, no decomposition. Every `RotationZ` lands in `multi_controlled_rz` keyed by
/// its control count (0 for a bare RZ).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub single_qubit: usize,
    pub cnot: usize,
    pub global_phase: usize,
    pub multi_controlled_rz: BTreeMap<usize, usize>,
    /// Controlled H, X (two or more controls) and P, keyed as `KIND/c<controls>`.
    pub other_controlled: BTreeMap<String, usize>,
}

impl GateCounts {
    fn tally(&mut self, g: &Gate) {
        let nc = g.controls.len();
        match g.kind {
            GateKind::GlobalPhase => self.global_phase += 1,
            GateKind::RotationZ => *self.multi_controlled_rz.entry(nc).or_default() += 1,
            _ if nc == 0 => self.single_qubit += 1,
            GateKind::PauliX if nc == 1 => self.cnot += 1,
            k => {
                *self
                    .other_controlled
                    .entry(format!("{}/c{nc}", k.mnemonic()))
                    .or_default() += 1
            }
        }
    }

    pub fn total_rz(&self) -> usize {
        self.multi_controlled_rz.values().sum()
    }

    pub fn total(&self) -> usize {
        self.single_qubit
            + self.cnot
            + self.global_phase
            + self.total_rz()
            + self.other_controlled.values().sum::<usize>()
    }
}

impl AddAssign<&GateCounts> for GateCounts {
    fn add_assign(&mut self, rhs: &GateCounts) {
        self.single_qubit += rhs.single_qubit;
        self.cnot += rhs.cnot;
        self.global_phase += rhs.global_phase;
        for (k, v) in &rhs.multi_controlled_rz {
            *self.multi_controlled_rz.entry(*k).or_default() += v;
        }
        for (k, v) in &rhs.other_controlled {
            *self.other_controlled.entry(k.clone()).or_default() += v;
        }
    }
}

impl Add for GateCounts {
    type Output = GateCounts;

    fn add(mut self, rhs: GateCounts) -> GateCounts {
        self += &rhs;
        self
    }
}

/// Closed-form CNOT-equivalent costs of the building blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CostFormula {
    /// `9n² − 33n + 34`
    V0,
    /// `16n² − 22n + 10`
    ControlledV0,
    /// `9n² − 15n − 8`
    V1,
    /// Same as [`CostFormula::V1`].
    V2,
    /// `16n² − 2n − 30`
    ControlledV1,
    /// `d·2^{n_p−1}·Q_V0 + d·(2^{n_p}−1)·Q_cV0`
    VHeat,
    /// `d·Q_V2 + d·2^{n_p−1}·Q_V1 + d·(2^{n_p}−1)·Q_cV1`
    VAdv,
}

impl CostFormula {
    pub const ALL: [CostFormula; 7] = [
        CostFormula::V0,
        CostFormula::ControlledV0,
        CostFormula::V1,
        CostFormula::V2,
        CostFormula::ControlledV1,
        CostFormula::VHeat,
        CostFormula::VAdv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CostFormula::V0 => "V0",
            CostFormula::ControlledV0 => "cV0",
            CostFormula::V1 => "V1",
            CostFormula::V2 => "V2",
            CostFormula::ControlledV1 => "cV1",
            CostFormula::VHeat => "Vheat",
            CostFormula::VAdv => "Vadv",
        }
    }
}

impl FromStr for CostFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CostFormula::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::param("formula", format!("unknown cost formula `{s}`")))
    }
}

/// Evaluates a CNOT-count formula. Only valid for `n_x ≥ 3`.
pub fn cnot_equivalent(formula: CostFormula, n_x: u32, n_p: u32, d: u32) -> Result<u64> {
    if n_x < 3 {
        return Err(Error::Domain(format!(
            "CNOT-count formulas hold for n_x >= 3, got n_x = {n_x}"
        )));
    }
    let n = i64::from(n_x);
    let d = i64::from(d);
    let half = 1i64
        .checked_shl(n_p.saturating_sub(1))
        .filter(|_| (1..62).contains(&n_p))
        .ok_or_else(|| Error::param("n_p", "must lie in 1..62"))?;
    let full = 2 * half - 1;
    let q_v0 = 9 * n * n - 33 * n + 34;
    let q_cv0 = 16 * n * n - 22 * n + 10;
    let q_v1 = 9 * n * n - 15 * n - 8;
    let q_cv1 = 16 * n * n - 2 * n - 30;
    let value = match formula {
        CostFormula::V0 => q_v0,
        CostFormula::ControlledV0 => q_cv0,
        CostFormula::V1 | CostFormula::V2 => q_v1,
        CostFormula::ControlledV1 => q_cv1,
        CostFormula::VHeat => d * half * q_v0 + d * full * q_cv0,
        CostFormula::VAdv => d * q_v1 + d * half * q_v1 + d * full * q_cv1,
    };
    Ok(value as u64)
}
