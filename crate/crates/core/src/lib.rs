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

//! Gate-level simulation of Schrödingerisation circuits for the heat and advection equations.

pub mod advection;
pub mod error;
pub mod fdm;
pub mod gates;
pub mod heat;
pub mod linalg;
pub mod pipeline;
pub mod simulator;
pub mod verify;
pub mod warp;

pub use advection::{AdvectionProblem, WrapVariant};

pub use error::{Error, Result};
pub use fdm::{Boundary, DiffKind, Direction, GridSpec, Profile, SparseOperator};
pub use gates::{cnot_equivalent, Circuit, CostFormula, Gate, GateCounts, GateKind};
pub use heat::HeatProblem;
pub use linalg::{DenseMatrix, C64};
pub use pipeline::{Diagnostics, EvolutionMode, Report, SolveOutcome};
pub use simulator::StateVector;
pub use verify::{BoundKind, BoundReport};
pub use warp::{PGrid, WarpedState};
