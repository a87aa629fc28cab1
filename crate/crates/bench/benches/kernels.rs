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

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use warpsim::fdm::{Boundary, GridSpec, Profile};
use warpsim::heat::{self, HeatProblem};
use warpsim::linalg::{expm_hermitian, spectral_norm};
use warpsim::simulator::dense_unitary;
use warpsim::{advection, verify, EvolutionMode, PGrid, StateVector};

fn heat_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("v_heat_step");
    for n_p in [5, 7] {
        let grid = GridSpec::new(1, 3, 1.0, Boundary::Dirichlet).unwrap();
        let prob = HeatProblem::new(1.0, grid, PGrid::new(3.0, n_p).unwrap(), 0.05, 100).unwrap();
        let step = heat::v_heat(&prob).unwrap();
        let mut state = StateVector::basis(prob.n_qubits(), 3);
        group.bench_with_input(BenchmarkId::from_parameter(n_p), &step, |b, step| {
            b.iter(|| state.run(black_box(step)).unwrap())
        });
    }
    group.finish();
}

fn dense_oracles(c: &mut Criterion) {
    let prob = verify::adv_problem_for(&[1.0, -1.0], 2, 2, 0.01).unwrap();
    let step = advection::v_adv(&prob).unwrap();
    c.bench_function("dense_unitary_v_adv_6q", |b| {
        b.iter(|| dense_unitary(black_box(&step)).unwrap())
    });
    let h = advection::h_adv_dense(&prob).unwrap();
    c.bench_function("expm_hermitian_64", |b| {
        b.iter(|| expm_hermitian(black_box(&h), 0.01))
    });
    c.bench_function("spectral_norm_64", |b| {
        b.iter(|| spectral_norm(black_box(&h)))
    });
}

fn suites(c: &mut Criterion) {
    c.bench_function("commutator_suite_n4", |b| {
        b.iter(|| verify::commutator_suite(black_box(4)).unwrap())
    });
}

fn exact_pipeline(c: &mut Criterion) {
    let grid = GridSpec::new(1, 3, 1.0, Boundary::Dirichlet).unwrap();
    let u0 = Profile::Sine.evaluate(&grid);
    let prob = HeatProblem::new(1.0, grid, PGrid::new(3.0, 7).unwrap(), 0.05, 1).unwrap();
    c.bench_function("heat_pipeline_exact_n_p7", |b| {
        b.iter(|| heat::heat_pipeline(black_box(&prob), &u0, EvolutionMode::Exact, None).unwrap())
    });
}

criterion_group!(benches, heat_step, dense_oracles, suites, exact_pipeline);
criterion_main!(benches);
