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

use std::f64::consts::FRAC_PI_2;

use warpsim::advection::{self, AdvectionProblem, WrapVariant};
use warpsim::fdm::{Boundary, GridSpec, Profile};
use warpsim::heat::{self, HeatProblem};
use warpsim::linalg::{expm_hermitian, max_abs, operator_norm_diff, C64};
use warpsim::pipeline::{self, block, off_block_max, unitary_power};
use warpsim::simulator::dense_unitary;
use warpsim::{verify, Error, EvolutionMode, PGrid, Report};

fn normalized(v: &[C64]) -> Vec<C64> {
    let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    v.iter().map(|x| x / n).collect()
}

#[test]
fn zero_time_recovers_initial_profile() {
    let grid = GridSpec::new(1, 3, 1.0, Boundary::Dirichlet).unwrap();
    let prob = HeatProblem::new(1.0, grid.clone(), PGrid::new(3.0, 7).unwrap(), 0.0, 0).unwrap();
    let u0 = Profile::Sine.evaluate(&grid);
    let out = heat::heat_pipeline(&prob, &u0, EvolutionMode::Circuit, None).unwrap();
    let u0c: Vec<C64> = u0.iter().map(|&x| C64::from(x)).collect();
    let (a, b) = (normalized(&out.u_est), normalized(&u0c));
    let dist: f64 = a
        .iter()
        .zip(&b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    assert!(dist <= 0.05, "{dist}");
}

#[test]
fn constant_profile_is_stationary_under_advection() {
    let grid = GridSpec::new(1, 3, 1.0, Boundary::Periodic).unwrap();
    let prob = AdvectionProblem::new(vec![1.0], grid.clone(), PGrid::new(3.0, 6).unwrap(), 0.1, 1)
        .unwrap();
    let a = advection::generator(&prob).unwrap();
    let ones = vec![C64::from(1.0); grid.dim()];
    assert!(a.matvec(&ones).unwrap().iter().all(|z| z.norm() < 1e-12));
    let u0 = Profile::Constant.evaluate(&grid);
    let out = advection::adv_pipeline(&prob, &u0, EvolutionMode::Exact, None).unwrap();
    assert!(
        out.diagnostics.fidelity > 0.999,
        "{}",
        out.diagnostics.fidelity
    );
}

#[test]
fn advection_splitting_is_exact_on_two_qubit_rings() {
    for a_vec in [vec![1.0], vec![-1.5], vec![1.0, -1.0]] {
        let prob = verify::adv_problem_for(&a_vec, 2, 2, 0.02).unwrap();
        let u = pipeline::block_diagonal(&pipeline::exact_blocks(
            &advection::h_adv_blocks(&prob).unwrap(),
            prob.t,
        ));
        let v = dense_unitary(&advection::v_adv(&prob).unwrap()).unwrap();
        assert!(operator_norm_diff(&u, &v).unwrap() < 1e-12, "{a_vec:?}");
    }
    let prob = verify::adv_problem_for(&[1.0], 3, 2, 0.02).unwrap();
    let u = pipeline::block_diagonal(&pipeline::exact_blocks(
        &advection::h_adv_blocks(&prob).unwrap(),
        prob.t,
    ));
    let v = dense_unitary(&advection::v_adv(&prob).unwrap()).unwrap();
    assert!(operator_norm_diff(&u, &v).unwrap() > 1e-4);
}

#[test]
fn mixed_sign_assembly_routes_agree() {
    let grid = GridSpec::new(2, 2, 1.0, Boundary::Periodic).unwrap();
    let prob =
        AdvectionProblem::new(vec![1.0, -1.0], grid, PGrid::new(3.0, 2).unwrap(), 0.1, 1).unwrap();
    let x = advection::h_adv_dense(&prob).unwrap();
    let y = advection::h_adv_dense_from_split(&prob).unwrap();
    assert!(max_abs(&(&x - &y)) < 1e-12);
}

#[test]
fn heat_step_is_block_diagonal_powers() {
    let prob = verify::heat_problem_for(1, 2, 2, 1.0, 0.1).unwrap();
    let v = dense_unitary(&heat::v_heat(&prob).unwrap()).unwrap();
    let nx = 1 << 2;
    assert!(off_block_max(&v, nx) < 1e-12);
    let step = dense_unitary(&heat::v0_tilde(prob.tau(), prob.gamma0(), 2, 1).unwrap()).unwrap();
    for k in 0..4 {
        let want = unitary_power(&step, k as i64 - 2);
        assert!(max_abs(&(block(&v, k, nx) - want)) < 1e-12, "k = {k}");
    }
}

#[test]
fn advection_step_is_block_diagonal_powers_then_tail() {
    let prob = verify::adv_problem_for(&[1.0, -0.5], 2, 2, 0.05).unwrap();
    let v = dense_unitary(&advection::v_adv(&prob).unwrap()).unwrap();
    let nx = 1 << 4;
    assert!(off_block_max(&v, nx) < 1e-12);
    let tau = prob.tau();
    let step =
        dense_unitary(&advection::v1_tilde(tau, prob.gamma1(), 2, &prob.a_vec).unwrap()).unwrap();
    let tail =
        dense_unitary(&advection::v2_tilde(tau, prob.gamma2(), 2, &prob.a_vec).unwrap()).unwrap();
    for k in 0..4 {
        let want = &tail * unitary_power(&step, k as i64 - 2);
        assert!(max_abs(&(block(&v, k, nx) - want)) < 1e-12, "k = {k}");
    }
}

#[test]
fn exact_and_circuit_modes_agree_as_r_grows() {
    let grid = GridSpec::new(1, 2, 1.0, Boundary::Dirichlet).unwrap();
    let u0 = Profile::gaussian().evaluate(&grid);
    let pg = PGrid::new(3.0, 5).unwrap();
    let exact = heat::heat_pipeline(
        &HeatProblem::new(0.02, grid.clone(), pg, 0.2, 1).unwrap(),
        &u0,
        EvolutionMode::Exact,
        None,
    )
    .unwrap();
    let err = |r: usize| {
        let prob = HeatProblem::new(0.02, grid.clone(), pg, 0.2, r).unwrap();
        let out = heat::heat_pipeline(&prob, &u0, EvolutionMode::Circuit, None).unwrap();
        out.u_est
            .iter()
            .zip(&exact.u_est)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    let (coarse, fine) = (err(2), err(16));
    assert!(fine < coarse, "{coarse} {fine}");
}

#[test]
fn budget_bound_is_reported() {
    let grid = GridSpec::new(1, 2, 1.0, Boundary::Dirichlet).unwrap();
    let base = HeatProblem::new(0.05, grid.clone(), PGrid::new(3.0, 4).unwrap(), 0.1, 1).unwrap();
    let r = base.budget_r(0.05).unwrap();
    let prob = base.with_r(r).unwrap();
    let out = heat::heat_pipeline(
        &prob,
        &Profile::Sine.evaluate(&grid),
        EvolutionMode::Circuit,
        None,
    )
    .unwrap();
    let d = &out.diagnostics;
    assert_eq!(d.r, r);
    assert!(d.trotter_budget <= 0.05 * (1.0 + 1e-9));
    assert_eq!(d.formula_cnots, None);
    assert_eq!(d.n_qubits, 6);
    let json = Report::new("heat", &prob, &out).to_json().unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["equation"], "heat");
    assert_eq!(v["diagnostics"]["r"], r);
    assert!(v["u_est"].is_array());
}

#[test]
fn invalid_inputs_are_rejected() {
    let grid = GridSpec::new(1, 2, 1.0, Boundary::Dirichlet).unwrap();
    let prob = HeatProblem::new(1.0, grid, PGrid::new(3.0, 2).unwrap(), 0.1, 1).unwrap();
    assert!(matches!(
        heat::heat_pipeline(&prob, &[1.0; 3], EvolutionMode::Exact, None),
        Err(Error::DimensionMismatch { .. })
    ));
    assert!(heat::heat_pipeline(&prob, &[0.0; 4], EvolutionMode::Exact, None).is_err());
    let big = GridSpec::new(2, 8, 1.0, Boundary::Dirichlet).unwrap();
    let prob = HeatProblem::new(1.0, big, PGrid::new(3.0, 6).unwrap(), 0.1, 1).unwrap();
    assert!(matches!(
        heat::v_heat(&prob),
        Err(Error::CapExceeded { .. })
    ));
    let one = GridSpec::new(1, 2, 1.0, Boundary::Dirichlet).unwrap();
    let prob = HeatProblem::new(1.0, one, PGrid::new(3.0, 1).unwrap(), 0.1, 1).unwrap();
    assert!(heat::heat_pipeline(&prob, &[1.0; 4], EvolutionMode::Exact, None).is_err());
    assert!(heat::heat_pipeline(&prob, &[1.0; 4], EvolutionMode::Exact, Some(1)).is_err());
}

#[test]
fn exported_listings() {
    let w2 = heat::w_gate(2, 0.3, 0.0, 2).unwrap();
    assert_eq!(w2.len(), 5);
    let w3 = heat::w_gate(3, 0.3, 0.0, 3).unwrap();
    assert_eq!(w3.len(), 7);
    let text = advection::b_wrap(WrapVariant::Two, 2).unwrap().to_text();
    assert!(text
        .lines()
        .any(|l| l.starts_with("P ") && l.ends_with(&format!("{:?}", -FRAC_PI_2))));
}

#[test]
fn v1_and_v2_within_their_bounds() {
    for (gamma, tau) in [(1.0, 0.1), (0.5, 0.05)] {
        let v = dense_unitary(&advection::v1(tau, gamma, 3).unwrap()).unwrap();
        let e = expm_hermitian(&advection::h1(gamma, 3).to_dense(), tau);
        assert!(operator_norm_diff(&e, &v).unwrap() <= verify::wrap_step_bound(gamma, tau, 3));
        let v = dense_unitary(&advection::v2(tau, gamma, 3).unwrap()).unwrap();
        let e = expm_hermitian(&advection::h2(gamma, 3).to_dense(), tau);
        assert!(operator_norm_diff(&e, &v).unwrap() <= verify::wrap_step_bound(gamma, tau, 3));
    }
}
