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

//! Dense complex linear algebra: Kronecker products, norms and matrix exponentials.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type DenseMatrix = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Largest dimension handled by a full SVD; above it the norm comes from power iteration.
pub const SVD_LIMIT: usize = 1 << 10;

pub fn identity(dim: usize) -> DenseMatrix {
    DenseMatrix::identity(dim, dim)
}

/// `a ⊗ b`, with `a` as the high (most significant) factor.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    a.kronecker(b)
}

/// Left-to-right Kronecker product of `factors`.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a DenseMatrix>) -> DenseMatrix {
    factors
        .into_iter()
        .fold(identity(1), |acc, f| acc.kronecker(f))
}

pub fn dagger(a: &DenseMatrix) -> DenseMatrix {
    a.adjoint()
}

pub fn commutator(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    a * b - b * a
}

/// Largest absolute entry.
pub fn max_abs(a: &DenseMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn one_norm(a: &DenseMatrix) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Spectral norm `‖a‖₂`.
pub fn spectral_norm(a: &DenseMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    if a.nrows().max(a.ncols()) <= SVD_LIMIT {
        a.singular_values().max()
    } else {
        power_iteration_norm(a, 1e-10, 10_000)
    }
}

/// `sqrt(λ_max(aᴴa))` by power iteration. Deterministic start vector.
pub fn power_iteration_norm(a: &DenseMatrix, tol: f64, max_iter: usize) -> f64 {
    let n = a.ncols();
    let mut x = DVector::from_fn(n, |i, _| {
        C64::new(1.0 + 0.5 * (i as f64).sin(), 0.25 * (i as f64).cos())
    });
    x /= C64::from(x.norm());
    let mut sigma2 = 0.0;
    for _ in 0..max_iter {
        let y = a.adjoint() * (a * &x);
        let next = y.norm();
        if next == 0.0 {
            return 0.0;
        }
        x = y / C64::from(next);
        if (next - sigma2).abs() <= tol * next {
            return next.sqrt();
        }
        sigma2 = next;
    }
    sigma2.sqrt()
}

/// `‖a − b‖₂`.
pub fn operator_norm_diff(a: &DenseMatrix, b: &DenseMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: b.nrows(),
        });
    }
    Ok(spectral_norm(&(a - b)))
}

pub fn is_hermitian(a: &DenseMatrix, tol: f64) -> bool {
    a.is_square() && max_abs(&(a - a.adjoint())) <= tol * (1.0 + max_abs(a))
}

pub fn is_normal(a: &DenseMatrix, tol: f64) -> bool {
    let ah = a.adjoint();
    a.is_square() && max_abs(&(a * &ah - &ah * a)) <= tol * (1.0 + max_abs(a).powi(2))
}

/// `exp(i t H)` for Hermitian `h` via eigendecomposition.
pub fn expm_hermitian(h: &DenseMatrix, t: f64) -> DenseMatrix {
    let eig = h.clone().symmetric_eigen();
    let phases = eig.eigenvalues.map(|l| (I * t * l).exp());
    let q = &eig.eigenvectors;
    q * DenseMatrix::from_diagonal(&phases) * q.adjoint()
}

/// `exp(a)` for any square matrix. Hermitian and normal inputs are diagonalized; everything else
/// goes through Padé scaling-and-squaring.
pub fn expm(a: &DenseMatrix) -> DenseMatrix {
    if a.nrows() == 0 {
        return a.clone();
    }
    if is_hermitian(a, 1e-14) {
        let eig = a.clone().symmetric_eigen();
        let q = &eig.eigenvectors;
        let d = eig.eigenvalues.map(|l| C64::from(l.exp()));
        return q * DenseMatrix::from_diagonal(&d) * q.adjoint();
    }
    if is_normal(a, 1e-13) {
        if let Some(e) = expm_normal(a) {
            return e;
        }
    }
    expm_pade(a)
}

/// Schur route for normal matrices. Returns `None` when the triangular factor is not diagonal
/// to working precision.
fn expm_normal(a: &DenseMatrix) -> Option<DenseMatrix> {
    let (q, t) = a.clone().schur().unpack();
    let n = t.nrows();
    let scale = 1.0 + max_abs(&t);
    for j in 0..n {
        for i in 0..j {
            if t[(i, j)].norm() > 1e-12 * scale {
                return None;
            }
        }
    }
    let d = DVector::from_fn(n, |i, _| t[(i, i)].exp());
    Some(&q * DenseMatrix::from_diagonal(&d) * q.adjoint())
}

const THETA: [(usize, f64); 4] = [
    (3, 1.495_585_217_958_292e-2),
    (5, 2.539_398_330_063_23e-1),
    (7, 9.504_178_996_162_932e-1),
    (9, 2.097_847_961_257_068),
];
const THETA_13: f64 = 5.371_920_351_148_152;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17_297_280.0,
    8_648_640.0,
    1_995_840.0,
    277_200.0,
    25_200.0,
    1_512.0,
    56.0,
    1.0,
];
const B9: [f64; 10] = [
    17_643_225_600.0,
    8_821_612_800.0,
    2_075_673_600.0,
    302_702_400.0,
    30_270_240.0,
    2_162_160.0,
    110_880.0,
    3_960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Padé scaling-and-squaring (Higham, 2005).
pub fn expm_pade(a: &DenseMatrix) -> DenseMatrix {
    let n = a.nrows();
    let id = identity(n);
    let norm = one_norm(a);
    let c = |x: f64| C64::from(x);

    for (m, theta) in THETA {
        if norm <= theta {
            let b: &[f64] = match m {
                3 => &B3,
                5 => &B5,
                7 => &B7,
                _ => &B9,
            };
            let a2 = a * a;
            let mut u = &id * c(b[1]);
            let mut v = &id * c(b[0]);
            let mut p = id.clone();
            for k in 1..=m / 2 {
                p = &p * &a2;
                u += &p * c(b[2 * k + 1]);
                v += &p * c(b[2 * k]);
            }
            let u = a * u;
            return pade_solve(&u, &v);
        }
    }

    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    let a = a * c(0.5f64.powi(s));
    let b = &B13;
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_inner = &a6 * (&a6 * c(b[13]) + &a4 * c(b[11]) + &a2 * c(b[9]))
        + &a6 * c(b[7])
        + &a4 * c(b[5])
        + &a2 * c(b[3])
        + &id * c(b[1]);
    let u = &a * u_inner;
    let v = &a6 * (&a6 * c(b[12]) + &a4 * c(b[10]) + &a2 * c(b[8]))
        + &a6 * c(b[6])
        + &a4 * c(b[4])
        + &a2 * c(b[2])
        + &id * c(b[0]);
    let mut r = pade_solve(&u, &v);
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

fn pade_solve(u: &DenseMatrix, v: &DenseMatrix) -> DenseMatrix {
    (v - u)
        .lu()
        .solve(&(v + u))
        .expect("Padé denominator is nonsingular for the scaled argument")
}
