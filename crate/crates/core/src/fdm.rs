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

//! Finite-difference operators on `2^{n_x}` points per dimension.
//!
//! `S⁻ = Σ_j |j−1⟩⟨j|` and `S⁺ = (S⁻)ᵀ`. Dirichlet operators truncate the shifts (homogeneous
//! boundary values); periodic operators add the wrap-around corners `σ₀₁^{⊗n}` and `σ₁₀^{⊗n}`.
//! In `d` dimensions, axis `α` (1-based) occupies bits `(α−1)n_x .. αn_x−1` of the flat index.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix, C64, I, ONE, ZERO};

/// Largest state dimension the dense reference evolution accepts.
pub const DENSE_EVOLVE_CAP: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Dirichlet,
    Periodic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Minus,
    Plus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiffKind {
    Forward,
    Backward,
    Central,
    Laplacian,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub d: usize,
    pub n_x: usize,
    pub length: f64,
    pub boundary: Boundary,
}

impl GridSpec {
    pub fn new(d: usize, n_x: usize, length: f64, boundary: Boundary) -> Result<Self> {
        if d == 0 {
            return Err(Error::param("d", "must be at least 1"));
        }
        if n_x == 0 {
            return Err(Error::param("n_x", "must be at least 1"));
        }
        if d * n_x > 24 {
            return Err(Error::param("n_x", "d·n_x must not exceed 24"));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::param("L", "must be a positive finite length"));
        }
        Ok(GridSpec {
            d,
            n_x,
            length,
            boundary,
        })
    }

    /// Points per dimension, `N_x = 2^{n_x}`.
    pub fn n_points(&self) -> usize {
        1 << self.n_x
    }

    pub fn h(&self) -> f64 {
        self.length / self.n_points() as f64
    }

    /// Total number of unknowns, `N_x^d`.
    pub fn dim(&self) -> usize {
        1 << (self.d * self.n_x)
    }

    pub fn n_qubits(&self) -> usize {
        self.d * self.n_x
    }

    /// Coordinate of grid index `j` along one axis. Dirichlet grids are cell-centred so that both
    /// boundaries sit half a cell outside the unknowns; periodic grids start at the origin.
    pub fn coordinate(&self, j: usize) -> f64 {
        match self.boundary {
            Boundary::Dirichlet => (j as f64 + 0.5) * self.h(),
            Boundary::Periodic => j as f64 * self.h(),
        }
    }

    /// Per-axis grid indices of a flat index, axis 1 first.
    pub fn unflatten(&self, index: usize) -> Vec<usize> {
        let mask = self.n_points() - 1;
        (0..self.d)
            .map(|a| (index >> (a * self.n_x)) & mask)
            .collect()
    }

    pub fn coordinates(&self, index: usize) -> Vec<f64> {
        self.unflatten(index)
            .into_iter()
            .map(|j| self.coordinate(j))
            .collect()
    }
}

/// Named initial profiles evaluated on a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Profile {
    /// `Π_α sin(π x_α / L)`.
    Sine,
    /// `exp(−|x − c|² / (2w²))`, centre and width as fractions of `L`.
    Gaussian {
        center: f64,
        width: f64,
    },
    /// 1 on `[lo, hi)` (fractions of `L`) in every axis, 0 elsewhere.
    Step {
        lo: f64,
        hi: f64,
    },
    Constant,
}

impl Profile {
    pub fn gaussian() -> Self {
        Profile::Gaussian {
            center: 0.5,
            width: 0.125,
        }
    }

    pub fn step() -> Self {
        Profile::Step { lo: 0.25, hi: 0.75 }
    }

    pub fn evaluate(&self, grid: &GridSpec) -> Vec<f64> {
        let l = grid.length;
        (0..grid.dim())
            .map(|idx| {
                let x = grid.coordinates(idx);
                match *self {
                    Profile::Sine => x
                        .iter()
                        .map(|xa| (std::f64::consts::PI * xa / l).sin())
                        .product(),
                    Profile::Gaussian { center, width } => {
                        let r2: f64 = x.iter().map(|xa| (xa / l - center).powi(2)).sum();
                        (-r2 / (2.0 * width * width)).exp()
                    }
                    Profile::Step { lo, hi } => {
                        let inside = x.iter().all(|xa| (lo..hi).contains(&(xa / l)));
                        f64::from(u8::from(inside))
                    }
                    Profile::Constant => 1.0,
                }
            })
            .collect()
    }
}

/// Square sparse matrix in canonical coordinate form: sorted by `(row, col)`, no duplicates, no
/// explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    entries: Vec<(usize, usize, C64)>,
}

impl SparseOperator {
    pub fn zeros(dim: usize) -> Self {
        SparseOperator {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        SparseOperator {
            dim,
            entries: (0..dim).map(|i| (i, i, ONE)).collect(),
        }
    }

    /// Sums duplicate coordinates and drops exact zeros.
    pub fn from_triplets(
        dim: usize,
        triplets: impl IntoIterator<Item = (usize, usize, C64)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<(usize, usize), C64> = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= dim || c >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: r.max(c) + 1,
                });
            }
            *map.entry((r, c)).or_insert(ZERO) += v;
        }
        Ok(SparseOperator {
            dim,
            entries: map
                .into_iter()
                .filter(|(_, v)| *v != ZERO)
                .map(|((r, c), v)| (r, c, v))
                .collect(),
        })
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        let dim = m.nrows();
        let mut entries = Vec::new();
        for r in 0..dim {
            for c in 0..m.ncols() {
                if m[(r, c)] != ZERO {
                    entries.push((r, c, m[(r, c)]));
                }
            }
        }
        SparseOperator { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, C64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries
            .binary_search_by(|&(r, c, _)| (r, c).cmp(&(row, col)))
            .map_or(ZERO, |i| self.entries[i].2)
    }

    /// Largest number of stored entries in any row.
    pub fn max_row_nnz(&self) -> usize {
        let mut counts = vec![0usize; self.dim];
        for &(r, _, _) in &self.entries {
            counts[r] += 1;
        }
        counts.into_iter().max().unwrap_or(0)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .map(|&(r, c, v)| (c, r, v.conj()))
            .collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        SparseOperator {
            dim: self.dim,
            entries,
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        if s == ZERO {
            return Self::zeros(self.dim);
        }
        SparseOperator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|&(r, c, v)| (r, c, v * s))
                .collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::from(s))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Self::from_triplets(self.dim, self.entries.iter().chain(&other.entries).copied())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale_re(-1.0))
    }

    /// `self ⊗ other`, with `self` as the high factor.
    pub fn kron(&self, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for &(r1, c1, v1) in &self.entries {
            for &(r2, c2, v2) in &other.entries {
                entries.push((r1 * other.dim + r2, c1 * other.dim + c2, v1 * v2));
            }
        }
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        SparseOperator {
            dim: self.dim * other.dim,
            entries,
        }
    }

    pub fn matvec(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let mut y = vec![ZERO; self.dim];
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        Ok(y)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        linalg::max_abs(&(self.to_dense() - self.adjoint().to_dense())) <= tol
    }

    /// `row,col,real,imag` rows with a header.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "row,col,real,imag")?;
        for &(r, c, v) in &self.entries {
            writeln!(w, "{r},{c},{:e},{:e}", v.re, v.im)?;
        }
        Ok(())
    }
}

fn real(x: f64) -> C64 {
    C64::from(x)
}

/// `S⁻` or `S⁺` on `n_x` qubits.
pub fn shift(direction: Direction, n_x: usize) -> SparseOperator {
    let n = 1usize << n_x;
    let entries = (1..n).map(|j| match direction {
        Direction::Minus => (j - 1, j, ONE),
        Direction::Plus => (j, j - 1, ONE),
    });
    SparseOperator {
        dim: n,
        entries: entries.collect(),
    }
}

/// `σ₀₁^{⊗n_x} = |0…0⟩⟨1…1|`.
pub fn sigma01_all(n_x: usize) -> SparseOperator {
    let n = 1usize << n_x;
    SparseOperator {
        dim: n,
        entries: vec![(0, n - 1, ONE)],
    }
}

/// `σ₁₀^{⊗n_x} = |1…1⟩⟨0…0|`.
pub fn sigma10_all(n_x: usize) -> SparseOperator {
    sigma01_all(n_x).adjoint()
}

/// `s_j⁻ = I^{⊗(n_x−j)} ⊗ σ₀₁ ⊗ σ₁₀^{⊗(j−1)}` (and its adjoint for `Plus`), `1 ≤ j ≤ n_x`.
pub fn s_j(direction: Direction, j: usize, n_x: usize) -> Result<SparseOperator> {
    if j == 0 || j > n_x {
        return Err(Error::param("j", format!("must lie in 1..={n_x}, got {j}")));
    }
    let s01 = sigma01_all(1);
    let s10 = sigma10_all(1);
    let minus = SparseOperator::identity(1 << (n_x - j))
        .kron(&s01)
        .kron(&(0..j - 1).fold(SparseOperator::identity(1), |acc, _| acc.kron(&s10)));
    Ok(match direction {
        Direction::Minus => minus,
        Direction::Plus => minus.adjoint(),
    })
}

/// One-dimensional difference operator on `n_x` qubits with mesh size `h`.
pub fn diff_op_1d(kind: DiffKind, boundary: Boundary, n_x: usize, h: f64) -> SparseOperator {
    let n = 1usize << n_x;
    let sm = shift(Direction::Minus, n_x);
    let sp = shift(Direction::Plus, n_x);
    let id = SparseOperator::identity(n);
    let periodic = boundary == Boundary::Periodic;
    let wrap01 = sigma01_all(n_x);
    let wrap10 = sigma10_all(n_x);
    let mut terms: Vec<(f64, &SparseOperator)> = match kind {
        DiffKind::Forward => vec![(1.0, &sm), (-1.0, &id)],
        DiffKind::Backward => vec![(1.0, &id), (-1.0, &sp)],
        DiffKind::Central => vec![(0.5, &sm), (-0.5, &sp)],
        DiffKind::Laplacian => vec![(1.0, &sm), (1.0, &sp), (-2.0, &id)],
    };
    if periodic {
        terms.extend(match kind {
            DiffKind::Forward => vec![(1.0, &wrap10)],
            DiffKind::Backward => vec![(-1.0, &wrap01)],
            DiffKind::Central => vec![(-0.5, &wrap01), (0.5, &wrap10)],
            DiffKind::Laplacian => vec![(1.0, &wrap01), (1.0, &wrap10)],
        });
    }
    let scale = if kind == DiffKind::Laplacian {
        1.0 / (h * h)
    } else {
        1.0 / h
    };
    SparseOperator::from_triplets(
        n,
        terms
            .into_iter()
            .flat_map(|(c, op)| op.entries.iter().map(move |&(r, k, v)| (r, k, v * c))),
    )
    .expect("indices are in range by construction")
    .scale_re(scale)
}

/// Difference operator on one axis of `grid`, using the grid's mesh size.
pub fn diff_op(kind: DiffKind, boundary: Boundary, grid: &GridSpec) -> SparseOperator {
    diff_op_1d(kind, boundary, grid.n_x, grid.h())
}

/// `(op)_α = I^{⊗(d−α)n_x} ⊗ op ⊗ I^{⊗(α−1)n_x}` for `1 ≤ α ≤ d`.
pub fn kron_place(
    op: &SparseOperator,
    alpha: usize,
    d: usize,
    n_x: usize,
) -> Result<SparseOperator> {
    if alpha == 0 || alpha > d {
        return Err(Error::param(
            "alpha",
            format!("must lie in 1..={d}, got {alpha}"),
        ));
    }
    if op.dim != 1 << n_x {
        return Err(Error::DimensionMismatch {
            expected: 1 << n_x,
            got: op.dim,
        });
    }
    let high = SparseOperator::identity(1 << ((d - alpha) * n_x));
    let low = SparseOperator::identity(1 << ((alpha - 1) * n_x));
    Ok(high.kron(op).kron(&low))
}

/// `a · Σ_α (D_D^Δ)_α`.
pub fn heat_generator(a: f64, grid: &GridSpec) -> Result<SparseOperator> {
    let lap = diff_op(DiffKind::Laplacian, Boundary::Dirichlet, grid);
    let mut out = SparseOperator::zeros(grid.dim());
    if a == 0.0 {
        return Ok(out);
    }
    for alpha in 1..=grid.d {
        out = out.add(&kron_place(&lap, alpha, grid.d, grid.n_x)?)?;
    }
    Ok(out.scale_re(a))
}

/// `Σ_α a_α (D_P^±)_α` with the upwind choice `D_P^+` for `a_α > 0` and `D_P^−` for `a_α < 0`.
pub fn advection_generator(a_vec: &[f64], grid: &GridSpec) -> Result<SparseOperator> {
    if grid.boundary != Boundary::Periodic {
        return Err(Error::param(
            "boundary",
            "advection requires a periodic grid",
        ));
    }
    if a_vec.len() != grid.d {
        return Err(Error::DimensionMismatch {
            expected: grid.d,
            got: a_vec.len(),
        });
    }
    let mut out = SparseOperator::zeros(grid.dim());
    for (alpha, &a) in (1..).zip(a_vec) {
        let kind = if a > 0.0 {
            DiffKind::Forward
        } else if a < 0.0 {
            DiffKind::Backward
        } else {
            continue;
        };
        let op = diff_op(kind, Boundary::Periodic, grid).scale_re(a);
        out = out.add(&kron_place(&op, alpha, grid.d, grid.n_x)?)?;
    }
    Ok(out)
}

/// `(A₁, A₂)` with `A₁ = (A + Aᴴ)/2`, `A₂ = (A − Aᴴ)/(2i)`, so that `A = A₁ + iA₂`.
pub fn hermitian_split(a: &SparseOperator) -> (SparseOperator, SparseOperator) {
    let ah = a.adjoint();
    let a1 = a.add(&ah).expect("same dimension").scale_re(0.5);
    let a2 = a.sub(&ah).expect("same dimension").scale(-I * 0.5);
    (a1, a2)
}

fn to_complex(u0: &[f64]) -> Vec<C64> {
    u0.iter().map(|&x| real(x)).collect()
}

/// `exp(T·A)·u0` on the dense representation.
pub fn evolve_exact(a: &SparseOperator, u0: &[C64], t: f64) -> Result<Vec<C64>> {
    if u0.len() != a.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            got: u0.len(),
        });
    }
    if a.dim > DENSE_EVOLVE_CAP {
        return Err(Error::CapExceeded {
            n_qubits: a.dim.trailing_zeros() as usize,
            cap: DENSE_EVOLVE_CAP.trailing_zeros() as usize,
        });
    }
    if t == 0.0 {
        return Ok(u0.to_vec());
    }
    let e = linalg::expm(&(a.to_dense() * real(t)));
    let v = e * nalgebra::DVector::from_column_slice(u0);
    Ok(v.iter().copied().collect())
}

/// Real-input convenience form of [`evolve_exact`].
pub fn evolve_exact_real(a: &SparseOperator, u0: &[f64], t: f64) -> Result<Vec<C64>> {
    evolve_exact(a, &to_complex(u0), t)
}

/// `r` forward-Euler steps `u ← u + τAu`.
pub fn evolve_euler(a: &SparseOperator, u0: &[C64], tau: f64, r: usize) -> Result<Vec<C64>> {
    let mut u = u0.to_vec();
    for _ in 0..r {
        let au = a.matvec(&u)?;
        for (x, dx) in u.iter_mut().zip(au) {
            *x += dx * tau;
        }
    }
    if r == 0 && u.len() != a.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            got: u.len(),
        });
    }
    Ok(u)
}
