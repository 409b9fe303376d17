//! Closed-form tridiagonal Toeplitz eigenvalues, the dominant eigenvalue of
//! ΓΓᵀ for grid matrices of square-rooted growth rates, the t-step staircase
//! growth-rate formula, and the merge growth-rate bound.

use std::f64::consts::PI;

use thiserror::Error;

use crate::class::ClassExpr;
use crate::grid::GridMatrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("sub·super = {0} is negative; only the real-spectrum branch is supported")]
    ComplexSpectrum(f64),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("growth-rate inputs must be nonnegative, got {0}")]
    NegativeGrowth(f64),
    #[error("matrix entries must be nonnegative and finite, got {0}")]
    BadEntry(f64),
    #[error("matrix shape mismatch: expected {expected} entries, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("matrix must have at least one row and column")]
    EmptyMatrix,
    #[error("matrix must be nonzero")]
    ZeroMatrix,
    #[error("power iteration did not converge; final iterate gap {gap}")]
    NonConvergence { gap: f64 },
}

/// A t×t tridiagonal Toeplitz matrix: `sub` on the subdiagonal, `diag` on
/// the main diagonal, `sup` on the superdiagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToeplitzSpec {
    pub sub: f64,
    pub diag: f64,
    pub sup: f64,
    pub dim: usize,
}

/// Eigenvalues λ_j = diag + 2·√(sub·sup)·cos(jπ/(t+1)) for j = 1..t, sorted
/// descending. Requires sub·sup ≥ 0.
pub fn toeplitz_eigenvalues(spec: &ToeplitzSpec) -> Result<Vec<f64>, SpectralError> {
    if spec.dim == 0 {
        return Err(SpectralError::ZeroDimension);
    }
    let product = spec.sub * spec.sup;
    if product < 0.0 {
        return Err(SpectralError::ComplexSpectrum(product));
    }
    let amplitude = 2.0 * product.sqrt();
    let t = spec.dim as f64;
    Ok((1..=spec.dim)
        .map(|j| spec.diag + amplitude * (j as f64 * PI / (t + 1.0)).cos())
        .collect())
}

/// An entrywise-nonnegative real matrix; entry (k, ℓ) is meant to hold the
/// square root of the growth rate of grid cell (k, ℓ), with 0 for empty
/// cells. Stored column-major in Cartesian layout like `GridMatrix`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaMatrix {
    cols: usize,
    rows: usize,
    entries: Vec<f64>,
}

impl GammaMatrix {
    /// `entries[row * cols + col]`, row 0 at the bottom.
    pub fn new(cols: usize, rows: usize, entries: Vec<f64>) -> Result<Self, SpectralError> {
        if cols == 0 || rows == 0 {
            return Err(SpectralError::EmptyMatrix);
        }
        if entries.len() != cols * rows {
            return Err(SpectralError::ShapeMismatch {
                expected: cols * rows,
                got: entries.len(),
            });
        }
        for &e in &entries {
            if !e.is_finite() || e < 0.0 {
                return Err(SpectralError::BadEntry(e));
            }
        }
        Ok(GammaMatrix {
            cols,
            rows,
            entries,
        })
    }

    /// Γ for a grid matrix, given a numeric growth rate for each distinct
    /// cell class. Growth rates are trusted inputs; they are generally not
    /// computable from finite data.
    pub fn from_grid(
        matrix: &GridMatrix,
        growth_of: impl Fn(&ClassExpr) -> f64,
    ) -> Result<Self, SpectralError> {
        let mut entries = vec![0.0; matrix.cols() * matrix.rows()];
        for (col, row, class) in matrix.nonempty_cells() {
            let gr = growth_of(class);
            if !gr.is_finite() || gr < 0.0 {
                return Err(SpectralError::NegativeGrowth(gr));
            }
            entries[row * matrix.cols() + col] = gr.sqrt();
        }
        GammaMatrix::new(matrix.cols(), matrix.rows(), entries)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn entry(&self, col: usize, row: usize) -> f64 {
        self.entries[row * self.cols + col]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for col in 0..self.cols {
            self.entries.swap(a * self.cols + col, b * self.cols + col);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for row in 0..self.rows {
            self.entries.swap(row * self.cols + a, row * self.cols + b);
        }
    }

    /// The symmetric product ΓΓᵀ or ΓᵀΓ, whichever is smaller, as a dense
    /// square matrix.
    fn small_gram(&self) -> (usize, Vec<f64>) {
        // lay the matrix out so the smaller side indexes whole slices
        let (outer, inner) = if self.rows <= self.cols {
            (self.rows, self.cols)
        } else {
            (self.cols, self.rows)
        };
        let mut lanes = vec![0.0; outer * inner];
        for row in 0..self.rows {
            for col in 0..self.cols {
                let (i, k) = if self.rows <= self.cols {
                    (row, col)
                } else {
                    (col, row)
                };
                lanes[i * inner + k] = self.entry(col, row);
            }
        }
        let mut gram = vec![0.0; outer * outer];
        for i in 0..outer {
            for j in i..outer {
                let s: f64 = (0..inner)
                    .map(|k| lanes[i * inner + k] * lanes[j * inner + k])
                    .sum();
                gram[i * outer + j] = s;
                gram[j * outer + i] = s;
            }
        }
        (outer, gram)
    }
}

const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITERS: usize = 100_000;

/// Dominant eigenvalue of ΓΓᵀ (equivalently ΓᵀΓ) by power iteration from
/// the all-ones vector. The Gram matrix is symmetric positive semidefinite
/// and entrywise nonnegative, so the all-ones start has a component along
/// the dominant eigenvector. Stops when the residual ‖Sv − λv‖ drops below
/// 1e−12·max(1, λ); for a symmetric matrix that residual bounds the
/// eigenvalue error directly.
pub fn top_eigenvalue(gamma: &GammaMatrix) -> Result<f64, SpectralError> {
    if gamma.entries.iter().all(|&e| e == 0.0) {
        return Err(SpectralError::ZeroMatrix);
    }
    let (dim, gram) = gamma.small_gram();
    let mut v = vec![1.0 / (dim as f64).sqrt(); dim];
    let mut sv = vec![0.0; dim];
    let mut lambda = 0.0;
    let mut gap = f64::INFINITY;
    for _ in 0..POWER_MAX_ITERS {
        for i in 0..dim {
            sv[i] = (0..dim).map(|j| gram[i * dim + j] * v[j]).sum();
        }
        lambda = v.iter().zip(&sv).map(|(a, b)| a * b).sum();
        gap = (0..dim)
            .map(|i| (sv[i] - lambda * v[i]).powi(2))
            .sum::<f64>()
            .sqrt();
        if gap <= POWER_TOL * lambda.abs().max(1.0) {
            return Ok(lambda);
        }
        let norm = sv.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            // v is in the kernel; the dominant eigenvalue of a nonzero Gram
            // matrix is positive, but the start vector lost all overlap.
            return Err(SpectralError::NonConvergence { gap: lambda });
        }
        for i in 0..dim {
            v[i] = sv[i] / norm;
        }
    }
    let _ = lambda;
    Err(SpectralError::NonConvergence { gap })
}

/// Growth rate of any t-step (C,D) staircase:
/// gr(C) + 2·√(gr(C)·gr(D))·cos(π/(t+1)) + gr(D), the top eigenvalue of the
/// staircase's tridiagonal Toeplitz Gram matrix.
pub fn t_step_staircase_gr(gr_c: f64, gr_d: f64, t: usize) -> Result<f64, SpectralError> {
    if gr_c < 0.0 {
        return Err(SpectralError::NegativeGrowth(gr_c));
    }
    if gr_d < 0.0 {
        return Err(SpectralError::NegativeGrowth(gr_d));
    }
    if t == 0 {
        return Err(SpectralError::ZeroDimension);
    }
    Ok(gr_c + gr_d + 2.0 * (gr_c * gr_d).sqrt() * (PI / (t as f64 + 1.0)).cos())
}

/// The merge growth-rate bound (√gr(C) + √gr(D))², the t → ∞ limit of the
/// staircase formula.
pub fn merge_gr_bound(gr_c: f64, gr_d: f64) -> Result<f64, SpectralError> {
    if gr_c < 0.0 {
        return Err(SpectralError::NegativeGrowth(gr_c));
    }
    if gr_d < 0.0 {
        return Err(SpectralError::NegativeGrowth(gr_d));
    }
    let s = gr_c.sqrt() + gr_d.sqrt();
    Ok(s * s)
}

/// Render with 12 significant digits, trailing zeros trimmed. All real
/// outputs print through this so identical runs are byte-identical.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let mut s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}
