//! Hermitian eigendecomposition contract.
//!
//! The solver itself is delegated to `nalgebra::SymmetricEigen`; this module
//! owns the contract around it: ascending eigenvalue order, deterministic
//! eigenvector phases, residual and orthonormality verification.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::{inner, ComplexSquareMatrix, UnitVector, C64};

/// Residual bound: max_j ‖Hv_j − λ_j v_j‖ ≤ `RESIDUAL_TOL` · (1 + ‖H‖_F).
pub const RESIDUAL_TOL: f64 = 1e-9;

/// Max entrywise Gram deviation allowed for the eigenvector matrix.
pub const GRAM_TOL: f64 = 1e-9;

/// Hermitian-defect threshold (relative to ‖H‖_F) above which the input is
/// symmetrized before solving, with the defect recorded on the output.
pub const SYMMETRIZE_TOL: f64 = 1e-10;

/// Full eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors, column j pairing with `eigenvalues[j]`.
    pub eigenvectors: ComplexSquareMatrix,
    /// Max residual ‖Hv_j − λ_j v_j‖ actually achieved.
    pub residual: f64,
    /// Hermitian defect of the input if it had to be symmetrized, else 0.
    pub symmetrization_defect: f64,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Column j as a `UnitVector`.
    pub fn eigenvector(&self, j: usize) -> UnitVector {
        let n = self.dim();
        let col: Vec<C64> = (0..n).map(|i| self.eigenvectors[(i, j)]).collect();
        UnitVector::normalized(col).expect("eigenvector columns are unit norm")
    }

    /// Largest eigenvalue (the support value of the underlying direction).
    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("dim >= 1")
    }

    /// Indices of eigenvalues within `gap_tol` of the maximum.
    pub fn top_cluster(&self, gap_tol: f64) -> Vec<usize> {
        let mu = self.max_eigenvalue();
        (0..self.dim()).filter(|&j| mu - self.eigenvalues[j] <= gap_tol).collect()
    }
}

/// Eigendecomposition of a Hermitian matrix, deterministic for identical input.
///
/// Eigenvector phases are fixed by rotating each column so its
/// largest-magnitude component is real positive (ties broken by lowest index).
pub fn hermitian_eig(h: &ComplexSquareMatrix) -> Result<SpectralDecomposition> {
    let n = h.dim();
    let scale = h.frobenius_norm();
    let defect = h.hermitian_defect();

    let (work, symmetrization_defect) = if defect > SYMMETRIZE_TOL * scale.max(1.0) {
        (symmetrize(h), defect)
    } else {
        (h.clone(), 0.0)
    };

    let mut m = DMatrix::<C64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = work[(i, j)];
        }
    }
    let eig = nalgebra::SymmetricEigen::try_new(m, f64::EPSILON, 0)
        .ok_or(Error::NoConvergence { residual: f64::INFINITY })?;

    // ascending order, stable under exact ties
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .expect("finite eigenvalues")
            .then(a.cmp(&b))
    });

    let mut eigenvalues = Vec::with_capacity(n);
    let mut vectors = ComplexSquareMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvalues.push(eig.eigenvalues[src]);
        let mut col: Vec<C64> = (0..n).map(|i| eig.eigenvectors[(i, src)]).collect();
        fix_phase(&mut col);
        let nrm = crate::matrix::norm(&col);
        for i in 0..n {
            vectors[(i, dst)] = col[i] / nrm;
        }
    }

    let residual = eigen_residual(&work, &eigenvalues, &vectors);
    if residual > RESIDUAL_TOL * (1.0 + scale) {
        return Err(Error::NoConvergence { residual });
    }
    let gram = gram_deviation(&vectors);
    if gram > GRAM_TOL {
        return Err(Error::NoConvergence { residual: gram });
    }

    Ok(SpectralDecomposition { eigenvalues, eigenvectors: vectors, residual, symmetrization_defect })
}

/// Operator 2-norm via the largest eigenvalue of A*A.
pub fn operator_norm(a: &ComplexSquareMatrix) -> f64 {
    let gram = a.adjoint().matmul(a);
    match hermitian_eig(&gram) {
        Ok(decomp) => decomp.max_eigenvalue().max(0.0).sqrt(),
        // A*A is Hermitian PSD by construction; fall back to the Frobenius bound
        Err(_) => a.frobenius_norm(),
    }
}

fn symmetrize(h: &ComplexSquareMatrix) -> ComplexSquareMatrix {
    h.add(&h.adjoint()).scale(C64::new(0.5, 0.0))
}

fn fix_phase(col: &mut [C64]) {
    let mut best = 0usize;
    let mut best_mag = 0.0f64;
    for (i, z) in col.iter().enumerate() {
        let m = z.norm_sqr();
        if m > best_mag {
            best_mag = m;
            best = i;
        }
    }
    let pivot = col[best];
    let mag = pivot.norm();
    if mag == 0.0 {
        return;
    }
    let rot = pivot.conj() / mag;
    for z in col.iter_mut() {
        *z *= rot;
    }
    col[best] = Complex::new(col[best].re.abs(), 0.0);
}

fn eigen_residual(h: &ComplexSquareMatrix, values: &[f64], vectors: &ComplexSquareMatrix) -> f64 {
    let n = h.dim();
    let mut worst = 0.0f64;
    for j in 0..n {
        let col: Vec<C64> = (0..n).map(|i| vectors[(i, j)]).collect();
        let hv = h.apply(&col);
        let mut acc = 0.0;
        for i in 0..n {
            acc += (hv[i] - col[i] * values[j]).norm_sqr();
        }
        worst = worst.max(acc.sqrt());
    }
    worst
}

fn gram_deviation(vectors: &ComplexSquareMatrix) -> f64 {
    let n = vectors.dim();
    let mut worst = 0.0f64;
    let cols: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| vectors[(i, j)]).collect())
        .collect();
    for a in 0..n {
        for b in 0..=a {
            let g = inner(&cols[a], &cols[b]);
            let target = if a == b { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            worst = worst.max((g - target).norm());
        }
    }
    worst
}
