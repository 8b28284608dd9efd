//! Dense complex matrix numerics and the quantum-specific index maps used by
//! the criteria: Kronecker products, partial transposition, realignment.
//!
//! Eigenvalue and singular-value routines delegate to `nalgebra`. Results are
//! always returned sorted so callers never depend on backend ordering.

mod density;
mod io;
mod random;

pub use density::{basis_ket, DensityMatrix, HERMITIAN_TOL, PSD_FLOOR, TRACE_TOL};
pub use io::StateFile;
pub use random::{random_pure_state, random_separable, SeparableEnsemble};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Dense complex matrix. Row/column counts and row-major access follow `nalgebra`.
pub type ComplexMatrix = DMatrix<Complex64>;

/// Complex column vector (pure state amplitudes).
pub type ComplexVector = DVector<Complex64>;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Builds a complex matrix from row-major `(re, im)` pairs.
pub fn from_row_major(rows: usize, cols: usize, entries: &[(f64, f64)]) -> ComplexMatrix {
    assert_eq!(
        entries.len(),
        rows * cols,
        "entries length must be rows*cols"
    );
    ComplexMatrix::from_row_iterator(rows, cols, entries.iter().map(|&(re, im)| c(re, im)))
}

/// Promotes a real matrix to a complex one.
pub fn complexify(a: &DMatrix<f64>) -> ComplexMatrix {
    a.map(|x| c(x, 0.0))
}

/// Kronecker product; entry `(i1*rows_b + i2, j1*cols_b + j2) = a[i1,j1] * b[i2,j2]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Kronecker product of a list of vectors, first vector most significant.
pub fn kron_vectors(vectors: &[ComplexVector]) -> ComplexVector {
    let mut out = ComplexVector::from_element(1, c(1.0, 0.0));
    for v in vectors {
        out = out.kronecker(v);
    }
    out
}

/// Eigenvalues of a Hermitian matrix, ascending. Only the lower triangle is read.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    assert!(h.is_square(), "hermitian_eigenvalues needs a square matrix");
    let mut eig: Vec<f64> = h.clone().symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// Singular values, non-increasing.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = a.clone().singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Singular values of a real matrix, non-increasing.
pub fn real_singular_values(a: &DMatrix<f64>) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = a.clone().singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Trace (Ky Fan / nuclear) norm: sum of singular values, `Tr √(Ω Ω†)`.
pub fn trace_norm(a: &ComplexMatrix) -> f64 {
    singular_values(a).iter().sum()
}

/// Trace norm of a real matrix.
pub fn real_trace_norm(a: &DMatrix<f64>) -> f64 {
    real_singular_values(a).iter().sum()
}

/// Largest singular value of a real matrix (spectral norm); 0 for an empty matrix.
pub fn real_spectral_norm(a: &DMatrix<f64>) -> f64 {
    real_singular_values(a).first().copied().unwrap_or(0.0)
}

/// Largest entry modulus.
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Row-major strides for a list of subsystem dimensions.
pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}
