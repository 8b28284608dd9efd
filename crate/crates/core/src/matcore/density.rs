use serde::{Deserialize, Serialize};

use super::{c, hermitian_eigenvalues, kron_vectors, strides, ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};

/// Max elementwise `|A - A†|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Max `|Tr ρ - 1|`.
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD_FLOOR: f64 = -1e-9;

/// A validated density matrix over `dims[0] ⊗ dims[1] ⊗ ...`.
///
/// Construction goes through [`DensityMatrix::new`], which rejects anything that
/// is not Hermitian, unit trace and PSD within the module tolerances. The input
/// is never renormalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "super::StateFile", into = "super::StateFile")]
pub struct DensityMatrix {
    dims: Vec<usize>,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix, dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::DimMismatch("empty subsystem dimension list".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::BadDimension(d));
        }
        let n: usize = dims.iter().product();
        if mat.nrows() != n || mat.ncols() != n {
            return Err(Error::DimMismatch(format!(
                "matrix is {}x{}, subsystem dims {:?} need {n}x{n}",
                mat.nrows(),
                mat.ncols(),
                dims
            )));
        }

        let mut deviation = 0.0f64;
        for i in 0..n {
            for j in i..n {
                deviation = deviation.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
            }
        }
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian {
                deviation,
                tol: HERMITIAN_TOL,
            });
        }

        let trace = mat.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::TraceNotOne {
                trace: trace.re,
                tol: TRACE_TOL,
            });
        }

        let min_eigenvalue = hermitian_eigenvalues(&mat)[0];
        if min_eigenvalue < PSD_FLOOR {
            return Err(Error::NotPositive {
                min_eigenvalue,
                floor: PSD_FLOOR,
            });
        }

        Ok(Self {
            dims: dims.to_vec(),
            mat,
        })
    }

    /// `I / Π d_k`.
    pub fn maximally_mixed(dims: &[usize]) -> Result<Self> {
        let n: usize = dims.iter().product();
        Self::new(ComplexMatrix::identity(n, n).map(|z| z / n as f64), dims)
    }

    /// `|ψ⟩⟨ψ|`. The vector must be normalized to within the trace tolerance.
    pub fn from_pure(psi: &ComplexVector, dims: &[usize]) -> Result<Self> {
        Self::new(psi * psi.adjoint(), dims)
    }

    /// Pure product state `⊗_k |ψ_k⟩⟨ψ_k|`, one vector per party.
    pub fn product_pure(vectors: &[ComplexVector]) -> Result<Self> {
        let dims: Vec<usize> = vectors.iter().map(|v| v.len()).collect();
        Self::from_pure(&kron_vectors(vectors), &dims)
    }

    /// Convex combination `x ρ + (1 - x) σ`. Requires equal dims and `x ∈ [0, 1]`.
    pub fn mix(&self, other: &DensityMatrix, x: f64) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::DimMismatch(format!(
                "cannot mix states with dims {:?} and {:?}",
                self.dims, other.dims
            )));
        }
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::InvalidArgument(format!(
                "mixing weight {x} outside [0, 1]"
            )));
        }
        let mat = self.mat.map(|z| z * x) + other.mat.map(|z| z * (1.0 - x));
        Self::new(mat, &self.dims)
    }

    /// `x ρ + (1 - x) I / dim`.
    pub fn with_white_noise(&self, x: f64) -> Result<Self> {
        self.mix(&Self::maximally_mixed(&self.dims)?, x)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.mat)[0]
    }

    /// Transposes the indices of `party` only. Result is Hermitian but may
    /// have negative eigenvalues.
    pub fn partial_transpose(&self, party: usize) -> Result<ComplexMatrix> {
        if party >= self.dims.len() {
            return Err(Error::BadParty {
                party,
                parties: self.dims.len(),
            });
        }
        let stride = strides(&self.dims)[party];
        let d = self.dims[party];
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            let dr = (r / stride) % d;
            for col in 0..n {
                let dc = (col / stride) % d;
                let r2 = r - dr * stride + dc * stride;
                let c2 = col - dc * stride + dr * stride;
                out[(r2, c2)] = self.mat[(r, col)];
            }
        }
        Ok(out)
    }

    /// Realigned matrix `R` of shape `d1² × d2²` with
    /// `R[i·d1 + k, j·d2 + l] = ρ[(i,j),(k,l)]`, so that `R(A⊗B) = vec(A) vec(B)ᵗ`.
    pub fn realign(&self) -> Result<ComplexMatrix> {
        let [d1, d2] = self.dims[..] else {
            return Err(Error::NotBipartite(self.dims.len()));
        };
        let mut out = ComplexMatrix::zeros(d1 * d1, d2 * d2);
        for i in 0..d1 {
            for j in 0..d2 {
                for k in 0..d1 {
                    for l in 0..d2 {
                        out[(i * d1 + k, j * d2 + l)] = self.mat[(i * d2 + j, k * d2 + l)];
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Computational basis vector `|i⟩` in dimension `d`.
pub fn basis_ket(d: usize, i: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(d);
    v[i] = c(1.0, 0.0);
    v
}
