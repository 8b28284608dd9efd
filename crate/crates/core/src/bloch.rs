//! Bloch coefficients of density matrices.
//!
//! Every state over `d_1 ⊗ … ⊗ d_N` expands as `ρ = Σ_α T̃_α λ_{α_1} ⊗ … ⊗ λ_{α_N}`
//! with `λ_0 = I` and `λ_a` (a ≥ 1) the Gell-Mann generators. With
//! `S = {k : α_k ≠ 0}`, orthogonality gives
//!
//! ```text
//! T̃_α = Tr(ρ Λ_α) / (2^|S| · Π_{m∉S} d_m)
//! ```
//!
//! so `T̃_{0…0} = 1/Π d_k`, the entries with every `α_k ≥ 1` are the correlation
//! tensor `T_α = Tr(ρ Λ_α) / 2^N`, and for two parties the first column and row
//! hold the local vectors `r_k = Tr(ρ λ_k⊗I)/(2 d_2)` and `s_l = Tr(ρ I⊗λ_l)/(2 d_1)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gellmann::GellMannBasis;
use crate::matcore::{c, ComplexMatrix, ComplexVector, DensityMatrix};
use crate::tensor::RealTensor;

/// Tolerance on `‖ψ‖ = 1` for [`pure_bloch`].
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Local Bloch vector `x_α = Tr(ρ λ_α)/2`, α = 1..d²-1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlochVector {
    pub d: usize,
    pub coeffs: Vec<f64>,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `(1/d, x_1, …, x_{d²-1})`.
    pub fn augmented(&self) -> Vec<f64> {
        std::iter::once(1.0 / self.d as f64)
            .chain(self.coeffs.iter().copied())
            .collect()
    }

    /// Norm every pure state's Bloch vector has: `√((d-1)/(2d))`.
    pub fn pure_norm(d: usize) -> f64 {
        let d = d as f64;
        ((d - 1.0) / (2.0 * d)).sqrt()
    }

    /// Norm of the augmented vector of a pure state: `√((d²-d+2)/(2d²))`.
    pub fn pure_augmented_norm(d: usize) -> f64 {
        let d = d as f64;
        ((d * d - d + 2.0) / (2.0 * d * d)).sqrt()
    }
}

/// Correlation tensor `T`: mode sizes `d_k² - 1`, generator indices only.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTensor {
    pub dims: Vec<usize>,
    pub tensor: RealTensor,
}

/// Augmented tensor `T̃`: mode sizes `d_k²`, index 0 is the identity slot.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedTensor {
    pub dims: Vec<usize>,
    pub tensor: RealTensor,
}

impl AugmentedTensor {
    /// The block with every index ≥ 1, i.e. the correlation tensor.
    pub fn body(&self) -> CorrelationTensor {
        let start = vec![1; self.dims.len()];
        CorrelationTensor {
            dims: self.dims.clone(),
            tensor: self
                .tensor
                .tail_block(&start)
                .expect("augmented modes are non-empty"),
        }
    }

    /// Rebuilds a two-party augmented tensor from its matrix layout.
    pub fn from_bipartite_matrix(d1: usize, d2: usize, t_tilde: &DMatrix<f64>) -> Result<Self> {
        if t_tilde.shape() != (d1 * d1, d2 * d2) {
            return Err(Error::ShapeMismatch {
                expected: vec![d1 * d1, d2 * d2],
                got: vec![t_tilde.nrows(), t_tilde.ncols()],
            });
        }
        Ok(Self {
            dims: vec![d1, d2],
            tensor: RealTensor::from_matrix(t_tilde),
        })
    }
}

/// Two-party views of `T̃`: local vectors `r`, `s`, the correlation matrix `T`,
/// and the bordered matrix with `(1/(d1 d2), s)` as row 0 and `r` as column 0.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteViews {
    pub r: Vec<f64>,
    pub s: Vec<f64>,
    pub t: DMatrix<f64>,
    pub t_tilde: DMatrix<f64>,
}

pub fn bases_for(dims: &[usize]) -> Result<Vec<GellMannBasis>> {
    dims.iter().map(|&d| GellMannBasis::new(d)).collect()
}

/// Nonzero entries `(row, col, value)` of `Λ_α = ⊗_k λ_{α_k}`.
fn operator_entries(bases: &[GellMannBasis], alpha: &[usize]) -> Vec<(usize, usize, Complex64)> {
    let mut acc = vec![(0usize, 0usize, c(1.0, 0.0))];
    for (basis, &a) in bases.iter().zip(alpha) {
        let d = basis.d();
        let local = basis.sparse_augmented(a);
        acc = acc
            .iter()
            .flat_map(|&(r, col, v)| {
                local
                    .iter()
                    .map(move |&(i, j, w)| (r * d + i, col * d + j, v * w))
            })
            .collect();
    }
    acc
}

fn normalization(dims: &[usize], alpha: &[usize]) -> f64 {
    dims.iter()
        .zip(alpha)
        .map(|(&d, &a)| if a == 0 { d as f64 } else { 2.0 })
        .product()
}

/// `T̃` of a state. The imaginary part of `Tr(ρΛ)` vanishes for Hermitian ρ and is discarded.
pub fn augmented_tensor(rho: &DensityMatrix) -> AugmentedTensor {
    let dims = rho.dims().to_vec();
    let bases = bases_for(&dims).expect("validated dims are >= 2");
    let shape: Vec<usize> = dims.iter().map(|d| d * d).collect();
    let mut tensor = RealTensor::zeros(&shape);
    let m = rho.matrix();
    for offset in 0..tensor.len() {
        let alpha = tensor.unravel(offset);
        let tr: Complex64 = operator_entries(&bases, &alpha)
            .iter()
            .map(|&(r, col, v)| v * m[(col, r)])
            .sum();
        tensor.set(&alpha, tr.re / normalization(&dims, &alpha));
    }
    // Unit trace is validated, so the identity slot is fixed rather than summed.
    let total: usize = dims.iter().product();
    tensor.set(&vec![0; dims.len()], 1.0 / total as f64);
    AugmentedTensor { dims, tensor }
}

/// `T` of a state: `Tr(ρ λ_{α_1}⊗…⊗λ_{α_N}) / 2^N`.
pub fn correlation_tensor(rho: &DensityMatrix) -> CorrelationTensor {
    augmented_tensor(rho).body()
}

pub fn bipartite_views(t: &AugmentedTensor) -> Result<BipartiteViews> {
    let [d1, d2] = t.dims[..] else {
        return Err(Error::NotBipartite(t.dims.len()));
    };
    let t_tilde = t.tensor.to_matrix()?;
    let r = (1..d1 * d1).map(|k| t_tilde[(k, 0)]).collect();
    let s = (1..d2 * d2).map(|l| t_tilde[(0, l)]).collect();
    let body = t_tilde
        .view((1, 1), (d1 * d1 - 1, d2 * d2 - 1))
        .into_owned();
    Ok(BipartiteViews {
        r,
        s,
        t: body,
        t_tilde,
    })
}

/// `ρ = Σ_α T̃_α Λ_α`, validated as a density matrix.
pub fn reconstruct(t: &AugmentedTensor, bases: &[GellMannBasis]) -> Result<DensityMatrix> {
    let expected: Vec<usize> = t.dims.iter().map(|d| d * d).collect();
    let got: Vec<usize> = bases.iter().map(|b| b.d() * b.d()).collect();
    if t.tensor.shape() != expected.as_slice() || got != expected {
        return Err(Error::ShapeMismatch {
            expected,
            got: t.tensor.shape().to_vec(),
        });
    }
    let n: usize = t.dims.iter().product();
    let mut mat = ComplexMatrix::zeros(n, n);
    for (offset, &coef) in t.tensor.data().iter().enumerate() {
        if coef == 0.0 {
            continue;
        }
        let alpha = t.tensor.unravel(offset);
        for (r, col, v) in operator_entries(bases, &alpha) {
            mat[(r, col)] += v * coef;
        }
    }
    DensityMatrix::new(mat, &t.dims)
}

/// Bloch vector of `|ψ⟩⟨ψ|`: `x_α = ⟨ψ|λ_α|ψ⟩ / 2`.
pub fn pure_bloch(psi: &ComplexVector, basis: &GellMannBasis) -> Result<BlochVector> {
    if psi.len() != basis.d() {
        return Err(Error::DimMismatch(format!(
            "vector of length {} against a d={} basis",
            psi.len(),
            basis.d()
        )));
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized {
            norm,
            tol: NORMALIZATION_TOL,
        });
    }
    let coeffs = basis
        .generators()
        .iter()
        .map(|g| (psi.adjoint() * g * psi)[(0, 0)].re / 2.0)
        .collect();
    Ok(BlochVector {
        d: basis.d(),
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{basis_ket, random_pure_state, random_separable};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bell() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = ComplexVector::from_vec(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]);
        DensityMatrix::from_pure(&psi, &[2, 2]).unwrap()
    }

    // independent route: dense Kronecker operators and full traces
    fn dense_entry(rho: &DensityMatrix, alpha: &[usize]) -> f64 {
        let bases = bases_for(rho.dims()).unwrap();
        let mut op = ComplexMatrix::identity(1, 1);
        for (b, &a) in bases.iter().zip(alpha) {
            op = op.kronecker(&b.augmented(a));
        }
        (rho.matrix() * op).trace().re / normalization(rho.dims(), alpha)
    }

    #[test]
    fn maximally_mixed_has_zero_correlations() {
        for dims in [vec![2, 2], vec![3, 2], vec![2, 2, 2]] {
            let rho = DensityMatrix::maximally_mixed(&dims).unwrap();
            let t = correlation_tensor(&rho);
            assert!(t.tensor.data().iter().all(|x| x.abs() < 1e-15));
            let a = augmented_tensor(&rho);
            let n: usize = dims.iter().product();
            assert_abs_diff_eq!(a.tensor.data()[0], 1.0 / n as f64, epsilon = 1e-15);
        }
    }

    #[test]
    fn bell_correlation_matrix() {
        let t = correlation_tensor(&bell()).tensor.to_matrix().unwrap();
        let want = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.25, -0.25, 0.25]));
        assert!((t - want).abs().max() < 1e-15);
    }

    #[test]
    fn bell_augmented_matrix() {
        let v = bipartite_views(&augmented_tensor(&bell())).unwrap();
        assert_abs_diff_eq!(v.t_tilde[(0, 0)], 0.25, epsilon = 1e-15);
        assert!(v.r.iter().chain(&v.s).all(|x| x.abs() < 1e-15));
        assert_abs_diff_eq!(v.t[(1, 1)], -0.25, epsilon = 1e-15);
    }

    #[test]
    fn product_zero_zero_is_rank_one() {
        let rho = DensityMatrix::product_pure(&[basis_ket(2, 0), basis_ket(2, 0)]).unwrap();
        let m = augmented_tensor(&rho).tensor.to_matrix().unwrap();
        let x = [0.5, 0.0, 0.0, 0.5];
        for i in 0..4 {
            for j in 0..4 {
                assert_abs_diff_eq!(m[(i, j)], x[i] * x[j], epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn origin_entry_for_three_qutrits() {
        let (rho, _) = random_separable(&[3, 3, 3], 2, 5).unwrap();
        assert_abs_diff_eq!(
            augmented_tensor(&rho).tensor.data()[0],
            1.0 / 27.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn sparse_route_matches_dense_traces() {
        let (rho, _) = random_separable(&[2, 3], 3, 11).unwrap();
        let a = augmented_tensor(&rho);
        for off in 0..a.tensor.len() {
            let alpha = a.tensor.unravel(off);
            assert_abs_diff_eq!(
                a.tensor.data()[off],
                dense_entry(&rho, &alpha),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn bipartite_local_vectors_match_partial_traces() {
        let (rho, _) = random_separable(&[2, 3], 4, 2).unwrap();
        let v = bipartite_views(&augmented_tensor(&rho)).unwrap();
        let b2 = GellMannBasis::new(2).unwrap();
        for (k, g) in b2.generators().iter().enumerate() {
            let op = g.kronecker(&ComplexMatrix::identity(3, 3));
            assert_abs_diff_eq!(
                v.r[k],
                (rho.matrix() * op).trace().re / 6.0,
                epsilon = 1e-14
            );
        }
        assert_abs_diff_eq!(v.t_tilde[(0, 0)], 1.0 / 6.0, epsilon = 1e-15);
    }

    #[test]
    fn views_round_trip() {
        let (rho, _) = random_separable(&[3, 2], 3, 8).unwrap();
        let a = augmented_tensor(&rho);
        let v = bipartite_views(&a).unwrap();
        assert_eq!(
            AugmentedTensor::from_bipartite_matrix(3, 2, &v.t_tilde).unwrap(),
            a
        );
        let three = augmented_tensor(&DensityMatrix::maximally_mixed(&[2, 2, 2]).unwrap());
        assert_eq!(bipartite_views(&three), Err(Error::NotBipartite(3)));
    }

    #[test]
    fn reconstruct_rejects_wrong_bases() {
        let a = augmented_tensor(&bell());
        let bases = bases_for(&[3, 2]).unwrap();
        assert!(matches!(
            reconstruct(&a, &bases),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn pure_bloch_examples() {
        let b2 = GellMannBasis::new(2).unwrap();
        let x = pure_bloch(&basis_ket(2, 0), &b2).unwrap();
        assert_eq!(x.coeffs, vec![0.0, 0.0, 0.5]);

        let b3 = GellMannBasis::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let x = pure_bloch(&random_pure_state(3, &mut rng), &b3).unwrap();
            assert_abs_diff_eq!(x.norm(), (1.0f64 / 3.0).sqrt(), epsilon = 1e-10);
            let aug_norm = x.augmented().iter().map(|v| v * v).sum::<f64>().sqrt();
            assert_abs_diff_eq!(aug_norm, (8.0f64 / 18.0).sqrt(), epsilon = 1e-10);
            assert_abs_diff_eq!(
                aug_norm,
                BlochVector::pure_augmented_norm(3),
                epsilon = 1e-10
            );
        }

        let bad = ComplexVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            pure_bloch(&bad, &b2),
            Err(Error::NotNormalized { .. })
        ));
    }
}
