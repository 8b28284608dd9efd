use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use super::{c, kron_vectors, ComplexMatrix, ComplexVector, DensityMatrix};
use crate::error::{Error, Result};

/// Convex decomposition `Σ_i p_i ⊗_m |ψ_i^m⟩⟨ψ_i^m|` of a fully separable state.
#[derive(Debug, Clone)]
pub struct SeparableEnsemble {
    pub dims: Vec<usize>,
    pub weights: Vec<f64>,
    /// `factors[i][m]` is the unit vector of party `m` in term `i`.
    pub factors: Vec<Vec<ComplexVector>>,
}

impl SeparableEnsemble {
    pub fn assemble(&self) -> Result<DensityMatrix> {
        let n: usize = self.dims.iter().product();
        let mut mat = ComplexMatrix::zeros(n, n);
        for (p, parts) in self.weights.iter().zip(&self.factors) {
            let psi = kron_vectors(parts);
            mat += (&psi * psi.adjoint()).map(|z| z * *p);
        }
        DensityMatrix::new(mat, &self.dims)
    }
}

/// Rotation-invariant random unit vector: normalized complex Gaussian sample.
pub fn random_pure_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexVector {
    let v = ComplexVector::from_fn(d, |_, _| {
        c(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        )
    });
    let norm = v.norm();
    v / c(norm, 0.0)
}

/// Random convex mixture of `terms` random product pure states, deterministic in `seed`.
/// Weights are uniform on the probability simplex.
pub fn random_separable(
    dims: &[usize],
    terms: usize,
    seed: u64,
) -> Result<(DensityMatrix, SeparableEnsemble)> {
    if terms == 0 {
        return Err(Error::InvalidArgument(
            "random_separable needs at least one term".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..terms).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    let weights = raw.iter().map(|w| w / total).collect();
    let factors = (0..terms)
        .map(|_| {
            dims.iter()
                .map(|&d| random_pure_state(d, &mut rng))
                .collect()
        })
        .collect();
    let ensemble = SeparableEnsemble {
        dims: dims.to_vec(),
        weights,
        factors,
    };
    Ok((ensemble.assemble()?, ensemble))
}
