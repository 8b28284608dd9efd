//! Generalized Gell-Mann basis of su(d), normalized `Tr(λ_a λ_b) = 2 δ_ab`.
//!
//! Ordering is part of the public contract, since witness matrices are only
//! meaningful relative to it:
//!
//! 1. symmetric `E_jk + E_kj` for `j < k`, lexicographic in `(j, k)`;
//! 2. antisymmetric `-i (E_jk - E_kj)` in the same pair order;
//! 3. diagonal `√(2 / (l(l+1))) · diag(1, …, 1, -l, 0, …, 0)` for `l = 1..d-1`.
//!
//! For `d = 2` this gives the Pauli matrices in x, y, z order.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{c, ComplexMatrix};

/// Sparse `(row, col, value)` list of an operator's nonzero entries.
pub(crate) type SparseOp = Vec<(usize, usize, Complex64)>;

#[derive(Debug, Clone)]
pub struct GellMannBasis {
    d: usize,
    generators: Vec<ComplexMatrix>,
    // index 0 is the identity, 1.. the generators
    sparse: Vec<SparseOp>,
}

/// Which family a generator belongs to, with its defining indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorLabel {
    Symmetric { j: usize, k: usize },
    Antisymmetric { j: usize, k: usize },
    Diagonal { l: usize },
}

impl GellMannBasis {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::BadDimension(d));
        }
        let generators: Vec<ComplexMatrix> = Self::labels_for(d)
            .into_iter()
            .map(|label| generator_matrix(d, label))
            .collect();
        let mut sparse = Vec::with_capacity(d * d);
        sparse.push((0..d).map(|i| (i, i, c(1.0, 0.0))).collect());
        sparse.extend(generators.iter().map(to_sparse));
        Ok(Self {
            d,
            generators,
            sparse,
        })
    }

    fn labels_for(d: usize) -> Vec<GeneratorLabel> {
        let pairs: Vec<(usize, usize)> = (0..d)
            .flat_map(|j| (j + 1..d).map(move |k| (j, k)))
            .collect();
        let mut labels = Vec::with_capacity(d * d - 1);
        labels.extend(
            pairs
                .iter()
                .map(|&(j, k)| GeneratorLabel::Symmetric { j, k }),
        );
        labels.extend(
            pairs
                .iter()
                .map(|&(j, k)| GeneratorLabel::Antisymmetric { j, k }),
        );
        labels.extend((1..d).map(|l| GeneratorLabel::Diagonal { l }));
        labels
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of generators, `d² - 1`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    /// Generator `a` in `0..d²-1`.
    pub fn generator(&self, a: usize) -> &ComplexMatrix {
        &self.generators[a]
    }

    pub fn labels(&self) -> Vec<GeneratorLabel> {
        Self::labels_for(self.d)
    }

    /// Operator with augmented index `a` in `0..d²`: `a = 0` is the identity,
    /// `a ≥ 1` is generator `a - 1`.
    pub fn augmented(&self, a: usize) -> ComplexMatrix {
        if a == 0 {
            ComplexMatrix::identity(self.d, self.d)
        } else {
            self.generators[a - 1].clone()
        }
    }

    pub(crate) fn sparse_augmented(&self, a: usize) -> &SparseOp {
        &self.sparse[a]
    }
}

fn generator_matrix(d: usize, label: GeneratorLabel) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    match label {
        GeneratorLabel::Symmetric { j, k } => {
            m[(j, k)] = c(1.0, 0.0);
            m[(k, j)] = c(1.0, 0.0);
        }
        GeneratorLabel::Antisymmetric { j, k } => {
            m[(j, k)] = c(0.0, -1.0);
            m[(k, j)] = c(0.0, 1.0);
        }
        GeneratorLabel::Diagonal { l } => {
            let scale = (2.0 / (l * (l + 1)) as f64).sqrt();
            for i in 0..l {
                m[(i, i)] = c(scale, 0.0);
            }
            m[(l, l)] = c(-(l as f64) * scale, 0.0);
        }
    }
    m
}

fn to_sparse(m: &ComplexMatrix) -> SparseOp {
    let mut out = Vec::new();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if m[(i, j)] != c(0.0, 0.0) {
                out.push((i, j, m[(i, j)]));
            }
        }
    }
    out
}
