//! Real dense N-way tensors: mode-n unfolding, Ky Fan norms over unfoldings,
//! outer products and full contraction.
//!
//! Modes are numbered from 0. Entries are stored row-major (last index fastest).

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matcore::{real_singular_values, real_spectral_norm, real_trace_norm, strides};

#[derive(Debug, Clone, PartialEq)]
pub struct RealTensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl RealTensor {
    pub fn new(shape: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        let len: usize = shape.iter().product();
        if data.len() != len {
            return Err(Error::ShapeMismatch {
                expected: vec![len],
                got: vec![data.len()],
            });
        }
        Ok(Self { shape, data })
    }

    pub fn zeros(shape: &[usize]) -> Self {
        Self {
            shape: shape.to_vec(),
            data: vec![0.0; shape.iter().product()],
        }
    }

    /// Order-2 tensor with the matrix's rows as mode 0.
    pub fn from_matrix(m: &DMatrix<f64>) -> Self {
        let (r, c) = m.shape();
        let data = (0..r)
            .flat_map(|i| (0..c).map(move |j| m[(i, j)]))
            .collect();
        Self {
            shape: vec![r, c],
            data,
        }
    }

    /// Matrix view of an order-2 tensor.
    pub fn to_matrix(&self) -> Result<DMatrix<f64>> {
        match self.shape[..] {
            [r, c] => Ok(DMatrix::from_row_slice(r, c, &self.data)),
            _ => Err(Error::ShapeMismatch {
                expected: vec![0, 0],
                got: self.shape.clone(),
            }),
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    fn offset(&self, index: &[usize]) -> usize {
        assert_eq!(index.len(), self.shape.len(), "index order mismatch");
        index.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| {
            assert!(i < n, "index {i} out of range for mode of size {n}");
            acc * n + i
        })
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        self.data[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: f64) {
        let o = self.offset(index);
        self.data[o] = value;
    }

    /// Multi-index of a linear offset.
    pub fn unravel(&self, mut offset: usize) -> Vec<usize> {
        let mut idx = vec![0; self.shape.len()];
        for k in (0..self.shape.len()).rev() {
            idx[k] = offset % self.shape[k];
            offset /= self.shape[k];
        }
        idx
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.order() {
            Err(Error::BadMode {
                mode,
                order: self.order(),
            })
        } else {
            Ok(())
        }
    }

    /// Mode-`mode` unfolding: rows indexed by `i_mode`, columns by the remaining
    /// indices in increasing mode order with the last one varying fastest.
    pub fn unfold(&self, mode: usize) -> Result<DMatrix<f64>> {
        self.check_mode(mode)?;
        let rows = self.shape[mode];
        let cols = self.data.len() / rows.max(1);
        let (col_shape, col_strides) = self.column_layout(mode);
        let mut out = DMatrix::zeros(rows, cols);
        for (offset, &v) in self.data.iter().enumerate() {
            let idx = self.unravel(offset);
            let col = col_index(&idx, mode, &col_shape, &col_strides);
            out[(idx[mode], col)] = v;
        }
        Ok(out)
    }

    /// Inverse of [`RealTensor::unfold`].
    pub fn fold(shape: &[usize], mode: usize, m: &DMatrix<f64>) -> Result<Self> {
        let mut t = Self::zeros(shape);
        t.check_mode(mode)?;
        let rows = shape[mode];
        let cols = t.data.len() / rows.max(1);
        if m.shape() != (rows, cols) {
            return Err(Error::ShapeMismatch {
                expected: vec![rows, cols],
                got: vec![m.nrows(), m.ncols()],
            });
        }
        let (col_shape, col_strides) = t.column_layout(mode);
        for offset in 0..t.data.len() {
            let idx = t.unravel(offset);
            let col = col_index(&idx, mode, &col_shape, &col_strides);
            t.data[offset] = m[(idx[mode], col)];
        }
        Ok(t)
    }

    fn column_layout(&self, mode: usize) -> (Vec<usize>, Vec<usize>) {
        let col_shape: Vec<usize> = self
            .shape
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != mode)
            .map(|(_, &n)| n)
            .collect();
        let col_strides = strides(&col_shape);
        (col_shape, col_strides)
    }

    /// Trace norm of the mode-`mode` unfolding.
    pub fn kf_norm_mode(&self, mode: usize) -> Result<f64> {
        Ok(real_trace_norm(&self.unfold(mode)?))
    }

    /// Trace norms of every unfolding, in mode order.
    pub fn mode_kf_norms(&self) -> Vec<f64> {
        (0..self.order())
            .map(|n| self.kf_norm_mode(n).expect("mode in range"))
            .collect()
    }

    /// Ky Fan norm of the tensor: the largest unfolding trace norm, with the
    /// mode achieving it (lowest mode on ties).
    pub fn kf_norm(&self) -> (f64, usize) {
        argmax(&self.mode_kf_norms())
    }

    /// Largest singular value of the mode-`mode` unfolding.
    pub fn spectral_norm_mode(&self, mode: usize) -> Result<f64> {
        Ok(real_spectral_norm(&self.unfold(mode)?))
    }

    /// Largest singular value over all unfoldings.
    pub fn sigma_max(&self) -> f64 {
        (0..self.order())
            .map(|n| self.spectral_norm_mode(n).expect("mode in range"))
            .fold(0.0, f64::max)
    }

    pub fn singular_values_mode(&self, mode: usize) -> Result<Vec<f64>> {
        Ok(real_singular_values(&self.unfold(mode)?))
    }

    /// Sum over all indices of the elementwise product.
    pub fn contract(&self, other: &RealTensor) -> Result<f64> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                expected: self.shape.clone(),
                got: other.shape.clone(),
            });
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn scale(&self, a: f64) -> Self {
        Self {
            shape: self.shape.clone(),
            data: self.data.iter().map(|x| a * x).collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn lin_comb(&self, a: f64, other: &RealTensor, b: f64) -> Result<Self> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                expected: self.shape.clone(),
                got: other.shape.clone(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(Self {
            shape: self.shape.clone(),
            data,
        })
    }

    /// Sub-tensor starting at `start` on every mode and running to the end.
    pub fn tail_block(&self, start: &[usize]) -> Result<Self> {
        if start.len() != self.order() || start.iter().zip(&self.shape).any(|(s, n)| s > n) {
            return Err(Error::ShapeMismatch {
                expected: self.shape.clone(),
                got: start.to_vec(),
            });
        }
        let shape: Vec<usize> = self.shape.iter().zip(start).map(|(n, s)| n - s).collect();
        let mut out = Self::zeros(&shape);
        for offset in 0..out.data.len() {
            let idx: Vec<usize> = out
                .unravel(offset)
                .iter()
                .zip(start)
                .map(|(i, s)| i + s)
                .collect();
            out.data[offset] = self.get(&idx);
        }
        Ok(out)
    }
}

fn col_index(idx: &[usize], mode: usize, col_shape: &[usize], col_strides: &[usize]) -> usize {
    debug_assert_eq!(col_shape.len() + 1, idx.len());
    idx.iter()
        .enumerate()
        .filter(|&(k, _)| k != mode)
        .zip(col_strides)
        .map(|((_, &i), &s)| i * s)
        .sum()
}

fn argmax(values: &[f64]) -> (f64, usize) {
    values
        .iter()
        .enumerate()
        .fold((f64::NEG_INFINITY, 0), |(best, at), (k, &v)| {
            if v > best {
                (v, k)
            } else {
                (best, at)
            }
        })
}

/// Outer product `v¹ ∘ v² ∘ … ∘ vᴺ`.
pub fn outer(vectors: &[Vec<f64>]) -> RealTensor {
    let shape: Vec<usize> = vectors.iter().map(Vec::len).collect();
    let mut data = vec![1.0];
    for v in vectors {
        data = data
            .iter()
            .flat_map(|a| v.iter().map(move |b| a * b))
            .collect();
    }
    RealTensor { shape, data }
}
