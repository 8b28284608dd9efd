//! JSON state files: `{ "dims": [d1, ...], "matrix": [[re, im], ...] }`, row-major.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{c, ComplexMatrix, DensityMatrix};
use crate::error::{Error, Result};

/// On-disk form of a [`DensityMatrix`]. Loading always re-validates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub matrix: Vec<[f64; 2]>,
}

impl TryFrom<StateFile> for DensityMatrix {
    type Error = Error;

    fn try_from(file: StateFile) -> Result<Self> {
        let n: usize = file.dims.iter().product();
        if file.matrix.len() != n * n {
            return Err(Error::DimMismatch(format!(
                "dims {:?} need {} entries, file has {}",
                file.dims,
                n * n,
                file.matrix.len()
            )));
        }
        let mat =
            ComplexMatrix::from_row_iterator(n, n, file.matrix.iter().map(|&[re, im]| c(re, im)));
        DensityMatrix::new(mat, &file.dims)
    }
}

impl From<DensityMatrix> for StateFile {
    fn from(rho: DensityMatrix) -> Self {
        let dims = rho.dims().to_vec();
        let m = rho.into_matrix();
        let (rows, cols) = m.shape();
        let mut matrix = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let z = m[(i, j)];
                matrix.push([z.re, z.im]);
            }
        }
        StateFile { dims, matrix }
    }
}

impl DensityMatrix {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(s).map_err(|e| Error::Io(e.to_string()))?;
        file.try_into()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&StateFile::from(self.clone())).expect("state file serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json_string())
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}
