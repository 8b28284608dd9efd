//! Named states, white-noise families and the printed tiles-state witness.

use nalgebra::DMatrix;

use crate::criteria::{Witness, WitnessKind};
use crate::error::{Error, Result};
use crate::matcore::{basis_ket, c, ComplexMatrix, ComplexVector, DensityMatrix};
use crate::tensor::RealTensor;

fn ket(amps: &[f64]) -> ComplexVector {
    ComplexVector::from_iterator(amps.len(), amps.iter().map(|&a| c(a, 0.0)))
}

/// The five product vectors whose orthogonal complement defines the tiles state.
pub fn tiles_vectors() -> [ComplexVector; 5] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let e = |i| basis_ket(3, i);
    let minus01 = ket(&[s, -s, 0.0]);
    let minus12 = ket(&[0.0, s, -s]);
    let uniform = ket(&[1.0, 1.0, 1.0]);
    [
        e(0).kronecker(&minus01),
        minus01.kronecker(&e(2)),
        e(2).kronecker(&minus12),
        minus12.kronecker(&e(0)),
        uniform.kronecker(&uniform) / c(3.0, 0.0),
    ]
}

/// `(I₉ - Σ_i |ψ_i⟩⟨ψ_i|) / 4` over the five tiles vectors. PPT, rank 4, entangled.
pub fn tiles_state() -> DensityMatrix {
    let mut m = ComplexMatrix::identity(9, 9);
    for psi in tiles_vectors() {
        m -= &psi * psi.adjoint();
    }
    DensityMatrix::new(m / c(4.0, 0.0), &[3, 3]).expect("tiles state is a valid density matrix")
}

/// `x ρ_tiles + (1 - x) I₉ / 9`.
pub fn tiles_noise(x: f64) -> Result<DensityMatrix> {
    tiles_state().with_white_noise(x)
}

#[rustfmt::skip]
const CHESSBOARD_TWELFTHS: [[i8; 9]; 9] = [
    [1,  0,  1,  0,  0,  0, 1,  0, 0],
    [0,  1,  0,  0,  0, -1, 0, -1, 0],
    [1,  0,  2,  0, -1,  0, 0,  0, 0],
    [0,  0,  0,  1,  0, -1, 0,  1, 0],
    [0,  0, -1,  0,  1,  0, 1,  0, 0],
    [0, -1,  0, -1,  0,  2, 0,  0, 0],
    [1,  0,  0,  0,  1,  0, 2,  0, 0],
    [0, -1,  0,  1,  0,  0, 0,  2, 0],
    [0,  0,  0,  0,  0,  0, 0,  0, 0],
];

/// 3×3 chessboard bound entangled state, entries in `{0, ±1, 2} / 12`.
pub fn chessboard_state() -> DensityMatrix {
    let m = ComplexMatrix::from_fn(9, 9, |i, j| {
        c(f64::from(CHESSBOARD_TWELFTHS[i][j]) / 12.0, 0.0)
    });
    DensityMatrix::new(m, &[3, 3]).expect("chessboard state is a valid density matrix")
}

/// `p ρ_c ⊗ |a⟩⟨a| + (1 - p) I₂₇ / 27` for a unit ancilla `a ∈ C³`.
pub fn chessboard_ancilla(p: f64, ancilla: &ComplexVector) -> Result<DensityMatrix> {
    if ancilla.len() != 3 {
        return Err(Error::DimMismatch(format!(
            "ancilla has length {}, expected 3",
            ancilla.len()
        )));
    }
    let anc = ancilla * ancilla.adjoint();
    let joint = DensityMatrix::new(chessboard_state().matrix().kronecker(&anc), &[3, 3, 3])?;
    joint.with_white_noise(p)
}

/// Chessboard family with the default ancilla `|0⟩`.
pub fn chessboard_noise(p: f64) -> Result<DensityMatrix> {
    chessboard_ancilla(p, &basis_ket(3, 0))
}

/// `p |Φ+⟩⟨Φ+| + (1 - p) I₄ / 4`.
pub fn werner2(p: f64) -> Result<DensityMatrix> {
    bell().with_white_noise(p)
}

/// `|Φ+⟩ = (|00⟩ + |11⟩)/√2`.
pub fn bell() -> DensityMatrix {
    ghz(2, 2).expect("bell state is valid")
}

/// `(1/√d) Σ_i |i…i⟩` on `n` parties of dimension `d`.
pub fn ghz(n: usize, d: usize) -> Result<DensityMatrix> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "ghz needs at least one party".into(),
        ));
    }
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    let dims = vec![d; n];
    let total: usize = dims.iter().product();
    let step: usize = (0..n).map(|k| d.pow(k as u32)).sum();
    let mut psi = ComplexVector::zeros(total);
    for i in 0..d {
        psi[i * step] = c(1.0 / (d as f64).sqrt(), 0.0);
    }
    DensityMatrix::from_pure(&psi, &dims)
}

/// The 9×9 witness for the tiles family exactly as printed, in its own
/// operator ordering (see [`PRINTED_BASIS`]).
#[rustfmt::skip]
pub const PUBLISHED_WITNESS: [[f64; 9]; 9] = [
    [ 0.8134,  0.1905, -0.11,    0.18,   -0.4067,  0.1798, 0.0,   0.0,   0.0  ],
    [ 0.1905,  0.3849, -0.243,  -0.806,   0.2608, -0.0989, 0.0,   0.0,   0.0  ],
    [-0.11,   -0.243,   0.1043, -0.3511, -0.1506,  0.8736, 0.0,   0.0,   0.0  ],
    [ 0.1798, -0.0989,  0.8736, -0.3258, -0.1634, -0.2898, 0.0,   0.0,   0.0  ],
    [-0.4067,  0.2608, -0.1506, -0.1634, -0.867,  -0.1634, 0.0,   0.0,   0.0  ],
    [ 0.1798, -0.806,  -0.3511, -0.2898, -0.1634, -0.3258, 0.0,   0.0,   0.0  ],
    [ 0.0,     0.0,     0.0,     0.0,     0.0,     0.0,    0.964, 0.0,   0.0  ],
    [ 0.0,     0.0,     0.0,     0.0,     0.0,     0.0,    0.0,   0.964, 0.0  ],
    [ 0.0,     0.0,     0.0,     0.0,     0.0,     0.0,    0.0,   0.0,   0.964],
];

/// Operator ordering the printed witness refers to, as `(augmented index in
/// this crate's d=3 basis, sign)` per printed row/column. Printed index 0 is
/// the identity; 1 and 2 are the negated diagonal generators; 3..5 the
/// symmetric ones; 6..8 the antisymmetric ones.
///
/// This crate's augmented d=3 ordering is `I, s01, s02, s12, a01, a02, a12, d1, d2`.
/// The printed witness only attains its stated detection range in the ordering
/// below; in ours, or the interleaved textbook ordering, it detects nothing.
pub const PRINTED_BASIS: [(usize, f64); 9] = [
    (0, 1.0),
    (7, -1.0),
    (8, -1.0),
    (1, 1.0),
    (2, 1.0),
    (3, 1.0),
    (4, 1.0),
    (5, 1.0),
    (6, 1.0),
];

pub fn published_witness_printed() -> DMatrix<f64> {
    DMatrix::from_fn(9, 9, |i, j| PUBLISHED_WITNESS[i][j])
}

/// The printed witness re-expressed in this crate's Gell-Mann ordering:
/// `M[map(i), map(j)] = s_i s_j M_printed[i, j]`. A signed permutation, so
/// singular values are unchanged.
pub fn published_witness() -> Witness {
    let printed = published_witness_printed();
    let mut m = DMatrix::zeros(9, 9);
    for (i, &(ri, si)) in PRINTED_BASIS.iter().enumerate() {
        for (j, &(rj, sj)) in PRINTED_BASIS.iter().enumerate() {
            m[(ri, rj)] = si * sj * printed[(i, j)];
        }
    }
    Witness::new(WitnessKind::Augmented, RealTensor::from_matrix(&m))
}

/// A one-parameter family of states over a closed parameter range.
#[derive(Debug, Clone, Copy)]
pub struct StateFamily {
    pub name: &'static str,
    pub dims: &'static [usize],
    pub param: &'static str,
    pub range: (f64, f64),
    pub generator: fn(f64) -> Result<DensityMatrix>,
}

impl StateFamily {
    pub fn at(&self, x: f64) -> Result<DensityMatrix> {
        (self.generator)(x)
    }
}

fn ghz3_noise(p: f64) -> Result<DensityMatrix> {
    ghz(3, 2)?.with_white_noise(p)
}

pub const FAMILIES: [StateFamily; 4] = [
    StateFamily {
        name: "tiles-noise",
        dims: &[3, 3],
        param: "x",
        range: (0.0, 1.0),
        generator: tiles_noise,
    },
    StateFamily {
        name: "chessboard-noise",
        dims: &[3, 3, 3],
        param: "p",
        range: (0.0, 1.0),
        generator: chessboard_noise,
    },
    StateFamily {
        name: "werner2",
        dims: &[2, 2],
        param: "p",
        range: (0.0, 1.0),
        generator: werner2,
    },
    StateFamily {
        name: "ghz3-noise",
        dims: &[2, 2, 2],
        param: "p",
        range: (0.0, 1.0),
        generator: ghz3_noise,
    },
];

pub fn family(name: &str) -> Option<StateFamily> {
    FAMILIES.iter().copied().find(|f| f.name == name)
}

/// A named catalog state, optionally parameterized.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub dims: &'static [usize],
    /// Parameter name and default value.
    pub param: Option<(&'static str, f64)>,
    build: fn(f64) -> Result<DensityMatrix>,
}

impl CatalogEntry {
    /// Builds the state; `param` falls back to the entry default and is
    /// rejected for entries without a parameter.
    pub fn build(&self, param: Option<f64>) -> Result<DensityMatrix> {
        match (self.param, param) {
            (None, Some(_)) => Err(Error::InvalidArgument(format!(
                "'{}' takes no parameter",
                self.name
            ))),
            (None, None) => (self.build)(0.0),
            (Some((_, default)), p) => (self.build)(p.unwrap_or(default)),
        }
    }
}

pub const ENTRIES: [CatalogEntry; 7] = [
    CatalogEntry {
        name: "bell",
        description: "two-qubit maximally entangled state",
        dims: &[2, 2],
        param: None,
        build: |_| Ok(bell()),
    },
    CatalogEntry {
        name: "werner2",
        description: "Bell state mixed with white noise",
        dims: &[2, 2],
        param: Some(("p", 1.0)),
        build: werner2,
    },
    CatalogEntry {
        name: "tiles",
        description: "3x3 UPB tiles bound entangled state",
        dims: &[3, 3],
        param: None,
        build: |_| Ok(tiles_state()),
    },
    CatalogEntry {
        name: "tiles-noise",
        description: "tiles state mixed with white noise",
        dims: &[3, 3],
        param: Some(("x", 1.0)),
        build: tiles_noise,
    },
    CatalogEntry {
        name: "chessboard",
        description: "3x3 chessboard bound entangled state",
        dims: &[3, 3],
        param: None,
        build: |_| Ok(chessboard_state()),
    },
    CatalogEntry {
        name: "chessboard-noise",
        description: "chessboard state with |0> ancilla mixed with white noise",
        dims: &[3, 3, 3],
        param: Some(("p", 1.0)),
        build: chessboard_noise,
    },
    CatalogEntry {
        name: "ghz3",
        description: "three-qubit GHZ state",
        dims: &[2, 2, 2],
        param: None,
        build: |_| ghz(3, 2),
    },
];

pub fn entry(name: &str) -> Option<CatalogEntry> {
    ENTRIES.iter().copied().find(|e| e.name == name)
}
