//! Wire formats.
//!
//! One matrix format is used everywhere: `{"rows": n, "cols": m, "data":
//! [[re, im], ...]}` with entries row-major and all numbers IEEE-754 doubles.
//! Vectors travel as single-column matrices.  Parsing is two-stage on
//! purpose: serde failures mean malformed input, while conversion into a
//! domain type can still fail validation — callers (the CLI) report the two
//! stages differently.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::correspondence::SeparableDecomposition;
use crate::error::{Error, Result};
use crate::hs::{CVector, DensityMatrix, HSOperator};
use crate::standard_form::{make_standard_form, StandardForm};

/// The shared matrix wire format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &HSOperator) -> Self {
        let mut data = Vec::with_capacity(m.nrows() * m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let z = m[(i, j)];
                data.push([z.re, z.im]);
            }
        }
        Self {
            rows: m.nrows(),
            cols: m.ncols(),
            data,
        }
    }

    pub fn from_vector(v: &CVector) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<HSOperator> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::DimensionTooSmall { min: 1, got: 0 });
        }
        if self.data.len() != self.rows * self.cols {
            return Err(Error::EntryCountMismatch {
                expected: self.rows * self.cols,
                got: self.data.len(),
            });
        }
        Ok(HSOperator::from_fn(self.rows, self.cols, |i, j| {
            let [re, im] = self.data[i * self.cols + j];
            Complex64::new(re, im)
        }))
    }

    pub fn to_vector(&self) -> Result<CVector> {
        if self.cols != 1 {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: 1,
                right_rows: self.rows,
                right_cols: self.cols,
            });
        }
        Ok(self.to_matrix()?.column(0).into_owned())
    }
}

/// `#[serde(with = "...")]` adapter rendering an operator in the matrix
/// wire format.
pub mod matrix_fmt {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &HSOperator, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from_matrix(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<HSOperator, D::Error> {
        MatrixJson::deserialize(d)?
            .to_matrix()
            .map_err(serde::de::Error::custom)
    }
}

/// `#[serde(with = "...")]` adapter rendering a vector as a single-column
/// matrix in the wire format.
pub mod vector_fmt {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &CVector, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from_vector(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<CVector, D::Error> {
        MatrixJson::deserialize(d)?
            .to_vector()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct DecompositionTermJson {
    pub lambda: f64,
    pub x: MatrixJson,
    pub y: MatrixJson,
}

/// Input form of a separable decomposition.  Serialization of the domain
/// type produces the identical shape, so this struct only needs to parse.
#[derive(Debug, Clone, Deserialize)]
pub struct DecompositionJson {
    pub normalized: bool,
    pub terms: Vec<DecompositionTermJson>,
}

impl DecompositionJson {
    pub fn to_decomposition(&self) -> Result<SeparableDecomposition> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push((t.lambda, t.x.to_matrix()?, t.y.to_matrix()?));
        }
        SeparableDecomposition::new(terms, self.normalized)
    }
}

/// Wire form of a standard form: the reference state and its floor.  The
/// derived quarter/half powers are recomputed on load, never transmitted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StandardFormJson {
    pub dim: usize,
    pub rho: MatrixJson,
    pub floor: f64,
}

impl StandardFormJson {
    pub fn from_standard_form(sf: &StandardForm) -> Self {
        Self {
            dim: sf.dim(),
            rho: MatrixJson::from_matrix(sf.rho().matrix()),
            floor: sf.floor(),
        }
    }

    pub fn to_standard_form(&self) -> Result<StandardForm> {
        let rho = self.rho.to_matrix()?;
        if rho.nrows() != self.dim {
            return Err(Error::ShapeMismatch {
                left_rows: self.dim,
                left_cols: self.dim,
                right_rows: rho.nrows(),
                right_cols: rho.ncols(),
            });
        }
        make_standard_form(DensityMatrix::new(rho)?, self.floor)
    }
}
