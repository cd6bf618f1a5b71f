use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{reshape_grid, ComplexMatrix, C64};

/// How the blocks of a [`VVElement`] are indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexShape {
    /// `Σ_k x_k ⊗ e_k`, k = 1..n.
    Linear(usize),
    /// `(x_ij)`, i, j = 1..n, stored row-major.
    Grid(usize),
}

impl IndexShape {
    pub fn n(&self) -> usize {
        match *self {
            IndexShape::Linear(n) | IndexShape::Grid(n) => n,
        }
    }

    pub fn block_count(&self) -> usize {
        match *self {
            IndexShape::Linear(n) => n,
            IndexShape::Grid(n) => n * n,
        }
    }
}

/// Indexed family of equal-size square blocks.
///
/// JSON: `{"m":…, "shape":"linear"|"grid", "n":…, "blocks":[ComplexMatrix…]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ElementJson", into = "ElementJson")]
pub struct VVElement {
    block_dim: usize,
    shape: IndexShape,
    blocks: Vec<ComplexMatrix>,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    m: usize,
    shape: String,
    n: usize,
    blocks: Vec<ComplexMatrix>,
}

impl TryFrom<ElementJson> for VVElement {
    type Error = Error;

    fn try_from(j: ElementJson) -> Result<Self> {
        let shape = match j.shape.as_str() {
            "linear" => IndexShape::Linear(j.n),
            "grid" => IndexShape::Grid(j.n),
            other => return Err(Error::Parameter(format!("unknown index shape `{other}`"))),
        };
        let el = VVElement::new(shape, j.blocks)?;
        if el.block_dim != j.m {
            return Err(Error::Shape(format!("declared m = {} but blocks are {}x{}", j.m, el.block_dim, el.block_dim)));
        }
        Ok(el)
    }
}

impl From<VVElement> for ElementJson {
    fn from(e: VVElement) -> Self {
        let (shape, n) = match e.shape {
            IndexShape::Linear(n) => ("linear", n),
            IndexShape::Grid(n) => ("grid", n),
        };
        ElementJson { m: e.block_dim, shape: shape.into(), n, blocks: e.blocks }
    }
}

impl VVElement {
    pub fn new(shape: IndexShape, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        if shape.n() == 0 {
            return Err(Error::Parameter("index size must be at least 1".into()));
        }
        if blocks.len() != shape.block_count() {
            return Err(Error::Shape(format!("{shape:?} needs {} blocks, got {}", shape.block_count(), blocks.len())));
        }
        let m = blocks[0].rows();
        if blocks.iter().any(|b| b.shape() != (m, m)) {
            return Err(Error::Shape("blocks must all be m x m for one m".into()));
        }
        Ok(Self { block_dim: m, shape, blocks })
    }

    pub fn linear(blocks: Vec<ComplexMatrix>) -> Result<Self> {
        Self::new(IndexShape::Linear(blocks.len()), blocks)
    }

    pub fn grid(n: usize, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        Self::new(IndexShape::Grid(n), blocks)
    }

    /// First-level element: scalars `v_k` as 1×1 blocks.
    pub fn from_scalars(v: &[C64]) -> Result<Self> {
        Self::linear(v.iter().map(|&z| ComplexMatrix::from_vec(1, 1, vec![z])).collect::<Result<_>>()?)
    }

    /// The grid `x_ij = e_ij` of n×n matrix units.
    pub fn matrix_units(n: usize) -> Self {
        let blocks = (0..n * n).map(|k| ComplexMatrix::unit(n, n, k / n, k % n)).collect();
        Self { block_dim: n, shape: IndexShape::Grid(n), blocks }
    }

    /// The grid `x_ii = e_ii`, zero off the diagonal.
    pub fn diagonal_units(n: usize) -> Self {
        let blocks = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                if i == j {
                    ComplexMatrix::unit(n, n, i, i)
                } else {
                    ComplexMatrix::zeros(n, n)
                }
            })
            .collect();
        Self { block_dim: n, shape: IndexShape::Grid(n), blocks }
    }

    pub fn zeros(shape: IndexShape, m: usize) -> Result<Self> {
        Self::new(shape, vec![ComplexMatrix::zeros(m, m); shape.block_count()])
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    pub fn shape(&self) -> IndexShape {
        self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn is_grid(&self) -> bool {
        matches!(self.shape, IndexShape::Grid(_))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(ComplexMatrix::is_zero)
    }

    /// Block `(i, j)` of a grid element.
    pub fn get(&self, i: usize, j: usize) -> Option<&ComplexMatrix> {
        match self.shape {
            IndexShape::Grid(n) if i < n && j < n => Some(&self.blocks[i * n + j]),
            _ => None,
        }
    }

    /// Reinterprets a grid as a linear family over the n² indices.
    pub fn flattened(&self) -> Self {
        Self { block_dim: self.block_dim, shape: IndexShape::Linear(self.blocks.len()), blocks: self.blocks.clone() }
    }

    /// Block matrix with block `(i, j)` at position `(i, j)`.
    pub fn assemble(&self) -> Result<ComplexMatrix> {
        match self.shape {
            IndexShape::Grid(n) => reshape_grid(n, &self.blocks),
            IndexShape::Linear(_) => Err(Error::Shape("assemble needs a grid element".into())),
        }
    }

    pub(crate) fn require_grid(&self, what: &str) -> Result<usize> {
        match self.shape {
            IndexShape::Grid(n) => Ok(n),
            IndexShape::Linear(_) => Err(Error::Shape(format!("{what} needs a grid-indexed element"))),
        }
    }

    /// Mixes the linear index by `u`: `x'_k = Σ_l u_kl x_l`.
    pub fn mix(&self, u: &ComplexMatrix) -> Result<Self> {
        let n = self.blocks.len();
        if u.shape() != (n, n) {
            return Err(Error::Shape(format!("mixing matrix must be {n}x{n}")));
        }
        let m = self.block_dim;
        let blocks = (0..n)
            .map(|k| {
                let mut acc = ComplexMatrix::zeros(m, m);
                for (l, b) in self.blocks.iter().enumerate() {
                    acc.axpy(u[(k, l)], b)?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.shape, blocks)
    }
}
