//! Operator-valued Fourier transform on a finite group.
//!
//! `f̂(π) = Σ_x f(x) π(x)*` with counting measure; the inverse and the
//! Plancherel norm carry the weights `w_π = d_π / |G|`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Signal;
use crate::linalg::{self, CMatrix, C64};
use crate::repr::PlancherelAtlas;

/// One `d_π × d_π` block per irrep, in atlas order.
#[derive(Debug, Clone)]
pub struct OperatorField {
    atlas: Arc<PlancherelAtlas>,
    blocks: Vec<CMatrix>,
}

impl OperatorField {
    pub fn new(atlas: &Arc<PlancherelAtlas>, blocks: Vec<CMatrix>) -> Result<Self> {
        if blocks.len() != atlas.len() {
            return Err(Error::DimensionMismatch {
                expected: atlas.len(),
                found: blocks.len(),
            });
        }
        for (b, p) in blocks.iter().zip(atlas.irreps()) {
            if b.nrows() != p.dim() || b.ncols() != p.dim() {
                return Err(Error::DimensionMismatch {
                    expected: p.dim(),
                    found: b.nrows(),
                });
            }
        }
        Ok(Self {
            atlas: Arc::clone(atlas),
            blocks,
        })
    }

    pub fn zero(atlas: &Arc<PlancherelAtlas>) -> Self {
        Self {
            atlas: Arc::clone(atlas),
            blocks: atlas.irreps().iter().map(|p| linalg::zeros(p.dim())).collect(),
        }
    }

    pub fn atlas(&self) -> &Arc<PlancherelAtlas> {
        &self.atlas
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &CMatrix {
        &self.blocks[i]
    }

    /// Polarized Plancherel pairing `Σ_π w_π tr[G(π)* F(π)]`.
    pub fn inner(&self, other: &OperatorField) -> Result<C64> {
        if self.atlas.name() != other.atlas.name() {
            return Err(Error::AtlasMismatch {
                expected: self.atlas.name().to_string(),
                found: other.atlas.name().to_string(),
            });
        }
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .zip(self.atlas.weights())
            .map(|((f, g), w)| linalg::hs_inner(f, g) * *w)
            .sum())
    }

    pub fn max_abs_diff(&self, other: &OperatorField) -> f64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| linalg::max_abs_diff(a, b))
            .fold(0.0, f64::max)
    }

    pub fn to_file(&self) -> OperatorFieldFile {
        OperatorFieldFile {
            atlas: self.atlas.name().to_string(),
            blocks: self.blocks.iter().map(linalg::to_pairs).collect(),
        }
    }

    pub fn from_file(atlas: &Arc<PlancherelAtlas>, file: &OperatorFieldFile) -> Result<Self> {
        if file.atlas != atlas.name() {
            return Err(Error::AtlasMismatch {
                expected: atlas.name().to_string(),
                found: file.atlas.clone(),
            });
        }
        if file.blocks.len() != atlas.len() {
            return Err(Error::DimensionMismatch {
                expected: atlas.len(),
                found: file.blocks.len(),
            });
        }
        let blocks = file
            .blocks
            .iter()
            .zip(atlas.irreps())
            .map(|(b, p)| {
                linalg::from_pairs(p.dim(), b)
                    .ok_or_else(|| Error::Malformed(format!("block for {}", p.label())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(atlas, blocks)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OperatorFieldFile {
    pub atlas: String,
    pub blocks: Vec<Vec<[f64; 2]>>,
}

/// `Σ_x f(x) π(x)*` for the single irrep at `index`.
pub fn fourier_block(f: &Signal, atlas: &PlancherelAtlas, index: usize) -> CMatrix {
    let p = atlas.irrep(index);
    let mut acc = linalg::zeros(p.dim());
    for (x, &v) in f.values().iter().enumerate() {
        if v == linalg::ZERO {
            continue;
        }
        let m = p.at(x);
        for i in 0..p.dim() {
            for j in 0..p.dim() {
                acc[(i, j)] += v * m[(j, i)].conj();
            }
        }
    }
    acc
}

/// `f̂(π) = Σ_x f(x) π(x)*`.
pub fn fourier(f: &Signal, atlas: &Arc<PlancherelAtlas>) -> Result<OperatorField> {
    f.same_group(atlas.group())?;
    let blocks = (0..atlas.len()).map(|i| fourier_block(f, atlas, i)).collect();
    Ok(OperatorField {
        atlas: Arc::clone(atlas),
        blocks,
    })
}

/// `f(x) = Σ_π w_π tr[π(x) F(π)]`.
pub fn inverse_fourier(field: &OperatorField) -> Signal {
    let atlas = &field.atlas;
    Signal::from_fn(atlas.group(), |x| {
        atlas
            .irreps()
            .iter()
            .zip(&field.blocks)
            .zip(atlas.weights())
            .map(|((p, b), w)| linalg::trace_product(p.at(x), b) * *w)
            .sum()
    })
}

/// `Σ_π w_π ‖F(π)‖²_HS`.
pub fn plancherel_norm2(field: &OperatorField) -> f64 {
    field
        .blocks
        .iter()
        .zip(field.atlas.weights())
        .map(|(b, w)| w * linalg::hs_norm2(b))
        .sum()
}

/// `(f * g)(x) = Σ_y f(y) g(y⁻¹ x)`.
pub fn convolve(f: &Signal, g: &Signal) -> Result<Signal> {
    g.same_group(f.group())?;
    let grp = f.group();
    Ok(Signal::from_fn(grp, |x| {
        grp.elements()
            .map(|y| f.at(y) * g.at(grp.mul(grp.inv(y), x)))
            .sum()
    }))
}
