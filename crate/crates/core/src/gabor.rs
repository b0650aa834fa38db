//! Continuous Gabor transform on a finite group.
//!
//! `𝒢_ψ f(x, π) = Σ_y f(y) conj(ψ(x⁻¹y)) π(y)*`, a field of operators over
//! `G × Ĝ` with measure `σ` = counting × Plancherel (`w_π = d_π/|G|`).
//! The fiber inner product on `π(x)·HS(H_π)` equals the plain HS inner
//! product of the blocks, so blocks are stored as-is.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::fourier_block;
use crate::group::{involution, left_translate, right_translate, Signal};
use crate::linalg::{self, CMatrix, C64, ZERO};
use crate::repr::PlancherelAtlas;

/// Relative threshold below which two windows count as orthogonal.
pub const ORTHOGONAL_WINDOW_GUARD: f64 = 1e-12;

/// Blocks indexed by `(x, π)` with `x` the element index and `π` the atlas
/// position.
#[derive(Debug, Clone)]
pub struct GaborField {
    atlas: Arc<PlancherelAtlas>,
    cells: Vec<Vec<CMatrix>>,
}

impl GaborField {
    pub fn new(atlas: &Arc<PlancherelAtlas>, cells: Vec<Vec<CMatrix>>) -> Result<Self> {
        let n = atlas.group().order();
        if cells.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: cells.len(),
            });
        }
        for row in &cells {
            if row.len() != atlas.len() {
                return Err(Error::DimensionMismatch {
                    expected: atlas.len(),
                    found: row.len(),
                });
            }
            for (b, p) in row.iter().zip(atlas.irreps()) {
                if b.nrows() != p.dim() || b.ncols() != p.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: p.dim(),
                        found: b.nrows(),
                    });
                }
            }
        }
        Ok(Self {
            atlas: Arc::clone(atlas),
            cells,
        })
    }

    pub fn zero(atlas: &Arc<PlancherelAtlas>) -> Self {
        let row: Vec<CMatrix> = atlas.irreps().iter().map(|p| linalg::zeros(p.dim())).collect();
        Self {
            atlas: Arc::clone(atlas),
            cells: vec![row; atlas.group().order()],
        }
    }

    pub fn atlas(&self) -> &Arc<PlancherelAtlas> {
        &self.atlas
    }

    pub fn block(&self, x: usize, irrep: usize) -> &CMatrix {
        &self.cells[x][irrep]
    }

    pub fn cells(&self) -> &[Vec<CMatrix>] {
        &self.cells
    }

    pub fn max_abs_diff(&self, other: &GaborField) -> f64 {
        self.cells
            .iter()
            .flatten()
            .zip(other.cells.iter().flatten())
            .map(|(a, b)| linalg::max_abs_diff(a, b))
            .fold(0.0, f64::max)
    }

    fn combine(&self, other: &GaborField, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Result<Self> {
        same_atlas(&self.atlas, &other.atlas)?;
        let cells = self
            .cells
            .iter()
            .zip(&other.cells)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        Ok(Self {
            atlas: Arc::clone(&self.atlas),
            cells,
        })
    }

    pub fn add(&self, other: &GaborField) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            atlas: Arc::clone(&self.atlas),
            cells: self
                .cells
                .iter()
                .map(|r| r.iter().map(|b| b * c).collect())
                .collect(),
        }
    }

    /// Group spectrogram: `x_index,x_label,irrep_label,hs_norm_sq`.
    pub fn spectrogram_csv(&self) -> String {
        let g = self.atlas.group();
        let mut out = String::from("x_index,x_label,irrep_label,hs_norm_sq\n");
        for (x, row) in self.cells.iter().enumerate() {
            for (b, p) in row.iter().zip(self.atlas.irreps()) {
                let _ = writeln!(out, "{x},{},{},{}", g.label(x), p.label(), linalg::hs_norm2(b));
            }
        }
        out
    }

    pub fn to_file(&self) -> GaborFieldFile {
        let mut cells = Vec::with_capacity(self.cells.len() * self.atlas.len());
        for (x, row) in self.cells.iter().enumerate() {
            for (b, p) in row.iter().zip(self.atlas.irreps()) {
                cells.push(GaborCell {
                    x,
                    irrep: p.label().to_string(),
                    block: linalg::to_pairs(b),
                });
            }
        }
        GaborFieldFile {
            atlas: self.atlas.name().to_string(),
            group: self.atlas.group().name().to_string(),
            cells,
        }
    }

    pub fn from_file(atlas: &Arc<PlancherelAtlas>, file: &GaborFieldFile) -> Result<Self> {
        if file.atlas != atlas.name() || file.group != atlas.group().name() {
            return Err(Error::AtlasMismatch {
                expected: atlas.name().to_string(),
                found: file.atlas.clone(),
            });
        }
        let mut slots: Vec<Vec<Option<CMatrix>>> = vec![vec![None; atlas.len()]; atlas.group().order()];
        for cell in &file.cells {
            let pi = atlas
                .index_of(&cell.irrep)
                .ok_or_else(|| Error::Malformed(format!("unknown irrep `{}`", cell.irrep)))?;
            let slot = slots
                .get_mut(cell.x)
                .ok_or_else(|| Error::Malformed(format!("element index {} out of range", cell.x)))?;
            let block = linalg::from_pairs(atlas.irrep(pi).dim(), &cell.block)
                .ok_or_else(|| Error::Malformed(format!("block size at ({}, {})", cell.x, cell.irrep)))?;
            slot[pi] = Some(block);
        }
        let cells = slots
            .into_iter()
            .enumerate()
            .map(|(x, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(pi, b)| {
                        b.ok_or_else(|| Error::Malformed(format!("missing cell ({x}, {})", atlas.irrep(pi).label())))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(atlas, cells)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GaborCell {
    pub x: usize,
    pub irrep: String,
    pub block: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GaborFieldFile {
    pub atlas: String,
    pub group: String,
    pub cells: Vec<GaborCell>,
}

fn same_atlas(a: &PlancherelAtlas, b: &PlancherelAtlas) -> Result<()> {
    if a.name() != b.name() {
        return Err(Error::AtlasMismatch {
            expected: a.name().to_string(),
            found: b.name().to_string(),
        });
    }
    Ok(())
}

/// `M_π ψ : x ↦ ψ(x) π(x)`, stored as the scalar factors plus the irrep.
#[derive(Debug, Clone)]
pub struct ModulatedWindow {
    atlas: Arc<PlancherelAtlas>,
    irrep: usize,
    factors: Signal,
}

impl ModulatedWindow {
    pub fn new(psi: &Signal, atlas: &Arc<PlancherelAtlas>, irrep: usize) -> Result<Self> {
        psi.same_group(atlas.group())?;
        if irrep >= atlas.len() {
            return Err(Error::IndexOutOfBounds {
                i: irrep,
                j: 0,
                dim: atlas.len(),
            });
        }
        Ok(Self {
            atlas: Arc::clone(atlas),
            irrep,
            factors: psi.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.atlas.irrep(self.irrep).dim()
    }

    pub fn at(&self, x: usize) -> CMatrix {
        self.atlas.irrep(self.irrep).at(x) * self.factors.at(x)
    }

    pub fn field(&self) -> Vec<CMatrix> {
        self.factors.group().elements().map(|x| self.at(x)).collect()
    }

    /// `Σ_x ‖ψ(x) π(x)‖²_op`.
    pub fn norm2(&self) -> f64 {
        self.factors
            .group()
            .elements()
            .map(|x| linalg::operator_norm(&self.at(x)).powi(2))
            .sum()
    }
}

/// `<f, φ>_π = Σ_y f(y) φ(y)*`.
pub fn pairing_pi(f: &Signal, phi: &[CMatrix]) -> Result<CMatrix> {
    if phi.len() != f.group().order() {
        return Err(Error::DimensionMismatch {
            expected: f.group().order(),
            found: phi.len(),
        });
    }
    let d = phi.first().map_or(0, CMatrix::nrows);
    let mut acc = linalg::zeros(d);
    for (v, m) in f.values().iter().zip(phi) {
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: m.nrows(),
            });
        }
        acc += m.adjoint() * *v;
    }
    Ok(acc)
}

/// The window-localized signal `y ↦ f(y) conj(ψ(x⁻¹y))`.
pub fn localize(f: &Signal, psi: &Signal, x: usize) -> Signal {
    let g = f.group();
    let xi = g.inv(x);
    Signal::from_fn(g, |y| f.at(y) * psi.at(g.mul(xi, y)).conj())
}

fn check_inputs(f: &Signal, psi: &Signal, atlas: &PlancherelAtlas) -> Result<()> {
    f.same_group(atlas.group())?;
    psi.same_group(atlas.group())?;
    if psi.norm2() == 0.0 {
        return Err(Error::ZeroWindow);
    }
    Ok(())
}

/// Direct double sum `Σ_y f(y) conj(ψ(x⁻¹y)) π(y)*`.
pub fn gabor(f: &Signal, psi: &Signal, atlas: &Arc<PlancherelAtlas>) -> Result<GaborField> {
    check_inputs(f, psi, atlas)?;
    let g = atlas.group();
    let cells = g
        .elements()
        .map(|x| {
            let xi = g.inv(x);
            atlas
                .irreps()
                .iter()
                .map(|p| {
                    let mut acc = linalg::zeros(p.dim());
                    for y in g.elements() {
                        let c = f.at(y) * psi.at(g.mul(xi, y)).conj();
                        if c != ZERO {
                            acc += p.at(y).adjoint() * c;
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Ok(GaborField {
        atlas: Arc::clone(atlas),
        cells,
    })
}

/// Fourier representation form: `𝒢_ψ f(x, ·) = ℱ(localize(f, ψ, x))`.
pub fn gabor_via_fourier(f: &Signal, psi: &Signal, atlas: &Arc<PlancherelAtlas>) -> Result<GaborField> {
    check_inputs(f, psi, atlas)?;
    let cells = atlas
        .group()
        .elements()
        .map(|x| {
            let cut = localize(f, psi, x);
            (0..atlas.len()).map(|i| fourier_block(&cut, atlas, i)).collect()
        })
        .collect();
    Ok(GaborField {
        atlas: Arc::clone(atlas),
        cells,
    })
}

/// Pairing form: `𝒢_ψ f(x, π) = <f, M_π(L_x ψ)>_π`.
pub fn gabor_pairing_form(
    f: &Signal,
    psi: &Signal,
    atlas: &Arc<PlancherelAtlas>,
    x: usize,
    irrep: usize,
) -> Result<CMatrix> {
    check_inputs(f, psi, atlas)?;
    let window = ModulatedWindow::new(&left_translate(psi, x), atlas, irrep)?;
    pairing_pi(f, &window.field())
}

/// `ℱ(involution(localize(f, ψ, x)))(π)`, which equals `𝒢_ψ f(x, π)*`.
pub fn gabor_adjoint_form(
    f: &Signal,
    psi: &Signal,
    atlas: &Arc<PlancherelAtlas>,
    x: usize,
    irrep: usize,
) -> Result<CMatrix> {
    check_inputs(f, psi, atlas)?;
    Ok(fourier_block(&involution(&localize(f, psi, x)), atlas, irrep))
}

/// `π(x) · ℱ(R_{x⁻¹}(f · conj(L_x ψ)))(π)`.
pub fn gabor_factorized_form(
    f: &Signal,
    psi: &Signal,
    atlas: &Arc<PlancherelAtlas>,
    x: usize,
    irrep: usize,
) -> Result<CMatrix> {
    check_inputs(f, psi, atlas)?;
    let g = atlas.group();
    let product = f.pointwise(&left_translate(psi, x).conj())?;
    let shifted = right_translate(&product, g.inv(x));
    Ok(atlas.irrep(irrep).at(x) * fourier_block(&shifted, atlas, irrep))
}

/// HS distance between the factorized form and the direct block.
pub fn factorization_check(
    f: &Signal,
    psi: &Signal,
    atlas: &Arc<PlancherelAtlas>,
    x: usize,
    irrep: usize,
) -> Result<f64> {
    let direct = gabor_block(f, psi, atlas, x, irrep)?;
    let factored = gabor_factorized_form(f, psi, atlas, x, irrep)?;
    Ok(linalg::hs_norm2(&(direct - factored)).sqrt())
}

/// A single block of [`gabor`].
pub fn gabor_block(
    f: &Signal,
    psi: &Signal,
    atlas: &Arc<PlancherelAtlas>,
    x: usize,
    irrep: usize,
) -> Result<CMatrix> {
    check_inputs(f, psi, atlas)?;
    Ok(fourier_block(&localize(f, psi, x), atlas, irrep))
}

/// `Σ_x Σ_π w_π ‖F(x, π)‖²_HS`.
pub fn sigma_norm2(field: &GaborField) -> f64 {
    let w = field.atlas.weights();
    field
        .cells
        .iter()
        .map(|row| row.iter().zip(w).map(|(b, w)| w * linalg::hs_norm2(b)).sum::<f64>())
        .sum()
}

/// `Σ_x Σ_π w_π tr[K(x, π)* F(x, π)]`.
pub fn sigma_inner(f: &GaborField, k: &GaborField) -> Result<C64> {
    same_atlas(&f.atlas, &k.atlas)?;
    let w = f.atlas.weights();
    Ok(f.cells
        .iter()
        .zip(&k.cells)
        .map(|(fr, kr)| {
            fr.iter()
                .zip(kr)
                .zip(w)
                .map(|((a, b), w)| linalg::hs_inner(a, b) * *w)
                .sum::<C64>()
        })
        .sum())
}

/// `S_φ(F)(x) = Σ_y Σ_π w_π tr[F(y, π) φ(y⁻¹x) π(x)]`, the adjoint of `𝒢_φ`.
pub fn frame_adjoint(field: &GaborField, phi: &Signal) -> Result<Signal> {
    let atlas = &field.atlas;
    phi.same_group(atlas.group())?;
    let g = atlas.group();
    Ok(Signal::from_fn(g, |x| {
        let mut acc = ZERO;
        for y in g.elements() {
            let c = phi.at(g.mul(g.inv(y), x));
            if c == ZERO {
                continue;
            }
            let s: C64 = field.cells[y]
                .iter()
                .zip(atlas.irreps())
                .zip(atlas.weights())
                .map(|((b, p), w)| linalg::trace_product(b, p.at(x)) * *w)
                .sum();
            acc += c * s;
        }
        acc
    }))
}

fn window_inner_guarded(psi: &Signal, phi: &Signal) -> Result<C64> {
    if psi.norm2() == 0.0 || phi.norm2() == 0.0 {
        return Err(Error::ZeroWindow);
    }
    let inner = phi.inner(psi)?;
    let threshold = ORTHOGONAL_WINDOW_GUARD * phi.norm() * psi.norm();
    if inner.norm() <= threshold {
        return Err(Error::OrthogonalWindows {
            inner: inner.norm(),
            threshold,
        });
    }
    Ok(inner)
}

/// Inversion: `f = <φ, ψ>⁻¹ S_φ(𝒢_ψ f)` using the pointwise finite-group form.
pub fn reconstruct(field: &GaborField, psi: &Signal, phi: &Signal) -> Result<Signal> {
    psi.same_group(field.atlas.group())?;
    let inner = window_inner_guarded(psi, phi)?;
    Ok(frame_adjoint(field, phi)?.scale(inner.inv()))
}

/// `(φ ⊗_π φ')(f) = <f, φ'>_π φ`, an operator field over the group.
pub fn tensor_pi(phi: &[CMatrix], phi_prime: &[CMatrix], f: &Signal) -> Result<Vec<CMatrix>> {
    if phi.len() != phi_prime.len() {
        return Err(Error::DimensionMismatch {
            expected: phi_prime.len(),
            found: phi.len(),
        });
    }
    let pairing = pairing_pi(f, phi_prime)?;
    phi.iter()
        .map(|m| {
            if m.nrows() != pairing.nrows() {
                Err(Error::DimensionMismatch {
                    expected: pairing.nrows(),
                    found: m.nrows(),
                })
            } else {
                Ok(&pairing * m)
            }
        })
        .collect()
}

/// `<φ,ψ>⁻¹ Σ_y Σ_π w_π tr[(M_π(L_y φ) ⊗_π M_π(L_y ψ))(f)]` evaluated
/// pointwise; the identity operator on catalog groups.
pub fn resolve_identity(
    f: &Signal,
    psi: &Signal,
    phi: &Signal,
    atlas: &Arc<PlancherelAtlas>,
) -> Result<Signal> {
    f.same_group(atlas.group())?;
    psi.same_group(atlas.group())?;
    let inner = window_inner_guarded(psi, phi)?;
    let g = atlas.group();
    let mut out = vec![ZERO; g.order()];
    for y in g.elements() {
        let lphi = left_translate(phi, y);
        let lpsi = left_translate(psi, y);
        for (pi, w) in atlas.weights().iter().enumerate() {
            let a = ModulatedWindow::new(&lphi, atlas, pi)?.field();
            let b = ModulatedWindow::new(&lpsi, atlas, pi)?.field();
            for (x, m) in tensor_pi(&a, &b, f)?.iter().enumerate() {
                out[x] += linalg::trace(m) * *w;
            }
        }
    }
    Signal::new(Arc::clone(g), out.into_iter().map(|v| v / inner).collect())
}

/// `𝒢_φ* 𝒢_ψ` assembled over the delta basis: column `z` is
/// `S_φ(𝒢_ψ δ_z)`.
pub fn frame_operator_matrix(psi: &Signal, phi: &Signal, atlas: &Arc<PlancherelAtlas>) -> Result<CMatrix> {
    let g = atlas.group();
    let n = g.order();
    let mut m = CMatrix::zeros(n, n);
    for z in g.elements() {
        let col = frame_adjoint(&gabor(&Signal::delta(g, z), psi, atlas)?, phi)?;
        for x in 0..n {
            m[(x, z)] = col.at(x);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_cyclic, by_name, catalog};
    use crate::linalg::ONE;
    use crate::random;
    use crate::repr::dual_of;

    fn setup(name: &str) -> Arc<PlancherelAtlas> {
        Arc::new(dual_of(&Arc::new(by_name(name).unwrap())))
    }

    /// Independent oracle: triple loop over the defining sum, entry by entry.
    fn oracle_block(f: &Signal, psi: &Signal, a: &PlancherelAtlas, x: usize, pi: usize) -> CMatrix {
        let g = a.group();
        let p = a.irrep(pi);
        CMatrix::from_fn(p.dim(), p.dim(), |i, j| {
            let mut s = ZERO;
            for y in 0..g.order() {
                let xinv_y = (0..g.order()).find(|&u| g.mul(x, u) == y).unwrap();
                s += f.at(y) * psi.at(xinv_y).conj() * p.at(y)[(j, i)].conj();
            }
            s
        })
    }

    #[test]
    fn delta_window_isolates_sample() {
        let a = setup("D4");
        let g = a.group();
        let mut rng = random::rng(1);
        let f = random::signal(g, &mut rng);
        let psi = Signal::delta(g, g.identity());
        for field in [gabor(&f, &psi, &a).unwrap(), gabor_via_fourier(&f, &psi, &a).unwrap()] {
            for x in g.elements() {
                for (pi, p) in a.irreps().iter().enumerate() {
                    let expect = p.at(x).adjoint() * f.at(x);
                    assert!(linalg::max_abs_diff(field.block(x, pi), &expect) < 1e-14);
                    assert!(linalg::max_abs_diff(field.block(x, pi), &oracle_block(&f, &psi, &a, x, pi)) < 1e-14);
                }
            }
        }
        assert!((sigma_norm2(&gabor(&f, &psi, &a).unwrap()) - f.norm2()).abs() < 1e-12);
    }

    #[test]
    fn z2_hand_example() {
        let g = Arc::new(build_cyclic(2).unwrap());
        let a = Arc::new(dual_of(&g));
        let f = Signal::delta(&g, 0);
        let psi = Signal::constant(&g, ONE);
        let field = gabor(&f, &psi, &a).unwrap();
        for x in 0..2 {
            for pi in 0..2 {
                assert!((field.block(x, pi)[(0, 0)] - ONE).norm() < 1e-15);
            }
        }
        assert!((sigma_norm2(&field) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn zero_inputs() {
        let a = setup("D3");
        let g = a.group();
        let psi = Signal::constant(g, ONE);
        let field = gabor(&Signal::zero(g), &psi, &a).unwrap();
        assert_eq!(sigma_norm2(&field), 0.0);
        assert!(matches!(gabor(&psi, &Signal::zero(g), &a), Err(Error::ZeroWindow)));
        let s = frame_adjoint(&GaborField::zero(&a), &psi).unwrap();
        assert!(s.values().iter().all(|v| *v == ZERO));
        let pairing = pairing_pi(&Signal::zero(g), &ModulatedWindow::new(&psi, &a, 2).unwrap().field()).unwrap();
        assert!(pairing.iter().all(|v| *v == ZERO));
    }

    #[test]
    fn pairing_examples() {
        let a = setup("D3");
        let g = a.group();
        let mut rng = random::rng(2);
        let psi = random::signal(g, &mut rng);
        for pi in 0..a.len() {
            let w = ModulatedWindow::new(&psi, &a, pi).unwrap();
            let at_e = pairing_pi(&Signal::delta(g, g.identity()), &w.field()).unwrap();
            let expect = linalg::identity(w.dim()) * psi.at(g.identity()).conj();
            assert!(linalg::max_abs_diff(&at_e, &expect) < 1e-15);
            let f = random::signal(g, &mut rng);
            let got = pairing_pi(&f, &w.field()).unwrap();
            let mut oracle = linalg::zeros(w.dim());
            for y in g.elements() {
                oracle += a.irrep(pi).at(y).adjoint() * (f.at(y) * psi.at(y).conj());
            }
            assert!(linalg::max_abs_diff(&got, &oracle) < 1e-13);
            assert!(linalg::operator_norm(&got) <= f.norm() * w.norm2().sqrt() + 1e-12);
        }
        assert!(pairing_pi(&psi, &[linalg::zeros(2)]).is_err());
    }

    #[test]
    fn modulation_is_an_isometry() {
        let mut rng = random::rng(3);
        for g in catalog() {
            let a = Arc::new(dual_of(&Arc::new(g)));
            let psi = random::signal(a.group(), &mut rng);
            for pi in 0..a.len() {
                let w = ModulatedWindow::new(&psi, &a, pi).unwrap();
                assert!((w.norm2() - psi.norm2()).abs() < 1e-12 * psi.norm2());
            }
        }
    }

    #[test]
    fn fiber_inner_product_is_block_inner_product() {
        let a = setup("H3");
        let mut rng = random::rng(4);
        let p = a.irrep(a.len() - 1);
        let d = p.dim();
        let t = CMatrix::from_fn(d, d, |_, _| random::complex(&mut rng));
        let s = CMatrix::from_fn(d, d, |_, _| random::complex(&mut rng));
        for x in a.group().elements() {
            let u = p.at(x);
            let lhs = linalg::hs_inner(&(u * &t), &(u * &s));
            assert!((lhs - linalg::hs_inner(&t, &s)).norm() < 1e-12);
        }
    }

    #[test]
    fn proposition_forms_agree() {
        let mut rng = random::rng(5);
        for name in ["D4", "H3", "Q8"] {
            let a = setup(name);
            let g = a.group();
            let f = random::signal(g, &mut rng);
            let psi = random::signal(g, &mut rng);
            let direct = gabor(&f, &psi, &a).unwrap();
            assert!(direct.max_abs_diff(&gabor_via_fourier(&f, &psi, &a).unwrap()) <= 1e-12);
            for x in g.elements() {
                for pi in 0..a.len() {
                    let b = direct.block(x, pi);
                    let adj = gabor_adjoint_form(&f, &psi, &a, x, pi).unwrap();
                    assert!(linalg::max_abs_diff(&adj, &b.adjoint()) <= 1e-12);
                    assert!(factorization_check(&f, &psi, &a, x, pi).unwrap() <= 1e-12);
                    let pairing = gabor_pairing_form(&f, &psi, &a, x, pi).unwrap();
                    assert!(linalg::max_abs_diff(&pairing, b) <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn adjoint_form_with_delta_window() {
        let a = setup("D4");
        let g = a.group();
        let mut rng = random::rng(6);
        let f = random::signal(g, &mut rng);
        let psi = Signal::delta(g, g.identity());
        for x in g.elements() {
            for (pi, p) in a.irreps().iter().enumerate() {
                let got = gabor_adjoint_form(&f, &psi, &a, x, pi).unwrap();
                assert!(linalg::max_abs_diff(&got, &(p.at(x) * f.at(x).conj())) < 1e-14);
            }
        }
    }

    #[test]
    fn delta_signal_factorization() {
        let a = setup("D4");
        let g = a.group();
        let mut rng = random::rng(7);
        let psi = random::signal(g, &mut rng);
        let f = Signal::delta(g, g.identity());
        for x in g.elements() {
            for pi in 0..a.len() {
                let expect = linalg::identity(a.irrep(pi).dim()) * psi.at(g.inv(x)).conj();
                let got = gabor_factorized_form(&f, &psi, &a, x, pi).unwrap();
                assert!(linalg::max_abs_diff(&got, &expect) < 1e-14);
            }
        }
    }

    #[test]
    fn energy_and_orthogonality() {
        let mut rng = random::rng(8);
        for g in catalog() {
            let a = Arc::new(dual_of(&Arc::new(g)));
            let gr = a.group();
            let (f, h) = (random::signal(gr, &mut rng), random::signal(gr, &mut rng));
            let (psi, phi) = (random::signal(gr, &mut rng), random::signal(gr, &mut rng));
            let gf = gabor(&f, &psi, &a).unwrap();
            let expect = f.norm2() * psi.norm2();
            assert!((sigma_norm2(&gf) - expect).abs() <= 1e-10 * expect);
            assert!((sigma_norm2(&gf) / psi.norm2() - f.norm2()).abs() <= 1e-10 * f.norm2());
            let gh = gabor(&h, &phi, &a).unwrap();
            let lhs = sigma_inner(&gf, &gh).unwrap();
            let rhs = phi.inner(&psi).unwrap() * f.inner(&h).unwrap();
            assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
            let back = sigma_inner(&gh, &gf).unwrap();
            assert!((lhs - back.conj()).norm() < 1e-12);
            assert!((sigma_inner(&gf, &gf).unwrap().re - sigma_norm2(&gf)).abs() < 1e-12);
            for x in gr.elements() {
                for pi in 0..a.len() {
                    assert!(linalg::operator_norm(gf.block(x, pi)) <= f.norm() * psi.norm() + 1e-10);
                }
            }
        }
    }

    #[test]
    fn linear_in_signal_conjugate_linear_in_window() {
        let a = setup("D3");
        let g = a.group();
        let mut rng = random::rng(9);
        let (f, h, psi, chi) = (
            random::signal(g, &mut rng),
            random::signal(g, &mut rng),
            random::signal(g, &mut rng),
            random::signal(g, &mut rng),
        );
        let c = C64::new(0.3, -1.7);
        let lhs = gabor(&f.scale(c).add(&h).unwrap(), &psi, &a).unwrap();
        let rhs = gabor(&f, &psi, &a).unwrap().scale(c).add(&gabor(&h, &psi, &a).unwrap()).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        let lhs = gabor(&f, &psi.scale(c).add(&chi).unwrap(), &a).unwrap();
        let rhs = gabor(&f, &psi, &a)
            .unwrap()
            .scale(c.conj())
            .add(&gabor(&f, &chi, &a).unwrap())
            .unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn frame_adjoint_is_the_adjoint() {
        let a = setup("D3");
        let g = a.group();
        let mut rng = random::rng(10);
        for _ in 0..20 {
            let phi = random::signal(g, &mut rng);
            let f = random::signal(g, &mut rng);
            let field = gabor(&random::signal(g, &mut rng), &random::signal(g, &mut rng), &a).unwrap();
            let lhs = frame_adjoint(&field, &phi).unwrap().inner(&f).unwrap();
            let rhs = sigma_inner(&field, &gabor(&f, &phi, &a).unwrap()).unwrap();
            assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
        }
    }

    #[test]
    fn frame_adjoint_of_gabor_scales_signal() {
        let a = setup("Q8");
        let g = a.group();
        let mut rng = random::rng(11);
        let (f, psi, phi) = (random::signal(g, &mut rng), random::signal(g, &mut rng), random::signal(g, &mut rng));
        let s = frame_adjoint(&gabor(&f, &psi, &a).unwrap(), &phi).unwrap();
        let expect = f.scale(phi.inner(&psi).unwrap());
        assert!(s.max_abs_diff(&expect) < 1e-10);
    }

    #[test]
    fn reconstruction() {
        let a = setup("Q8");
        let g = a.group();
        let delta = Signal::delta(g, g.identity());
        let mut rng = random::rng(12);
        let f = random::signal(g, &mut rng);
        let back = reconstruct(&gabor(&f, &delta, &a).unwrap(), &delta, &delta).unwrap();
        assert!(back.max_abs_diff(&f) < 1e-13);
        for _ in 0..10 {
            let (psi, phi) = (random::signal(g, &mut rng), random::signal(g, &mut rng));
            let back = reconstruct(&gabor(&f, &psi, &a).unwrap(), &psi, &phi).unwrap();
            assert!(back.max_abs_diff(&f) <= 1e-9);
        }
        let psi = Signal::delta(g, 0);
        let phi = Signal::delta(g, 1);
        let field = gabor(&f, &psi, &a).unwrap();
        assert!(matches!(reconstruct(&field, &psi, &phi), Err(Error::OrthogonalWindows { .. })));
    }

    #[test]
    fn resolution_of_identity_on_deltas() {
        for name in ["Z3", "D3"] {
            let a = setup(name);
            let g = a.group();
            let mut rng = random::rng(13);
            let (psi, phi) = (random::signal(g, &mut rng), random::signal(g, &mut rng));
            for z in g.elements() {
                let d = Signal::delta(g, z);
                let out = resolve_identity(&d, &psi, &phi, &a).unwrap();
                assert!(out.max_abs_diff(&d) <= 1e-9, "{name} {z}");
            }
            let zero = resolve_identity(&Signal::zero(g), &psi, &phi, &a).unwrap();
            assert!(zero.values().iter().all(|v| v.norm() == 0.0));
        }
    }

    #[test]
    fn tensor_pi_dimension_mismatch() {
        let a = setup("D3");
        let g = a.group();
        let psi = Signal::constant(g, ONE);
        let two = ModulatedWindow::new(&psi, &a, a.len() - 1).unwrap().field();
        let one = ModulatedWindow::new(&psi, &a, 0).unwrap().field();
        assert!(tensor_pi(&two, &one, &psi).is_err());
        assert!(tensor_pi(&two[..3], &two, &psi).is_err());
    }

    #[test]
    fn frame_operator_is_scalar() {
        let a = setup("H2");
        let g = a.group();
        let mut rng = random::rng(14);
        let (psi, phi) = (random::signal(g, &mut rng), random::signal(g, &mut rng));
        let m = frame_operator_matrix(&psi, &phi, &a).unwrap();
        let expect = linalg::identity(g.order()) * phi.inner(&psi).unwrap();
        assert!(linalg::max_abs_diff(&m, &expect) <= 1e-9);
    }

    #[test]
    fn spectrogram_and_file_round_trip() {
        let a = setup("Z4");
        let g = a.group();
        let field = gabor(&Signal::delta(g, 0), &Signal::constant(g, ONE), &a).unwrap();
        let csv = field.spectrogram_csv();
        assert_eq!(csv.lines().count(), 1 + g.order() * a.len());
        let file = field.to_file();
        let back = GaborField::from_file(&a, &file).unwrap();
        assert_eq!(back.max_abs_diff(&field), 0.0);
        let mut broken = file.clone();
        broken.cells.pop();
        assert!(GaborField::from_file(&a, &broken).is_err());
    }
}
