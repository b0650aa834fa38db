//! Complete unitary duals of the catalog groups.
//!
//! Each equivalence class is shipped as one fixed matrix representative so
//! matrices are identical across runs. Character and matrix-element
//! orthogonality use the normalized measure `(1/|G|) Σ_x`; the transform
//! modules use counting measure with Plancherel weight `d_π / |G|`.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::checks::{CheckResult, Report};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupKind, Signal};
use crate::linalg::{self, cis, CMatrix, C64, ONE, ZERO};

pub const EXACT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryIrrep {
    label: String,
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl UnitaryIrrep {
    pub fn new(label: impl Into<String>, dim: usize, matrices: Vec<CMatrix>) -> Result<Self> {
        if let Some(m) = matrices.iter().find(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.nrows(),
            });
        }
        Ok(Self {
            label: label.into(),
            dim,
            matrices,
        })
    }

    fn one_dim(label: impl Into<String>, values: impl Iterator<Item = C64>) -> Self {
        Self {
            label: label.into(),
            dim: 1,
            matrices: values.map(|z| CMatrix::from_element(1, 1, z)).collect(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `π(x)`.
    #[inline]
    pub fn at(&self, x: usize) -> &CMatrix {
        &self.matrices[x]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn character(&self, x: usize) -> C64 {
        linalg::trace(&self.matrices[x])
    }

    /// Replaces `π(x)`; used for fault injection in tests and tooling.
    pub fn set_matrix(&mut self, x: usize, m: CMatrix) {
        self.matrices[x] = m;
    }
}

/// The dual object of a finite group with its Plancherel weights.
#[derive(Debug, Clone)]
pub struct PlancherelAtlas {
    group: Arc<FiniteGroup>,
    irreps: Vec<UnitaryIrrep>,
    weights: Vec<f64>,
}

impl PlancherelAtlas {
    pub fn new(group: Arc<FiniteGroup>, irreps: Vec<UnitaryIrrep>, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != irreps.len() {
            return Err(Error::DimensionMismatch {
                expected: irreps.len(),
                found: weights.len(),
            });
        }
        if let Some(p) = irreps.iter().find(|p| p.matrices.len() != group.order()) {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: p.matrices.len(),
            });
        }
        Ok(Self {
            group,
            irreps,
            weights,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn name(&self) -> &str {
        self.group.name()
    }

    pub fn irreps(&self) -> &[UnitaryIrrep] {
        &self.irreps
    }

    pub fn irreps_mut(&mut self) -> &mut [UnitaryIrrep] {
        &mut self.irreps
    }

    pub fn irrep(&self, i: usize) -> &UnitaryIrrep {
        &self.irreps[i]
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(UnitaryIrrep::dim).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.irreps.iter().position(|p| p.label == label)
    }

    pub fn to_cache(&self) -> IrrepCache {
        IrrepCache {
            group: self.name().to_string(),
            irreps: self
                .irreps
                .iter()
                .map(|p| IrrepEntry {
                    label: p.label.clone(),
                    dim: p.dim,
                    matrices: p.matrices.iter().map(linalg::to_pairs).collect(),
                })
                .collect(),
            weights: self.weights.clone(),
        }
    }

    /// Loads an atlas from its cache file. No verification is performed;
    /// run [`verify_atlas`] on the result.
    pub fn from_cache(group: Arc<FiniteGroup>, cache: &IrrepCache) -> Result<Self> {
        if cache.group != group.name() {
            return Err(Error::GroupMismatch {
                expected: group.name().to_string(),
                found: cache.group.clone(),
            });
        }
        let irreps = cache
            .irreps
            .iter()
            .map(|e| {
                let matrices = e
                    .matrices
                    .iter()
                    .map(|m| {
                        linalg::from_pairs(e.dim, m).ok_or_else(|| {
                            Error::Malformed(format!("irrep {}: matrix size", e.label))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                UnitaryIrrep::new(e.label.clone(), e.dim, matrices)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, irreps, cache.weights.clone())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct IrrepEntry {
    pub label: String,
    pub dim: usize,
    /// One row-major `[re, im]` list per group element.
    pub matrices: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct IrrepCache {
    pub group: String,
    pub irreps: Vec<IrrepEntry>,
    pub weights: Vec<f64>,
}

fn root_of_unity(k: i64, n: usize) -> C64 {
    let r = k.rem_euclid(n as i64) as usize;
    // Exact at quarter turns so sign characters come out as ±1, ±i.
    if (4 * r).is_multiple_of(n) {
        return [ONE, C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)][4 * r / n];
    }
    cis(2.0 * PI * r as f64 / n as f64)
}

fn sign_label(e: bool) -> char {
    if e {
        '-'
    } else {
        '+'
    }
}

fn sign_value(e: bool) -> C64 {
    if e {
        -ONE
    } else {
        ONE
    }
}

fn cyclic_dual(n: usize) -> Vec<UnitaryIrrep> {
    (0..n)
        .map(|k| {
            UnitaryIrrep::one_dim(
                format!("chi_{k}"),
                (0..n).map(move |j| root_of_unity((j * k) as i64, n)),
            )
        })
        .collect()
}

fn dihedral_dual(n: usize) -> Vec<UnitaryIrrep> {
    let mut out = Vec::new();
    let r_signs: &[bool] = if n.is_multiple_of(2) { &[false, true] } else { &[false] };
    for &er in r_signs {
        for es in [false, true] {
            let values = (0..2 * n).map(move |g| {
                let k = g % n;
                let mut v = if er && k % 2 == 1 { -ONE } else { ONE };
                if g >= n {
                    v *= sign_value(es);
                }
                v
            });
            out.push(UnitaryIrrep::one_dim(
                format!("chi({},{})", sign_label(er), sign_label(es)),
                values,
            ));
        }
    }
    for k in (1..).take_while(|&k| 2 * k < n) {
        let matrices = (0..2 * n)
            .map(|g| {
                let j = (g % n) as i64;
                let w = root_of_unity(k as i64 * j, n);
                let wi = root_of_unity(-(k as i64) * j, n);
                if g < n {
                    CMatrix::from_row_slice(2, 2, &[w, ZERO, ZERO, wi])
                } else {
                    // s r^j = antidiag(1,1) · diag(ω^{kj}, ω^{-kj})
                    CMatrix::from_row_slice(2, 2, &[ZERO, wi, w, ZERO])
                }
            })
            .collect();
        out.push(UnitaryIrrep {
            label: format!("rho_{k}"),
            dim: 2,
            matrices,
        });
    }
    out
}

fn heisenberg_dual(q: usize) -> Vec<UnitaryIrrep> {
    let coords = move |g: usize| (g / (q * q), (g / q) % q, g % q);
    let mut out = Vec::new();
    for b in 0..q {
        for c in 0..q {
            out.push(UnitaryIrrep::one_dim(
                format!("chi({b},{c})"),
                (0..q * q * q).map(move |g| {
                    let (x, y, _) = coords(g);
                    root_of_unity((b * x + c * y) as i64, q)
                }),
            ));
        }
    }
    for a in 1..q {
        // (ρ_a(x,y,z) f)(u) = ω^{a(z + u y)} f(u + x)
        let matrices = (0..q * q * q)
            .map(|g| {
                let (x, y, z) = coords(g);
                let mut m = linalg::zeros(q);
                for u in 0..q {
                    m[(u, (u + x) % q)] = root_of_unity((a * (z + u * y)) as i64, q);
                }
                m
            })
            .collect();
        out.push(UnitaryIrrep {
            label: format!("rho_{a}"),
            dim: q,
            matrices,
        });
    }
    out
}

fn quaternion_dual() -> Vec<UnitaryIrrep> {
    let mut out = Vec::new();
    for ei in [false, true] {
        for ej in [false, true] {
            let values = (0..8).map(move |g| match g / 2 {
                0 => ONE,
                1 => sign_value(ei),
                2 => sign_value(ej),
                _ => sign_value(ei ^ ej),
            });
            out.push(UnitaryIrrep::one_dim(
                format!("chi({},{})", sign_label(ei), sign_label(ej)),
                values,
            ));
        }
    }
    let i = C64::new(0.0, 1.0);
    // Unit quaternions as i·σ_z, i·σ_y, i·σ_x.
    let units = [
        CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ONE]),
        CMatrix::from_row_slice(2, 2, &[i, ZERO, ZERO, -i]),
        CMatrix::from_row_slice(2, 2, &[ZERO, ONE, -ONE, ZERO]),
        CMatrix::from_row_slice(2, 2, &[ZERO, i, i, ZERO]),
    ];
    let matrices = (0..8)
        .map(|g| {
            let m = units[g / 2].clone();
            if g % 2 == 1 {
                -m
            } else {
                m
            }
        })
        .collect();
    out.push(UnitaryIrrep {
        label: "rho".into(),
        dim: 2,
        matrices,
    });
    out
}

/// The complete unitary dual of a catalog group, weights `d_π / |G|`.
pub fn dual_of(group: &Arc<FiniteGroup>) -> PlancherelAtlas {
    let irreps = match group.kind() {
        GroupKind::Cyclic(n) => cyclic_dual(n),
        GroupKind::Dihedral(n) => dihedral_dual(n),
        GroupKind::HeisenbergMod(q) => heisenberg_dual(q),
        GroupKind::Quaternion => quaternion_dual(),
    };
    let order = group.order() as f64;
    let weights = irreps.iter().map(|p| p.dim as f64 / order).collect();
    PlancherelAtlas {
        group: Arc::clone(group),
        irreps,
        weights,
    }
}

/// The signal `x ↦ π(x)_{ij}`.
pub fn matrix_element(group: &Arc<FiniteGroup>, irrep: &UnitaryIrrep, i: usize, j: usize) -> Result<Signal> {
    if i >= irrep.dim || j >= irrep.dim {
        return Err(Error::IndexOutOfBounds { i, j, dim: irrep.dim });
    }
    if irrep.matrices.len() != group.order() {
        return Err(Error::DimensionMismatch {
            expected: group.order(),
            found: irrep.matrices.len(),
        });
    }
    Ok(Signal::from_fn(group, |x| irrep.matrices[x][(i, j)]))
}

/// Normalized inner product `(1/|G|) Σ_x f(x) conj(g(x))`.
pub fn normalized_inner(f: &[C64], g: &[C64]) -> C64 {
    let n = f.len() as f64;
    f.iter().zip(g).map(|(a, b)| a * b.conj()).sum::<C64>() / n
}

/// Peter–Weyl coefficients `c^π_{ij}(f) = d_π <f, π_ij>` (normalized measure),
/// one `d_π × d_π` matrix per irrep.
pub fn peter_weyl_coefficients(atlas: &PlancherelAtlas, f: &Signal) -> Result<Vec<CMatrix>> {
    f.same_group(atlas.group())?;
    let n = atlas.group().order() as f64;
    Ok(atlas
        .irreps
        .iter()
        .map(|p| {
            CMatrix::from_fn(p.dim, p.dim, |i, j| {
                let s: C64 = f
                    .values()
                    .iter()
                    .zip(&p.matrices)
                    .map(|(v, m)| v * m[(i, j)].conj())
                    .sum();
                s * (p.dim as f64 / n)
            })
        })
        .collect())
}

/// `Σ_π Σ_ij c^π_ij π_ij`.
pub fn peter_weyl_synthesis(atlas: &PlancherelAtlas, coeffs: &[CMatrix]) -> Signal {
    Signal::from_fn(atlas.group(), |x| {
        atlas
            .irreps
            .iter()
            .zip(coeffs)
            .map(|(p, c)| c.iter().zip(p.matrices[x].iter()).map(|(a, b)| a * b).sum::<C64>())
            .sum()
    })
}

/// `Σ_π Σ_ij d_π⁻¹ |c^π_ij|²`, which equals the normalized `‖f‖²`.
pub fn parseval_sum(atlas: &PlancherelAtlas, coeffs: &[CMatrix]) -> f64 {
    atlas
        .irreps
        .iter()
        .zip(coeffs)
        .map(|(p, c)| linalg::hs_norm2(c) / p.dim as f64)
        .sum()
}

/// Scans unitarity, homomorphism, character orthonormality, matrix-element
/// orthogonality, completeness and the weights against `tolerance`.
pub fn verify_atlas(atlas: &PlancherelAtlas, tolerance: f64) -> Report {
    let g = atlas.group();
    let n = g.order();
    let mut unitarity = 0.0f64;
    let mut homomorphism = 0.0f64;
    for p in &atlas.irreps {
        let id = linalg::identity(p.dim);
        for x in 0..n {
            let m = &p.matrices[x];
            let dev = linalg::hs_norm2(&(m.adjoint() * m - &id)).sqrt();
            unitarity = unitarity.max(dev);
            for y in 0..n {
                let prod = m * &p.matrices[y];
                homomorphism = homomorphism.max(linalg::max_abs_diff(&prod, &p.matrices[g.mul(x, y)]));
            }
        }
    }

    let characters: Vec<Vec<C64>> = atlas
        .irreps
        .iter()
        .map(|p| (0..n).map(|x| p.character(x)).collect())
        .collect();
    let mut char_dev = 0.0f64;
    for (a, ca) in characters.iter().enumerate() {
        for (b, cb) in characters.iter().enumerate() {
            let expect = if a == b { ONE } else { ZERO };
            char_dev = char_dev.max((normalized_inner(ca, cb) - expect).norm());
        }
    }

    // Orthonormal family √d_π π_ij under the normalized measure.
    let basis: Vec<Vec<C64>> = atlas
        .irreps
        .iter()
        .flat_map(|p| {
            let s = (p.dim as f64).sqrt();
            (0..p.dim).flat_map(move |i| {
                (0..p.dim).map(move |j| p.matrices.iter().map(|m| m[(i, j)] * s).collect())
            })
        })
        .collect();
    let mut me_dev = 0.0f64;
    for (a, u) in basis.iter().enumerate() {
        for (b, v) in basis.iter().enumerate().skip(a) {
            let expect = if a == b { ONE } else { ZERO };
            me_dev = me_dev.max((normalized_inner(u, v) - expect).norm());
        }
    }

    let sum_d2: usize = atlas.irreps.iter().map(|p| p.dim * p.dim).sum();
    let completeness = (sum_d2 as f64 - n as f64).abs();
    let weight_dev = atlas
        .irreps
        .iter()
        .zip(&atlas.weights)
        .map(|(p, w)| (w - p.dim as f64 / n as f64).abs())
        .fold(0.0, f64::max);

    let checks = vec![
        CheckResult::new("unitarity", unitarity, tolerance),
        CheckResult::new("homomorphism", homomorphism, tolerance),
        CheckResult::new("character_orthonormality", char_dev, tolerance),
        CheckResult::new("matrix_element_orthogonality", me_dev, tolerance),
        CheckResult::new("completeness", completeness, 0.0),
        CheckResult::new("plancherel_weights", weight_dev, tolerance),
    ];
    Report::new(format!("atlas {}", g.name()), checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_cyclic, build_dihedral, by_name, catalog};
    use crate::random;

    fn atlas(name: &str) -> PlancherelAtlas {
        dual_of(&Arc::new(by_name(name).unwrap()))
    }

    #[test]
    fn abelian_dual_of_z4() {
        let a = atlas("Z4");
        assert_eq!(a.len(), 4);
        assert!(a.dims().iter().all(|&d| d == 1));
        assert!(a.weights().iter().all(|&w| w == 0.25));
    }

    #[test]
    fn d4_dimensions() {
        let a = atlas("D4");
        assert_eq!(a.dims(), vec![1, 1, 1, 1, 2]);
        assert_eq!(a.dims().iter().map(|d| d * d).sum::<usize>(), 8);
    }

    #[test]
    fn heisenberg_three_dimensions() {
        let a = atlas("H3");
        let dims = a.dims();
        assert_eq!(dims.iter().filter(|&&d| d == 1).count(), 9);
        assert_eq!(dims.iter().filter(|&&d| d == 3).count(), 2);
        assert_eq!(dims.iter().map(|d| d * d).sum::<usize>(), 27);
    }

    #[test]
    fn z2_atlas_is_exact() {
        let r = verify_atlas(&atlas("Z2"), EXACT_TOLERANCE);
        assert!(r.pass);
        assert!(r.checks.iter().all(|c| c.deviation == 0.0), "{r:?}");
    }

    #[test]
    fn d3_passes_tightly() {
        let r = verify_atlas(&atlas("D3"), 1e-12);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn every_catalog_atlas_verifies() {
        for g in catalog() {
            let r = verify_atlas(&dual_of(&Arc::new(g)), EXACT_TOLERANCE);
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn fault_injection_is_named() {
        let mut a = atlas("D4");
        let p = a.irreps_mut().last_mut().unwrap();
        let mut m = p.at(1).clone();
        m[(0, 0)] += C64::new(1e-3, 0.0);
        p.set_matrix(1, m);
        let r = verify_atlas(&a, EXACT_TOLERANCE);
        assert!(!r.pass);
        assert!(r.failed().any(|c| c.name == "homomorphism"));
    }

    #[test]
    fn matrix_elements() {
        let g = Arc::new(build_dihedral(4).unwrap());
        let a = dual_of(&g);
        for p in a.irreps() {
            for i in 0..p.dim() {
                for j in 0..p.dim() {
                    let e = matrix_element(&g, p, i, j).unwrap();
                    let expect = if i == j { ONE } else { ZERO };
                    assert_eq!(e.at(g.identity()), expect);
                }
            }
        }
        let rho = &a.irreps()[a.index_of("rho_1").unwrap()];
        let r = g.index_of("r^1").unwrap();
        let e = matrix_element(&g, rho, 0, 0).unwrap();
        assert!((e.at(r) - C64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(matrix_element(&g, rho, 2, 0).is_err());

        let z = Arc::new(build_cyclic(5).unwrap());
        let az = dual_of(&z);
        let chi = &az.irreps()[2];
        let e = matrix_element(&z, chi, 0, 0).unwrap();
        assert!((e.at(3) - cis(2.0 * PI * 6.0 / 5.0)).norm() < 1e-14);
    }

    #[test]
    fn cache_round_trip_reverifies() {
        let a = atlas("Q8");
        let json = serde_json::to_string(&a.to_cache()).unwrap();
        let cache: IrrepCache = serde_json::from_str(&json).unwrap();
        let back = PlancherelAtlas::from_cache(Arc::clone(a.group()), &cache).unwrap();
        assert!(verify_atlas(&back, EXACT_TOLERANCE).pass);
        assert_eq!(back.irreps(), a.irreps());
    }

    #[test]
    fn peter_weyl_expansion_and_parseval() {
        let mut rng = random::rng(7);
        for g in catalog() {
            let g = Arc::new(g);
            let a = dual_of(&g);
            for _ in 0..10 {
                let f = random::signal(&g, &mut rng);
                let c = peter_weyl_coefficients(&a, &f).unwrap();
                let back = peter_weyl_synthesis(&a, &c);
                assert!(back.max_abs_diff(&f) <= 1e-9);
                let norm = f.norm2() / g.order() as f64;
                assert!((parseval_sum(&a, &c) - norm).abs() <= 1e-9 * norm);
            }
        }
    }
}
