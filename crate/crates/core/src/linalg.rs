//! Small dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::DMatrix;
pub use num_complex::Complex64 as C64;

pub type CMatrix = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

pub fn zeros(d: usize) -> CMatrix {
    CMatrix::zeros(d, d)
}

/// Squared Hilbert–Schmidt (Frobenius) norm, `tr(T* T)`.
pub fn hs_norm2(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

/// Hilbert–Schmidt inner product `<T, S> = tr(S* T)`.
pub fn hs_inner(t: &CMatrix, s: &CMatrix) -> C64 {
    t.iter().zip(s.iter()).map(|(a, b)| a * b.conj()).sum()
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().iter().sum()
}

/// `tr(A B)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for i in 0..n {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().max()
}

pub fn to_pairs(m: &CMatrix) -> Vec<[f64; 2]> {
    // row-major
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            out.push([z.re, z.im]);
        }
    }
    out
}

pub fn from_pairs(d: usize, pairs: &[[f64; 2]]) -> Option<CMatrix> {
    if pairs.len() != d * d {
        return None;
    }
    Some(CMatrix::from_row_iterator(
        d,
        d,
        pairs.iter().map(|p| C64::new(p[0], p[1])),
    ))
}
