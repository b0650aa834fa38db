use serde::{Deserialize, Serialize};

use super::HPoint;
use crate::error::{Error, Result};
use crate::linalg::C64;

/// Midpoint box grid on `[−T,T)×[−Q,Q)×[−P,P)`, indexed `(i·N_q + j)·N_p + l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeisenbergGrid {
    half: [f64; 3],
    counts: [usize; 3],
}

impl HeisenbergGrid {
    pub fn new(half: [f64; 3], counts: [usize; 3]) -> Result<Self> {
        for (h, n) in half.iter().zip(counts) {
            if !(h.is_finite() && *h > 0.0) {
                return Err(Error::InvalidParameter(format!("box half-width must be positive, got {h}")));
            }
            if n == 0 || n % 2 != 0 {
                return Err(Error::InvalidParameter(format!("grid counts must be even and positive, got {n}")));
            }
        }
        Ok(Self { half, counts })
    }

    pub fn cube(half: f64, n: usize) -> Result<Self> {
        Self::new([half; 3], [n; 3])
    }

    pub fn half_widths(&self) -> [f64; 3] {
        self.half
    }

    pub fn counts(&self) -> [usize; 3] {
        self.counts
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        2.0 * self.half[axis] / self.counts[axis] as f64
    }

    pub fn weight(&self) -> f64 {
        (0..3).map(|k| self.spacing(k)).product()
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Node coordinates along one axis: `−T + iΔt` (left-endpoint rule).
    pub fn axis(&self, axis: usize) -> Vec<f64> {
        let d = self.spacing(axis);
        (0..self.counts[axis]).map(|i| -self.half[axis] + d * i as f64).collect()
    }

    pub fn index(&self, i: usize, j: usize, l: usize) -> usize {
        (i * self.counts[1] + j) * self.counts[2] + l
    }

    /// Index of the node at the origin (counts are even, so it is a node).
    pub fn origin_index(&self) -> usize {
        self.index(self.counts[0] / 2, self.counts[1] / 2, self.counts[2] / 2)
    }

    pub fn nodes(&self) -> Vec<HPoint> {
        let (ts, qs, ps) = (self.axis(0), self.axis(1), self.axis(2));
        let mut out = Vec::with_capacity(self.len());
        for &t in &ts {
            for &q in &qs {
                for &p in &ps {
                    out.push(HPoint::new(t, q, p));
                }
            }
        }
        out
    }

    pub fn sample(&self, f: impl Fn(HPoint) -> C64) -> Vec<C64> {
        self.nodes().into_iter().map(f).collect()
    }

    pub fn inner(&self, f: &[C64], g: &[C64]) -> C64 {
        f.iter().zip(g).map(|(a, b)| a * b.conj()).sum::<C64>() * self.weight()
    }

    pub fn norm2(&self, f: &[C64]) -> f64 {
        f.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.weight()
    }
}

/// `M` samples `x_j = −X + jΔx`, `Δx = 2X/M`, on a circle of length `L = 2X`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineGrid {
    m: usize,
    half: f64,
}

impl LineGrid {
    pub fn new(m: usize, half: f64) -> Result<Self> {
        if !m.is_power_of_two() || m < 2 {
            return Err(Error::InvalidParameter(format!("line sample count must be a power of two ≥ 2, got {m}")));
        }
        if !(half.is_finite() && half > 0.0) {
            return Err(Error::InvalidParameter(format!("line half-width must be positive, got {half}")));
        }
        Ok(Self { m, half })
    }

    /// Half-width `√M`, balancing the spatial and frequency extents.
    pub fn balanced(m: usize) -> Result<Self> {
        Self::new(m, (m as f64).sqrt())
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn half_width(&self) -> f64 {
        self.half
    }

    pub fn period(&self) -> f64 {
        2.0 * self.half
    }

    pub fn spacing(&self) -> f64 {
        self.period() / self.m as f64
    }

    pub fn points(&self) -> Vec<f64> {
        let d = self.spacing();
        (0..self.m).map(|j| -self.half + d * j as f64).collect()
    }

    /// Frequencies `2πm/L`, `m ∈ [−M/2, M/2)`.
    pub fn frequencies(&self) -> Vec<f64> {
        let h = (self.m / 2) as i64;
        (-h..h).map(|m| 2.0 * std::f64::consts::PI * m as f64 / self.period()).collect()
    }

    pub fn sample(&self, f: impl Fn(f64) -> C64) -> Vec<C64> {
        self.points().into_iter().map(f).collect()
    }

    /// `<g, v> = Σ conj(g_j) v_j Δx` (conjugate-linear in `g`).
    pub fn pairing(&self, g: &[C64], v: &[C64]) -> C64 {
        g.iter().zip(v).map(|(a, b)| a.conj() * b).sum::<C64>() * self.spacing()
    }

    pub fn norm2(&self, v: &[C64]) -> f64 {
        v.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.spacing()
    }
}

/// Symmetric midpoint λ-grid `±(k+½)Δλ`, `Δλ = 2Λ/count`, with nodes below the
/// floor removed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaGrid {
    nodes: Vec<f64>,
    spacing: f64,
}

impl LambdaGrid {
    pub fn midpoint(lambda_max: f64, count: usize, floor: f64) -> Result<Self> {
        if !(lambda_max.is_finite() && lambda_max > 0.0) || count == 0 || !count.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!("λ-grid needs Λ > 0 and an even count, got Λ={lambda_max}, count={count}")));
        }
        if floor.is_nan() || floor < 0.0 {
            return Err(Error::InvalidParameter(format!("λ floor must be nonnegative, got {floor}")));
        }
        let spacing = 2.0 * lambda_max / count as f64;
        let half: Vec<f64> = (0..count / 2)
            .map(|k| (k as f64 + 0.5) * spacing)
            .filter(|l| *l >= floor * (1.0 - 1e-12))
            .collect();
        let nodes: Vec<f64> = half.iter().rev().map(|l| -l).chain(half.iter().copied()).collect();
        Self::from_nodes(nodes, spacing)
    }

    pub fn from_nodes(nodes: Vec<f64>, spacing: f64) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptyLambdaGrid);
        }
        if nodes.iter().any(|l| *l == 0.0 || !l.is_finite()) {
            return Err(Error::InvalidParameter("λ-grid must avoid 0".into()));
        }
        Ok(Self { nodes, spacing })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}
