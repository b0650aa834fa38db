use std::f64::consts::PI;

use super::{dilate, HPoint, LineGrid};
use crate::error::{Error, Result};
use crate::linalg::{cis, CMatrix, C64, ZERO};

/// Relative slack when deciding whether a value sits on a lattice.
const LATTICE_SLACK: f64 = 1e-9;

/// First row of the periodic shift `S_a`: `s(n) = (1/M) Σ_m e^{i k_m (nΔx + a)}`.
pub(crate) fn shift_kernel(line: &LineGrid, a: f64) -> Vec<C64> {
    let m = line.len();
    let dx = line.spacing();
    let freqs = line.frequencies();
    (0..m)
        .map(|n| {
            let u = n as f64 * dx + a;
            freqs.iter().map(|k| cis(k * u)).sum::<C64>() / m as f64
        })
        .collect()
}

/// Trigonometric-interpolation shift `(S_a v)(x_j) = v(x_j + a)`, exactly
/// unitary and `S_a S_b = S_{a+b}`.
pub fn shift_matrix(line: &LineGrid, a: f64) -> CMatrix {
    let m = line.len();
    let s = shift_kernel(line, a);
    CMatrix::from_fn(m, m, |j, l| s[(j + m - l) % m])
}

/// Diagonal entry of `S_a`, i.e. `tr(S_a)/M`.
pub(crate) fn shift_trace(line: &LineGrid, a: f64) -> C64 {
    let freqs = line.frequencies();
    freqs.iter().map(|k| cis(k * a)).sum::<C64>() / freqs.len() as f64
}

fn near_integer(v: f64) -> bool {
    (v - v.round()).abs() <= LATTICE_SLACK * (1.0 + v.abs())
}

/// `ϱ(t,q,p) = e^{i(t + qp/2)} D_q S_p`, the `λ = 1` representation.
pub fn rho_matrix(line: &LineGrid, h: HPoint) -> Result<CMatrix> {
    if !near_integer(h.q * line.period() / (2.0 * PI)) {
        return Err(Error::Inadmissible(format!(
            "modulation {} is off the 2π/L frequency lattice",
            h.q
        )));
    }
    let phase = cis(h.t + 0.5 * h.q * h.p);
    let mut s = shift_matrix(line, h.p);
    for (j, x) in line.points().into_iter().enumerate() {
        let d = phase * cis(h.q * x);
        s.row_mut(j).iter_mut().for_each(|z| *z *= d);
    }
    Ok(s)
}

/// Schrödinger representation `π_λ` on the periodized line:
/// `π_λ(t,q,p) = e^{i(λt + λqp/2)} D_{βq} S_{αp}` with `α = |λ|^{1/2}`,
/// `β = sgn λ · α`.
///
/// `D_{βq}` is periodic only if `βq ∈ (2π/L)Z`; such `q` are *admissible*.
/// The homomorphism law additionally needs `αp ∈ ΔxZ`, since multiplying by
/// a lattice character rotates the Fourier modes cyclically and the wrapped
/// mode picks up `e^{i 2π M αp / L}`.
#[derive(Debug, Clone)]
pub struct SchrodingerRep {
    lambda: f64,
    line: LineGrid,
}

impl SchrodingerRep {
    pub fn new(lambda: f64, line: LineGrid) -> Result<Self> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!("λ must be finite and nonzero, got {lambda}")));
        }
        Ok(Self { lambda, line })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn line(&self) -> &LineGrid {
        &self.line
    }

    pub fn alpha(&self) -> f64 {
        self.lambda.abs().sqrt()
    }

    pub fn beta(&self) -> f64 {
        self.lambda.signum() * self.alpha()
    }

    /// Spacing of admissible `q` values, `2π/(L|β|)`.
    pub fn q_lattice(&self) -> f64 {
        2.0 * PI / (self.line.period() * self.alpha())
    }

    /// Spacing of `p` values whose shift lands on the sample lattice.
    pub fn p_lattice(&self) -> f64 {
        self.line.spacing() / self.alpha()
    }

    pub fn snap_q(&self, q: f64) -> f64 {
        let step = self.q_lattice();
        (q / step).round() * step
    }

    pub fn snap_p(&self, p: f64) -> f64 {
        let step = self.p_lattice();
        (p / step).round() * step
    }

    pub fn is_admissible(&self, h: HPoint) -> bool {
        near_integer(h.q / self.q_lattice())
    }

    pub fn is_lattice_point(&self, h: HPoint) -> bool {
        self.is_admissible(h) && near_integer(h.p / self.p_lattice())
    }

    /// Nearest lattice point (on both `q` and `p`), same `t`.
    pub fn lattice_point(&self, h: HPoint) -> HPoint {
        HPoint::new(h.t, self.snap_q(h.q), self.snap_p(h.p))
    }

    /// Matrix of `π_λ(h)`. Errors when `q` is not admissible.
    pub fn rep_matrix(&self, h: HPoint) -> Result<CMatrix> {
        if !self.is_admissible(h) {
            return Err(Error::Inadmissible(format!(
                "q = {} is not a multiple of {} at λ = {}",
                h.q,
                self.q_lattice(),
                self.lambda
            )));
        }
        Ok(self.build(h))
    }

    /// `π_λ` at `q` snapped to the admissible lattice; returns the snap distance.
    pub fn rep_matrix_snapped(&self, h: HPoint) -> (CMatrix, f64) {
        let q = self.snap_q(h.q);
        (self.build(HPoint::new(h.t, q, h.p)), (q - h.q).abs())
    }

    /// Second route: `ϱ(δ_λ(h))`.
    pub fn rep_via_rho(&self, h: HPoint) -> Result<CMatrix> {
        rho_matrix(&self.line, dilate(self.lambda, h)?)
    }

    fn build(&self, h: HPoint) -> CMatrix {
        let lam = self.lambda;
        let b = self.beta() * h.q;
        let phase = cis(lam * h.t + 0.5 * lam * h.q * h.p);
        let s = shift_kernel(&self.line, self.alpha() * h.p);
        let m = self.line.len();
        let xs = self.line.points();
        let mut out = CMatrix::from_element(m, m, ZERO);
        for (j, x) in xs.iter().enumerate() {
            let d = phase * cis(b * x);
            for l in 0..m {
                out[(j, l)] = d * s[(j + m - l) % m];
            }
        }
        out
    }
}
