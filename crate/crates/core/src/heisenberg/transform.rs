use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::rep::{shift_kernel, shift_trace};
use super::{HPoint, HeisenbergGrid, LambdaGrid, LineGrid, SchrodingerRep};
use crate::error::{Error, Result};
use crate::linalg::{self, cis, CMatrix, C64, ZERO};

/// `2^{3/4} e^{−π(t²+q²+p²)}`, unit `L²` norm on `R³`.
pub fn gaussian_window(h: HPoint) -> C64 {
    C64::new(2f64.powf(0.75) * (-PI * h.norm2()).exp(), 0.0)
}

/// Rescale `psi` to unit norm on the grid nodes.
pub fn normalized_window<F>(psi: F, grid: &HeisenbergGrid) -> Result<impl Fn(HPoint) -> C64 + Sync>
where
    F: Fn(HPoint) -> C64 + Sync,
{
    let norm = grid.norm2(&grid.sample(&psi)).sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroWindow);
    }
    Ok(move |h| psi(h) / norm)
}

/// Plancherel density `(2π)^{-2}|λ|` for `n = 1`.
pub fn plancherel_density(lambda: f64) -> f64 {
    lambda.abs() / (4.0 * PI * PI)
}

/// Precomputed phase tables for one `(grid, λ)` pair.
struct Plan {
    t_phase: Vec<C64>,
    // e^{−iλ q_s p / 2}, indexed [j][l]
    qp_phase: Vec<C64>,
    // e^{−iβ q_s x}, M × N_q
    modulation: CMatrix,
    shifts: Vec<f64>,
    // c(a_{p'} − a_p), indexed [p'][p]
    traces: CMatrix,
    counts: [usize; 3],
    weight: f64,
    lambda: f64,
}

impl Plan {
    fn new(grid: &HeisenbergGrid, rep: &SchrodingerRep) -> Self {
        let lam = rep.lambda();
        let beta = rep.beta();
        let (ts, qs, ps) = (grid.axis(0), grid.axis(1), grid.axis(2));
        let qs: Vec<f64> = qs.iter().map(|&q| rep.snap_q(q)).collect();
        let xs = rep.line().points();
        let qp_phase = qs
            .iter()
            .flat_map(|q| ps.iter().map(move |p| cis(-0.5 * lam * q * p)))
            .collect();
        let shifts: Vec<f64> = ps.iter().map(|p| rep.alpha() * p).collect();
        let traces = CMatrix::from_fn(shifts.len(), shifts.len(), |b, a| shift_trace(rep.line(), shifts[b] - shifts[a]));
        Self {
            t_phase: ts.iter().map(|t| cis(-lam * t)).collect(),
            qp_phase,
            modulation: CMatrix::from_fn(xs.len(), qs.len(), |j, k| cis(-beta * qs[k] * xs[j])),
            shifts,
            traces,
            counts: grid.counts(),
            weight: grid.weight(),
            lambda: lam,
        }
    }

    fn apply(&self, f: &[C64]) -> FourierSketch {
        let [nt, nq, np] = self.counts;
        let mut reduced = vec![ZERO; nq * np];
        for i in 0..nt {
            let ph = self.t_phase[i];
            for (r, v) in reduced.iter_mut().zip(&f[i * nq * np..(i + 1) * nq * np]) {
                *r += v * ph;
            }
        }
        self.finish(|j, l| reduced[j * np + l])
    }

    /// Finish from the `t`-reduced samples `Σ_t f(t,q_j,p_l) e^{−iλt}`.
    fn finish(&self, reduced: impl Fn(usize, usize) -> C64) -> FourierSketch {
        let [_, nq, np] = self.counts;
        let g = CMatrix::from_fn(nq, np, |j, l| reduced(j, l) * self.qp_phase[j * np + l] * self.weight);
        FourierSketch {
            lambda: self.lambda,
            shifts: self.shifts.clone(),
            diagonals: &self.modulation * g,
        }
    }
}

/// `f̂(λ) = Σ_p S_{αp}* diag(d_p)`, stored as the diagonals `d_p` (columns)
/// and the shift amounts. Enough to form the matrix or take HS inner
/// products without it.
#[derive(Debug, Clone)]
pub struct FourierSketch {
    pub lambda: f64,
    pub shifts: Vec<f64>,
    pub diagonals: CMatrix,
}

impl FourierSketch {
    pub fn to_matrix(&self, line: &LineGrid) -> CMatrix {
        let m = line.len();
        let mut out = CMatrix::from_element(m, m, ZERO);
        for (p, a) in self.shifts.iter().enumerate() {
            let s = shift_kernel(line, *a);
            for l in 0..m {
                for j in 0..m {
                    // (S*)[l][j] = conj(S[j][l]) = conj(s[(j - l) mod M])
                    out[(l, j)] += s[(j + m - l) % m].conj() * self.diagonals[(j, p)];
                }
            }
        }
        out
    }

    /// `tr(B* A)` for `A = self`, `B = other`, using
    /// `tr(diag(b̄) S_{a'} S_a* diag(a)) = c(a' − a) <b, a>` where `c` is the
    /// (constant) diagonal of the shift.
    pub fn hs_inner(&self, other: &FourierSketch, line: &LineGrid) -> C64 {
        let traces = CMatrix::from_fn(other.shifts.len(), self.shifts.len(), |b, a| {
            shift_trace(line, other.shifts[b] - self.shifts[a])
        });
        self.hs_inner_with(other, &traces)
    }

    fn hs_inner_with(&self, other: &FourierSketch, traces: &CMatrix) -> C64 {
        let gram = other.diagonals.adjoint() * &self.diagonals;
        gram.iter().zip(traces.iter()).map(|(g, c)| g * c).sum()
    }
}

fn check_len(f: &[C64], grid: &HeisenbergGrid) -> Result<()> {
    if f.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            found: f.len(),
        });
    }
    Ok(())
}

pub fn h_fourier_sketch(f: &[C64], grid: &HeisenbergGrid, rep: &SchrodingerRep) -> Result<FourierSketch> {
    check_len(f, grid)?;
    Ok(Plan::new(grid, rep).apply(f))
}

/// Quadrature `Σ_nodes w f(h) π_λ(h)*` with `q` snapped to the admissible
/// lattice, computed through the separable form.
pub fn h_fourier(f: &[C64], grid: &HeisenbergGrid, rep: &SchrodingerRep) -> Result<CMatrix> {
    Ok(h_fourier_sketch(f, grid, rep)?.to_matrix(rep.line()))
}

/// The same sum, node by node from full representation matrices.
pub fn h_fourier_naive(f: &[C64], grid: &HeisenbergGrid, rep: &SchrodingerRep) -> Result<CMatrix> {
    check_len(f, grid)?;
    let m = rep.line().len();
    let w = grid.weight();
    let mut acc = CMatrix::from_element(m, m, ZERO);
    for (h, v) in grid.nodes().into_iter().zip(f) {
        if *v != ZERO {
            acc += rep.rep_matrix_snapped(h).0.adjoint() * (v * w);
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralRow {
    pub lambda: f64,
    pub hs_norm_sq: f64,
    pub plancherel_weight: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlancherelReport {
    pub lhs: f64,
    pub rhs: f64,
    pub defect: f64,
    pub rows: Vec<SpectralRow>,
}

impl PlancherelReport {
    pub fn csv(&self) -> String {
        let mut out = String::from("lambda,hs_norm_sq,plancherel_weight\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.lambda, r.hs_norm_sq, r.plancherel_weight));
        }
        out
    }
}

/// `|Σ w|f|² − (2π)^{-2} Σ_λ ‖f̂(λ)‖²_HS |λ| Δλ| / Σ w|f|²`; defined as 0 for `f = 0`.
pub fn h_plancherel_defect(
    f: &[C64],
    grid: &HeisenbergGrid,
    line: &LineGrid,
    lambdas: &LambdaGrid,
) -> Result<PlancherelReport> {
    check_len(f, grid)?;
    let lhs = grid.norm2(f);
    let rows = lambdas
        .nodes()
        .par_iter()
        .map(|&lambda| {
            let rep = SchrodingerRep::new(lambda, line.clone())?;
            let h = h_fourier(f, grid, &rep)?;
            Ok(SpectralRow {
                lambda,
                hs_norm_sq: linalg::hs_norm2(&h),
                plancherel_weight: plancherel_density(lambda),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rhs: f64 = rows
        .iter()
        .map(|r| r.hs_norm_sq * r.plancherel_weight * lambdas.spacing())
        .sum();
    let defect = if lhs == 0.0 { 0.0 } else { (lhs - rhs).abs() / lhs };
    Ok(PlancherelReport { lhs, rhs, defect, rows })
}

fn cut<F: Fn(HPoint) -> C64>(f: &[C64], psi: &F, h: HPoint, nodes: &[HPoint]) -> Vec<C64> {
    let hi = h.inv();
    f.iter()
        .zip(nodes)
        .map(|(v, y)| v * psi(hi.mul(*y)).conj())
        .collect()
}

/// `Σ_{h'} w f(h') conj(ψ(h⁻¹h')) <g, π_λ(h')* k>`, computed node by node.
#[allow(clippy::too_many_arguments)]
pub fn gabor_matrix_element<F: Fn(HPoint) -> C64>(
    f: &[C64],
    psi: F,
    h: HPoint,
    grid: &HeisenbergGrid,
    rep: &SchrodingerRep,
    g: &[C64],
    k: &[C64],
) -> Result<C64> {
    check_len(f, grid)?;
    let line = rep.line();
    check_line(g, line)?;
    check_line(k, line)?;
    let kv = CMatrix::from_column_slice(k.len(), 1, k);
    let w = grid.weight();
    let nodes = grid.nodes();
    let mut acc = ZERO;
    for (c, y) in cut(f, &psi, h, &nodes).into_iter().zip(&nodes) {
        if c == ZERO {
            continue;
        }
        let v = rep.rep_matrix_snapped(*y).0.adjoint() * &kv;
        acc += c * w * line.pairing(g, v.as_slice());
    }
    Ok(acc)
}

/// `<g, H k>` with `H = h_fourier(f · conj(L_h ψ))`.
#[allow(clippy::too_many_arguments)]
pub fn gabor_matrix_element_fourier<F: Fn(HPoint) -> C64>(
    f: &[C64],
    psi: F,
    h: HPoint,
    grid: &HeisenbergGrid,
    rep: &SchrodingerRep,
    g: &[C64],
    k: &[C64],
) -> Result<C64> {
    check_len(f, grid)?;
    check_line(g, rep.line())?;
    check_line(k, rep.line())?;
    let hm = h_fourier(&cut(f, &psi, h, &grid.nodes()), grid, rep)?;
    let v = hm * CMatrix::from_column_slice(k.len(), 1, k);
    Ok(rep.line().pairing(g, v.as_slice()))
}

fn check_line(v: &[C64], line: &LineGrid) -> Result<()> {
    if v.len() != line.len() {
        return Err(Error::DimensionMismatch {
            expected: line.len(),
            found: v.len(),
        });
    }
    Ok(())
}

/// Both sides of the weak reconstruction identity:
/// `<f, k>` by direct quadrature, and
/// `(2π)^{-2} Σ_h w_h Σ_λ |λ| Δλ tr[𝒢_ψk(h,λ)* 𝒢_ψf(h,λ)]` with the Gabor blocks
/// `𝒢_ψf(h,λ) = h_fourier(f · conj(L_h ψ))(λ)`. `ψ` should have unit grid norm.
///
/// The translation points `h` run over `outer`, which may be much coarser
/// than `grid`: the `h`-integrand is a smooth bump, where the rectangle rule
/// is spectrally accurate, while the cut functions need the fine grid.
#[allow(clippy::too_many_arguments)]
pub fn weak_reconstruct_pair<F: Fn(HPoint) -> C64 + Sync>(
    f: &[C64],
    k: &[C64],
    psi: F,
    grid: &HeisenbergGrid,
    outer: &HeisenbergGrid,
    line: &LineGrid,
    lambdas: &LambdaGrid,
) -> Result<(C64, C64)> {
    check_len(f, grid)?;
    check_len(k, grid)?;
    let direct = grid.inner(f, k);
    let plans = lambdas
        .nodes()
        .iter()
        .map(|&l| Ok((Plan::new(grid, &SchrodingerRep::new(l, line.clone())?), plancherel_density(l) * lambdas.spacing())))
        .collect::<Result<Vec<_>>>()?;
    let nodes = grid.nodes();
    let [nt, nq, np] = grid.counts();
    // The t-reduction for every λ at once, as one matrix product per cut.
    let t_phases = CMatrix::from_fn(plans.len(), nt, |r, i| plans[r].0.t_phase[i]);
    let gabor = outer
        .nodes()
        .par_iter()
        .map(|h| {
            let cf = &t_phases * CMatrix::from_row_slice(nt, nq * np, &cut(f, &psi, *h, &nodes));
            let ck = &t_phases * CMatrix::from_row_slice(nt, nq * np, &cut(k, &psi, *h, &nodes));
            plans
                .iter()
                .enumerate()
                .map(|(r, (plan, weight))| {
                    let a = plan.finish(|j, l| cf[(r, j * np + l)]);
                    let b = plan.finish(|j, l| ck[(r, j * np + l)]);
                    a.hs_inner_with(&b, &plan.traces) * *weight
                })
                .sum::<C64>()
        })
        .sum::<C64>()
        * outer.weight();
    Ok((direct, gabor))
}
