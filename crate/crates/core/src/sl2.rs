//! `SL(2,R)`: principal and complementary series on a discretized line,
//! `P(2,R)` characters, Plancherel densities and a toy Gabor matrix element.
//!
//! Both series act by the Möbius pullback `x ↦ (ax − c)/(−bx + d)` with a
//! cocycle in `−bx + d`. Pullback arguments are linearly interpolated and
//! vanish outside the sample window.

use std::f64::consts::PI;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cis, C64, ZERO};

pub const DET_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sl2Matrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Sl2Matrix {
    pub const IDENTITY: Sl2Matrix = Sl2Matrix {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Rejects `|ad − bc − 1| > 1e-12`.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if (det - 1.0).abs().is_nan() || (det - 1.0).abs() > DET_TOLERANCE {
            return Err(Error::InvalidParameter(format!("determinant {det} is not 1")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn diag(a: f64) -> Result<Self> {
        if a == 0.0 {
            return Err(Error::InvalidParameter("diagonal entry must be nonzero".into()));
        }
        Self::new(a, 0.0, 0.0, 1.0 / a)
    }

    /// `exp` of the traceless matrix `[[h, e], [f, −h]]`.
    pub fn exp_algebra(h: f64, e: f64, f: f64) -> Self {
        // X² = δ I with δ = h² + ef.
        let delta = h * h + e * f;
        let (ch, sh) = if delta > 0.0 {
            let r = delta.sqrt();
            (r.cosh(), r.sinh() / r)
        } else if delta < 0.0 {
            let r = (-delta).sqrt();
            (r.cos(), r.sin() / r)
        } else {
            (1.0, 1.0)
        };
        let m = Self {
            a: ch + sh * h,
            b: sh * e,
            c: sh * f,
            d: ch - sh * h,
        };
        // Re-balance rounding so the det check holds exactly enough.
        let det = m.det();
        let s = det.sqrt();
        Self {
            a: m.a / s,
            b: m.b / s,
            c: m.c / s,
            d: m.d / s,
        }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Sl2Matrix) -> Sl2Matrix {
        Sl2Matrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inv(&self) -> Sl2Matrix {
        Sl2Matrix {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn frobenius2(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Parity {
    fn multiplier(self, y: f64) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => y.signum(),
        }
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Parity::Plus),
            "-" | "minus" => Ok(Parity::Minus),
            _ => Err(Error::InvalidParameter(format!("parity must be + or -, got `{s}`"))),
        }
    }
}

/// `π_{it}^±`; `π_{−it}^± ≅ π_{it}^±` is not identified here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrincipalSeriesPoint {
    pub t: f64,
    pub parity: Parity,
}

/// Midpoint samples `x_j = −R + (j + ½)h`, `h = 2R/n`, with weights `h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sl2Line {
    half: f64,
    n: usize,
}

impl Sl2Line {
    pub fn new(half: f64, n: usize) -> Result<Self> {
        if !(half.is_finite() && half > 0.0) || n < 2 {
            return Err(Error::InvalidParameter(format!("line needs R > 0 and n ≥ 2, got R={half}, n={n}")));
        }
        Ok(Self { half, n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn half_width(&self) -> f64 {
        self.half
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half / self.n as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        -self.half + (j as f64 + 0.5) * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.point(j)).collect()
    }

    pub fn sample(&self, f: impl Fn(f64) -> C64) -> Vec<C64> {
        self.points().into_iter().map(f).collect()
    }

    pub fn norm2(&self, v: &[C64]) -> f64 {
        v.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.spacing()
    }

    /// `Σ conj(g_j) v_j h`.
    pub fn pairing(&self, g: &[C64], v: &[C64]) -> C64 {
        g.iter().zip(v).map(|(a, b)| a.conj() * b).sum::<C64>() * self.spacing()
    }

    /// Linear interpolation; zero outside `[x_0, x_{n−1}]`.
    pub fn interpolate(&self, f: &[C64], u: f64) -> C64 {
        let s = (u + self.half) / self.spacing() - 0.5;
        if !(s >= 0.0 && s <= (self.n - 1) as f64) {
            return ZERO;
        }
        let i = (s.floor() as usize).min(self.n - 2);
        let frac = s - i as f64;
        f[i] * (1.0 - frac) + f[i + 1] * frac
    }

    fn check(&self, f: &[C64]) -> Result<()> {
        if f.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: f.len(),
            });
        }
        Ok(())
    }
}

/// Transformed samples plus the nodes masked as too close to `−bx + d = 0`.
#[derive(Debug, Clone)]
pub struct Applied {
    pub values: Vec<C64>,
    pub masked: Vec<usize>,
}

fn pullback(
    a: &Sl2Matrix,
    f: &[C64],
    line: &Sl2Line,
    epsilon: f64,
    cocycle: impl Fn(f64) -> C64,
) -> Result<Applied> {
    line.check(f)?;
    let mut masked = Vec::new();
    let values = (0..line.len())
        .map(|j| {
            let x = line.point(j);
            let y = -a.b * x + a.d;
            if y.abs() < epsilon {
                masked.push(j);
                return ZERO;
            }
            cocycle(y) * line.interpolate(f, (a.a * x - a.c) / y)
        })
        .collect();
    if masked.len() == line.len() {
        return Err(Error::AllNodesSingular);
    }
    Ok(Applied { values, masked })
}

/// `π_{it}^±(A) f(x) = m_±(−bx+d) |−bx+d|^{−1−it} f((ax−c)/(−bx+d))`.
pub fn principal_apply(
    a: &Sl2Matrix,
    pt: PrincipalSeriesPoint,
    f: &[C64],
    line: &Sl2Line,
    epsilon: f64,
) -> Result<Applied> {
    pullback(a, f, line, epsilon, |y| {
        let r = y.abs();
        cis(-pt.t * r.ln()) * (pt.parity.multiplier(y) / r)
    })
}

fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidParameter(format!("complementary parameter must lie in (0,1), got {s}")));
    }
    Ok(())
}

/// `κ_s(A) f(x) = |−bx+d|^{−1−s} f((ax−c)/(−bx+d))`.
pub fn complementary_apply(a: &Sl2Matrix, s: f64, f: &[C64], line: &Sl2Line, epsilon: f64) -> Result<Applied> {
    check_s(s)?;
    pullback(a, f, line, epsilon, |y| C64::new(y.abs().powf(-1.0 - s), 0.0))
}

/// `‖f‖²_(s) = (s/2) ΣΣ f_i conj(f_j) K_ij h²` with `K_ij = |x_i − x_j|^{s−1}`
/// off the diagonal and the cell average `2h^{s−1}/(s(s+1))` on it.
pub fn s_norm2(f: &[C64], s: f64, line: &Sl2Line) -> Result<f64> {
    check_s(s)?;
    line.check(f)?;
    let h = line.spacing();
    let diag = 2.0 * h.powf(s - 1.0) / (s * (s + 1.0));
    // K depends only on |i − j|.
    let kernel: Vec<f64> = (0..line.len())
        .map(|n| if n == 0 { diag } else { (n as f64 * h).powf(s - 1.0) })
        .collect();
    let total: C64 = (0..line.len())
        .into_par_iter()
        .map(|i| {
            let mut acc = ZERO;
            for (j, fj) in f.iter().enumerate() {
                acc += fj.conj() * kernel[i.abs_diff(j)];
            }
            f[i] * acc
        })
        .sum();
    Ok(0.5 * s * total.re * h * h)
}

/// `β_{it}^+(M_{a,b}) = |a|^{it}`, `β_{it}^−(M_{a,b}) = |a|^{it} sign a`.
pub fn p2_character(a: f64, _b: f64, t: f64, parity: Parity) -> Result<C64> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("P(2,R) needs a ≠ 0, got {a}")));
    }
    Ok(cis(t * a.abs().ln()) * parity.multiplier(a))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Series {
    PrincipalPlus,
    PrincipalMinus,
    Discrete,
    Complementary,
    Mock,
    Trivial,
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "principal+" => Series::PrincipalPlus,
            "principal-" => Series::PrincipalMinus,
            "discrete" => Series::Discrete,
            "complementary" => Series::Complementary,
            "mock" => Series::Mock,
            "trivial" => Series::Trivial,
            other => return Err(Error::UnknownSeries(other.to_string())),
        })
    }
}

/// Plancherel density: `t/2 tanh(πt/2)`, `t/2 coth(πt/2)` (→ `1/π` at 0),
/// `n − 1` on the discrete series, 0 elsewhere.
pub fn plancherel_density(series: Series, param: f64) -> Result<f64> {
    match series {
        Series::PrincipalPlus => Ok(0.5 * param * (0.5 * PI * param).tanh()),
        Series::PrincipalMinus => {
            let x = 0.5 * PI * param;
            if x.abs() < 1e-8 {
                Ok(1.0 / PI)
            } else {
                Ok(0.5 * param / x.tanh())
            }
        }
        Series::Discrete => {
            if param < 1.0 || param.fract() != 0.0 {
                return Err(Error::InvalidParameter(format!("discrete series index must be an integer ≥ 1, got {param}")));
            }
            Ok(param - 1.0)
        }
        Series::Complementary | Series::Mock | Series::Trivial => Ok(0.0),
    }
}

/// `t,density_plus,density_minus` rows.
pub fn density_csv(ts: &[f64]) -> String {
    let mut out = String::from("t,density_plus,density_minus\n");
    for &t in ts {
        let p = plancherel_density(Series::PrincipalPlus, t).expect("total for real t");
        let m = plancherel_density(Series::PrincipalMinus, t).expect("total for real t");
        out.push_str(&format!("{t},{p},{m}\n"));
    }
    out
}

/// Box grid in the entry chart `(x, y, z, u)`; each node with `det > 0` is
/// rescaled to `Y/√det` in `SL(2,R)`, the rest are dropped. Cells carry the
/// flat Lebesgue weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartGrid {
    half: f64,
    n: usize,
}

impl ChartGrid {
    pub fn new(half: f64, n: usize) -> Result<Self> {
        if !(half.is_finite() && half > 0.0) || n == 0 {
            return Err(Error::InvalidParameter(format!("chart needs half-width > 0 and n ≥ 1, got {half}, {n}")));
        }
        Ok(Self { half, n })
    }

    pub fn weight(&self) -> f64 {
        (2.0 * self.half / self.n as f64).powi(4)
    }

    pub fn nodes(&self) -> Vec<Sl2Matrix> {
        let h = 2.0 * self.half / self.n as f64;
        let axis: Vec<f64> = (0..self.n).map(|i| -self.half + (i as f64 + 0.5) * h).collect();
        let mut out = Vec::new();
        for &x in &axis {
            for &y in &axis {
                for &z in &axis {
                    for &u in &axis {
                        let det = x * u - y * z;
                        if det > 0.0 {
                            let s = det.sqrt();
                            out.push(Sl2Matrix {
                                a: x / s,
                                b: y / s,
                                c: z / s,
                                d: u / s,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn norm2(&self, f: impl Fn(&Sl2Matrix) -> C64) -> f64 {
        self.nodes().iter().map(|y| f(y).norm_sqr()).sum::<f64>() * self.weight()
    }
}

/// `ψ(X) = 2 e^{−π‖X‖²_F}`.
pub fn sl2_gaussian(x: &Sl2Matrix) -> C64 {
    C64::new(2.0 * (-PI * x.frobenius2()).exp(), 0.0)
}

/// Toy `<g, 𝒢_ψ f(X, π_{it}^±) k>`: the chart quadrature of
/// `Σ_Y w ψ(X⁻¹Y) f(Y) <g, π(Y) k>` (window used as written, unconjugated,
/// since it is real). No measure-theoretic fidelity is claimed.
#[allow(clippy::too_many_arguments)]
pub fn sl2_gabor_demo(
    f: impl Fn(&Sl2Matrix) -> C64 + Sync,
    psi: impl Fn(&Sl2Matrix) -> C64 + Sync,
    x: &Sl2Matrix,
    pt: PrincipalSeriesPoint,
    chart: &ChartGrid,
    line: &Sl2Line,
    g: &[C64],
    k: &[C64],
    epsilon: f64,
) -> Result<C64> {
    line.check(g)?;
    line.check(k)?;
    let xi = x.inv();
    let total = chart
        .nodes()
        .par_iter()
        .map(|y| {
            let c = psi(&xi.mul(y)) * f(y);
            if c == ZERO {
                return Ok(ZERO);
            }
            match principal_apply(y, pt, k, line, epsilon) {
                Ok(v) => Ok(c * line.pairing(g, &v.values)),
                Err(Error::AllNodesSingular) => Ok(ZERO),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<C64>>>()?
        .into_iter()
        .sum::<C64>();
    Ok(total * chart.weight())
}

/// Ladder study for the principal and complementary series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Sl2StudyConfig {
    pub half_width: f64,
    pub principal_nodes: Vec<usize>,
    pub complementary_nodes: Vec<usize>,
    pub t: f64,
    pub parity: Parity,
    pub s: f64,
    /// `A = diag(dilation, 1/dilation)` for the norm checks.
    pub dilation: f64,
    /// Support radius of the test bump `bump(x, r)·e^{ix}`.
    pub bump_radius: f64,
    /// Random `A, B = exp(X)` with entries of `X` uniform in `±spread`.
    pub spread: f64,
    pub pairs: usize,
    pub seed: u64,
    pub epsilon: f64,
}

impl Default for Sl2StudyConfig {
    fn default() -> Self {
        Self {
            half_width: 8.0,
            principal_nodes: vec![256, 512, 1024],
            complementary_nodes: vec![128, 256, 512],
            t: 1.0,
            parity: Parity::Plus,
            s: 0.5,
            dilation: 2.0,
            bump_radius: 2.0,
            spread: 0.2,
            pairs: 10,
            seed: 0,
            epsilon: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PrincipalRung {
    pub nodes: usize,
    pub norm_defect: f64,
    pub homomorphism_defect: f64,
    pub masked_nodes: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplementaryRung {
    pub nodes: usize,
    pub s_norm_defect: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sl2StudyReport {
    pub principal: Vec<PrincipalRung>,
    pub complementary: Vec<ComplementaryRung>,
    pub norm_strictly_decreasing: bool,
    pub homomorphism_strictly_decreasing: bool,
    pub s_norm_strictly_decreasing: bool,
}

fn decreasing(v: impl Iterator<Item = f64>) -> bool {
    let v: Vec<f64> = v.collect();
    v.windows(2).all(|w| w[1] < w[0])
}

fn rel_distance(line: &Sl2Line, a: &[C64], b: &[C64], scale: f64) -> f64 {
    let d: Vec<C64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    line.norm2(&d).sqrt() / scale
}

/// `|‖π(A)f‖ − ‖f‖| / ‖f‖` on the given line.
pub fn principal_norm_defect(a: &Sl2Matrix, pt: PrincipalSeriesPoint, f: &[C64], line: &Sl2Line, epsilon: f64) -> Result<f64> {
    let out = principal_apply(a, pt, f, line, epsilon)?;
    let n = line.norm2(f).sqrt();
    Ok((line.norm2(&out.values).sqrt() - n).abs() / n)
}

/// `‖π(A)π(B)f − π(AB)f‖ / ‖f‖`.
pub fn principal_homomorphism_defect(
    a: &Sl2Matrix,
    b: &Sl2Matrix,
    pt: PrincipalSeriesPoint,
    f: &[C64],
    line: &Sl2Line,
    epsilon: f64,
) -> Result<f64> {
    let inner = principal_apply(b, pt, f, line, epsilon)?.values;
    let lhs = principal_apply(a, pt, &inner, line, epsilon)?.values;
    let rhs = principal_apply(&a.mul(b), pt, f, line, epsilon)?.values;
    Ok(rel_distance(line, &lhs, &rhs, line.norm2(f).sqrt()))
}

/// `|‖κ_s(A)f‖²_(s) − ‖f‖²_(s)| / ‖f‖²_(s)`.
pub fn s_norm_defect(a: &Sl2Matrix, s: f64, f: &[C64], line: &Sl2Line, epsilon: f64) -> Result<f64> {
    let before = s_norm2(f, s, line)?;
    let after = s_norm2(&complementary_apply(a, s, f, line, epsilon)?.values, s, line)?;
    Ok((after - before).abs() / before)
}

pub fn run_sl2_study(cfg: &Sl2StudyConfig) -> Result<Sl2StudyReport> {
    use rand::Rng;
    let pt = PrincipalSeriesPoint { t: cfg.t, parity: cfg.parity };
    let a = Sl2Matrix::diag(cfg.dilation)?;
    let mut rng = crate::random::rng(cfg.seed);
    let pairs: Vec<(Sl2Matrix, Sl2Matrix)> = (0..cfg.pairs)
        .map(|_| {
            let mut e = || rng.gen_range(-cfg.spread..=cfg.spread);
            (Sl2Matrix::exp_algebra(e(), e(), e()), Sl2Matrix::exp_algebra(e(), e(), e()))
        })
        .collect();
    let principal = cfg
        .principal_nodes
        .iter()
        .map(|&n| {
            let line = Sl2Line::new(cfg.half_width, n)?;
            let f = line.sample(|x| cis(x) * bump(x, cfg.bump_radius));
            let applied = principal_apply(&a, pt, &f, &line, cfg.epsilon)?;
            let mut hom = 0.0_f64;
            for (x, y) in &pairs {
                hom = hom.max(principal_homomorphism_defect(x, y, pt, &f, &line, cfg.epsilon)?);
            }
            Ok(PrincipalRung {
                nodes: n,
                norm_defect: principal_norm_defect(&a, pt, &f, &line, cfg.epsilon)?,
                homomorphism_defect: hom,
                masked_nodes: applied.masked.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let complementary = cfg
        .complementary_nodes
        .iter()
        .map(|&n| {
            let line = Sl2Line::new(cfg.half_width, n)?;
            let f = line.sample(|x| C64::new((-PI * x * x).exp(), 0.0));
            Ok(ComplementaryRung {
                nodes: n,
                s_norm_defect: s_norm_defect(&a, cfg.s, &f, &line, cfg.epsilon)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sl2StudyReport {
        norm_strictly_decreasing: decreasing(principal.iter().map(|r| r.norm_defect)),
        homomorphism_strictly_decreasing: decreasing(principal.iter().map(|r| r.homomorphism_defect)),
        s_norm_strictly_decreasing: decreasing(complementary.iter().map(|r| r.s_norm_defect)),
        principal,
        complementary,
    })
}

/// Smooth bump supported on `(−r, r)`.
pub fn bump(x: f64, r: f64) -> f64 {
    let u = x / r;
    if u.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - u * u)).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn near_identity(rng: &mut impl Rng, eps: f64) -> Sl2Matrix {
        Sl2Matrix::exp_algebra(rng.gen_range(-eps..eps), rng.gen_range(-eps..eps), rng.gen_range(-eps..eps))
    }

    #[test]
    fn matrices() {
        assert!(Sl2Matrix::new(1.0, 1.0, 0.0, 1.0).is_ok());
        assert!(Sl2Matrix::new(2.0, 0.0, 0.0, 1.0).is_err());
        let mut rng = crate::random::rng(61);
        for _ in 0..50 {
            let a = near_identity(&mut rng, 1.0);
            assert!((a.det() - 1.0).abs() < 1e-12);
            let p = a.mul(&a.inv());
            assert!((p.a - 1.0).abs() < 1e-12 && p.b.abs() < 1e-12 && p.c.abs() < 1e-12);
        }
    }

    #[test]
    fn identity_leaves_samples() {
        let line = Sl2Line::new(8.0, 64).unwrap();
        let f = line.sample(|x| C64::new(bump(x, 3.0), x.sin()));
        let pt = PrincipalSeriesPoint { t: 1.3, parity: Parity::Minus };
        let out = principal_apply(&Sl2Matrix::IDENTITY, pt, &f, &line, 1e-9).unwrap();
        assert!(out.values.iter().zip(&f).all(|(a, b)| (a - b).norm() < 1e-14));
        let out = complementary_apply(&Sl2Matrix::IDENTITY, 0.5, &f, &line, 1e-9).unwrap();
        assert!(out.values.iter().zip(&f).all(|(a, b)| (a - b).norm() < 1e-14));
        assert!(complementary_apply(&Sl2Matrix::IDENTITY, 1.0, &f, &line, 1e-9).is_err());
        assert_eq!(s_norm2(&vec![ZERO; 64], 0.5, &line).unwrap(), 0.0);
    }

    #[test]
    fn singular_nodes_are_masked() {
        let line = Sl2Line::new(1.0, 2).unwrap();
        // −bx + d vanishes at x = d/b = 0.5, the second node.
        let a = Sl2Matrix::new(1.0, 2.0, 0.0, 1.0).unwrap();
        let pt = PrincipalSeriesPoint { t: 0.0, parity: Parity::Plus };
        let out = principal_apply(&a, pt, &[C64::new(1.0, 0.0); 2], &line, 1e-9).unwrap();
        assert_eq!(out.masked, vec![1]);
        assert!(matches!(
            principal_apply(&a, pt, &[ZERO; 2], &line, 10.0),
            Err(Error::AllNodesSingular)
        ));
    }

    #[test]
    fn linear_in_signal() {
        let line = Sl2Line::new(8.0, 128).unwrap();
        let mut rng = crate::random::rng(62);
        let f = crate::random::complex_vec(128, &mut rng);
        let g = crate::random::complex_vec(128, &mut rng);
        let c = C64::new(0.3, 2.0);
        let a = near_identity(&mut rng, 0.5);
        let pt = PrincipalSeriesPoint { t: 0.7, parity: Parity::Minus };
        let comb: Vec<C64> = f.iter().zip(&g).map(|(x, y)| x * c + y).collect();
        let l = principal_apply(&a, pt, &comb, &line, 1e-9).unwrap().values;
        let r1 = principal_apply(&a, pt, &f, &line, 1e-9).unwrap().values;
        let r2 = principal_apply(&a, pt, &g, &line, 1e-9).unwrap().values;
        for ((l, a), b) in l.iter().zip(&r1).zip(&r2) {
            assert!((l - (a * c + b)).norm() < 1e-12);
        }
    }

    #[test]
    fn characters() {
        let mut rng = crate::random::rng(63);
        for parity in [Parity::Plus, Parity::Minus] {
            assert!((p2_character(1.0, 3.0, 2.0, parity).unwrap() - 1.0).norm() < 1e-15);
            for _ in 0..20 {
                let (a1, b1, a2, b2) = (
                    rng.gen_range(-3.0..3.0),
                    rng.gen_range(-3.0..3.0),
                    rng.gen_range(-3.0..3.0),
                    rng.gen_range(-3.0..3.0),
                );
                let t = rng.gen_range(-4.0..4.0);
                let lhs = p2_character(a1 * a2, a1 * b2 + b1 / a2, t, parity).unwrap();
                let rhs = p2_character(a1, b1, t, parity).unwrap() * p2_character(a2, b2, t, parity).unwrap();
                assert!((lhs - rhs).norm() < 1e-13);
                assert!((lhs.norm() - 1.0).abs() < 1e-14);
            }
        }
        assert!((p2_character(-1.0, 0.0, 5.0, Parity::Minus).unwrap() + 1.0).norm() < 1e-15);
        assert!(p2_character(0.0, 0.0, 1.0, Parity::Plus).is_err());
    }

    #[test]
    fn densities() {
        assert_eq!(plancherel_density(Series::PrincipalPlus, 0.0).unwrap(), 0.0);
        assert_eq!(plancherel_density(Series::Discrete, 1.0).unwrap(), 0.0);
        assert_eq!(plancherel_density(Series::Discrete, 2.0).unwrap(), 1.0);
        assert_eq!(plancherel_density(Series::Complementary, 0.5).unwrap(), 0.0);
        assert!((plancherel_density(Series::PrincipalMinus, 0.0).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!(matches!("bogus".parse::<Series>(), Err(Error::UnknownSeries(_))));
        assert!(plancherel_density(Series::Discrete, 1.5).is_err());
        assert_eq!(density_csv(&[0.0, 1.0]).lines().count(), 3);
    }

    #[test]
    fn study_meets_targets() {
        let r = run_sl2_study(&Sl2StudyConfig::default()).unwrap();
        assert!(r.norm_strictly_decreasing && r.homomorphism_strictly_decreasing && r.s_norm_strictly_decreasing, "{r:?}");
        assert!(r.principal[2].norm_defect <= 0.02);
        assert!(r.principal[2].homomorphism_defect <= 0.03);
        assert!(r.complementary[2].s_norm_defect <= 0.05);
    }

    #[test]
    fn demo_zero_and_sesquilinear() {
        let chart = ChartGrid::new(1.5, 6).unwrap();
        let line = Sl2Line::new(6.0, 48).unwrap();
        let mut rng = crate::random::rng(64);
        let (g, g2, k) = (
            crate::random::complex_vec(48, &mut rng),
            crate::random::complex_vec(48, &mut rng),
            crate::random::complex_vec(48, &mut rng),
        );
        let pt = PrincipalSeriesPoint { t: 1.0, parity: Parity::Plus };
        let x = Sl2Matrix::IDENTITY;
        let f = |y: &Sl2Matrix| C64::new(bump(y.frobenius2().sqrt(), 3.0), 0.0);
        let zero = sl2_gabor_demo(|_| ZERO, sl2_gaussian, &x, pt, &chart, &line, &g, &k, 1e-9).unwrap();
        assert_eq!(zero, ZERO);
        let c = C64::new(-1.2, 0.4);
        let comb: Vec<C64> = g.iter().zip(&g2).map(|(a, b)| a * c + b).collect();
        let v1 = sl2_gabor_demo(f, sl2_gaussian, &x, pt, &chart, &line, &g, &k, 1e-9).unwrap();
        let v2 = sl2_gabor_demo(f, sl2_gaussian, &x, pt, &chart, &line, &g2, &k, 1e-9).unwrap();
        let v3 = sl2_gabor_demo(f, sl2_gaussian, &x, pt, &chart, &line, &comb, &k, 1e-9).unwrap();
        assert!((v3 - (v1 * c.conj() + v2)).norm() <= 1e-12 * (1.0 + v3.norm()));
    }
}
