//! Pass/fail reports and the seeded suites behind `verify`.

use std::sync::Arc;

use serde::Serialize;

use crate::fourier::{convolve, fourier, inverse_fourier, plancherel_norm2};
use crate::gabor::{
    frame_adjoint, frame_operator_matrix, gabor, gabor_via_fourier, reconstruct, resolve_identity,
    sigma_inner, sigma_norm2,
};
use crate::group::Signal;
use crate::linalg;
use crate::random;
use crate::repr::PlancherelAtlas;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    /// `pass` iff `deviation <= tolerance` (NaN fails).
    pub fn new(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            deviation,
            tolerance,
            pass: deviation <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    pub title: String,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(title: impl Into<String>, checks: Vec<CheckResult>) -> Self {
        Self {
            title: title.into(),
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn merge(title: impl Into<String>, reports: impl IntoIterator<Item = Report>) -> Self {
        Self::new(title, reports.into_iter().flat_map(|r| r.checks).collect())
    }
}

fn rel(err: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        err
    } else {
        err / scale
    }
}

fn worst(acc: &mut f64, v: f64) {
    // NaN must stick so a broken transform cannot pass.
    if v.is_nan() || v > *acc {
        *acc = v;
    }
}

/// Fourier inversion, Plancherel identity and the convolution theorem over
/// `trials` seeded random signals. Deviations are relative.
pub fn fourier_suite(atlas: &Arc<PlancherelAtlas>, seed: u64, trials: usize, tolerance: f64) -> Report {
    let g = atlas.group();
    let mut rng = random::rng(seed);
    let (mut inv, mut unit, mut conv) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..trials {
        let f = random::signal(g, &mut rng);
        let h = random::signal(g, &mut rng);
        let ff = fourier(&f, atlas).expect("same group");
        worst(&mut inv, rel(inverse_fourier(&ff).max_abs_diff(&f), f.norm()));
        worst(&mut unit, rel((plancherel_norm2(&ff) - f.norm2()).abs(), f.norm2()));
        let fh = fourier(&h, atlas).expect("same group");
        let lhs = fourier(&convolve(&f, &h).expect("same group"), atlas).expect("same group");
        let scale = f.norm() * h.norm();
        for (i, b) in lhs.blocks().iter().enumerate() {
            let rhs = fh.block(i) * ff.block(i);
            worst(&mut conv, rel(linalg::max_abs_diff(b, &rhs), scale));
        }
    }
    Report::new(
        format!("fourier {}", g.name()),
        vec![
            CheckResult::new("fourier_inversion", inv, tolerance),
            CheckResult::new("fourier_unitarity", unit, tolerance),
            CheckResult::new("convolution_theorem", conv, tolerance),
        ],
    )
}

/// Energy, orthogonality, inversion, the Fourier-route equivalence, the
/// frame adjoint, `𝒢_φ*𝒢_ψ = <φ,ψ> I` and the tensor resolution of identity.
pub fn gabor_suite(atlas: &Arc<PlancherelAtlas>, seed: u64, trials: usize, tolerance: f64) -> Report {
    let g = atlas.group();
    let mut rng = random::rng(seed);
    let mut dev = [0.0_f64; 7];
    for _ in 0..trials {
        let f = random::signal(g, &mut rng);
        let h = random::signal(g, &mut rng);
        let psi = random::signal(g, &mut rng);
        let phi = random::signal(g, &mut rng);
        let gf = gabor(&f, &psi, atlas).expect("nonzero window");
        let gh = gabor(&h, &phi, atlas).expect("nonzero window");

        let energy = f.norm2() * psi.norm2();
        worst(&mut dev[0], rel((sigma_norm2(&gf) - energy).abs(), energy));

        let lhs = sigma_inner(&gf, &gh).expect("same atlas");
        let rhs = phi.inner(&psi).expect("same group") * f.inner(&h).expect("same group");
        let scale = f.norm() * h.norm() * psi.norm() * phi.norm();
        worst(&mut dev[1], rel((lhs - rhs).norm(), scale));

        match reconstruct(&gf, &psi, &phi) {
            Ok(back) => worst(&mut dev[2], rel(back.max_abs_diff(&f), f.norm())),
            Err(_) => worst(&mut dev[2], f64::INFINITY),
        }

        let via = gabor_via_fourier(&f, &psi, atlas).expect("nonzero window");
        worst(&mut dev[3], rel(gf.max_abs_diff(&via), f.norm() * psi.norm()));

        let s = frame_adjoint(&gh, &psi).expect("same group").inner(&f).expect("same group");
        let t = sigma_inner(&gh, &gabor(&f, &psi, atlas).expect("nonzero window")).expect("same atlas");
        worst(&mut dev[4], rel((s - t).norm(), scale));

        let m = frame_operator_matrix(&psi, &phi, atlas).expect("nonzero window");
        let expect = linalg::identity(g.order()) * phi.inner(&psi).expect("same group");
        worst(&mut dev[5], rel(linalg::max_abs_diff(&m, &expect), psi.norm() * phi.norm()));

        let out = resolve_identity(&f, &psi, &phi, atlas);
        match out {
            Ok(out) => worst(&mut dev[6], rel(out.max_abs_diff(&f), f.norm())),
            Err(_) => worst(&mut dev[6], f64::INFINITY),
        }
    }
    let names = [
        "gabor_energy",
        "gabor_orthogonality",
        "gabor_inversion",
        "gabor_fourier_route",
        "frame_adjoint",
        "frame_operator_scalar",
        "resolution_of_identity",
    ];
    Report::new(
        format!("gabor {}", g.name()),
        names
            .iter()
            .zip(dev)
            .map(|(n, d)| CheckResult::new(*n, d, tolerance))
            .collect(),
    )
}

/// Inversion with the delta window, checked exactly (`δ_e` is its own dual).
pub fn delta_window_inversion(atlas: &Arc<PlancherelAtlas>, f: &Signal) -> f64 {
    let g = atlas.group();
    let delta = Signal::delta(g, g.identity());
    let field = gabor(f, &delta, atlas).expect("nonzero window");
    let back = reconstruct(&field, &delta, &delta).expect("non-orthogonal");
    back.max_abs_diff(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;
    use crate::repr::dual_of;

    #[test]
    fn nan_fails() {
        assert!(!CheckResult::new("x", f64::NAN, 1.0).pass);
        assert!(CheckResult::new("x", 0.0, 0.0).pass);
        let r = Report::new("t", vec![CheckResult::new("a", 1.0, 0.5), CheckResult::new("b", 0.1, 0.5)]);
        assert!(!r.pass);
        assert_eq!(r.failed().map(|c| c.name.as_str()).collect::<Vec<_>>(), ["a"]);
    }

    #[test]
    fn suites_pass_on_catalog() {
        for g in catalog() {
            let a = Arc::new(dual_of(&Arc::new(g)));
            let f = fourier_suite(&a, 7, 3, 1e-10);
            assert!(f.pass, "{f:?}");
            let r = gabor_suite(&a, 7, 1, 1e-9);
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let a = Arc::new(dual_of(&Arc::new(crate::group::by_name("D4").unwrap())));
        assert_eq!(gabor_suite(&a, 3, 2, 1e-9), gabor_suite(&a, 3, 2, 1e-9));
    }
}
