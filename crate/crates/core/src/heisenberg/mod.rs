//! The real Heisenberg group `H¹` and a discretized Schrödinger model.
//!
//! Points are `(t, q, p)` with
//! `(t₁,q₁,p₁)(t₂,q₂,p₂) = (t₁+t₂+½(p₁q₂−p₂q₁), q₁+q₂, p₁+p₂)`; Haar measure
//! is Lebesgue measure on `R³`. The representation space `L²(R)` is replaced
//! by `M` samples on a circle of length `L` (see [`LineGrid`]).

mod config;
mod grid;
mod rep;
mod transform;

pub use config::{HeisenbergConfig, RungReport, LadderReport, run_ladder};
pub use grid::{HeisenbergGrid, LambdaGrid, LineGrid};
pub use rep::{rho_matrix, shift_matrix, SchrodingerRep};
pub use transform::{
    gabor_matrix_element, gabor_matrix_element_fourier, gaussian_window, h_fourier, h_fourier_naive,
    h_fourier_sketch, h_plancherel_defect, normalized_window, plancherel_density, weak_reconstruct_pair,
    FourierSketch, PlancherelReport, SpectralRow,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cis, C64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HPoint {
    pub t: f64,
    pub q: f64,
    pub p: f64,
}

impl HPoint {
    pub const IDENTITY: HPoint = HPoint { t: 0.0, q: 0.0, p: 0.0 };

    pub const fn new(t: f64, q: f64, p: f64) -> Self {
        Self { t, q, p }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: HPoint) -> HPoint {
        HPoint {
            t: self.t + o.t + 0.5 * (self.p * o.q - o.p * self.q),
            q: self.q + o.q,
            p: self.p + o.p,
        }
    }

    pub fn inv(self) -> HPoint {
        HPoint {
            t: -self.t,
            q: -self.q,
            p: -self.p,
        }
    }

    pub fn norm2(self) -> f64 {
        self.t * self.t + self.q * self.q + self.p * self.p
    }

    pub fn max_abs_diff(self, o: HPoint) -> f64 {
        (self.t - o.t).abs().max((self.q - o.q).abs()).max((self.p - o.p).abs())
    }
}

pub fn h_mul(a: HPoint, b: HPoint) -> HPoint {
    a.mul(b)
}

pub fn h_inv(a: HPoint) -> HPoint {
    a.inv()
}

/// `δ_λ(t,q,p) = (λt, sgn λ |λ|^{1/2} q, |λ|^{1/2} p)`.
pub fn dilate(lambda: f64, h: HPoint) -> Result<HPoint> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!("dilation needs finite λ ≠ 0, got {lambda}")));
    }
    let a = lambda.abs().sqrt();
    Ok(HPoint {
        t: lambda * h.t,
        q: lambda.signum() * a * h.q,
        p: a * h.p,
    })
}

/// One-dimensional character `e^{i(ξq + ηp)}`. These sit on a set of
/// Plancherel measure zero and never enter the Plancherel sums.
pub fn char_xieta(xi: f64, eta: f64, h: HPoint) -> C64 {
    cis(xi * h.q + eta * h.p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn random_point(rng: &mut impl Rng) -> HPoint {
        HPoint::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
    }

    #[test]
    fn group_law_examples() {
        let e = HPoint::IDENTITY;
        let h = HPoint::new(0.3, -1.2, 2.5);
        assert_eq!(e.mul(h), h);
        assert_eq!(h.mul(e), h);
        assert_eq!(h.mul(h.inv()), e);
        let a = HPoint::new(0.0, 1.0, 0.0);
        let b = HPoint::new(0.0, 0.0, 1.0);
        assert_eq!(a.mul(b), HPoint::new(-0.5, 1.0, 1.0));
        assert_eq!(b.mul(a), HPoint::new(0.5, 1.0, 1.0));
    }

    #[test]
    fn associativity_and_dilation() {
        let mut rng = crate::random::rng(21);
        for _ in 0..1000 {
            let (a, b, c) = (random_point(&mut rng), random_point(&mut rng), random_point(&mut rng));
            assert!(a.mul(b).mul(c).max_abs_diff(a.mul(b.mul(c))) <= 1e-14);
            let lam: f64 = rng.gen_range(-5.0..5.0);
            let lhs = dilate(lam, a.mul(b)).unwrap();
            let rhs = dilate(lam, a).unwrap().mul(dilate(lam, b).unwrap());
            assert!(lhs.max_abs_diff(rhs) <= 1e-14 * (1.0 + lam.abs()) * 10.0);
            let (xi, eta) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let prod = char_xieta(xi, eta, a) * char_xieta(xi, eta, b);
            assert!((char_xieta(xi, eta, a.mul(b)) - prod).norm() <= 1e-14);
            assert!((char_xieta(xi, eta, a).norm() - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn dilation_examples() {
        let h = HPoint::new(1.0, 1.0, 1.0);
        assert_eq!(dilate(1.0, h).unwrap(), h);
        assert_eq!(dilate(4.0, h).unwrap(), HPoint::new(4.0, 2.0, 2.0));
        assert_eq!(dilate(-4.0, h).unwrap(), HPoint::new(-4.0, -2.0, 2.0));
        assert!(dilate(0.0, h).is_err());
        assert_eq!(char_xieta(0.0, 0.0, h), C64::new(1.0, 0.0));
    }
}
