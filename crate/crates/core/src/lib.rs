//! Continuous Gabor (windowed Fourier) transform on non-abelian unimodular
//! groups.
//!
//! The finite-group engine is exact: catalog groups ([`group`]), their
//! complete unitary duals ([`repr`]), the operator-valued Fourier transform
//! ([`fourier`]) and the Gabor transform over `G × Ĝ` ([`gabor`]).
//! The continuous groups are handled numerically: the real Heisenberg group
//! through discretized Schrödinger representations ([`heisenberg`]) and
//! `SL(2,R)` through its principal and complementary series ([`sl2`]).
//!
//! Measure conventions: Haar measure on a finite group is the counting
//! measure, so the Plancherel weight of an irrep `π` is `d_π / |G|`.
//! Peter–Weyl statements use the normalized measure `(1/|G|) Σ`.

pub mod checks;
pub mod error;
pub mod fourier;
pub mod gabor;
pub mod group;
pub mod heisenberg;
pub mod io;
pub mod linalg;
pub mod random;
pub mod repr;
pub mod sl2;

pub use error::{Error, Result};
pub use fourier::{convolve, fourier, inverse_fourier, plancherel_norm2, OperatorField};
pub use gabor::{gabor, reconstruct, sigma_inner, sigma_norm2, GaborField, ModulatedWindow};
pub use group::{by_name, FiniteGroup, Signal};
pub use heisenberg::HPoint;
pub use linalg::{C64, CMatrix};
pub use repr::{dual_of, verify_atlas, PlancherelAtlas, UnitaryIrrep};
pub use sl2::Sl2Matrix;
